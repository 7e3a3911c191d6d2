use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use levy_mp_cli::{run, CliError, Config, Meta};

#[derive(Parser)]
#[command(
    name = "levy-mp",
    version,
    about = "Numerical checks for martingale problems of Lévy-type operators"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "LEVY_MP_THREADS")]
    threads: Option<usize>,
    /// Output directory; overrides `output.dir` of the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a TOML (or .json) experiment config.
    Run { config: PathBuf },
    /// Print the symbol catalog.
    ListCatalog,
}

fn now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

fn execute(cli: &Cli, path: &Path) -> Result<i32, CliError> {
    let started = now();
    let cfg = Config::load(path)?;
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(&cfg.name));
    let report = run(&cfg, &out)?;
    let code = report.exit_code();
    Meta {
        schema_version: levy_mp::SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_path: path.display().to_string(),
        started,
        finished: now(),
        threads: rayon::current_num_threads(),
        exit_code: code,
    }
    .write(&out)?;
    for c in &report.checks {
        println!("{:<6} {}", c.verdict.as_str(), c.check_id);
    }
    println!("{} -> {}", report.verdict.as_str(), out.display());
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match &cli.command {
        Command::ListCatalog => {
            print!("{}", levy_mp::levy::list_catalog());
            ExitCode::SUCCESS
        }
        Command::Run { config } => match execute(&cli, config) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
    }
}
