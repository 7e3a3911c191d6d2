//! The run pipeline. Checks run in a fixed order (conditions, lattice, then
//! the per-level path checks, then family-wide ones) so reports are stable.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use levy_mp::analysis::{check_harnack_kernel, resolvent_identity_check, IdentityOptions};
use levy_mp::generator::{generator_lattice, write_lattice_csv, Form};
use levy_mp::levy::{check_family_conditions, ConditionReport, SymbolSpec};
use levy_mp::simulate::{save_ensemble, simulate_ensemble, write_ensemble_csv, SchemeSpec};
use levy_mp::verify::{
    compact_containment_profile, hash_inputs, krylov_check, majorant_integral_check, martingale_residual, maximal_inequality_check,
    CheckResult, MartingaleOptions,
};
use levy_mp::{Ensemble, Symbol, Verdict};

use crate::config::{Checks, Config, LatticeCheck};
use crate::report::{LevelSummary, Report};
use crate::CliError;

/// Largest `|integro − fourier| / (1 + |integro|)` accepted on the lattice.
pub const CROSS_FORM_TOLERANCE: f64 = 1e-4;

struct Level {
    label: String,
    n: Option<usize>,
    spec: SymbolSpec,
    sym: Symbol,
    scheme: Option<SchemeSpec>,
    ens: Option<Ensemble>,
}

fn levels(cfg: &Config) -> Result<Vec<Level>, CliError> {
    let ns: Vec<Option<usize>> = match &cfg.mollify {
        Some(m) => m.levels.iter().map(|&n| Some(n)).collect(),
        None => vec![None],
    };
    ns.into_iter()
        .map(|n| {
            let (spec, scheme) = match n {
                Some(n) => (
                    cfg.symbol.map_coefficients(|c| c.mollified(n)),
                    cfg.scheme.as_ref().map(|s| s.map_coefficients(|c| c.mollified(n))),
                ),
                None => (cfg.symbol.clone(), cfg.scheme.clone()),
            };
            Ok(Level {
                label: n.map_or_else(|| "base".to_string(), |n| format!("n{n}")),
                n,
                sym: spec.build()?,
                spec,
                scheme,
                ens: None,
            })
        })
        .collect()
}

/// Scoreboard row for a condition report: the statistic is 1 when the
/// condition was violated and 0 otherwise.
fn condition_row(prefix: &str, c: &ConditionReport) -> CheckResult {
    let worst = c.sup_values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let violated = if c.verdict == Verdict::Fail { 1.0 } else { 0.0 };
    CheckResult::bound(
        &format!("{prefix}/{}", c.condition_id.as_str()),
        violated,
        0.0,
        0.0,
        c.sup_values.len(),
    )
    .with_verdict(c.verdict)
    .with_note(format!("largest sampled value {worst:e}; see the condition report"))
}

fn lattice(lvl: &Level, lc: &LatticeCheck, out: &Path) -> Result<Option<CheckResult>, CliError> {
    if lc.points < 2 || !(lc.lo < lc.hi) {
        return Err(CliError::Config("generator_lattice needs lo < hi and at least 2 points".into()));
    }
    let f = lc.f.build::<f64>(lvl.spec.dim())?;
    let h = (lc.hi - lc.lo) / (lc.points - 1) as f64;
    let xs: Vec<f64> = (0..lc.points).map(|i| lc.lo + h * i as f64).collect();
    let rows = generator_lattice(&lvl.sym, &f, &xs, &lc.forms)?;
    let path = out.join(format!("lattice_{}.csv", lvl.label));
    let file = File::create(&path).map_err(CliError::io(path.display()))?;
    write_lattice_csv(&rows, BufWriter::new(file))?;

    let (Some(i), Some(j)) = (
        lc.forms.iter().position(|f| *f == Form::Integro),
        lc.forms.iter().position(|f| *f == Form::Fourier),
    ) else {
        return Ok(None);
    };
    let gap = rows
        .chunks(lc.forms.len())
        .map(|r| (r[i].af - r[j].af).abs() / (1.0 + r[i].af.abs()))
        .fold(0.0, f64::max);
    Ok(Some(
        CheckResult::bound(
            &format!("generator_lattice/{}", lvl.label),
            gap,
            CROSS_FORM_TOLERANCE,
            0.0,
            xs.len(),
        )
        .with_inputs(&(&lvl.spec, lc))
        .with_note("largest relative gap between the integro and Fourier forms"),
    ))
}

fn simulate(cfg: &Config, lvl: &mut Level, out: &Path) -> Result<(), CliError> {
    let (Some(e), Some(scheme)) = (&cfg.ensemble, &lvl.scheme) else {
        return Ok(());
    };
    let ens: Ensemble = simulate_ensemble(scheme, &e.initial, e.paths, e.horizon, e.dt, cfg.seed)?;
    let stem = format!("ensemble_{}", lvl.label);
    if cfg.output.save_ensemble {
        save_ensemble(&ens, out, &stem)?;
    }
    if cfg.output.ensemble_csv {
        let path = out.join(format!("{stem}.csv"));
        let file = File::create(&path).map_err(CliError::io(path.display()))?;
        write_ensemble_csv(&ens, BufWriter::new(file))?;
    }
    lvl.ens = Some(ens);
    Ok(())
}

fn path_checks(checks: &Checks, lvl: &Level, rows: &mut Vec<CheckResult>) -> Result<(), CliError> {
    let Some(ens) = &lvl.ens else {
        return Ok(());
    };
    let label = &lvl.label;
    let dim = lvl.spec.dim();
    if let Some(m) = &checks.martingale {
        let against = m.against.as_ref().map(|s| s.build()).transpose()?;
        let (sym, spec) = match (&against, &m.against) {
            (Some(s), Some(spec)) => (s, spec),
            _ => (&lvl.sym, &lvl.spec),
        };
        let opts = MartingaleOptions {
            table_spacing: m.table_spacing,
            breaks: spec.breaks(),
            direct: false,
        };
        for (i, case) in m.cases.iter().enumerate() {
            let f = case.f.build(dim)?;
            let mut r = martingale_residual(ens, sym, &f, case.s, case.t, &case.probes, &opts)?;
            r.check_id = format!("martingale/{label}/case{i}");
            rows.push(r);
        }
    }
    if let Some(m) = &checks.maximal {
        for &r in &m.inner {
            for &big_r in m.outer.iter().filter(|&&b| b >= 2.0 * r) {
                for &t in &m.times {
                    let mut c = maximal_inequality_check(ens, &lvl.sym, r, big_r, t)?;
                    c.check_id = format!("maximal/{label}/r={r}/R={big_r}/t={t}");
                    rows.push(c);
                }
            }
        }
    }
    if let Some(k) = &checks.krylov {
        let mut c = krylov_check(ens, &k.u, &k.measure, k.p, k.c, k.t)?;
        c.check_id = format!("krylov/{label}");
        rows.push(c);
    }
    if let Some(r) = &checks.resolvent_identity {
        let phi = r.phi.build(dim)?;
        let opts = IdentityOptions {
            discount: r.discount,
            breaks: lvl.spec.breaks(),
            ..Default::default()
        };
        let mut c = resolvent_identity_check(ens, &lvl.sym, &phi, r.lambda, &opts)?;
        c.check_id = format!("resolvent_identity/{label}");
        rows.push(c);
    }
    Ok(())
}

/// Runs `cfg`, writing `report.json`, `scoreboard.csv` and any requested
/// lattice or ensemble files into `out`.
pub fn run(cfg: &Config, out: &Path) -> Result<Report, CliError> {
    std::fs::create_dir_all(out).map_err(CliError::io(out.display()))?;
    let mut report = Report::new(&cfg.name, cfg.seed, hash_inputs(cfg));
    let checks = &cfg.checks;
    let mut lvls = levels(cfg)?;

    if let Some(c) = &checks.conditions {
        let family: Vec<Symbol> = lvls.iter().map(|l| l.sym.clone()).collect();
        for id in &c.ids {
            let rep = check_family_conditions(&family, *id, &c.radii, c.density)?;
            report.checks.push(condition_row("condition", &rep));
            report.conditions.push(rep);
        }
    }
    if let Some(lc) = &checks.generator_lattice {
        for lvl in &lvls {
            report.checks.extend(lattice(lvl, lc, out)?);
        }
    }
    if checks.needs_ensemble() {
        for lvl in &mut lvls {
            simulate(cfg, lvl, out)?;
            path_checks(checks, lvl, &mut report.checks)?;
        }
    }
    if let Some(c) = &checks.containment {
        let family: Vec<&Ensemble> = lvls.iter().filter_map(|l| l.ens.as_ref()).collect();
        let prof = compact_containment_profile(&family, c.horizon, &c.radii, c.epsilon)?;
        let last = prof.profile.last().map_or(f64::NAN, |p| p.1);
        let n = family.iter().map(|e| e.n_paths).min().unwrap_or(0);
        report.checks.push(
            CheckResult::bound("containment", last, c.epsilon, 0.0, n)
                .with_verdict(prof.verdict)
                .with_note("exceedance at the largest radius, sup over the family"),
        );
        report.containment = Some(prof);
    }
    if let Some(m) = &checks.majorant {
        if m.z_points == 0 {
            return Err(CliError::Config("majorant needs z_points > 0".into()));
        }
        let zs: Vec<Vec<f64>> = (1..=m.z_points)
            .flat_map(|k| {
                let z = m.z_max * k as f64 / m.z_points as f64;
                [vec![-z], vec![z]]
            })
            .collect();
        report
            .checks
            .push(majorant_integral_check(&zs, m.gamma0, m.gamma_inf, m.horizon, m.constant)?);
    }
    if let Some(h) = &checks.harnack_kernel {
        for rep in check_harnack_kernel(&h.kernel, &h.constants, h.samples, cfg.seed)? {
            report.checks.push(condition_row("harnack_kernel", &rep));
            report.conditions.push(rep);
        }
    }

    report.levels = lvls
        .iter()
        .map(|l| LevelSummary {
            label: l.label.clone(),
            mollification: l.n,
            ensemble_digest: l.ens.as_ref().map(|e| e.digest()),
        })
        .collect();
    report.finish();
    report.write(out)?;
    Ok(report)
}
