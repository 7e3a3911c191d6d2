//! Config-driven runner: build a symbol, optionally mollify its
//! coefficients, simulate, run the declared checks and write a scoreboard.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod pipeline;
pub mod report;

pub use config::Config;
pub use pipeline::run;
pub use report::{Meta, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] levy_mp::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    /// 2 for configuration and computation errors, 3 for a blown-up path.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(levy_mp::Error::BlowUp { .. }) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(context: impl std::fmt::Display) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.to_string();
        move |source| CliError::Io { context, source }
    }
}
