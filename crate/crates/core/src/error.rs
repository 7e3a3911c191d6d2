use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A quadrature did not reach its tolerance. `partial` is the best value
    /// reached and `last_increment` the size of the last contribution added.
    #[error("quadrature did not converge ({context}): partial sum {partial:e}, last increment {last_increment:e}")]
    Quadrature {
        context: String,
        partial: f64,
        last_increment: f64,
    },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// A state-dependent parameter left its admissible range at `x`.
    #[error("{what} = {value} outside {range} at x = {x:?}")]
    Inadmissible {
        what: &'static str,
        value: f64,
        range: &'static str,
        x: Vec<f64>,
    },

    #[error("dimension {dim} is not supported by {op}")]
    Dimension { dim: usize, op: &'static str },

    #[error("empty grid")]
    EmptyGrid,

    #[error("state left |x| <= 1e12 at t = {time} (path {path:?})")]
    BlowUp { time: f64, path: Option<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("horizon {horizon} too short: truncation bound {bound:e} exceeds tolerance {tolerance:e}")]
    Horizon { horizon: f64, bound: f64, tolerance: f64 },

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
