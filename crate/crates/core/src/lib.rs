//! Lévy-type operators with rough coefficients: symbols, the generator in
//! integro-differential and Fourier form, path simulation, and Monte Carlo
//! diagnostics of the martingale problem.
//!
//! Numerical types are generic over the scalar (`f32` or `f64`); the
//! aliases below fix `f64`.

// `!(a <= b)` is the NaN-rejecting form used for parameter checks
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod error;
pub mod generator;
pub mod levy;
pub mod linalg;
pub mod mollify;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod simulate;
pub mod special;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use report::{Verdict, SCHEMA_VERSION};

pub type Symbol = levy::SymbolField<f64>;
pub type Triplet = levy::LevyTriplet<f64>;
pub type TestFn = generator::TestFunction<f64>;
pub type Ensemble = simulate::SolutionEnsemble<f64>;
pub type Path = simulate::PathSkeleton<f64>;
