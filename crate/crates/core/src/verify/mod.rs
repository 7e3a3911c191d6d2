//! Statistical checks of the martingale problem and its estimates on
//! simulated ensembles.

pub mod check;
pub mod gap;
pub mod krylov;
pub mod majorant;
pub mod martingale;
pub mod maximal;

pub use check::{hash_inputs, write_scoreboard, CheckKind, CheckResult};
pub use gap::{generator_gap, GapReport};
pub use krylov::{krylov_check, lp_norm, DensityMeasure, KrylovFunction};
pub use majorant::{integrated_s, majorant_integral_check, q_majorant, s_majorant};
pub use martingale::{martingale_residual, MartingaleOptions, Probe, ProbeFn};
pub use maximal::{compact_containment_profile, maximal_inequality_check, ContainmentProfile};
