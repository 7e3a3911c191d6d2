//! Resolvents, viscosity residuals, harmonic functions and Harnack ratios.

pub mod harmonic;
pub mod harnack;
pub mod resolvent;
pub mod viscosity;

pub use harmonic::{harmonic_mc, harnack_ratio, write_harmonic_csv, Ball, HarmonicEstimate, HarmonicOptions, HarmonicPoint, HarnackReport};
pub use harnack::{check_harnack_kernel, HarnackConstants, HarnackKernel};
pub use resolvent::{
    resolvent_identity_check, resolvent_mc, resolvent_oracle, sup_resolvent, IdentityOptions, ResolventEstimate, SupResolvent,
};
pub use viscosity::{viscosity_residual, ViscosityMode, ViscosityReport};
