//! Path simulation: Lévy increments, Euler schemes, ensembles.

pub mod ensemble;
pub mod increment;
pub mod io;
pub mod path;
pub mod stepper;

pub use ensemble::{
    path_rng, scheme_driver, simulate_ensemble, simulate_scheme_path, EnsembleMeta, InitialLaw, SchemeSpec, SolutionEnsemble,
};
pub use increment::{sample_levy_increment, Driver, DEFAULT_CUTOFF};
pub use io::{load_ensemble, save_ensemble, write_ensemble_csv, EnsembleSidecar};
pub use path::{ode_selection_path, simulate_sde_path, time_grid, Branch, PathSkeleton, BLOW_UP};
pub use stepper::Stepper;
