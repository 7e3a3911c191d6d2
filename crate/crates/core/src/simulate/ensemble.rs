//! Ensembles of independent paths standing in for a solution of the
//! martingale problem.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::levy::catalog::{StablePart, SymbolSpec};
use crate::levy::coeff::{Coeff, CoeffFn};
use crate::levy::exponent::LevyExponent;
use crate::scalar::{lit, to_f64, Real};
use crate::simulate::increment::{Driver, DEFAULT_CUTOFF};
use crate::simulate::path::{ode_selection_path, simulate_sde_path, time_grid, Branch, PathSkeleton};

fn default_cutoff() -> f64 {
    DEFAULT_CUTOFF
}

fn default_threshold() -> f64 {
    1.0
}

fn one() -> usize {
    1
}

/// What each path solves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemeSpec {
    /// `dX = b(X−) dt + σ(X−) dL` in dimension one.
    Sde {
        drift: CoeffFn,
        sigma: CoeffFn,
        driver: LevyExponent,
        #[serde(default = "default_cutoff")]
        small_jump_cutoff: f64,
        #[serde(default = "default_threshold")]
        jump_threshold: f64,
    },
    /// `X = x + L` in dimension `dim`.
    Levy {
        driver: LevyExponent,
        #[serde(default = "one")]
        dim: usize,
        #[serde(default = "default_cutoff")]
        small_jump_cutoff: f64,
        #[serde(default = "default_threshold")]
        jump_threshold: f64,
    },
    /// A closed-form selection of `dX = 2 sgn(X) √|X| dt`.
    OdeSelection { branch: Branch },
}

impl SchemeSpec {
    pub fn dim(&self) -> usize {
        match self {
            SchemeSpec::Levy { dim, .. } => *dim,
            _ => 1,
        }
    }

    /// The same scheme with every coefficient replaced by `f(coefficient)`.
    pub fn map_coefficients(&self, f: impl Fn(&CoeffFn) -> CoeffFn) -> SchemeSpec {
        let mut out = self.clone();
        if let SchemeSpec::Sde { drift, sigma, .. } = &mut out {
            *drift = f(drift);
            *sigma = f(sigma);
        }
        out
    }

    /// Symbol of the generator the scheme approximates.
    pub fn symbol_spec(&self) -> Result<SymbolSpec> {
        Ok(match self {
            SchemeSpec::Sde { drift, sigma, driver, .. } => SymbolSpec::SdeSymbol {
                drift: drift.clone(),
                sigma: sigma.clone(),
                psi: *driver,
            },
            SchemeSpec::Levy { driver, dim: 1, .. } => SymbolSpec::SdeSymbol {
                drift: CoeffFn::constant(0.0),
                sigma: CoeffFn::constant(1.0),
                psi: *driver,
            },
            SchemeSpec::Levy { driver, dim, .. } => match driver.stable_index() {
                Some(a) if a < 2.0 => SymbolSpec::ConstantTriplet {
                    drift: vec![0.0; *dim],
                    diffusion: vec![0.0; dim * dim],
                    atoms: Vec::new(),
                    stable: Some(StablePart { alpha: a, scale: 1.0 }),
                },
                Some(_) => SymbolSpec::ConstantTriplet {
                    drift: vec![0.0; *dim],
                    diffusion: (0..dim * dim).map(|k| if k % (dim + 1) == 0 { 2.0 } else { 0.0 }).collect(),
                    atoms: Vec::new(),
                    stable: None,
                },
                None => {
                    return Err(Error::Dimension {
                        dim: *dim,
                        op: "symbol of a non-stable multivariate driver",
                    })
                }
            },
            SchemeSpec::OdeSelection { .. } => SymbolSpec::SdeSymbol {
                drift: CoeffFn::SignSqrt { scale: 2.0 },
                sigma: CoeffFn::constant(0.0),
                psi: LevyExponent::Gaussian,
            },
        })
    }
}

/// Law of `X_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialLaw {
    Dirac {
        point: Vec<f64>,
    },
    /// Independent uniform coordinates on the box `[lo, hi]`.
    Uniform {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    /// `N(mean, std² I)`.
    Normal {
        mean: Vec<f64>,
        std: f64,
    },
}

impl InitialLaw {
    pub fn dirac(point: Vec<f64>) -> Self {
        InitialLaw::Dirac { point }
    }

    pub fn dim(&self) -> usize {
        match self {
            InitialLaw::Dirac { point } => point.len(),
            InitialLaw::Uniform { lo, .. } => lo.len(),
            InitialLaw::Normal { mean, .. } => mean.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            InitialLaw::Dirac { point } => point.iter().all(|v| v.is_finite()),
            InitialLaw::Uniform { lo, hi } => lo.len() == hi.len() && lo.iter().zip(hi).all(|(a, b)| a < b),
            InitialLaw::Normal { mean, std } => *std >= 0.0 && mean.iter().all(|v| v.is_finite()),
        };
        if ok && self.dim() > 0 {
            Ok(())
        } else {
            Err(Error::Parameter(format!("malformed initial law {self:?}")))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            InitialLaw::Dirac { point } => point.clone(),
            InitialLaw::Uniform { lo, hi } => lo.iter().zip(hi).map(|(a, b)| a + (b - a) * rng.random::<f64>()).collect(),
            InitialLaw::Normal { mean, std } => mean
                .iter()
                .map(|m| {
                    let g: f64 = StandardNormal.sample(rng);
                    m + std * g
                })
                .collect(),
        }
    }

    /// CDF of the first coordinate.
    pub fn cdf_1d(&self, x: f64) -> f64 {
        match self {
            InitialLaw::Dirac { point } => (x >= point[0]) as u8 as f64,
            InitialLaw::Uniform { lo, hi } => ((x - lo[0]) / (hi[0] - lo[0])).clamp(0.0, 1.0),
            InitialLaw::Normal { mean, std } => {
                if *std == 0.0 {
                    (x >= mean[0]) as u8 as f64
                } else {
                    crate::special::normal_cdf((x - mean[0]) / std)
                }
            }
        }
    }
}

/// Everything needed to regenerate an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleMeta {
    pub scheme: SchemeSpec,
    pub initial_law: InitialLaw,
    pub master_seed: u64,
    pub horizon: f64,
    pub dt: f64,
}

/// `N` paths on a shared grid. States are stored time-major:
/// `states[(k·N + p)·d + j]` is coordinate `j` of path `p` at `times[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionEnsemble<T> {
    pub times: Vec<T>,
    pub dim: usize,
    pub n_paths: usize,
    pub(crate) states: Vec<T>,
    pub jump_marks: Vec<Vec<usize>>,
    pub meta: EnsembleMeta,
}

impl<T: Real> SolutionEnsemble<T> {
    pub(crate) fn from_parts(
        times: Vec<T>,
        dim: usize,
        n_paths: usize,
        states: Vec<T>,
        jump_marks: Vec<Vec<usize>>,
        meta: EnsembleMeta,
    ) -> Result<Self> {
        if states.len() != times.len() * n_paths * dim || jump_marks.len() != n_paths {
            return Err(Error::Format("ensemble arrays have inconsistent sizes".into()));
        }
        Ok(Self {
            times,
            dim,
            n_paths,
            states,
            jump_marks,
            meta,
        })
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn states(&self) -> &[T] {
        &self.states
    }

    pub fn state(&self, path: usize, k: usize) -> &[T] {
        let i = (k * self.n_paths + path) * self.dim;
        &self.states[i..i + self.dim]
    }

    /// All states at grid index `k`, path after path.
    pub fn slice_at(&self, k: usize) -> &[T] {
        let w = self.n_paths * self.dim;
        &self.states[k * w..(k + 1) * w]
    }

    /// Last grid index not after `t`.
    pub fn time_index(&self, t: f64) -> usize {
        self.times.partition_point(|s| to_f64(*s) <= t + 1e-12).max(1) - 1
    }

    /// Coordinate `j` of every path at grid index `k`.
    pub fn coordinate(&self, k: usize, j: usize) -> Vec<f64> {
        (0..self.n_paths).map(|p| to_f64(self.state(p, k)[j])).collect()
    }

    pub fn path(&self, p: usize) -> PathSkeleton<T> {
        PathSkeleton {
            times: self.times.clone(),
            states: (0..self.n_times()).map(|k| self.state(p, k).to_vec()).collect(),
            jump_marks: self.jump_marks[p].clone(),
        }
    }

    /// `sup_{t_k ≤ t} |X_{t_k}|` for every path.
    pub fn running_sup_norm(&self, t: f64) -> Vec<f64> {
        let kmax = self.time_index(t);
        (0..self.n_paths)
            .map(|p| {
                (0..=kmax)
                    .map(|k| to_f64(crate::scalar::norm(self.state(p, k))))
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    /// SHA-256 over the grid and the states as little-endian `f64`.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for t in &self.times {
            h.update(to_f64(*t).to_le_bytes());
        }
        for s in &self.states {
            h.update(to_f64(*s).to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Random stream of path `index`: ChaCha8 keyed by the master seed, with the
/// path index as stream number.
pub fn path_rng(master_seed: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(master_seed);
    r.set_stream(index as u64);
    r
}

/// A scheme with its coefficients compiled once.
enum Compiled<T> {
    Sde { b: Coeff<T>, s: Coeff<T>, threshold: T },
    Levy { dim: usize, threshold: T },
    Ode(Branch),
}

fn compile<T: Real>(scheme: &SchemeSpec) -> Result<Compiled<T>> {
    Ok(match scheme {
        SchemeSpec::OdeSelection { branch } => Compiled::Ode(*branch),
        SchemeSpec::Sde {
            drift,
            sigma,
            jump_threshold,
            ..
        } => Compiled::Sde {
            b: drift.build()?,
            s: sigma.build()?,
            threshold: lit(*jump_threshold),
        },
        SchemeSpec::Levy { dim, jump_threshold, .. } => Compiled::Levy {
            dim: *dim,
            threshold: lit(*jump_threshold),
        },
    })
}

fn run_compiled<T: Real, R: Rng + ?Sized>(
    c: &Compiled<T>,
    driver: Option<&Driver>,
    x0: &[T],
    horizon: T,
    dt: T,
    rng: &mut R,
) -> Result<PathSkeleton<T>> {
    let need = || driver.ok_or_else(|| Error::Parameter("scheme needs a driver".into()));
    match c {
        Compiled::Ode(branch) => ode_selection_path(x0[0], *branch, horizon, dt),
        Compiled::Sde { b, s, threshold } => simulate_sde_path(
            |x: &[T]| vec![b.at(x)],
            |x: &[T]| vec![s.at(x)],
            need()?,
            x0,
            horizon,
            dt,
            *threshold,
            rng,
        ),
        Compiled::Levy { dim, threshold } => {
            let d = *dim;
            let identity: Vec<T> = (0..d * d).map(|k| if k % (d + 1) == 0 { T::one() } else { T::zero() }).collect();
            simulate_sde_path(
                |_: &[T]| vec![T::zero(); d],
                |_: &[T]| identity.clone(),
                need()?,
                x0,
                horizon,
                dt,
                *threshold,
                rng,
            )
        }
    }
}

/// One path of the scheme from `x0`, using `rng`.
pub fn simulate_scheme_path<T: Real, R: Rng + ?Sized>(
    scheme: &SchemeSpec,
    driver: Option<&Driver>,
    x0: &[T],
    horizon: T,
    dt: T,
    rng: &mut R,
) -> Result<PathSkeleton<T>> {
    run_compiled(&compile(scheme)?, driver, x0, horizon, dt, rng)
}

pub fn scheme_driver(scheme: &SchemeSpec) -> Result<Option<Driver>> {
    Ok(match scheme {
        SchemeSpec::Sde {
            driver, small_jump_cutoff, ..
        } => Some(Driver::new(*driver, 1, *small_jump_cutoff)?),
        SchemeSpec::Levy {
            driver,
            dim,
            small_jump_cutoff,
            ..
        } => Some(Driver::new(*driver, *dim, *small_jump_cutoff)?),
        SchemeSpec::OdeSelection { .. } => None,
    })
}

/// `n` independent paths; path `p` draws its initial point and increments
/// from [`path_rng`]`(master_seed, p)`, so the output does not depend on
/// scheduling.
pub fn simulate_ensemble<T: Real>(
    scheme: &SchemeSpec,
    initial: &InitialLaw,
    n: usize,
    horizon: f64,
    dt: f64,
    master_seed: u64,
) -> Result<SolutionEnsemble<T>> {
    if n == 0 {
        return Err(Error::Parameter("an ensemble needs at least one path".into()));
    }
    initial.validate()?;
    let d = scheme.dim();
    if initial.dim() != d {
        return Err(Error::Parameter(format!(
            "initial law in dimension {}, scheme in dimension {d}",
            initial.dim()
        )));
    }
    let driver = scheme_driver(scheme)?;
    let compiled = compile::<T>(scheme)?;
    let times = time_grid::<T>(lit(horizon), lit(dt))?;
    let paths: Vec<PathSkeleton<T>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_rng(master_seed, p);
            let x0: Vec<T> = initial.sample(&mut rng).into_iter().map(lit).collect();
            run_compiled(&compiled, driver.as_ref(), &x0, lit(horizon), lit(dt), &mut rng).map_err(|e| match e {
                Error::BlowUp { time, .. } => Error::BlowUp { time, path: Some(p) },
                e => e,
            })
        })
        .collect::<Result<_>>()?;
    let nt = times.len();
    let mut states = vec![T::zero(); nt * n * d];
    for (p, path) in paths.iter().enumerate() {
        for (k, s) in path.states.iter().enumerate() {
            let i = (k * n + p) * d;
            states[i..i + d].copy_from_slice(s);
        }
    }
    let jump_marks = paths.into_iter().map(|p| p.jump_marks).collect();
    SolutionEnsemble::from_parts(
        times,
        d,
        n,
        states,
        jump_marks,
        EnsembleMeta {
            scheme: scheme.clone(),
            initial_law: initial.clone(),
            master_seed,
            horizon,
            dt,
        },
    )
}
