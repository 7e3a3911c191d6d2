//! Increments of rotationally invariant Lévy processes with
//! `E e^{iξ·L_t} = e^{−tψ(ξ)}`.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use crate::error::{Error, Result};
use crate::levy::exponent::{relativistic_profile, LevyExponent};
use crate::quad::{gauss_legendre, toward_zero_corrected};
use crate::special::sphere_area;

/// Default small-jump cutoff of the compound-Poisson approximation.
pub const DEFAULT_CUTOFF: f64 = 1e-3;

#[derive(Debug, Clone)]
enum Method {
    /// `N(0, 2t I)`.
    Gaussian,
    Stable {
        alpha: f64,
    },
    /// Jumps of size `≥ ε` as a compound Poisson process; those below `ε`
    /// replaced by a centred Gaussian with the same covariance.
    CompoundPoisson {
        rate: f64,
        /// Radii and cumulative radial mass on a log grid over `[ε, r_max]`.
        radii: Vec<f64>,
        cum: Vec<f64>,
        /// Per-coordinate variance of the small jumps per unit time.
        small_var: f64,
    },
}

/// Sampler for one driving process in dimension `dim`.
#[derive(Debug, Clone)]
pub struct Driver {
    exponent: LevyExponent,
    dim: usize,
    cutoff: f64,
    method: Method,
}

impl Driver {
    pub fn new(exponent: LevyExponent, dim: usize, cutoff: f64) -> Result<Self> {
        exponent.validate()?;
        if dim == 0 {
            return Err(Error::Parameter("driver dimension must be positive".into()));
        }
        if !(cutoff > 0.0 && cutoff < 1.0) {
            return Err(Error::Parameter(format!("small-jump cutoff {cutoff} outside (0, 1)")));
        }
        let method = match exponent {
            LevyExponent::Gaussian => Method::Gaussian,
            LevyExponent::Stable { alpha: 2.0 } => Method::Gaussian,
            LevyExponent::Stable { alpha } => Method::Stable { alpha },
            LevyExponent::RelativisticStable { rho, mass } => compound_poisson(rho, mass, dim, cutoff)?,
        };
        Ok(Self {
            exponent,
            dim,
            cutoff,
            method,
        })
    }

    pub fn exponent(&self) -> LevyExponent {
        self.exponent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Writes one increment over a step of length `dt > 0` into `out`.
    pub fn sample_into<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim);
        match &self.method {
            Method::Gaussian => {
                let s = (2.0 * dt).sqrt();
                for o in out.iter_mut() {
                    let g: f64 = StandardNormal.sample(rng);
                    *o = s * g;
                }
            }
            Method::Stable { alpha } => {
                let scale = dt.powf(alpha.recip());
                if self.dim == 1 {
                    out[0] = scale * symmetric_stable(*alpha, rng);
                } else {
                    // sub-Gaussian: √A · N(0, 2I) with E e^{−sA} = e^{−s^{α/2}}
                    let a = positive_stable(alpha / 2.0, rng).sqrt();
                    for o in out.iter_mut() {
                        let g: f64 = StandardNormal.sample(rng);
                        *o = scale * a * std::f64::consts::SQRT_2 * g;
                    }
                }
            }
            Method::CompoundPoisson {
                rate,
                radii,
                cum,
                small_var,
            } => {
                let s = (small_var * dt).sqrt();
                for o in out.iter_mut() {
                    let g: f64 = StandardNormal.sample(rng);
                    *o = s * g;
                }
                let n = Poisson::new(rate * dt).map(|p| p.sample(rng) as u64).unwrap_or(0);
                let mut dir = vec![0.0; self.dim];
                for _ in 0..n {
                    let r = radial_draw(radii, cum, rng.random::<f64>() * rate);
                    unit_direction(rng, &mut dir);
                    for (o, u) in out.iter_mut().zip(&dir) {
                        *o += r * u;
                    }
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.sample_into(dt, rng, &mut out);
        out
    }
}

/// One increment of the process with exponent `ψ` over `dt`.
pub fn sample_levy_increment<R: Rng + ?Sized>(driver: &Driver, dt: f64, rng: &mut R) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Parameter(format!("time step {dt} must be positive and finite")));
    }
    Ok(driver.sample(dt, rng))
}

/// Chambers–Mallows–Stuck draw with `E e^{iξX} = e^{−|ξ|^α}`.
fn symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let v = std::f64::consts::PI * (rng.random::<f64>() - 0.5);
    let w: f64 = Exp1.sample(rng);
    if alpha == 1.0 {
        return v.tan();
    }
    (alpha * v).sin() / v.cos().powf(alpha.recip()) * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Kanter's draw of the positive `β`-stable law with `E e^{−sA} = e^{−s^β}`.
fn positive_stable<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    // U ∈ (0, π) strictly, so the sines stay positive
    let u = std::f64::consts::PI * (1.0 - rng.random::<f64>());
    let w: f64 = Exp1.sample(rng);
    (beta * u).sin() / u.sin().powf(beta.recip()) * (((1.0 - beta) * u).sin() / w).powf((1.0 - beta) / beta)
}

fn unit_direction<R: Rng + ?Sized>(rng: &mut R, dir: &mut [f64]) {
    if dir.len() == 1 {
        dir[0] = if rng.random::<bool>() { 1.0 } else { -1.0 };
        return;
    }
    loop {
        for v in dir.iter_mut() {
            *v = StandardNormal.sample(rng);
        }
        let n = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            dir.iter_mut().for_each(|v| *v /= n);
            return;
        }
    }
}

fn radial_draw(radii: &[f64], cum: &[f64], u: f64) -> f64 {
    let k = cum.partition_point(|c| *c <= u).clamp(1, cum.len() - 1);
    let (c0, c1) = (cum[k - 1], cum[k]);
    let t = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.0 };
    radii[k - 1] + t.clamp(0.0, 1.0) * (radii[k] - radii[k - 1])
}

fn compound_poisson(rho: f64, mass: f64, d: usize, eps: f64) -> Result<Method> {
    let profile = relativistic_profile(rho, mass, d);
    let area = sphere_area(d);
    let radial = |r: f64| area * r.powi(d as i32 - 1) * profile(r);
    // the density decays like e^{−m r}; e^{−60} of the mass is dropped
    let r_max = (60.0 / mass).max(10.0 * eps) + 1.0;
    let cells = 4096;
    let ratio = (r_max / eps).ln() / cells as f64;
    let radii: Vec<f64> = (0..=cells).map(|k| eps * (ratio * k as f64).exp()).collect();
    let rule = gauss_legendre::<f64>(8);
    let mut cum = Vec::with_capacity(cells + 1);
    cum.push(0.0);
    for w in radii.windows(2) {
        let m = rule.integrate(radial, w[0], w[1]);
        cum.push(cum.last().unwrap() + m);
    }
    let rate = *cum.last().unwrap();
    let second = toward_zero_corrected(|r| r * r * radial(r), eps, 2.0 - rho, eps * 1e-9, |_, _| 1)?;
    Ok(Method::CompoundPoisson {
        rate,
        radii,
        cum,
        small_var: second / d as f64,
    })
}
