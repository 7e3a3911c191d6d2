//! One Euler step at a time, for simulations that stop early (exit times).

use rand::Rng;

use crate::error::{Error, Result};
use crate::levy::coeff::Coeff;
use crate::simulate::ensemble::{scheme_driver, SchemeSpec};
use crate::simulate::increment::Driver;
use crate::simulate::path::{Branch, BLOW_UP};

enum Kind {
    Sde { b: Coeff<f64>, s: Coeff<f64> },
    Levy,
    Ode(Branch),
}

pub struct Stepper {
    kind: Kind,
    driver: Option<Driver>,
    dim: usize,
}

impl Stepper {
    pub fn new(scheme: &SchemeSpec) -> Result<Self> {
        let kind = match scheme {
            SchemeSpec::Sde { drift, sigma, .. } => Kind::Sde {
                b: drift.build()?,
                s: sigma.build()?,
            },
            SchemeSpec::Levy { .. } => Kind::Levy,
            SchemeSpec::OdeSelection { branch } => Kind::Ode(*branch),
        };
        Ok(Self {
            kind,
            driver: scheme_driver(scheme)?,
            dim: scheme.dim(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Variance rate per coordinate when the noise is Gaussian, `None` for
    /// jump drivers and the ODE.
    pub fn gaussian_rate(&self, x: &[f64]) -> Option<f64> {
        let d = self.driver.as_ref()?;
        if d.exponent().stable_index() != Some(2.0) {
            return None;
        }
        // ψ(ξ) = |ξ|² is the exponent of N(0, 2t)
        Some(match &self.kind {
            Kind::Sde { s, .. } => 2.0 * s.at(x).powi(2),
            _ => 2.0,
        })
    }

    /// Advances `x` from time `t` by `h`.
    pub fn step<R: Rng + ?Sized>(&self, x: &mut [f64], t: f64, h: f64, rng: &mut R) -> Result<()> {
        match &self.kind {
            Kind::Ode(branch) => {
                let up = x[0] > 0.0 || (x[0] == 0.0 && *branch == Branch::XBranch);
                x[0] = if up {
                    (h + x[0].max(0.0).sqrt()).powi(2)
                } else {
                    -(h + (-x[0]).max(0.0).sqrt()).powi(2)
                };
            }
            Kind::Sde { b, s } => {
                let dl = self.driver.as_ref().unwrap().sample(h, rng);
                let (bx, sx) = (b.at(x), s.at(x));
                x[0] += bx * h + sx * dl[0];
            }
            Kind::Levy => {
                let dl = self.driver.as_ref().unwrap().sample(h, rng);
                for (xi, d) in x.iter_mut().zip(dl) {
                    *xi += d;
                }
            }
        }
        if !(crate::scalar::norm(x) <= BLOW_UP) {
            return Err(Error::BlowUp { time: t + h, path: None });
        }
        Ok(())
    }
}
