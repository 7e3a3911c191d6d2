//! Rotationally invariant Lévy exponents `ψ(ξ) = ψ(|ξ|)` used as drivers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::triplet::KernelTerm;
use crate::scalar::{lit, to_f64, Real};
use crate::special::{bessel_k, stable_constant};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum LevyExponent {
    /// `|ξ|^α`, `0 < α ≤ 2`.
    Stable { alpha: f64 },
    /// `|ξ|²`.
    Gaussian,
    /// `(|ξ|² + m²)^{ρ/2} − m^ρ`, `0 < ρ < 2`, `m > 0`.
    RelativisticStable { rho: f64, mass: f64 },
}

impl LevyExponent {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LevyExponent::Stable { alpha } if !(alpha > 0.0 && alpha <= 2.0) => {
                Err(Error::Parameter(format!("stable index {alpha} outside (0, 2]")))
            }
            LevyExponent::RelativisticStable { rho, mass } if !(rho > 0.0 && rho < 2.0 && mass > 0.0) => Err(Error::Parameter(format!(
                "relativistic parameters rho={rho}, mass={mass} need 0<rho<2, mass>0"
            ))),
            _ => Ok(()),
        }
    }

    /// `ψ` as a function of `r = |ξ|`.
    pub fn eval_radial<T: Real>(&self, r: T) -> T {
        let r = r.abs();
        match *self {
            LevyExponent::Stable { alpha } => {
                if alpha == 2.0 {
                    r * r
                } else if r == T::zero() {
                    T::zero()
                } else {
                    r.powf(lit(alpha))
                }
            }
            LevyExponent::Gaussian => r * r,
            LevyExponent::RelativisticStable { rho, mass } => {
                let m = lit::<T>(mass);
                let h = lit::<T>(rho / 2.0);
                // (r² + m²)^{ρ/2} − m^ρ = m^ρ ((1 + (r/m)²)^{ρ/2} − 1), via ln_1p/exp_m1
                let u = r / m;
                m.powf(lit(rho)) * ((u * u).ln_1p() * h).exp_m1()
            }
        }
    }

    pub fn eval<T: Real>(&self, xi: &[T]) -> T {
        self.eval_radial(crate::scalar::norm(xi))
    }

    /// Stable index when the exponent is exactly `|ξ|^α`.
    pub fn stable_index(&self) -> Option<f64> {
        match *self {
            LevyExponent::Stable { alpha } => Some(alpha),
            LevyExponent::Gaussian => Some(2.0),
            _ => None,
        }
    }

    /// Multiple `g` of the identity in the Gaussian part: `½ ξ·(g I) ξ`.
    pub fn gaussian_part(&self) -> f64 {
        match self.stable_index() {
            Some(2.0) => 2.0,
            _ => 0.0,
        }
    }

    /// Jump kernel in dimension `d`, scaled by `factor`.
    pub fn kernel<T: Real>(&self, d: usize, factor: T) -> Option<KernelTerm<T>> {
        match *self {
            LevyExponent::Stable { alpha } if alpha < 2.0 => Some(KernelTerm::Power {
                scale: factor * lit(stable_constant(alpha, d)),
                alpha: lit(alpha),
                tempering: T::zero(),
            }),
            LevyExponent::RelativisticStable { rho, mass } => {
                let profile = relativistic_profile(rho, mass, d);
                let f = to_f64(factor);
                Some(KernelTerm::radial(move |r: T| lit::<T>(f * profile(to_f64(r))), lit(rho), lit(1.0)))
            }
            _ => None,
        }
    }

    /// Upper bound for the growth index: `ψ(ξ) ≲ |ξ|^γ` for large `|ξ|`.
    pub fn index(&self) -> f64 {
        match *self {
            LevyExponent::Stable { alpha } => alpha,
            LevyExponent::Gaussian => 2.0,
            LevyExponent::RelativisticStable { rho, .. } => rho,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            LevyExponent::Stable { alpha } => format!("stable(alpha={alpha})"),
            LevyExponent::Gaussian => "gaussian".into(),
            LevyExponent::RelativisticStable { rho, mass } => format!("relativistic(rho={rho}, mass={mass})"),
        }
    }
}

/// Radial Lévy density of the relativistic stable exponent, obtained by
/// subordinating Brownian motion (variance `2t`) with the tempered stable
/// subordinator of index `ρ/2`:
/// `ν(y) = ρ/(2Γ(1−ρ/2)) (4π)^{−d/2} · 2 (r/(2m))^{−(d+ρ)/2} K_{(d+ρ)/2}(m r)`.
pub fn relativistic_profile(rho: f64, mass: f64, d: usize) -> impl Fn(f64) -> f64 + Send + Sync + Clone {
    let df = d as f64;
    let pref = rho / (2.0 * statrs::function::gamma::gamma(1.0 - rho / 2.0)) * (4.0 * std::f64::consts::PI).powf(-df / 2.0) * 2.0;
    let v = (df + rho) / 2.0;
    move |r: f64| {
        if r <= 0.0 {
            return f64::INFINITY;
        }
        pref * (r / (2.0 * mass)).powf(-v) * bessel_k(v, mass * r)
    }
}
