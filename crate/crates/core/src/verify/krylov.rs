//! Occupation integrals `E ∫₀ᵀ u(X_s) ds` against `c ‖u‖_{L^p(m)}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::bump_profile;
use crate::quad::gauss_legendre;
use crate::scalar::{to_f64, Real};
use crate::simulate::SolutionEnsemble;
use crate::stats::{mean, std_error};
use crate::verify::check::CheckResult;
use crate::verify::majorant::q_majorant;
use crate::verify::martingale::{grid_index, trapezoid_pair};

/// Nonnegative bounded functions on `ℝ` with compact support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum KrylovFunction {
    Zero,
    /// `𝟙_{[lo, hi]}`.
    Indicator {
        lo: f64,
        hi: f64,
    },
    /// `u(|x − center| / radius)`.
    Bump {
        center: f64,
        radius: f64,
    },
}

impl KrylovFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            KrylovFunction::Zero => 0.0,
            KrylovFunction::Indicator { lo, hi } => f64::from(u8::from(x >= lo && x <= hi)),
            KrylovFunction::Bump { center, radius } => bump_profile((x - center).abs() / radius)[0],
        }
    }

    /// Closed interval outside which the function vanishes.
    pub fn support(&self) -> Option<(f64, f64)> {
        match *self {
            KrylovFunction::Zero => None,
            KrylovFunction::Indicator { lo, hi } => (lo <= hi).then_some((lo, hi)),
            KrylovFunction::Bump { center, radius } => Some((center - radius, center + radius)),
        }
    }

    /// Points where the function is not smooth.
    pub fn breaks(&self) -> Vec<f64> {
        match *self {
            KrylovFunction::Bump { center, radius } => vec![center - 0.5 * radius, center + 0.5 * radius],
            _ => Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            KrylovFunction::Bump { radius, .. } if !(radius > 0.0) => Err(Error::Parameter("bump radius must be positive".into())),
            _ => Ok(()),
        }
    }
}

/// A measure on `ℝ` with a density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensityMeasure {
    Lebesgue,
    /// `Q(y − center) dy`: the majorant measure for a start at `center`.
    QMajorant {
        gamma0: f64,
        gamma_inf: f64,
        center: f64,
    },
    Normal {
        mean: f64,
        std: f64,
    },
}

const GEOMETRIC_LEVELS: i32 = 60;
const MAX_PANEL: f64 = 0.25;

impl DensityMeasure {
    pub fn density(&self, y: f64) -> f64 {
        match *self {
            DensityMeasure::Lebesgue => 1.0,
            DensityMeasure::QMajorant { gamma0, gamma_inf, center } => q_majorant(&[y - center], gamma0, gamma_inf),
            DensityMeasure::Normal { mean, std } => {
                let z = (y - mean) / std;
                (-0.5 * z * z).exp() / (std * (2.0 * std::f64::consts::PI).sqrt())
            }
        }
    }

    fn singular_point(&self) -> Option<f64> {
        match *self {
            DensityMeasure::QMajorant { center, .. } => Some(center),
            _ => None,
        }
    }

    fn kinks(&self) -> Vec<f64> {
        match *self {
            DensityMeasure::QMajorant { center, .. } => vec![center - 1.0, center, center + 1.0],
            DensityMeasure::Normal { mean, std } => [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0]
                .iter()
                .map(|k| mean + k * std)
                .collect(),
            DensityMeasure::Lebesgue => Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            DensityMeasure::QMajorant { gamma0, gamma_inf, .. }
                if !(gamma0 > 0.0 && gamma0 <= 2.0 && gamma_inf > 0.0 && gamma_inf <= 2.0) =>
            {
                Err(Error::Parameter("majorant exponents must lie in (0, 2]".into()))
            }
            DensityMeasure::Normal { std, .. } if !(std > 0.0) => Err(Error::Parameter("normal measure needs std > 0".into())),
            _ => Ok(()),
        }
    }

    /// Nodes and weights (density included) for `∫_lo^hi g dm`, split at
    /// `breaks` and at the kinks of the density, with geometric panels toward
    /// a singular point of the density.
    pub fn rule(&self, lo: f64, hi: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
        let mut cuts = vec![lo, hi];
        cuts.extend(breaks.iter().chain(&self.kinks()).filter(|b| **b > lo && **b < hi));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let sing = self.singular_point();
        let gl = gauss_legendre::<f64>(20);
        let mut pts = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if sing == Some(a) || sing == Some(b) {
                let (s, far) = if sing == Some(a) { (a, b) } else { (b, a) };
                // edges s + (far − s) 2^{−k}
                for k in 0..GEOMETRIC_LEVELS {
                    let e0 = s + (far - s) * 0.5f64.powi(k);
                    let e1 = s + (far - s) * 0.5f64.powi(k + 1);
                    gl.push_mapped(e0.min(e1), e0.max(e1), &mut pts);
                }
            } else {
                let n = ((b - a) / MAX_PANEL).ceil().max(1.0) as usize;
                let h = (b - a) / n as f64;
                for k in 0..n {
                    let e = a + h * k as f64;
                    gl.push_mapped(e, if k + 1 == n { b } else { e + h }, &mut pts);
                }
            }
        }
        pts.into_iter().map(|(x, w)| (x, w * self.density(x))).collect()
    }
}

/// `‖u‖_{L^p(m)}` over the support of `u`.
pub fn lp_norm(u: &KrylovFunction, m: &DensityMeasure, p: f64) -> f64 {
    let Some((lo, hi)) = u.support() else { return 0.0 };
    if hi <= lo {
        return 0.0;
    }
    let s: f64 = m.rule(lo, hi, &u.breaks()).iter().map(|(x, w)| w * u.eval(*x).abs().powf(p)).sum();
    s.powf(1.0 / p)
}

/// `E ∫₀ᵗ u(X_s) ds` (trapezoid on the grid) against `c ‖u‖_{L^p(m)}`.
/// An infinite norm passes.
pub fn krylov_check<T: Real>(
    ens: &SolutionEnsemble<T>,
    u: &KrylovFunction,
    m: &DensityMeasure,
    p: f64,
    c: f64,
    t: f64,
) -> Result<CheckResult> {
    if ens.dim != 1 {
        return Err(Error::Dimension {
            dim: ens.dim,
            op: "Krylov check",
        });
    }
    if !(p >= 1.0) {
        return Err(Error::Parameter(format!("Krylov exponent p = {p} must be >= 1")));
    }
    u.validate()?;
    m.validate()?;
    let kt = grid_index(ens, t)?;
    let h: Vec<f64> = (0..kt).map(|k| to_f64(ens.times[k + 1] - ens.times[k])).collect();
    let occ: Vec<f64> = (0..ens.n_paths)
        .into_par_iter()
        .map(|q| {
            let a: Vec<f64> = (0..=kt).map(|k| u.eval(to_f64(ens.state(q, k)[0]))).collect();
            if a.len() > 1 {
                trapezoid_pair(&a, &h).0
            } else {
                0.0
            }
        })
        .collect();
    let norm = lp_norm(u, m, p);
    let stat = mean(&occ);
    let se = if occ.len() > 1 { std_error(&occ) } else { f64::NAN };
    let inputs = (u, m, p, c, t, &ens.meta, ens.digest());
    if !norm.is_finite() {
        return Ok(CheckResult::bound("krylov", stat, f64::INFINITY, se, ens.n_paths)
            .with_inputs(&inputs)
            .with_note("infinite norm: the estimate holds trivially"));
    }
    let ratio = if norm > 0.0 { stat / norm } else { 0.0 };
    Ok(CheckResult::bound("krylov", stat, c * norm, se, ens.n_paths)
        .with_inputs(&inputs)
        .with_note(format!("norm = {norm:e}, empirical constant = {ratio:e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;
    use crate::report::Verdict;
    use crate::simulate::{simulate_ensemble, InitialLaw, SchemeSpec};

    #[test]
    fn measure_integrals() {
        let m = DensityMeasure::QMajorant {
            gamma0: 1.0,
            gamma_inf: 1.0,
            center: 0.0,
        };
        // ∫_{−1}^{1} (2 + |log|y||) dy = 4 + 2
        let s: f64 = m.rule(-1.0, 1.0, &[]).iter().map(|p| p.1).sum();
        assert!((s - 6.0).abs() < 1e-12, "{s}");
        // γ∞ = 1/2: ∫_0^1 (1 − log y + y^{−1/2}) dy = 4, plus ∫_1^3 y^{−3/2} dy
        let m = DensityMeasure::QMajorant {
            gamma0: 0.5,
            gamma_inf: 0.5,
            center: 0.0,
        };
        let s: f64 = m.rule(0.0, 3.0, &[]).iter().map(|p| p.1).sum();
        let want = 4.0 + 2.0 * (1.0 - 3f64.powf(-0.5));
        assert!((s - want).abs() < 1e-7, "{s} vs {want}");
        let u = KrylovFunction::Indicator { lo: -1.0, hi: 1.0 };
        let g = DensityMeasure::Normal { mean: 0.0, std: 1.0 };
        assert!((lp_norm(&u, &g, 1.0) - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert!((lp_norm(&u, &DensityMeasure::Lebesgue, 2.0) - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(lp_norm(&KrylovFunction::Zero, &g, 1.0), 0.0);
    }

    #[test]
    fn brownian_occupation_against_heat_kernel() {
        let sc = SchemeSpec::Sde {
            drift: CoeffFn::constant(0.0),
            sigma: CoeffFn::constant(1.0),
            driver: LevyExponent::Gaussian,
            small_jump_cutoff: 1e-3,
            jump_threshold: 1.0,
        };
        let e = simulate_ensemble::<f64>(&sc, &InitialLaw::dirac(vec![0.0]), 20_000, 1.0, 1.0 / 128.0, 5).unwrap();
        let u = KrylovFunction::Indicator { lo: -1.0, hi: 1.0 };
        // ∫₀¹ P(|N(0, 2s)| ≤ 1) ds
        let oracle = 0.720_141_106_187_292_2;
        let r = krylov_check(&e, &u, &DensityMeasure::Lebesgue, 1.0, 1.0, 1.0).unwrap();
        assert!((r.statistic - oracle).abs() < 0.02 * oracle, "{r:?}");
        assert_eq!(r.verdict, Verdict::Pass);
        let z = krylov_check(&e, &KrylovFunction::Zero, &DensityMeasure::Lebesgue, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((z.statistic, z.bound_or_target, z.verdict), (0.0, 0.0, Verdict::Pass));
    }
}
