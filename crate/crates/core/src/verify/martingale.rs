//! Monte Carlo estimate of
//! `E[∏ gᵢ(X_{tᵢ}) (f(X_t) − f(X_s) − ∫_s^t Af(X_r) dr)]`, which vanishes for
//! a solution of the martingale problem.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{apply_integro, AfTable, TestFunction};
use crate::levy::symbol::SymbolField;
use crate::scalar::{norm, to_f64, Real};
use crate::simulate::SolutionEnsemble;
use crate::stats::{mean, std_error};
use crate::verify::check::CheckResult;

/// A bounded continuous weight with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeFn {
    Constant {
        value: f64,
    },
    /// The standard bump `u(|x − c| / R)`.
    Bump {
        center: Vec<f64>,
        radius: f64,
    },
    /// `1 / (1 + e^{−slope (x₀ − center)})`.
    Logistic {
        center: f64,
        slope: f64,
    },
}

impl ProbeFn {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ProbeFn::Constant { value } => *value,
            ProbeFn::Bump { center, radius } => {
                let d: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
                crate::generator::bump_profile(norm(&d) / radius)[0]
            }
            ProbeFn::Logistic { center, slope } => 1.0 / (1.0 + (-slope * (x[0] - center)).exp()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ProbeFn::Constant { value } if !(0.0..=1.0).contains(value) => {
                Err(Error::Parameter(format!("probe constant {value} outside [0, 1]")))
            }
            ProbeFn::Bump { radius, .. } if *radius <= 0.0 => Err(Error::Parameter("probe radius must be positive".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub time: f64,
    pub g: ProbeFn,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MartingaleOptions {
    /// Node spacing of the `Af` table; defaults to `scale(f)/256`.
    pub table_spacing: Option<f64>,
    /// Points where the coefficients may jump.
    pub breaks: Vec<f64>,
    /// Evaluate `Af` directly at every state instead of tabulating.
    pub direct: bool,
}

pub(crate) fn grid_index<T: Real>(ens: &SolutionEnsemble<T>, time: f64) -> Result<usize> {
    let k = ens.time_index(time);
    if (to_f64(ens.times[k]) - time).abs() > 1e-9 * (1.0 + time.abs()) {
        return Err(Error::Parameter(format!("time {time} is not on the simulation grid")));
    }
    Ok(k)
}

/// `Af` along paths: a table in dimension one, direct evaluation otherwise.
pub(crate) enum AfEval<'a, T: Real> {
    Table(AfTable<'a, T>),
    Direct(&'a SymbolField<T>, &'a TestFunction<T>),
}

impl<'a, T: Real> AfEval<'a, T> {
    /// Table over the states of `ens` between grid indices `k0` and `k1`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn over(
        sym: &'a SymbolField<T>,
        f: &'a TestFunction<T>,
        ens: &SolutionEnsemble<T>,
        k0: usize,
        k1: usize,
        spacing: Option<f64>,
        breaks: &[f64],
        direct: bool,
    ) -> Result<Self> {
        if direct || sym.dim() != 1 {
            return Ok(AfEval::Direct(sym, f));
        }
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in k0..=k1 {
            for v in ens.slice_at(k) {
                lo = lo.min(to_f64(*v));
                hi = hi.max(to_f64(*v));
            }
        }
        let c = to_f64(f.center()[0]);
        let w = (8.0 * to_f64(f.effective_radius())).max(4.0);
        let h = spacing.unwrap_or(to_f64(f.scale()) / 256.0);
        lo = lo.max(c - w) - 4.0 * h;
        hi = hi.min(c + w) + 4.0 * h;
        if hi <= lo {
            return Ok(AfEval::Direct(sym, f));
        }
        Ok(AfEval::Table(AfTable::build(sym, f, lo, hi, h, breaks)?))
    }

    pub(crate) fn eval(&self, x: &[T]) -> Result<f64> {
        match self {
            AfEval::Table(t) => t.eval(to_f64(x[0])),
            AfEval::Direct(s, f) => Ok(to_f64(apply_integro(s, f, x)?)),
        }
    }

    pub(crate) fn interpolation_error(&self) -> f64 {
        match self {
            AfEval::Table(t) => t.interpolation_error(),
            AfEval::Direct(..) => 0.0,
        }
    }
}

/// Trapezoid sums of `a` with step `h` and with step `2h`; `a` has one
/// value per grid point.
pub(crate) fn trapezoid_pair(a: &[f64], h: &[f64]) -> (f64, f64) {
    let mut fine = 0.0;
    for k in 0..a.len() - 1 {
        fine += 0.5 * h[k] * (a[k] + a[k + 1]);
    }
    let mut coarse = 0.0;
    let mut k = 0;
    while k + 1 < a.len() {
        if k + 2 < a.len() {
            coarse += 0.5 * (h[k] + h[k + 1]) * (a[k] + a[k + 2]);
            k += 2;
        } else {
            coarse += 0.5 * h[k] * (a[k] + a[k + 1]);
            k += 1;
        }
    }
    (fine, coarse)
}

/// Target 0. The bias budget is a Richardson estimate of the trapezoid error
/// (a third of the mean gap between step `dt` and step `2dt`) plus the `Af`
/// interpolation error times `t − s`.
pub fn martingale_residual<T: Real>(
    ens: &SolutionEnsemble<T>,
    sym: &SymbolField<T>,
    f: &TestFunction<T>,
    s: f64,
    t: f64,
    probes: &[Probe],
    opts: &MartingaleOptions,
) -> Result<CheckResult> {
    if !(s <= t) {
        return Err(Error::Parameter("martingale residual needs s <= t".into()));
    }
    if sym.dim() != ens.dim || f.dim() != ens.dim {
        return Err(Error::Parameter("ensemble, symbol and test function dimensions differ".into()));
    }
    let ks = grid_index(ens, s)?;
    let kt = grid_index(ens, t)?;
    let mut pk = Vec::with_capacity(probes.len());
    for p in probes {
        p.g.validate()?;
        if p.time > s + 1e-12 {
            return Err(Error::Parameter(format!("probe time {} after s = {s}", p.time)));
        }
        pk.push(grid_index(ens, p.time)?);
    }
    let af = AfEval::over(sym, f, ens, ks, kt, opts.table_spacing, &opts.breaks, opts.direct)?;
    let h: Vec<f64> = (ks..kt).map(|k| to_f64(ens.times[k + 1] - ens.times[k])).collect();
    let rows: Vec<(f64, f64)> = (0..ens.n_paths)
        .into_par_iter()
        .map(|p| {
            let w = probes.iter().zip(&pk).fold(1.0, |acc, (pr, &k)| {
                let x: Vec<f64> = ens.state(p, k).iter().map(|v| to_f64(*v)).collect();
                acc * pr.g.eval(&x)
            });
            if w == 0.0 {
                return Ok((0.0, 0.0));
            }
            let a = (ks..=kt).map(|k| af.eval(ens.state(p, k))).collect::<Result<Vec<f64>>>()?;
            let (fine, coarse) = if a.len() > 1 { trapezoid_pair(&a, &h) } else { (0.0, 0.0) };
            let df = to_f64(f.value(ens.state(p, kt)) - f.value(ens.state(p, ks)));
            Ok((w * (df - fine), w * (coarse - fine)))
        })
        .collect::<Result<_>>()?;
    let resid: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let gaps: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let budget = mean(&gaps).abs() / 3.0 + (t - s) * af.interpolation_error();
    let se = if resid.len() > 1 { std_error(&resid) } else { f64::NAN };
    Ok(
        CheckResult::equality("martingale_residual", mean(&resid), 0.0, se, budget, ens.n_paths)
            .with_inputs(&(sym.label(), s, t, probes, &ens.meta, ens.digest()))
            .with_note("Euler surrogate: the weak discretization error of the scheme itself is not included in the budget"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::catalog::make_catalog_symbol;
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;
    use crate::report::Verdict;
    use crate::simulate::{simulate_ensemble, InitialLaw, SchemeSpec};

    fn scheme(b: f64, s: f64, psi: LevyExponent) -> SchemeSpec {
        SchemeSpec::Sde {
            drift: CoeffFn::constant(b),
            sigma: CoeffFn::constant(s),
            driver: psi,
            small_jump_cutoff: 1e-3,
            jump_threshold: 1.0,
        }
    }

    fn symbol(b: f64, s: f64, psi: LevyExponent) -> SymbolField<f64> {
        make_catalog_symbol(&scheme(b, s, psi).symbol_spec().unwrap()).unwrap()
    }

    #[test]
    fn trapezoids() {
        let a = [0.0, 1.0, 4.0, 9.0, 16.0];
        let h = [1.0; 4];
        let (fine, coarse) = trapezoid_pair(&a, &h);
        assert_eq!(fine, 22.0);
        assert_eq!(coarse, 24.0);
    }

    #[test]
    fn deterministic_drift() {
        let sc = scheme(1.0, 0.0, LevyExponent::Gaussian);
        let dt = 1.0 / 64.0;
        let e = simulate_ensemble::<f64>(
            &sc,
            &InitialLaw::Uniform {
                lo: vec![-1.5],
                hi: vec![0.5],
            },
            200,
            1.0,
            dt,
            1,
        )
        .unwrap();
        let f = TestFunction::bump(vec![0.0], 1.0).unwrap();
        let r = martingale_residual(
            &e,
            &symbol(1.0, 0.0, LevyExponent::Gaussian),
            &f,
            0.0,
            1.0,
            &[],
            &Default::default(),
        )
        .unwrap();
        assert!(r.statistic.abs() < f.norms().norm2() * dt, "{r:?}");
    }

    #[test]
    fn stable_process_is_a_martingale_and_mismatch_is_detected() {
        let psi = LevyExponent::Stable { alpha: 1.5 };
        let sc = scheme(1.0, 1.0, psi);
        let e = simulate_ensemble::<f64>(&sc, &InitialLaw::dirac(vec![-1.0]), 20_000, 1.0, 1.0 / 32.0, 2).unwrap();
        // increasing on [−1.5, 0.5], where most of the mass stays
        let f = TestFunction::bump(vec![2.5], 4.0).unwrap();
        let probes = [Probe {
            time: 0.25,
            g: ProbeFn::Logistic { center: 0.0, slope: 2.0 },
        }];
        let r = martingale_residual(&e, &symbol(1.0, 1.0, psi), &f, 0.25, 1.0, &probes, &Default::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let bad = martingale_residual(&e, &symbol(-1.0, 1.0, psi), &f, 0.25, 1.0, &probes, &Default::default()).unwrap();
        assert!(bad.z_score() > 5.0, "{bad:?}");
    }

    #[test]
    fn off_grid_times_are_rejected() {
        let sc = scheme(0.0, 1.0, LevyExponent::Gaussian);
        let e = simulate_ensemble::<f64>(&sc, &InitialLaw::dirac(vec![0.0]), 10, 1.0, 0.25, 1).unwrap();
        let f = TestFunction::bump(vec![0.0], 1.0).unwrap();
        let s = symbol(0.0, 1.0, LevyExponent::Gaussian);
        assert!(martingale_residual(&e, &s, &f, 0.3, 1.0, &[], &Default::default()).is_err());
    }
}
