//! `R_λ f(x) = E^x ∫₀^∞ e^{−λt} f(X_t) dt` from ensembles, a Fourier oracle
//! for constant coefficients, and the identity
//! `φ(x) = ∫₀^∞ e^{−λt} E^x (λφ − Aφ)(X_t) dt`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::TestFunction;
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};
use crate::simulate::{InitialLaw, SolutionEnsemble};
use crate::stats::{mean, std_error};
use crate::verify::martingale::AfEval;
use crate::verify::CheckResult;

/// Largest truncation bound `e^{−λT} sup|h| / λ` accepted by default.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolventEstimate {
    pub value: f64,
    pub std_error: f64,
    /// `e^{−λT} sup|f| / λ`.
    pub truncation_bound: f64,
    /// Richardson estimate of the time discretization error.
    pub discretization_budget: f64,
    pub n_paths: usize,
}

/// Weights of `∫_{t₀}^{t₀+h} e^{−λt} a(t) dt` for `a` linear between its
/// end values, relative to `e^{−λt₀}`.
fn exp_weights(lambda: f64, h: f64) -> (f64, f64) {
    let z = lambda * h;
    if z < 1e-6 {
        return (h * (0.5 - z / 6.0), h * (0.5 - z / 3.0));
    }
    let em = (-z).exp();
    let i0 = -(-z).exp_m1() / lambda;
    let i1 = (1.0 - em * (1.0 + z)) / (lambda * z);
    (i0 - i1, i1)
}

/// `∫₀^T e^{−λt} a dt` with `a` linear between grid values, plus the tail
/// `e^{−λT} a(T) / λ`; the same with every other grid point.
fn exp_integral_pair(a: &[f64], times: &[f64], lambda: f64) -> (f64, f64) {
    let rule = |step: usize| {
        let mut acc = 0.0;
        let mut k = 0;
        while k + 1 < a.len() {
            let j = (k + step).min(a.len() - 1);
            let (w0, w1) = exp_weights(lambda, times[j] - times[k]);
            acc += (-lambda * times[k]).exp() * (w0 * a[k] + w1 * a[j]);
            k = j;
        }
        acc + (-lambda * times[a.len() - 1]).exp() * a[a.len() - 1] / lambda
    };
    (rule(1), rule(2))
}

fn check_horizon(horizon: f64, lambda: f64, sup: f64, tolerance: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Parameter(format!("resolvent needs lambda > 0, got {lambda}")));
    }
    let bound = (-lambda * horizon).exp() * sup / lambda;
    if bound > tolerance {
        return Err(Error::Horizon { horizon, bound, tolerance });
    }
    Ok(bound)
}

/// Per-path values `∫ e^{−λt} h(X_t) dt` (fine and coarse) over the grid.
fn per_path<T: Real, H>(ens: &SolutionEnsemble<T>, lambda: f64, h: H) -> Result<Vec<(f64, f64)>>
where
    H: Fn(&[T]) -> Result<f64> + Sync,
{
    let times: Vec<f64> = ens.times.iter().map(|t| to_f64(*t)).collect();
    (0..ens.n_paths)
        .into_par_iter()
        .map(|p| {
            let a = (0..ens.n_times()).map(|k| h(ens.state(p, k))).collect::<Result<Vec<f64>>>()?;
            Ok(exp_integral_pair(&a, &times, lambda))
        })
        .collect()
}

fn summarize(rows: &[(f64, f64)], truncation_bound: f64) -> ResolventEstimate {
    let fine: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let gaps: Vec<f64> = rows.iter().map(|r| r.1 - r.0).collect();
    ResolventEstimate {
        value: mean(&fine),
        std_error: if fine.len() > 1 { std_error(&fine) } else { 0.0 },
        truncation_bound,
        discretization_budget: mean(&gaps).abs() / 3.0,
        n_paths: rows.len(),
    }
}

/// Monte Carlo resolvent of a bounded `f` with `sup |f| ≤ f_sup`. The
/// integrand is taken linear between grid points and integrated exactly
/// against `e^{−λt}`; beyond the horizon the last state is frozen, which is
/// exact for constants and off by at most `e^{−λT} f_sup / λ` otherwise.
pub fn resolvent_mc<T: Real, F>(ens: &SolutionEnsemble<T>, f: F, f_sup: f64, lambda: f64, tolerance: f64) -> Result<ResolventEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let bound = check_horizon(ens.meta.horizon, lambda, f_sup, tolerance)?;
    let rows = per_path(ens, lambda, |x: &[T]| {
        let xf: Vec<f64> = x.iter().map(|v| to_f64(*v)).collect();
        Ok(f(&xf))
    })?;
    Ok(summarize(&rows, bound))
}

/// `R_λ f(x) = ∫ e^{ixξ} f̂(ξ) / (λ + q(ξ)) dξ` for a constant-coefficient
/// symbol in dimension one.
pub fn resolvent_oracle<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, lambda: f64, x: f64) -> Result<f64> {
    if sym.dim() != 1 || f.dim() != 1 {
        return Err(Error::Dimension {
            dim: sym.dim(),
            op: "Fourier resolvent",
        });
    }
    if !sym.flags().constant {
        return Err(Error::Precondition("the Fourier resolvent needs constant coefficients".into()));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let tab = f.fourier_table()?;
    let zero = [T::zero()];
    let lam = lit::<T>(lambda);
    let xt = lit::<T>(x);
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..tab.xi.len() {
        let xi = tab.xi[k];
        let qp = sym.eval(&zero, &[xi])?;
        let qm = sym.eval(&zero, &[-xi])?;
        let e = Complex::new(T::zero(), xt * xi).exp();
        acc += (e * tab.hat_pos[k] / (qp + lam) + e.conj() * tab.hat_neg[k] / (qm + lam)) * tab.w[k];
    }
    Ok(to_f64(acc.re))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupResolvent {
    pub value: f64,
    /// Index of the law attaining the maximum.
    pub argmax: usize,
    pub per_law: Vec<ResolventEstimate>,
    pub note: String,
}

fn dirac_point(law: &InitialLaw) -> Option<&[f64]> {
    match law {
        InitialLaw::Dirac { point } => Some(point),
        _ => None,
    }
}

/// Maximum of [`resolvent_mc`] over the supplied laws, all started at the
/// same point. The supremum over every solution is at least this value.
pub fn sup_resolvent<T: Real, F>(ensembles: &[&SolutionEnsemble<T>], f: F, f_sup: f64, lambda: f64, tolerance: f64) -> Result<SupResolvent>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let first = ensembles.first().ok_or(Error::EmptyGrid)?;
    let x = dirac_point(&first.meta.initial_law)
        .ok_or_else(|| Error::Precondition("sup resolvent needs ensembles started at a point".into()))?;
    if ensembles.iter().any(|e| dirac_point(&e.meta.initial_law) != Some(x)) {
        return Err(Error::Precondition("ensembles start at different points".into()));
    }
    let per_law = ensembles
        .iter()
        .map(|e| resolvent_mc(e, &f, f_sup, lambda, tolerance))
        .collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (i, r) in per_law.iter().enumerate() {
        if r.value > per_law[argmax].value {
            argmax = i;
        }
    }
    Ok(SupResolvent {
        value: per_law[argmax].value,
        argmax,
        per_law,
        note: "lower bound for the selection sup".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IdentityOptions {
    /// Rate in the discount `e^{−μt}`; `None` means `μ = λ`. A different
    /// value breaks the identity (negative control).
    pub discount: Option<f64>,
    pub tail_tolerance: f64,
    pub table_spacing: Option<f64>,
    pub breaks: Vec<f64>,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        Self {
            discount: None,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            table_spacing: None,
            breaks: Vec::new(),
        }
    }
}

/// `∫₀^∞ e^{−μt} E^x (λφ − Aφ)(X_t) dt` against `φ(x)` for an ensemble
/// started at `x`.
pub fn resolvent_identity_check<T: Real>(
    ens: &SolutionEnsemble<T>,
    sym: &SymbolField<T>,
    phi: &TestFunction<T>,
    lambda: f64,
    opts: &IdentityOptions,
) -> Result<CheckResult> {
    let x = dirac_point(&ens.meta.initial_law)
        .ok_or_else(|| Error::Precondition("the resolvent identity needs an ensemble started at a point".into()))?
        .to_vec();
    let mu = opts.discount.unwrap_or(lambda);
    let af = AfEval::over(sym, phi, ens, 0, ens.n_times() - 1, opts.table_spacing, &opts.breaks, false)?;
    let a_sup = match &af {
        AfEval::Table(t) => t.max_abs(),
        AfEval::Direct(..) => phi.norms().hess * sym_growth(sym)?,
    };
    let sup = lambda * phi.norms().sup + a_sup;
    let tail = check_horizon(ens.meta.horizon, mu, sup, opts.tail_tolerance)?;
    let lam = lit::<T>(lambda);
    let rows = per_path(ens, mu, |y: &[T]| Ok(to_f64(lam * phi.value(y)) - af.eval(y)?))?;
    let est = summarize(&rows, tail);
    let xt: Vec<T> = x.iter().map(|v| lit(*v)).collect();
    let target = to_f64(phi.value(&xt));
    let budget = est.discretization_budget + 2.0 * tail + af.interpolation_error() / mu;
    Ok(
        CheckResult::equality("resolvent_identity", est.value, target, est.std_error, budget, ens.n_paths).with_inputs(&(
            sym.label(),
            lambda,
            mu,
            &ens.meta,
            ens.digest(),
        )),
    )
}

/// Crude `sup_ξ |q(0, ξ)| / (1 + |ξ|²)` on a few frequencies, used only to
/// size the tail of the identity in dimensions above one.
fn sym_growth<T: Real>(sym: &SymbolField<T>) -> Result<f64> {
    let d = sym.dim();
    let mut m = 0.0f64;
    for r in [0.0, 0.5, 1.0, 2.0, 8.0, 32.0] {
        for j in 0..d {
            let mut xi = vec![T::zero(); d];
            xi[j] = lit(r);
            m = m.max(to_f64(sym.eval(&vec![T::zero(); d], &xi)?.norm()) / (1.0 + r * r));
        }
    }
    Ok(2.0 * m * d as f64)
}
