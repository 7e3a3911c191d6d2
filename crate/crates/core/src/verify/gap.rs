//! `max_n ‖A_n f − g‖_{L^p(m)} + ‖L f − g‖_{L^p(m)}` by quadrature.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{apply_integro, TestFunction};
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};
use crate::verify::krylov::DensityMeasure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// `‖A_n f − g‖` for each supplied `A_n`.
    pub per_n: Vec<f64>,
    pub limit_term: f64,
    pub value: f64,
}

/// The gap over `window`, with quadrature panels split at `breaks` (where
/// the coefficients may jump). One-dimensional symbols only.
#[allow(clippy::too_many_arguments)]
pub fn generator_gap<T: Real, G: Fn(f64) -> f64 + Sync>(
    a_n: &[SymbolField<T>],
    l: &SymbolField<T>,
    f: &TestFunction<T>,
    m: &DensityMeasure,
    p: f64,
    g: G,
    window: (f64, f64),
    breaks: &[f64],
) -> Result<GapReport> {
    if !(p >= 1.0) || !(window.0 < window.1) {
        return Err(Error::Parameter("generator gap needs p >= 1 and a nonempty window".into()));
    }
    if l.dim() != 1 || a_n.iter().any(|a| a.dim() != 1) {
        return Err(Error::Dimension {
            dim: l.dim(),
            op: "generator gap",
        });
    }
    let rule = m.rule(window.0, window.1, breaks);
    let gv: Vec<f64> = rule.iter().map(|(x, _)| g(*x)).collect();
    let norm = |s: &SymbolField<T>| -> Result<f64> {
        let terms = rule
            .par_iter()
            .zip(&gv)
            .map(|((x, w), gx)| Ok(w * (to_f64(apply_integro(s, f, &[lit::<T>(*x)])?) - gx).abs().powf(p)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(terms.iter().sum::<f64>().powf(1.0 / p))
    };
    let per_n = a_n.iter().map(norm).collect::<Result<Vec<f64>>>()?;
    let limit_term = norm(l)?;
    Ok(GapReport {
        value: per_n.iter().copied().fold(0.0, f64::max) + limit_term,
        per_n,
        limit_term,
    })
}
