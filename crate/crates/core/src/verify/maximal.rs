//! Exceedance probabilities of the running maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::standard_bump_constant;
use crate::levy::conditions::{ball_lattice, sampled_sup, xi_lattice};
use crate::levy::symbol::SymbolField;
use crate::report::Verdict;
use crate::scalar::{lit, norm, to_f64, Real};
use crate::simulate::SolutionEnsemble;
use crate::verify::check::CheckResult;

/// Lattice density used for `sup_{|y|≤R, |ξ|≤1/R} |q(y, ξ)|`.
pub const SUP_DENSITY: usize = 16;

/// `P(|X₀| ≤ r, max_{t_k ≤ t} |X_{t_k}| ≥ R)` against
/// `c* · t · sup_{|y|≤R, |ξ|≤1/R} |q(y, ξ)|`.
pub fn maximal_inequality_check<T: Real>(
    ens: &SolutionEnsemble<T>,
    sym: &SymbolField<T>,
    r: f64,
    big_r: f64,
    t: f64,
) -> Result<CheckResult> {
    if !(r > 0.0 && big_r >= 2.0 * r) {
        return Err(Error::Parameter(format!(
            "maximal inequality needs R >= 2r > 0, got r={r}, R={big_r}"
        )));
    }
    if to_f64(*ens.times.last().unwrap()) < t - 1e-12 {
        return Err(Error::Horizon {
            horizon: to_f64(*ens.times.last().unwrap()),
            bound: t,
            tolerance: 1e-12,
        });
    }
    if sym.dim() != ens.dim {
        return Err(Error::Parameter("ensemble and symbol dimensions differ".into()));
    }
    let sup_norm = ens.running_sup_norm(t);
    let hits = (0..ens.n_paths)
        .filter(|&p| to_f64(norm(ens.state(p, 0))) <= r && sup_norm[p] >= big_r)
        .count();
    let n = ens.n_paths as f64;
    let prob = hits as f64 / n;
    let se = (prob * (1.0 - prob) / n).sqrt();
    let xs = ball_lattice::<T>(sym.dim(), lit(big_r), SUP_DENSITY);
    let xis = xi_lattice::<T>(sym.dim(), lit(1.0 / big_r), SUP_DENSITY);
    let sup = sampled_sup(sym, &xs, &xis, false)?;
    let bound = standard_bump_constant() * t * sup;
    Ok(CheckResult::bound("maximal_inequality", prob, bound, se, ens.n_paths)
        .with_inputs(&(sym.label(), r, big_r, t, &ens.meta, ens.digest()))
        .with_note(format!("sup|q| = {sup:e} on the (R, 1/R) lattice; supremum over grid times only")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentProfile {
    pub horizon: f64,
    pub epsilon: f64,
    /// `(R, sup over the family of P(max |X| ≥ R))`, `R` increasing.
    pub profile: Vec<(f64, f64)>,
    pub family_size: usize,
    pub verdict: Verdict,
}

/// Exceedance profile over a family; passes iff the value at the largest
/// `R` is at most `epsilon`.
pub fn compact_containment_profile<T: Real>(
    family: &[&SolutionEnsemble<T>],
    horizon: f64,
    r_grid: &[f64],
    epsilon: f64,
) -> Result<ContainmentProfile> {
    if r_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for e in family {
        let h = to_f64(*e.times.last().unwrap());
        if h < horizon - 1e-12 {
            return Err(Error::Horizon {
                horizon: h,
                bound: horizon,
                tolerance: 1e-12,
            });
        }
    }
    let mut grid = r_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let sups: Vec<Vec<f64>> = family.iter().map(|e| e.running_sup_norm(horizon)).collect();
    let profile: Vec<(f64, f64)> = grid
        .iter()
        .map(|&r| {
            let p = sups
                .iter()
                .map(|s| s.iter().filter(|v| **v >= r).count() as f64 / s.len().max(1) as f64)
                .fold(0.0, f64::max);
            (r, p)
        })
        .collect();
    let last = profile.last().unwrap().1;
    Ok(ContainmentProfile {
        horizon,
        epsilon,
        family_size: family.len(),
        verdict: Verdict::from_bool(last <= epsilon),
        profile,
    })
}
