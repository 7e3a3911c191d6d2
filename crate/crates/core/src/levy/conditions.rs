//! Sampled versions of the boundedness and continuity conditions on
//! symbols. Every supremum over a continuum is replaced by a supremum over
//! an explicit lattice, and the lattice is recorded in the report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::symbol::SymbolField;
use crate::report::Verdict;
use crate::scalar::{lit, norm, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionId {
    LocalBounded,
    ContAtZero,
    LinearGrowth,
    #[serde(rename = "C1_EQUIBOUNDED")]
    C1Equibounded,
    #[serde(rename = "C2_EQUICONTINUOUS")]
    C2Equicontinuous,
    /// Large-jump bound on the kernel, `κ(x, y) ≤ c₁|y|^{−d−tail}` for `|y| > 2`.
    #[serde(rename = "H1_LARGE_JUMPS")]
    H1LargeJumps,
    /// Two-sided stable comparison for `0 < |y| ≤ 2`.
    #[serde(rename = "H2_COMPARABILITY")]
    H2Comparability,
    /// `κ(x, x − z) ≤ c₄ κ(y, y − z)`.
    #[serde(rename = "H3_TRANSLATION")]
    H3Translation,
    /// `β − α < 1`.
    IndexGap,
}

impl ConditionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionId::LocalBounded => "LOCAL_BOUNDED",
            ConditionId::ContAtZero => "CONT_AT_ZERO",
            ConditionId::LinearGrowth => "LINEAR_GROWTH",
            ConditionId::C1Equibounded => "C1_EQUIBOUNDED",
            ConditionId::C2Equicontinuous => "C2_EQUICONTINUOUS",
            ConditionId::H1LargeJumps => "H1_LARGE_JUMPS",
            ConditionId::H2Comparability => "H2_COMPARABILITY",
            ConditionId::H3Translation => "H3_TRANSLATION",
            ConditionId::IndexGap => "INDEX_GAP",
        }
    }
}

/// Description of the sampling lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: usize,
    /// Lattice points per half-axis in `x`-balls (or samples for random designs).
    pub x_density: usize,
    /// Lattice points per half-axis in `ξ`-balls.
    pub xi_density: usize,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub grid_spec: GridSpec,
    /// `(R, sampled sup)` pairs.
    pub sup_values: Vec<(f64, f64)>,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Sampled `c_R` with `|q(x, ξ)| ≤ c_R (1 + |ξ|²)` for `|x| ≤ R`,
    /// reported for `LOCAL_BOUNDED` only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub empirical_constant: Vec<(f64, f64)>,
    pub family_size: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// Points `k · radius / density` per axis lying in the closed ball.
pub fn ball_lattice<T: Real>(dim: usize, radius: T, density: usize) -> Vec<Vec<T>> {
    let n = density.max(1) as i64;
    let step = radius / lit(n as f64);
    let lim = radius * lit(1.0 + 1e-12);
    let mut out = Vec::new();
    let mut idx = vec![-n; dim];
    loop {
        let p: Vec<T> = idx.iter().map(|&k| step * lit(k as f64)).collect();
        if norm(&p) <= lim {
            out.push(p);
        }
        let mut j = 0;
        loop {
            if j == dim {
                return out;
            }
            idx[j] += 1;
            if idx[j] <= n {
                break;
            }
            idx[j] = -n;
            j += 1;
        }
    }
}

/// Directions of the lattice projected to the sphere of radius `radius`.
pub fn sphere_points<T: Real>(dim: usize, radius: T, density: usize) -> Vec<Vec<T>> {
    if dim == 1 {
        return vec![vec![-radius], vec![radius]];
    }
    let mut out: Vec<Vec<T>> = Vec::new();
    for p in ball_lattice::<T>(dim, T::one(), density) {
        let r = norm(&p);
        if r == T::zero() {
            continue;
        }
        let q: Vec<T> = p.iter().map(|&v| v / r * radius).collect();
        let dup = out.iter().any(|o| {
            let d: Vec<T> = o.iter().zip(&q).map(|(a, b)| *a - *b).collect();
            norm(&d) <= radius * lit(1e-9)
        });
        if !dup {
            out.push(q);
        }
    }
    out
}

/// `ξ`-lattice of the ball of radius `rho`, reduced to a half space (the
/// modulus of a symbol is even in `ξ`).
pub(crate) fn xi_lattice<T: Real>(dim: usize, rho: T, density: usize) -> Vec<Vec<T>> {
    ball_lattice(dim, rho, density)
        .into_iter()
        .filter(|p| p.iter().find(|v| **v != T::zero()).is_none_or(|v| *v > T::zero()))
        .collect()
}

fn x_lattice<T: Real>(sym: &SymbolField<T>, radius: T, density: usize) -> Vec<Vec<T>> {
    if sym.flags().constant {
        vec![vec![T::zero(); sym.dim()]]
    } else {
        ball_lattice(sym.dim(), radius, density)
    }
}

/// `sup |q(x, ξ)|` (or `|Re q|`) over the product of two point sets.
/// Non-finite values propagate as `+∞`.
pub(crate) fn sampled_sup<T: Real>(sym: &SymbolField<T>, xs: &[Vec<T>], xis: &[Vec<T>], real_part: bool) -> Result<f64> {
    let per_x: Vec<f64> = xs
        .par_iter()
        .map(|x| {
            let mut m = 0.0f64;
            for xi in xis {
                let q = sym.eval(x, xi)?;
                let v = to_f64(if real_part { q.re.abs() } else { q.norm() });
                m = if v.is_nan() { f64::INFINITY } else { m.max(v) };
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(per_x.into_iter().fold(0.0, f64::max))
}

fn check_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if r_grid[0] <= 0.0 || r_grid.windows(2).any(|w| w[1] <= w[0]) || r_grid.iter().any(|r| !r.is_finite()) {
        return Err(Error::Parameter("R grid must be positive, finite and strictly increasing".into()));
    }
    Ok(())
}

const MONOTONE_TOL: f64 = 1e-9;
const GROWTH_SLOPE_TOL: f64 = 0.05;

/// Pass iff the sequence is finite, non-increasing up to a relative
/// tolerance and (unless identically zero) strictly smaller at the end.
fn decreasing_verdict(sups: &[(f64, f64)]) -> Verdict {
    if sups.iter().any(|(_, s)| !s.is_finite()) {
        return Verdict::Fail;
    }
    let nonincreasing = sups.windows(2).all(|w| w[1].1 <= w[0].1 + MONOTONE_TOL * (1.0 + w[0].1));
    let first = sups[0].1;
    let last = sups[sups.len() - 1].1;
    if first <= MONOTONE_TOL {
        return Verdict::from_bool(last <= MONOTONE_TOL);
    }
    if sups.len() == 1 {
        return Verdict::Inconclusive;
    }
    Verdict::from_bool(nonincreasing && last < first)
}

fn finite_verdict(sups: &[(f64, f64)]) -> Verdict {
    Verdict::from_bool(sups.iter().all(|(_, s)| s.is_finite()))
}

fn growth_verdict(sups: &[(f64, f64)]) -> Verdict {
    if sups.iter().any(|(_, s)| !s.is_finite()) {
        return Verdict::Fail;
    }
    if sups.len() < 2 {
        return Verdict::Inconclusive;
    }
    let (r0, s0) = sups[sups.len() - 2];
    let (r1, s1) = sups[sups.len() - 1];
    if s1 <= MONOTONE_TOL * (1.0 + s0) {
        return Verdict::Pass;
    }
    let slope = ((s1 + f64::MIN_POSITIVE) / (s0 + f64::MIN_POSITIVE)).ln() / (r1 / r0).ln();
    Verdict::from_bool(slope <= GROWTH_SLOPE_TOL)
}

fn grid_spec(dim: usize, density: usize, description: &str) -> GridSpec {
    GridSpec {
        dim,
        x_density: density,
        xi_density: density,
        description: description.to_string(),
    }
}

/// Evaluates one condition on a single symbol. `C1`/`C2` treat the symbol
/// as a family of size one.
pub fn check_conditions<T: Real>(
    sym: &SymbolField<T>,
    which: ConditionId,
    r_grid: &[f64],
    xi_grid_density: usize,
) -> Result<ConditionReport> {
    check_family_conditions(std::slice::from_ref(sym), which, r_grid, xi_grid_density)
}

/// Evaluates a condition with the supremum taken over a family of symbols.
pub fn check_family_conditions<T: Real>(
    family: &[SymbolField<T>],
    which: ConditionId,
    r_grid: &[f64],
    density: usize,
) -> Result<ConditionReport> {
    check_grid(r_grid)?;
    let Some(first) = family.first() else {
        return Err(Error::EmptyGrid);
    };
    let dim = first.dim();
    if family.iter().any(|s| s.dim() != dim) {
        return Err(Error::Parameter("family members live in different dimensions".into()));
    }
    if density == 0 {
        return Err(Error::Parameter("lattice density must be positive".into()));
    }
    let tol = to_f64(first.tolerance());
    let mut sups = Vec::with_capacity(r_grid.len());
    let mut constants = Vec::new();
    #[allow(clippy::type_complexity)]
    let (description, verdict_fn): (String, fn(&[(f64, f64)]) -> Verdict) = match which {
        ConditionId::LocalBounded => (
            format!("x: lattice of |x| <= R, {density} pts/half-axis; xi: lattice of |xi| <= 1 and of |xi| <= 16 for c_R"),
            finite_verdict,
        ),
        ConditionId::ContAtZero | ConditionId::C2Equicontinuous => (
            format!("x: lattice of |y| <= R, {density} pts/half-axis; xi: lattice of |xi| <= 1/R, {density} pts/half-axis"),
            decreasing_verdict,
        ),
        ConditionId::LinearGrowth => (
            format!("x: sphere |x| = R from lattice directions ({density}); xi: lattice of |xi| <= 1/R"),
            growth_verdict,
        ),
        ConditionId::C1Equibounded => (
            format!("x: lattice of |x| <= R, {density} pts/half-axis; |b| + |Q| + int min(1,|y|^2) nu from the triplet"),
            finite_verdict,
        ),
        other => {
            return Err(Error::Parameter(format!(
                "{} is a kernel condition; use check_harnack_kernel",
                other.as_str()
            )))
        }
    };
    for &r in r_grid {
        let rt = lit::<T>(r);
        let mut s = 0.0f64;
        for sym in family {
            let v = match which {
                ConditionId::LocalBounded => {
                    let xs = x_lattice(sym, rt, density);
                    let v = sampled_sup(sym, &xs, &xi_lattice(dim, T::one(), density), false)?;
                    let c = local_constant(sym, &xs, density)?;
                    if let Some(last) = constants.iter_mut().find(|(rr, _): &&mut (f64, f64)| *rr == r) {
                        last.1 = f64::max(last.1, c);
                    } else {
                        constants.push((r, c));
                    }
                    v
                }
                ConditionId::ContAtZero | ConditionId::C2Equicontinuous => {
                    sampled_sup(sym, &x_lattice(sym, rt, density), &xi_lattice(dim, rt.recip(), density), false)?
                }
                ConditionId::LinearGrowth => {
                    sampled_sup(sym, &sphere_points(dim, rt, density), &xi_lattice(dim, rt.recip(), density), false)?
                }
                ConditionId::C1Equibounded => {
                    let xs = x_lattice(sym, rt, density);
                    let tq = sym.tolerance();
                    let vals: Vec<f64> = xs
                        .par_iter()
                        .map(|x| Ok(to_f64(sym.triplet(x)?.characteristic_size(tq)?)))
                        .collect::<Result<_>>()?;
                    vals.into_iter().fold(0.0, |a, v| if v.is_nan() { f64::INFINITY } else { a.max(v) })
                }
                _ => unreachable!(),
            };
            s = s.max(v);
        }
        sups.push((r, s));
    }
    Ok(ConditionReport {
        condition_id: which,
        grid_spec: grid_spec(dim, density, &description),
        verdict: verdict_fn(&sups),
        sup_values: sups,
        tolerance: tol,
        empirical_constant: constants,
        family_size: family.len(),
        note: String::new(),
    })
}

/// `sup |q(x, ξ)| / (1 + |ξ|²)` over `x ∈ xs` and a lattice of `|ξ| ≤ 16`.
fn local_constant<T: Real>(sym: &SymbolField<T>, xs: &[Vec<T>], density: usize) -> Result<f64> {
    let xis = xi_lattice(sym.dim(), lit::<T>(16.0), density.max(16));
    let per_x: Vec<f64> = xs
        .par_iter()
        .map(|x| {
            let mut m = 0.0f64;
            for xi in &xis {
                let w = to_f64(norm(xi));
                let v = to_f64(sym.eval(x, xi)?.norm()) / (1.0 + w * w);
                m = if v.is_nan() { f64::INFINITY } else { m.max(v) };
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(per_x.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::catalog::{make_catalog_symbol, SymbolSpec};
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;

    fn stable_step() -> SymbolField<f64> {
        make_catalog_symbol(&SymbolSpec::IsotropicStableLike {
            alpha: CoeffFn::Step {
                at: 0.0,
                left: 0.5,
                right: 1.5,
            },
            dim: 1,
        })
        .unwrap()
    }

    #[test]
    fn local_bounded_stable_like() {
        let r = check_conditions(&stable_step(), ConditionId::LocalBounded, &[1.0, 3.0], 10).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        for (_, s) in &r.sup_values {
            assert!((s - 1.0).abs() < 1e-14);
        }
        assert_eq!(r.empirical_constant.len(), 2);
        assert!(r.empirical_constant[0].1 >= 0.5);
    }

    #[test]
    fn cont_at_zero_closed_forms() {
        let r = check_conditions(&stable_step(), ConditionId::ContAtZero, &[2.0, 4.0, 8.0], 8).unwrap();
        for (rr, s) in &r.sup_values {
            assert!((s - rr.powf(-0.5)).abs() < 1e-12, "{rr}: {s}");
        }
        assert_eq!(r.verdict, Verdict::Pass);

        let ode = make_catalog_symbol::<f64>(&SymbolSpec::SdeSymbol {
            drift: CoeffFn::SignSqrt { scale: 2.0 },
            sigma: CoeffFn::constant(0.0),
            psi: LevyExponent::Gaussian,
        })
        .unwrap();
        let r = check_conditions(&ode, ConditionId::ContAtZero, &[1.0, 4.0, 16.0, 64.0], 8).unwrap();
        for (rr, s) in &r.sup_values {
            assert!((s - 2.0 / rr.sqrt()).abs() < 1e-12, "{rr}: {s}");
        }
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn growth_and_failures() {
        let bounded_drift = make_catalog_symbol::<f64>(&SymbolSpec::SdeSymbol {
            drift: CoeffFn::Sine {
                mean: 0.0,
                amplitude: 1.0,
                frequency: 1.0,
            },
            sigma: CoeffFn::constant(1.0),
            psi: LevyExponent::Stable { alpha: 1.0 },
        })
        .unwrap();
        let r = check_conditions(&bounded_drift, ConditionId::LinearGrowth, &[2.0, 4.0, 8.0], 6).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.sup_values[2].1 < r.sup_values[0].1);

        assert!(matches!(
            check_conditions(&bounded_drift, ConditionId::ContAtZero, &[], 4),
            Err(Error::EmptyGrid)
        ));
        assert!(check_conditions(&bounded_drift, ConditionId::ContAtZero, &[2.0, 1.0], 4).is_err());
    }

    #[test]
    fn family_sup_and_characteristics() {
        let fam: Vec<SymbolField<f64>> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&s| {
                make_catalog_symbol(&SymbolSpec::SdeSymbol {
                    drift: CoeffFn::constant(0.0),
                    sigma: CoeffFn::constant(s),
                    psi: LevyExponent::Gaussian,
                })
                .unwrap()
            })
            .collect();
        // Q = 2σ² = 18 for the largest member
        let r = check_family_conditions(&fam, ConditionId::C1Equibounded, &[1.0], 4).unwrap();
        assert!((r.sup_values[0].1 - 18.0).abs() < 1e-12);
        assert_eq!(r.family_size, 3);
        let r = check_family_conditions(&fam, ConditionId::C2Equicontinuous, &[1.0, 10.0], 4).unwrap();
        assert!((r.sup_values[1].1 - 0.09).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Pass);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"C2_EQUICONTINUOUS\""));
    }

    #[test]
    fn lattices() {
        assert_eq!(ball_lattice::<f64>(1, 2.0, 4).len(), 9);
        let b = ball_lattice::<f64>(2, 1.0, 2);
        assert!(b.iter().all(|p| norm(p) <= 1.0 + 1e-12));
        assert_eq!(b.len(), 13);
        let s = sphere_points::<f64>(3, 2.0, 2);
        assert!(s.iter().all(|p| (norm(p) - 2.0).abs() < 1e-12));
        assert!(s.len() >= 6);
    }
}
