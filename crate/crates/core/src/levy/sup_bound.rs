//! A priori bounds on `‖Af‖_∞` for a compactly supported test function.
//!
//! With `spt f ⊆ B̄(0, R)`:
//! * `JumpMass`: `2‖f‖_(2) sup_{|x|≤R} (|b| + |Q| + ∫ min(|y|², 1) ν(x, dy))
//!   + ‖f‖_∞ sup_{|x|>R} ν(x, B̄(−x, R))`,
//! * `SymbolTail`: as `JumpMass` with the second term replaced by
//!   `C₂ ‖f‖_∞ sup_{|x|>R} sup_{|ξ|≤1/|x|} |Re q(x, ξ)|`,
//! * `Symbol`: `C₁ ‖f‖_(2) sup_{|x|≤R} sup_{|ξ|≤1} |q(x, ξ)|` plus the
//!   `SymbolTail` far term.
//!
//! Every sup over `x` is a sup over a finite lattice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{standard_bump_constant, TestFunction};
use crate::levy::conditions::{ball_lattice, sampled_sup, sphere_points, xi_lattice};
use crate::levy::symbol::SymbolField;
use crate::levy::triplet::{JumpMeasure, LevyTriplet};
use crate::scalar::{dot, lit, norm, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupBoundMode {
    #[default]
    JumpMass,
    SymbolTail,
    Symbol,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SupBoundOptions {
    pub mode: SupBoundMode,
    /// Defaults to the bump constant.
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    /// Lattice points per radius and axis.
    pub density: usize,
    /// Points added to the lattices, e.g. the points where `Af` is compared.
    pub extra_points: Vec<Vec<f64>>,
    pub tolerance: f64,
}

impl Default for SupBoundOptions {
    fn default() -> Self {
        Self {
            mode: SupBoundMode::JumpMass,
            c1: None,
            c2: None,
            density: 16,
            extra_points: Vec::new(),
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupBound {
    pub value: f64,
    pub local_term: f64,
    pub far_term: f64,
    /// Radius of the ball around the origin containing the support.
    pub radius: f64,
    pub mode: SupBoundMode,
}

/// Bound in the default mode.
pub fn operator_sup_bound<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>) -> Result<f64> {
    Ok(operator_sup_bound_with(sym, f, &SupBoundOptions::default())?.value)
}

pub fn operator_sup_bound_with<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, opts: &SupBoundOptions) -> Result<SupBound> {
    let d = sym.dim();
    if f.dim() != d {
        return Err(Error::Parameter("test function and symbol dimensions differ".into()));
    }
    if f.is_zero() {
        return Ok(SupBound {
            value: 0.0,
            local_term: 0.0,
            far_term: 0.0,
            radius: 0.0,
            mode: opts.mode,
        });
    }
    if f.support_radius().is_none() {
        return Err(Error::Precondition(
            "the sup bound needs a compactly supported test function".into(),
        ));
    }
    let r = f.reach_from_origin();
    let rf = to_f64(r);
    let norms = f.norms();
    let tol = lit::<T>(opts.tolerance);
    let density = opts.density.max(1);
    let extra: Vec<Vec<T>> = opts.extra_points.iter().map(|p| p.iter().map(|v| lit(*v)).collect()).collect();
    if extra.iter().any(|p| p.len() != d) {
        return Err(Error::Parameter("extra point of the wrong dimension".into()));
    }

    let mut inner = if sym.flags().constant {
        vec![vec![T::zero(); d]]
    } else {
        ball_lattice(d, r, density)
    };
    inner.extend(extra.iter().filter(|p| norm(p) <= r).cloned());
    let mut outer = shell_grid(d, r, density);
    outer.extend(extra.iter().filter(|p| norm(p) > r).cloned());

    let c1 = opts.c1.unwrap_or_else(standard_bump_constant);
    let c2 = opts.c2.unwrap_or_else(standard_bump_constant);
    let local_term = match opts.mode {
        SupBoundMode::JumpMass | SupBoundMode::SymbolTail => {
            let sizes: Vec<f64> = inner
                .par_iter()
                .map(|x| Ok(to_f64(sym.triplet(x)?.characteristic_size(tol)?)))
                .collect::<Result<_>>()?;
            2.0 * norms.norm2() * sizes.into_iter().fold(0.0, f64::max)
        }
        SupBoundMode::Symbol => c1 * norms.norm2() * sampled_sup(sym, &inner, &xi_lattice(d, T::one(), density), false)?,
    };
    let far_term = match opts.mode {
        SupBoundMode::JumpMass => {
            let masses: Vec<f64> = outer
                .par_iter()
                .map(|x| {
                    let t = sym.triplet(x)?;
                    let c: Vec<T> = x.iter().map(|v| -*v).collect();
                    Ok(to_f64(mass_in_ball(&t, &c, r, tol)?))
                })
                .collect::<Result<_>>()?;
            norms.sup * masses.into_iter().fold(0.0, f64::max)
        }
        SupBoundMode::SymbolTail | SupBoundMode::Symbol => {
            let sups: Vec<f64> = outer
                .par_iter()
                .map(|x| sampled_sup(sym, std::slice::from_ref(x), &xi_lattice(d, norm(x).recip(), density), true))
                .collect::<Result<_>>()?;
            c2 * norms.sup * sups.into_iter().fold(0.0, f64::max)
        }
    };
    Ok(SupBound {
        value: local_term + far_term,
        local_term,
        far_term,
        radius: rf,
        mode: opts.mode,
    })
}

/// Spheres of radius `R(1 + 2^{−k})`, `k = 1..10`, and `R·{2, 3, 5, 10, 100}`.
fn shell_grid<T: Real>(d: usize, r: T, density: usize) -> Vec<Vec<T>> {
    let mut radii: Vec<f64> = (1..=10).rev().map(|k| 1.0 + 0.5f64.powi(k)).collect();
    radii.extend([2.0, 3.0, 5.0, 10.0, 100.0]);
    radii.into_iter().flat_map(|s| sphere_points(d, r * lit(s), density)).collect()
}

/// `ν(B̄(c, ρ))` for a ball whose closure avoids the origin.
fn mass_in_ball<T: Real>(t: &LevyTriplet<T>, c: &[T], rho: T, tol: T) -> Result<T> {
    match &t.jumps {
        JumpMeasure::Zero => Ok(T::zero()),
        JumpMeasure::Atoms(atoms) => Ok(atoms
            .iter()
            .filter(|(y, _)| {
                let dy: Vec<T> = y.iter().zip(c).map(|(a, b)| *a - *b).collect();
                dot(&dy, &dy) <= rho * rho
            })
            .fold(T::zero(), |s, (_, m)| s + *m)),
        JumpMeasure::Density(_) => t.mass_in_ball_1d(c[0], rho, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{apply_integro, make_bump};
    use crate::levy::catalog::{make_catalog_symbol, SymbolSpec};
    use crate::levy::coeff::CoeffFn;
    use crate::levy::exponent::LevyExponent;

    #[test]
    fn diffusion_only() {
        let t = LevyTriplet::new(vec![0.0], vec![1.0], JumpMeasure::Zero).unwrap();
        let s = SymbolField::from_triplet("bm", t);
        let f = make_bump::<f64>(1.0, 1).unwrap();
        let b = operator_sup_bound_with(&s, &f, &SupBoundOptions::default()).unwrap();
        assert_eq!(b.far_term, 0.0);
        assert!((b.value - 2.0 * f.norms().norm2()).abs() < 1e-12);
    }

    #[test]
    fn zero_function() {
        let s = make_catalog_symbol::<f64>(&SymbolSpec::IsotropicStableLike {
            alpha: CoeffFn::constant(1.0),
            dim: 1,
        })
        .unwrap();
        assert_eq!(operator_sup_bound(&s, &TestFunction::zero(1)).unwrap(), 0.0);
        let g = TestFunction::gaussian(vec![0.0], 1.0, 1.0).unwrap();
        assert!(matches!(operator_sup_bound(&s, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn atoms_far_term() {
        // a single jump of size −3 hits the support from x ∈ [2, 4]
        let t = LevyTriplet::new(vec![0.0], vec![0.0], JumpMeasure::Atoms(vec![(vec![-3.0], 0.7)])).unwrap();
        let s = SymbolField::from_triplet("atom", t);
        let f = make_bump::<f64>(1.0, 1).unwrap();
        let b = operator_sup_bound_with(&s, &f, &SupBoundOptions::default()).unwrap();
        assert!((b.far_term - 0.7).abs() < 1e-15);
        assert!((b.local_term - 2.0 * f.norms().norm2() * 0.7).abs() < 1e-12);
    }

    #[test]
    fn dominates_the_operator_on_a_lattice() {
        let specs = [
            SymbolSpec::IsotropicStableLike {
                alpha: CoeffFn::constant(1.2),
                dim: 1,
            },
            SymbolSpec::SdeSymbol {
                drift: CoeffFn::constant(0.5),
                sigma: CoeffFn::constant(1.0),
                psi: LevyExponent::Stable { alpha: 1.5 },
            },
        ];
        let f = TestFunction::bump(vec![0.3], 0.8).unwrap();
        let xs: Vec<f64> = (-30..=30).map(|k| k as f64 * 0.1).collect();
        for spec in &specs {
            let s = make_catalog_symbol::<f64>(spec).unwrap();
            let opts = SupBoundOptions {
                extra_points: xs.iter().map(|x| vec![*x]).collect(),
                ..Default::default()
            };
            let bound = operator_sup_bound_with(&s, &f, &opts).unwrap().value;
            let sup = xs.iter().map(|x| apply_integro(&s, &f, &[*x]).unwrap().abs()).fold(0.0, f64::max);
            assert!(sup <= bound, "{spec:?}: {sup} > {bound}");
            for mode in [SupBoundMode::SymbolTail, SupBoundMode::Symbol] {
                let o = SupBoundOptions { mode, ..opts.clone() };
                assert!(operator_sup_bound_with(&s, &f, &o).unwrap().value.is_finite());
            }
        }
    }
}
