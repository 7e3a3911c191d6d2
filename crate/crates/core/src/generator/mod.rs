//! Test functions and the two representations of the operator `A`.

pub mod bump;
pub mod fourier;
pub mod integro;
pub mod lattice;
pub mod table;
pub mod test_function;

pub use bump::{bump_hat, bump_profile, standard_bump_constant};
pub use fourier::{apply_fourier, apply_fourier_raw, FourierValue};
pub use integro::{apply_integro, apply_integro_with, integro_from_triplet, IntegroOptions};
pub use lattice::{generator_lattice, write_lattice_csv, Form, LatticeRow};
pub use table::AfTable;
pub use test_function::{make_bump, Norms, TestFunction, TestFunctionSpec};

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

/// `2 ∫ (1 + |η|²) |f̂(η)| dη` in dimension one.
pub fn bump_constant<T: Real>(f: &TestFunction<T>) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::Dimension {
            dim: f.dim(),
            op: "bump constant",
        });
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let scale = to_f64(f.scale());
    match f.centered_hat_fn() {
        Some(g) => Ok(bump::weighted_l1_even(g, scale)),
        None => {
            // no common center: |f̂| is smooth enough without splitting at zeros
            let g = |xi: f64| {
                let a = f
                    .fourier(num_traits::cast(xi).unwrap())
                    .map(|c| to_f64(c.norm()))
                    .unwrap_or(f64::NAN);
                let b = f
                    .fourier(num_traits::cast(-xi).unwrap())
                    .map(|c| to_f64(c.norm()))
                    .unwrap_or(f64::NAN);
                0.5 * (a + b)
            };
            Ok(bump::weighted_l1_even(g, scale))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_standard() {
        assert_eq!(bump_constant(&TestFunction::<f64>::zero(1)).unwrap(), 0.0);
        let u = make_bump::<f64>(1.0, 1).unwrap();
        let c = bump_constant(&u).unwrap();
        assert!((c - standard_bump_constant()).abs() < 1e-9 * c);
        assert!(bump_constant(&make_bump::<f64>(1.0, 2).unwrap()).is_err());
    }

    #[test]
    fn scaling_of_the_constant() {
        // c(u(·/R)) = A0 + A2 / R² with A0 = 4 ∫_0^∞ |û|
        let a0 = 3.224_778_718_605_27;
        let a2 = standard_bump_constant() - a0;
        for r in [0.5, 2.0, 3.0] {
            let c = bump_constant(&make_bump::<f64>(r, 1).unwrap()).unwrap();
            let want = a0 + a2 / (r * r);
            assert!((c - want).abs() < 1e-5 * want, "R={r}: {c} vs {want}");
        }
        // shifting and scaling the amplitude
        let f = TestFunction::linear(vec![(-2.0, TestFunction::bump(vec![3.0], 1.0).unwrap())]).unwrap();
        assert!((bump_constant(&f).unwrap() - 2.0 * standard_bump_constant()).abs() < 1e-6);
    }
}
