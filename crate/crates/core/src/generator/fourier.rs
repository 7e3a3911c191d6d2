//! `Af(x) = −∫ e^{ixξ} q(x, ξ) f̂(ξ) dξ` in dimension one.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::test_function::TestFunction;
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};

/// Value of the Fourier form with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierValue {
    pub value: f64,
    /// Imaginary part of the quadrature, zero in exact arithmetic.
    pub imag_residual: f64,
    /// Bound on the discarded tail of `|q f̂|`.
    pub tail_bound: f64,
    pub nodes_used: usize,
}

/// Discarded tail of `|q f̂|` allowed by the cutoff.
pub const TAIL_TOLERANCE: f64 = 1e-9;
/// Largest phase change of `e^{ixξ}` across one quadrature panel.
const MAX_PANEL_PHASE: f64 = 10.0;

/// `Af(x)` in the Fourier form; fails when the imaginary residual exceeds
/// `1e-6 (1 + |Af(x)|)`.
pub fn apply_fourier<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, x: &[T]) -> Result<FourierValue> {
    let v = apply_fourier_raw(sym, f, x)?;
    if v.imag_residual > 1e-6 * (1.0 + v.value.abs()) {
        return Err(Error::Quadrature {
            context: format!(
                "imaginary residual of the Fourier form at x = {:?}",
                x.iter().map(|v| to_f64(*v)).collect::<Vec<_>>()
            ),
            partial: v.value,
            last_increment: v.imag_residual,
        });
    }
    Ok(v)
}

/// As [`apply_fourier`] without the residual check.
pub fn apply_fourier_raw<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, x: &[T]) -> Result<FourierValue> {
    if sym.dim() != 1 || x.len() != 1 {
        return Err(Error::Dimension {
            dim: sym.dim(),
            op: "Fourier form of the operator",
        });
    }
    if f.is_zero() {
        return Ok(FourierValue {
            value: 0.0,
            imag_residual: 0.0,
            tail_bound: 0.0,
            nodes_used: 0,
        });
    }
    let tab = f.fourier_table()?;
    let x0 = x[0];
    let dist = far_center_distance(f, x0);
    let panel = lit::<T>(0.5) / tab.scale;
    if to_f64(dist * panel) > MAX_PANEL_PHASE {
        return Err(Error::Quadrature {
            context: format!(
                "oscillatory Fourier quadrature at |x - c| = {} exceeds the panel resolution ({} per panel)",
                to_f64(dist),
                MAX_PANEL_PHASE
            ),
            partial: f64::NAN,
            last_increment: f64::NAN,
        });
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut c_est = T::one();
    let tol = lit::<T>(TAIL_TOLERANCE);
    let mut used = 0;
    let mut tail_bound = T::zero();
    for p in tab.panels.windows(2) {
        let mut part = Complex::new(T::zero(), T::zero());
        for k in p[0]..p[1] {
            let xi = tab.xi[k];
            let qp = sym.eval(x, &[xi])?;
            let qm = sym.eval(x, &[-xi])?;
            let ep = Complex::new(T::zero(), x0 * xi).exp();
            part += (ep * qp * tab.hat_pos[k] + ep.conj() * qm * tab.hat_neg[k]) * tab.w[k];
            let growth = T::one() + xi * xi;
            c_est = c_est.max(qp.norm() / growth).max(qm.norm() / growth);
        }
        acc += part;
        used = p[1];
        // |q| ≤ c (1 + ξ²) for negative definite q; 2× margin on the sampled c
        tail_bound = lit::<T>(2.0) * c_est * tab.tail[p[1]];
        if tail_bound < tol {
            break;
        }
    }
    Ok(FourierValue {
        value: to_f64(-acc.re),
        imag_residual: to_f64(acc.im.abs()),
        tail_bound: to_f64(tail_bound),
        nodes_used: 2 * used,
    })
}

fn far_center_distance<T: Real>(f: &TestFunction<T>, x: T) -> T {
    (x - f.center()[0]).abs() + f.support_radius().unwrap_or(T::zero())
}
