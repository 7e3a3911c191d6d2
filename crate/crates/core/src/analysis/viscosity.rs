//! `λ û(x₀) − Aφ(x₀) − f(x₀)` at a point where `φ` touches `û`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{apply_integro, TestFunction};
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViscosityMode {
    /// `x₀` maximizes `û − φ`; the residual should be `≤ 0`.
    Sub,
    /// `x₀` minimizes `û − φ`; the residual should be `≥ 0`.
    Super,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViscosityReport {
    pub residual: f64,
    pub mode: ViscosityMode,
    /// `Aφ(x₀)`.
    pub a_phi: f64,
    pub tolerance: f64,
    pub satisfied: bool,
}

/// Signed residual at `x0`. Fails with a precondition error unless `x0`
/// is an extremum of `û − φ` over `lattice` (within `tolerance`) of the
/// kind required by `mode`.
#[allow(clippy::too_many_arguments)]
pub fn viscosity_residual<T: Real, U, F>(
    u_hat: U,
    lattice: &[Vec<f64>],
    phi: &TestFunction<T>,
    x0: &[f64],
    lambda: f64,
    f: F,
    sym: &SymbolField<T>,
    mode: ViscosityMode,
    tolerance: f64,
) -> Result<ViscosityReport>
where
    U: Fn(&[f64]) -> f64,
    F: Fn(&[f64]) -> f64,
{
    let gap = |y: &[f64]| {
        let yt: Vec<T> = y.iter().map(|v| lit(*v)).collect();
        u_hat(y) - to_f64(phi.value(&yt))
    };
    let g0 = gap(x0);
    for y in lattice {
        let excess = match mode {
            ViscosityMode::Sub => gap(y) - g0,
            ViscosityMode::Super => g0 - gap(y),
        };
        if excess > tolerance {
            return Err(Error::Precondition(format!(
                "x0 = {x0:?} is not a lattice {} of u - phi: {y:?} beats it by {excess:e}",
                if mode == ViscosityMode::Sub { "maximum" } else { "minimum" }
            )));
        }
    }
    let xt: Vec<T> = x0.iter().map(|v| lit(*v)).collect();
    let a_phi = to_f64(apply_integro(sym, phi, &xt)?);
    let residual = lambda * u_hat(x0) - a_phi - f(x0);
    let satisfied = match mode {
        ViscosityMode::Sub => residual <= tolerance,
        ViscosityMode::Super => residual >= -tolerance,
    };
    Ok(ViscosityReport {
        residual,
        mode,
        a_phi,
        tolerance,
        satisfied,
    })
}
