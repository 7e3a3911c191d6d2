//! The majorants `Q` and `S` of the transition density estimate, and the
//! time-integrated relation `∫₀ᵀ S(z, t) dt ≤ C Q(z)`.

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::scalar::norm;
use crate::verify::check::CheckResult;

/// `Q(z)` in dimension `z.len()`: `|z|^{−d−γ₀∧γ∞}` for `|z| ≥ 1`,
/// `1 + |log|z|| + |z|^{−d+γ∞}` for `0 < |z| < 1` and `1` at the origin.
pub fn q_majorant(z: &[f64], gamma0: f64, gamma_inf: f64) -> f64 {
    let d = z.len() as f64;
    let r = norm(z);
    if r == 0.0 {
        1.0
    } else if r >= 1.0 {
        r.powf(-d - gamma0.min(gamma_inf))
    } else {
        1.0 + r.ln().abs() + r.powf(-d + gamma_inf)
    }
}

/// `S(z, t)`: `t^{−d/γ∞}` for `|z| ≤ t^{1/γ∞} ∧ 1`, `t |z|^{−d−γ∞}` for
/// `t^{1/γ∞} < |z| ≤ 1` and `t |z|^{−d−γ∞∧γ₀}` for `|z| > 1`.
pub fn s_majorant(z: &[f64], gamma_inf: f64, gamma0: f64, t: f64) -> f64 {
    let d = z.len() as f64;
    let r = norm(z);
    if r > 1.0 {
        t * r.powf(-d - gamma_inf.min(gamma0))
    } else if r <= t.powf(1.0 / gamma_inf) {
        t.powf(-d / gamma_inf)
    } else {
        t * r.powf(-d - gamma_inf)
    }
}

/// `∫₀ᵀ S(z, t) dt` by Gauss–Legendre with a break at `t = |z|^{γ∞}` and
/// geometric panels above it. Infinite at `z = 0` unless `d < γ∞`.
pub fn integrated_s(z: &[f64], gamma_inf: f64, gamma0: f64, horizon: f64) -> f64 {
    let rule = gauss_legendre::<f64>(20);
    let s = |t: f64| s_majorant(z, gamma_inf, gamma0, t);
    let r = norm(z);
    if r == 0.0 {
        let e = 1.0 - z.len() as f64 / gamma_inf;
        return if e > 0.0 { horizon.powf(e) / e } else { f64::INFINITY };
    }
    let tb = if r <= 1.0 { r.powf(gamma_inf).min(horizon) } else { horizon };
    let mut acc = rule.integrate(s, 0.0, tb);
    let mut a = tb;
    while a < horizon {
        let b = (2.0 * a).min(horizon);
        acc += rule.integrate(s, a, b);
        a = b;
    }
    acc
}

/// Largest `∫₀ᵀ S dt / Q` over `zs` against `constant`.
pub fn majorant_integral_check(zs: &[Vec<f64>], gamma0: f64, gamma_inf: f64, horizon: f64, constant: f64) -> Result<CheckResult> {
    if zs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !(gamma0 > 0.0 && gamma0 <= 2.0 && gamma_inf > 0.0 && gamma_inf <= 2.0 && horizon > 0.0) {
        return Err(Error::Parameter("majorant exponents must lie in (0, 2] and T > 0".into()));
    }
    let mut worst = 0.0f64;
    let mut at = zs[0].clone();
    for z in zs {
        let ratio = integrated_s(z, gamma_inf, gamma0, horizon) / q_majorant(z, gamma0, gamma_inf);
        if ratio > worst || ratio.is_nan() {
            worst = ratio;
            at = z.clone();
        }
    }
    Ok(CheckResult::bound("majorant_integral", worst, constant, 0.0, zs.len())
        .with_inputs(&(zs, gamma0, gamma_inf, horizon, constant))
        .with_note(format!("largest ratio at z = {at:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn printed_values() {
        assert_eq!(q_majorant(&[0.0], 1.0, 1.0), 1.0);
        assert_eq!(q_majorant(&[2.0], 1.0, 1.0), 0.25);
        assert!((q_majorant(&[0.5], 1.0, 1.0) - 2.693_147_180_559_945_4).abs() < 1e-15);
        assert_eq!(q_majorant(&[1.0], 0.5, 1.5), 1.0);
        assert_eq!(s_majorant(&[0.0], 2.0, 1.0, 1.0), 1.0);
        assert!((s_majorant(&[2.0], 2.0, 1.0, 0.01) - 0.0025).abs() < 1e-15);
        assert!((s_majorant(&[0.5], 1.0, 1.0, 0.1) - 0.4).abs() < 1e-15);
        assert!((s_majorant(&[0.3, 0.4], 1.0, 1.0, 0.6) - 0.6f64.powi(-2)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_integral() {
        // d = 1, γ∞ = 1, |z| = 1/2, T = 1: ∫₀^{1/2} 4t dt + ∫_{1/2}^1 dt/t
        let v = integrated_s(&[0.5], 1.0, 1.0, 1.0);
        assert!((v - (0.5 + 2f64.ln())).abs() < 1e-13, "{v}");
        assert!((integrated_s(&[3.0], 1.0, 0.5, 2.0) - 2.0 * 3f64.powf(-1.5)).abs() < 1e-13);
    }

    #[test]
    fn integrated_relation_on_lattice() {
        for (g0, gi) in [(1.0, 1.0), (0.5, 1.5), (1.8, 0.7), (2.0, 2.0)] {
            let zs: Vec<Vec<f64>> = (1..=400).map(|k| vec![k as f64 * 0.025 - 5.0 - 1e-3]).collect();
            let r = majorant_integral_check(&zs, g0, gi, 1.0, 3.0).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{g0} {gi}: {r:?}");
        }
    }
}
