//! The standard radial bump `u` and its one-dimensional Fourier transform.
//!
//! `u(r) = 1` for `r ≤ 1/2`, `u(r) = 0` for `r ≥ 1` and in between
//! `u(r) = h(2r − 1)` with `h(s) = 1 / (1 + exp(1/(1−s) − 1/s))`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::quad::gauss_legendre;
use crate::scalar::{lit, Real};

/// `[u(r), u'(r), u''(r)]` for `r ≥ 0`.
pub fn bump_profile<T: Real>(r: T) -> [T; 3] {
    let zero = T::zero();
    let one = T::one();
    if r <= lit(0.5) {
        return [one, zero, zero];
    }
    if r >= one {
        return [zero, zero, zero];
    }
    let s = lit::<T>(2.0) * r - one;
    let t = one - s;
    let e = t.recip() - s.recip();
    // h = σ(−e), 1 − h = σ(e), computed without overflow
    let (h, hc) = if e > zero {
        let z = (-e).exp();
        (z / (one + z), (one + z).recip())
    } else {
        let z = e.exp();
        ((one + z).recip(), z / (one + z))
    };
    let hh = h * hc;
    if hh == zero {
        return [h, zero, zero];
    }
    let e1 = (t * t).recip() + (s * s).recip();
    let two = lit::<T>(2.0);
    let e2 = two / (t * t * t) - two / (s * s * s);
    let dh = -hh * e1;
    let d2h = -dh * (one - two * h) * e1 - hh * e2;
    [h, two * dh, lit::<T>(4.0) * d2h]
}

/// Unit-interval grid for cosine transforms of radial profiles: 256 panels
/// of 16 Gauss–Legendre nodes, so phases up to ~1200 rad per unit length are
/// resolved to double precision.
pub(crate) struct UnitGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub(crate) fn unit_grid() -> &'static UnitGrid {
    static G: OnceLock<UnitGrid> = OnceLock::new();
    G.get_or_init(|| {
        let rule = gauss_legendre::<f64>(16);
        let mut pts = Vec::new();
        let panels = 256;
        for k in 0..panels {
            let a = k as f64 / panels as f64;
            rule.push_mapped(a, a + 1.0 / panels as f64, &mut pts);
        }
        UnitGrid {
            nodes: pts.iter().map(|p| p.0).collect(),
            weights: pts.iter().map(|p| p.1).collect(),
        }
    })
}

/// Transition part of `u` tabulated on `[1/2, 1]` as `(r, w · u(r))`.
fn transition_table() -> &'static Vec<(f64, f64)> {
    static T: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    T.get_or_init(|| {
        let g = unit_grid();
        g.nodes
            .iter()
            .zip(&g.weights)
            .filter(|(r, _)| **r > 0.5)
            .map(|(&r, &w)| (r, w * bump_profile(r)[0]))
            .collect()
    })
}

/// `û(η) = (2π)^{−1} ∫ e^{−iηx} u(|x|) dx` in dimension one (real, even).
pub fn bump_hat(eta: f64) -> f64 {
    let eta = eta.abs();
    let flat = if eta == 0.0 { 0.5 } else { (0.5 * eta).sin() / eta };
    let mut s = 0.0;
    for &(r, wu) in transition_table() {
        s += (r * eta).cos() * wu;
    }
    (flat + s) / std::f64::consts::PI
}

/// Largest `η` in the master table; `|û| < 1e-16` beyond.
pub const ETA_MAX: f64 = 1200.0;

/// Master quadrature plan on `[0, ETA_MAX]`: dyadic panels toward zero
/// (symbols may be non-smooth at the origin), then width 1/2.
pub(crate) struct EtaPlan {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Node index where each panel starts; the last entry is `nodes.len()`.
    pub panels: Vec<usize>,
    /// `û` at the nodes.
    pub uhat: Vec<f64>,
}

pub(crate) const ETA_NODES_PER_PANEL: usize = 16;

pub(crate) fn eta_plan() -> &'static EtaPlan {
    static P: OnceLock<EtaPlan> = OnceLock::new();
    P.get_or_init(|| {
        let rule = gauss_legendre::<f64>(ETA_NODES_PER_PANEL);
        let mut edges = vec![0.0];
        for k in (2..=30).rev() {
            edges.push(0.5f64.powi(k));
        }
        let mut e = 0.5;
        while e <= ETA_MAX + 1e-9 {
            edges.push(e);
            e += 0.5;
        }
        let mut pts = Vec::new();
        let mut panels = Vec::new();
        for w in edges.windows(2) {
            panels.push(pts.len());
            rule.push_mapped(w[0], w[1], &mut pts);
        }
        panels.push(pts.len());
        let nodes: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let uhat = nodes.par_iter().map(|&eta| bump_hat(eta)).collect();
        EtaPlan {
            weights: pts.iter().map(|p| p.1).collect(),
            nodes,
            panels,
            uhat,
        }
    })
}

/// `2 ∫_ℝ (1 + η²) |ĝ(η)| dη` for a real even transform `ĝ` given on `[0, ∞)`,
/// with panels split at the sign changes of `ĝ` so `|ĝ|` is smooth on each.
pub(crate) fn weighted_l1_even<F: Fn(f64) -> f64 + Sync>(ghat: F, scale: f64) -> f64 {
    let rule = gauss_legendre::<f64>(20);
    let top = ETA_MAX / scale;
    let width = 0.5 / scale;
    let n = (top / width).round() as usize;
    let pieces: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = k as f64 * width;
            let b = a + width;
            // sign changes located on a sub-grid, refined by bisection
            let sub = 8;
            let mut cuts = vec![a];
            let mut prev = ghat(a);
            for j in 1..=sub {
                let t = a + width * j as f64 / sub as f64;
                let v = ghat(t);
                if prev * v < 0.0 {
                    let (mut lo, mut hi, mut flo) = (t - width / sub as f64, t, prev);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        let fm = ghat(mid);
                        if fm * flo <= 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                            flo = fm;
                        }
                    }
                    cuts.push(0.5 * (lo + hi));
                }
                prev = v;
            }
            cuts.push(b);
            cuts.windows(2)
                .map(|c| rule.integrate(|e| (1.0 + e * e) * ghat(e).abs(), c[0], c[1]))
                .sum()
        })
        .collect();
    // fixed-order reduction
    4.0 * pieces.iter().sum::<f64>()
}

/// `c* = 2 ∫ (1 + η²) |û(η)| dη` for the standard bump in dimension one.
pub fn standard_bump_constant() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| weighted_l1_even(bump_hat, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape() {
        assert_eq!(bump_profile(0.3f64), [1.0, 0.0, 0.0]);
        assert_eq!(bump_profile(1.2f64), [0.0, 0.0, 0.0]);
        assert!((bump_profile(0.75f64)[0] - 0.5).abs() < 1e-15);
        let h = 1e-5;
        for r in [0.55f64, 0.6, 0.7, 0.75, 0.83, 0.95] {
            let [_, d1, d2] = bump_profile(r);
            let fd1 = (bump_profile(r + h)[0] - bump_profile(r - h)[0]) / (2.0 * h);
            let fd2 = (bump_profile(r + h)[1] - bump_profile(r - h)[1]) / (2.0 * h);
            assert!((d1 - fd1).abs() < 1e-6 * (1.0 + d1.abs()), "{r}");
            assert!((d2 - fd2).abs() < 1e-5 * (1.0 + d2.abs()), "{r}");
        }
        let v = bump_profile(0.7f32);
        assert!(v.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn transform_values() {
        // independent dense quadrature of the same integral
        let want = [
            (0.0, 0.238_732_414_637_843_06),
            (1.0, 0.216_243_164_950_402_66),
            (5.0, -0.033_417_256_906_641_91),
            (20.0, 0.001_690_344_203_791_344),
            (50.0, -2.602_836_148_110_117_8e-5),
        ];
        for (eta, v) in want {
            assert!((bump_hat(eta) - v).abs() < 1e-13, "{eta}: {}", bump_hat(eta));
        }
        assert!(bump_hat(1150.0).abs() < 1e-15);
    }

    #[test]
    fn reference_constant() {
        let c = standard_bump_constant();
        assert!((c - 141.977_896_185).abs() < 2e-6 * c, "{c}");
    }
}
