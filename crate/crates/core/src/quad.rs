//! One-dimensional quadrature: fixed Gauss–Legendre panels, adaptive
//! Gauss–Kronrod, geometric panels toward an integrable endpoint
//! singularity, half-line integrals through a logarithmic substitution and
//! oscillatory tails summed over half periods with Wynn's epsilon algorithm.

use std::any::{Any, TypeId};
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0f64, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { z } else { p1 };
                let pnm1 = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
                let dz = pn / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            if n == 1 {
                z = 0.0;
                dp = 1.0;
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n == 1 {
            weights[0] = 2.0;
        }
        Self {
            nodes: nodes.into_iter().map(lit).collect(),
            weights: weights.into_iter().map(lit).collect(),
        }
    }

    /// Integral of `f` over `[a, b]`.
    #[inline]
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        let half = (b - a) * lit(0.5);
        let mid = (b + a) * lit(0.5);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += *w * f(mid + half * *x);
        }
        acc * half
    }

    /// Mapped nodes and weights for `[a, b]`, appended to `out`.
    pub fn push_mapped(&self, a: T, b: T, out: &mut Vec<(T, T)>) {
        let half = (b - a) * lit(0.5);
        let mid = (b + a) * lit(0.5);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            out.push((mid + half * *x, *w * half));
        }
    }
}

type Cache = Mutex<HashMap<(TypeId, usize), Arc<dyn Any + Send + Sync>>>;

/// Shared Gauss–Legendre rule of order `n` for scalar type `T`.
pub fn gauss_legendre<T: Real>(n: usize) -> Arc<GaussLegendre<T>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (TypeId::of::<T>(), n);
    let mut guard = cache.lock().expect("rule cache poisoned");
    let entry = guard
        .entry(key)
        .or_insert_with(|| Arc::new(GaussLegendre::<T>::new(n)) as Arc<dyn Any + Send + Sync>)
        .clone();
    drop(guard);
    entry.downcast::<GaussLegendre<T>>().expect("rule cache type mismatch")
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let c = (a + b) * lit(0.5);
    let h = (b - a) * lit(0.5);
    let fc = f(c);
    let mut kron = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = h * lit(XGK[j]);
        let s = f(c - dx) + f(c + dx);
        kron += s * lit(WGK[j]);
        if j % 2 == 1 {
            gauss += s * lit(WG[j / 2]);
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    key: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.key.total_cmp(&o.key)
    }
}

/// Globally adaptive 7/15-point Gauss–Kronrod on a finite interval.
pub fn adaptive<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, abs_tol: T, rel_tol: T) -> Result<Estimate<T>> {
    const MAX_PIECES: usize = 4000;
    if a == b {
        return Ok(Estimate {
            value: T::zero(),
            error: T::zero(),
            evaluations: 0,
        });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value: v,
        error: e,
        key: to_f64(e),
    });
    let mut total = v;
    let mut err = e;
    let mut evals = 15;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_PIECES {
            return Err(Error::Quadrature {
                context: "adaptive Gauss-Kronrod subdivision limit".into(),
                partial: to_f64(total),
                last_increment: to_f64(err),
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = (worst.a + worst.b) * lit(0.5);
        if mid <= worst.a || mid >= worst.b {
            // Interval at machine resolution; accept what we have.
            heap.push(Piece { key: 0.0, ..worst });
            err = heap.iter().fold(T::zero(), |s, p| s + p.error);
            if heap.iter().all(|p| p.key == 0.0) {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        evals += 30;
        total = total - worst.value + v1 + v2;
        err = err - worst.error + e1 + e2;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            key: to_f64(e1),
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            key: to_f64(e2),
        });
    }
    // Resum in interval order so the result does not depend on heap layout.
    let mut pieces: Vec<_> = heap.into_vec();
    pieces.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(std::cmp::Ordering::Equal));
    let value = pieces.iter().fold(T::zero(), |s, p| s + p.value);
    let error = pieces.iter().fold(T::zero(), |s, p| s + p.error);
    Ok(Estimate {
        value,
        error,
        evaluations: evals,
    })
}

/// Limit estimate of a sequence of partial sums by Wynn's epsilon algorithm.
/// Returns `(estimate, change)` where `change` compares against the estimate
/// obtained without the last term.
pub fn wynn_epsilon<T: Real>(partials: &[T]) -> (T, T) {
    fn run<T: Real>(s: &[T]) -> T {
        let n = s.len();
        if n < 3 {
            return *s.last().expect("nonempty");
        }
        let mut prev: Vec<T> = vec![T::zero(); n + 1];
        let mut cur: Vec<T> = s.to_vec();
        let mut best = *s.last().unwrap();
        for k in 1..n {
            let mut next = Vec::with_capacity(n - k);
            for i in 0..(n - k) {
                let d = cur[i + 1] - cur[i];
                if d == T::zero() {
                    return cur[i + 1];
                }
                next.push(prev[i + 1] + T::one() / d);
            }
            prev = cur;
            cur = next;
            if k % 2 == 0 {
                let cand = *cur.last().expect("nonempty column");
                if cand.is_finite() {
                    best = cand;
                }
            }
        }
        best
    }
    let est = run(partials);
    if partials.len() < 2 {
        return (est, T::infinity());
    }
    let prev = run(&partials[..partials.len() - 1]);
    (est, (est - prev).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

/// `∫_a^∞ g(y) trig(ω y) dy` for slowly varying, decaying `g` and `ω > 0`.
///
/// Panels run between consecutive zeros of the trigonometric factor; the
/// alternating partial sums are accelerated with Wynn's epsilon algorithm.
pub fn oscillatory_tail<T: Real, G: FnMut(T) -> T>(mut g: G, a: T, omega: T, trig: Trig, tol: T) -> Result<T> {
    const MAX_PANELS: usize = 600;
    let rule = gauss_legendre::<T>(16);
    let pi = T::PI();
    let half = pi / omega;
    let offset = match trig {
        Trig::Cos => lit::<T>(0.5),
        Trig::Sin => T::zero(),
    };
    // first zero strictly after a
    let k = ((a * omega / pi) - offset).floor() + T::one();
    let mut lo = a;
    let mut hi = (k + offset) * half;
    if hi <= lo {
        hi = lo + half;
    }
    let mut f = |y: T| {
        let t = omega * y;
        g(y) * match trig {
            Trig::Cos => t.cos(),
            Trig::Sin => t.sin(),
        }
    };
    let mut partial = T::zero();
    let mut sums: Vec<T> = Vec::new();
    let mut last_est = T::nan();
    let mut stable = 0;
    for _ in 0..MAX_PANELS {
        let piece = rule.integrate(&mut f, lo, hi);
        partial += piece;
        sums.push(partial);
        lo = hi;
        hi += half;
        if sums.len() >= 8 {
            let window = if sums.len() > 40 { &sums[sums.len() - 40..] } else { &sums[..] };
            let (est, change) = wynn_epsilon(window);
            if change < tol && (est - last_est).abs() < tol {
                stable += 1;
                if stable >= 2 {
                    return Ok(est);
                }
            } else {
                stable = 0;
            }
            last_est = est;
        }
    }
    Err(Error::Quadrature {
        context: "oscillatory tail".into(),
        partial: to_f64(partial),
        last_increment: to_f64(*sums.last().unwrap_or(&T::zero()) - sums[sums.len().saturating_sub(2)]),
    })
}

/// `∫_a^∞ f(y) dy` for `a > 0` and `f` decaying like `y^{-1-decay}`,
/// through `y = a e^u`. Panels of unit width in `u` until both the panel
/// contribution and the power-law remainder estimate drop below `tol`.
pub fn half_line_log<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, decay: T, tol: T) -> Result<T> {
    const MAX_PANELS: usize = 400;
    let rule = gauss_legendre::<T>(20);
    let mut g = |u: T| {
        let y = a * u.exp();
        f(y) * y
    };
    let mut acc = T::zero();
    let step = lit::<T>(0.5);
    let mut u = T::zero();
    for _ in 0..MAX_PANELS {
        let piece = rule.integrate(&mut g, u, u + step);
        acc += piece;
        u += step;
        let tail = (g(u) / decay).abs();
        if piece.abs() < tol && tail < tol {
            return Ok(acc);
        }
    }
    Err(Error::Quadrature {
        context: "half-line integral (decay slower than declared?)".into(),
        partial: to_f64(acc),
        last_increment: to_f64(g(u)),
    })
}

/// `∫_0^b f(y) dy` for `f(y) ~ y^{p-1}` near zero with `p > 0`, using
/// dyadic panels `[b 2^{-k-1}, b 2^{-k}]`. `split(lo, hi)` gives the number
/// of sub-panels (used to resolve oscillation). The remainder over
/// `(0, ε)` is estimated as `|f(ε)| ε / p`.
pub fn toward_zero<T: Real, F: FnMut(T) -> T, S: Fn(T, T) -> usize>(mut f: F, b: T, p: T, tol: T, split: S) -> Result<T> {
    const MAX_PANELS: usize = 2000;
    let rule = gauss_legendre::<T>(16);
    let mut acc = T::zero();
    let mut hi = b;
    let two = lit::<T>(2.0);
    for _ in 0..MAX_PANELS {
        let lo = hi / two;
        let m = split(lo, hi).max(1);
        let w = (hi - lo) / lit::<T>(m as f64);
        let mut piece = T::zero();
        for j in 0..m {
            let a = lo + w * lit::<T>(j as f64);
            let bb = if j + 1 == m { hi } else { a + w };
            piece += rule.integrate(&mut f, a, bb);
        }
        acc += piece;
        hi = lo;
        let rem = (f(hi) * hi / p).abs();
        if rem < tol && piece.abs() < tol {
            return Ok(acc);
        }
        if hi <= T::min_positive_value() * lit(1e10) {
            break;
        }
    }
    Err(Error::Quadrature {
        context: "dyadic panels toward zero (integrand more singular than declared)".into(),
        partial: to_f64(acc),
        last_increment: to_f64(f(hi) * hi / p),
    })
}

/// `∫_0^b f(y) dy` for `f(y) ≈ A y^{p-1}` near zero. Dyadic panels (each
/// split into `split(lo, hi)` pieces) run down to `min_h`; the remaining
/// `∫_0^{h} f` is added as `f(h) h / p`, which is exact for a pure power.
/// Fails when the sampled local exponent is far more singular than `p`.
pub fn toward_zero_corrected<T: Real, F: FnMut(T) -> T, S: Fn(T, T) -> usize>(mut f: F, b: T, p: T, min_h: T, split: S) -> Result<T> {
    let rule = gauss_legendre::<T>(16);
    let two = lit::<T>(2.0);
    let mut acc = T::zero();
    let mut hi = b;
    while hi > min_h {
        let lo = hi / two;
        let m = split(lo, hi).max(1);
        let w = (hi - lo) / lit::<T>(m as f64);
        for j in 0..m {
            let a = lo + w * lit::<T>(j as f64);
            let bb = if j + 1 == m { hi } else { a + w };
            acc += rule.integrate(&mut f, a, bb);
        }
        hi = lo;
    }
    let fh = f(hi);
    let f2h = f(hi * two);
    if fh != T::zero() && f2h != T::zero() {
        // f(2h)/f(h) = 2^{p_loc - 1}
        let p_loc = (f2h / fh).abs().log2() + T::one();
        if !(p_loc > p * lit(0.5)) || !fh.is_finite() {
            return Err(Error::Quadrature {
                context: format!(
                    "integrand near 0 behaves like y^{:.3} but the declared exponent allows y^{:.3}",
                    to_f64(p_loc) - 1.0,
                    to_f64(p) - 1.0
                ),
                partial: to_f64(acc),
                last_increment: to_f64(fh * hi / p),
            });
        }
    }
    if !acc.is_finite() {
        return Err(Error::Quadrature {
            context: "non-finite integrand near 0".into(),
            partial: to_f64(acc),
            last_increment: f64::NAN,
        });
    }
    Ok(acc + fh * hi / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let r = GaussLegendre::<f64>::new(5);
        let v = r.integrate(|x| x.powi(9) + 3.0 * x.powi(4), 0.0, 2.0);
        let exact = 2f64.powi(10) / 10.0 + 3.0 * 2f64.powi(5) / 5.0;
        assert!((v - exact).abs() < 1e-10 * exact);
        let w: f64 = r.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let e = adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10, 1e-12).unwrap();
        assert!((e.value - 2.0).abs() < 1e-8, "{}", e.value);
    }

    #[test]
    fn oscillatory_tail_matches_sine_integral() {
        // ∫_1^∞ sin(y)/y dy = π/2 − Si(1)
        let si1 = 0.946_083_070_367_183_f64;
        let v = oscillatory_tail(|y: f64| 1.0 / y, 1.0, 1.0, Trig::Sin, 1e-11).unwrap();
        assert!((v - (std::f64::consts::FRAC_PI_2 - si1)).abs() < 1e-9, "{v}");
        // ∫_1^∞ cos(2y)/y² dy, checked against a long direct sum
        let direct = {
            let r = GaussLegendre::<f64>::new(16);
            let mut s = 0.0;
            let mut a = 1.0;
            while a < 20000.0 {
                s += r.integrate(|y| (2.0 * y).cos() / (y * y), a, a + 0.5);
                a += 0.5;
            }
            s
        };
        let v = oscillatory_tail(|y: f64| 1.0 / (y * y), 1.0, 2.0, Trig::Cos, 1e-12).unwrap();
        assert!((v - direct).abs() < 1e-8, "{v} vs {direct}");
    }

    #[test]
    fn half_line_and_toward_zero() {
        let v = half_line_log(|y: f64| y.powf(-2.5), 1.0, 1.5, 1e-12).unwrap();
        assert!((v - 1.0 / 1.5).abs() < 1e-10);
        let v = toward_zero(|y: f64| y.powf(-0.5), 1.0, 0.5, 1e-12, |_, _| 1).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn corrected_dyadic_panels() {
        let v = toward_zero_corrected(|y: f64| y.powf(-0.99) * (1.0 - y * y), 1.0, 0.01, 1e-6, |_, _| 1).unwrap();
        let exact = 1.0 / 0.01 - 1.0 / 2.01;
        assert!((v - exact).abs() < 1e-9 * exact, "{v} vs {exact}");
        assert!(toward_zero_corrected(|y: f64| y.powf(-1.5), 1.0, 0.5, 1e-6, |_, _| 1).is_err());
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        let mut s = 0.0;
        let sums: Vec<f64> = (0..14)
            .map(|k| {
                s += (-1f64).powi(k) / (2 * k + 1) as f64;
                s
            })
            .collect();
        let (est, _) = wynn_epsilon(&sums);
        assert!((est - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
    }
}
