//! Mollification of bounded measurable functions on the line by a smooth
//! compactly supported probability density, with certified Hölder data.
//!
//! `f_n = f ∗ χ_n` with the concentrating scaling `χ_n(x) = n χ(n x)`, where
//! `χ(y) = exp(−1/(1−y²)) / Z` on `(−1, 1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::scalar::{lit, to_f64, Real};

/// Normalising constant `∫_{−1}^{1} exp(−1/(1−y²)) dy`.
pub const CHI_MASS: f64 = 0.443_993_816_168_079_437_823_048_921_171;

/// `‖χ'‖_{L¹} = 2 χ(0)` since `χ` is unimodal.
pub fn chi_derivative_l1() -> f64 {
    2.0 * (-1.0f64).exp() / CHI_MASS
}

/// The standard mollifier `χ`.
pub fn chi<T: Real>(y: T) -> T {
    let s = T::one() - y * y;
    if s <= T::zero() {
        return T::zero();
    }
    (-s.recip()).exp() / lit(CHI_MASS)
}

/// Largest `α ∈ (0, 1]` with `2 L^α ≤ 3`.
pub fn holder_exponent_for_lipschitz<T: Real>(l: T) -> T {
    assert!(l > T::zero(), "Lipschitz constant must be positive");
    let one_and_half = lit::<T>(1.5);
    if l <= one_and_half {
        return T::one();
    }
    (one_and_half.ln() / l.ln()).min(T::one())
}

/// `f_n = f ∗ χ_n` together with its certificate.
#[derive(Clone)]
pub struct Mollified<T> {
    f: Arc<dyn Fn(T) -> T + Send + Sync>,
    breaks: Vec<T>,
    /// Nodes `z` and weights `w χ(z)` on `[−1, 1]` without interior cuts.
    plain: Arc<Vec<(T, T)>>,
    pub n: usize,
    /// Declared `‖f‖_∞`.
    pub bound: T,
    /// Analytic Lipschitz bound `‖f‖_∞ n ‖χ'‖_{L¹}`.
    pub lipschitz: T,
    /// Hölder exponent certified for `f_n`.
    pub alpha: T,
    /// Certified bound on `‖f_n‖_{α}`.
    pub holder_norm_bound: T,
}

impl<T: Real> std::fmt::Debug for Mollified<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mollified")
            .field("n", &self.n)
            .field("bound", &self.bound)
            .field("alpha", &self.alpha)
            .finish()
    }
}

/// Gauss–Legendre nodes and weights `w χ(z)` on panels of width at most
/// 1/8 between consecutive `cuts`.
fn chi_nodes<T: Real>(cuts: &[T]) -> Vec<(T, T)> {
    let rule = gauss_legendre::<T>(20);
    let max_w = lit::<T>(0.125);
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let m = to_f64(((b - a) / max_w).ceil()).max(1.0) as usize;
        let h = (b - a) / lit(m as f64);
        for j in 0..m {
            let lo = a + h * lit(j as f64);
            let hi = if j + 1 == m { b } else { lo + h };
            let half = (hi - lo) * lit(0.5);
            let mid = (hi + lo) * lit(0.5);
            for (t, wt) in rule.nodes.iter().zip(&rule.weights) {
                let z = mid + half * *t;
                out.push((z, *wt * half * chi(z)));
            }
        }
    }
    out
}

/// Builds `f_n` for `f` bounded by `bound` in absolute value.
///
/// `breaks` lists the points where `f` may be discontinuous (or have a
/// kink); the convolution integral is split there so the quadrature only
/// ever sees smooth pieces. The declared bound is checked on a lattice
/// covering `[-100, 100]` and both sides of every break.
pub fn mollify_sequence<T: Real, F>(f: F, breaks: &[T], bound: T, n: usize) -> Result<Mollified<T>>
where
    F: Fn(T) -> T + Send + Sync + 'static,
{
    if n == 0 {
        return Err(Error::Parameter("mollification level n must be >= 1".into()));
    }
    if !(bound.is_finite() && bound >= T::zero()) {
        return Err(Error::Parameter(format!(
            "declared bound {bound} is not a finite nonnegative number"
        )));
    }
    let slack = bound * lit(1e-12) + T::epsilon();
    let mut probes: Vec<T> = (0..=4000).map(|k| lit::<T>(-100.0 + 0.05 * k as f64)).collect();
    for &b in breaks {
        let h = (b.abs() + T::one()) * lit(1e-9);
        probes.extend([b - h, b, b + h]);
    }
    for &x in &probes {
        let v = f(x);
        if !(v.abs() <= bound + slack) {
            return Err(Error::Inadmissible {
                what: "|f|",
                value: to_f64(v),
                range: "the declared bound",
                x: vec![to_f64(x)],
            });
        }
    }
    let mut breaks = breaks.to_vec();
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite breaks"));
    breaks.dedup();
    let l_norm = lit::<T>(n as f64 * chi_derivative_l1());
    let alpha = holder_exponent_for_lipschitz(l_norm);
    Ok(Mollified {
        f: Arc::new(f),
        breaks,
        plain: Arc::new(chi_nodes(&[-T::one(), T::one()])),
        n,
        bound,
        lipschitz: bound * l_norm,
        alpha,
        holder_norm_bound: bound * lit(4.0),
    })
}

impl<T: Real> Mollified<T> {
    /// `f_n(x) = ∫ f(x − z/n) χ(z) dz`.
    pub fn eval(&self, x: T) -> T {
        let n = lit::<T>(self.n as f64);
        // cut points in z: x − z/n = b  ⇔  z = n (x − b)
        let mut cuts: Vec<T> = vec![-T::one()];
        for &b in self.breaks.iter().rev() {
            let z = n * (x - b);
            if z > -T::one() && z < T::one() {
                cuts.push(z);
            }
        }
        cuts.push(T::one());
        let cut;
        let nodes = if cuts.len() == 2 {
            &self.plain
        } else {
            cut = chi_nodes(&cuts);
            &cut
        };
        let mut num = T::zero();
        let mut den = T::zero();
        for &(z, c) in nodes.iter() {
            num += c * (self.f)(x - z / n);
            den += c;
        }
        // Normalising by the discrete mass makes f_n an exact weighted
        // average of values of f, so range preservation holds to rounding.
        num / den
    }

    pub fn as_fn(&self) -> impl Fn(T) -> T + Send + Sync + Clone + 'static {
        let me = self.clone();
        move |x| me.eval(x)
    }
}
