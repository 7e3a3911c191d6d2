//! Smooth test functions with analytic derivatives, norms and Fourier
//! transforms.

use std::sync::{Arc, OnceLock};

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::bump::{bump_hat, bump_profile, eta_plan, unit_grid, ETA_NODES_PER_PANEL};
use crate::scalar::{lit, norm, to_f64, Real};

/// Radius beyond which `e^{−a r²}` is below `1e-18` of its peak.
fn gaussian_reach(rate: f64) -> f64 {
    (41.5 / rate).sqrt()
}

#[derive(Clone, Debug)]
enum Shape<T> {
    Zero,
    /// `u(|x − c| / R)`.
    Bump {
        center: Vec<T>,
        radius: T,
    },
    /// `A e^{−a|x − c|²}`.
    Gaussian {
        center: Vec<T>,
        amplitude: T,
        rate: T,
    },
    /// `A e^{−a|x − c|²} u(|x − c| / R)`.
    GaussianBump {
        center: Vec<T>,
        amplitude: T,
        rate: T,
        radius: T,
    },
    Linear(Vec<(T, TestFunction<T>)>),
}

/// `‖f‖_∞`, `‖∇f‖_∞`, `‖∇²f‖_∞` (spectral norm) and their sum `‖f‖_(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub sup: f64,
    pub grad: f64,
    pub hess: f64,
}

impl Norms {
    pub fn norm2(&self) -> f64 {
        self.sup + self.grad + self.hess
    }
}

/// Fourier data on the quadrature plan of a test function (dimension one).
#[derive(Debug)]
pub(crate) struct FourierTable<T> {
    /// Positive nodes `ξ_k`, weights `w_k`.
    pub xi: Vec<T>,
    pub w: Vec<T>,
    pub hat_pos: Vec<Complex<T>>,
    pub hat_neg: Vec<Complex<T>>,
    /// Node index where each panel starts, closed by `xi.len()`.
    pub panels: Vec<usize>,
    /// `Σ_{j ≥ k} w_j (1 + ξ_j²)(|f̂(ξ_j)| + |f̂(−ξ_j)|)`.
    pub tail: Vec<T>,
    /// `ξ`-units per unit of the master `η` plan.
    pub scale: T,
}

#[derive(Clone)]
pub struct TestFunction<T> {
    dim: usize,
    shape: Shape<T>,
    norms: Norms,
    fourier: Arc<OnceLock<FourierTable<T>>>,
}

impl<T: std::fmt::Debug> std::fmt::Debug for TestFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("dim", &self.dim)
            .field("shape", &self.shape)
            .field("norms", &self.norms)
            .finish()
    }
}

/// Sup-norms of the derivatives of the unit bump profile, from dense
/// sampling of the transition region plus a small pad.
fn bump_derivative_sups() -> (f64, f64) {
    static S: OnceLock<(f64, f64)> = OnceLock::new();
    *S.get_or_init(|| {
        let n = 200_000;
        let (mut g, mut h) = (0.0f64, 0.0f64);
        for k in 0..=n {
            let r = 0.5 + 0.5 * k as f64 / n as f64;
            let [_, d1, d2] = bump_profile(r);
            // tangential curvature u'(r)/r also enters the Hessian in d ≥ 2
            g = g.max(d1.abs());
            h = h.max(d2.abs()).max(d1.abs() / r);
        }
        (g * (1.0 + 1e-6) + 1e-9, h * (1.0 + 1e-6) + 1e-9)
    })
}

fn check_center<T: Real>(center: &[T]) -> Result<()> {
    if center.is_empty() || center.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter("center must be a finite vector of positive length".into()));
    }
    Ok(())
}

impl<T: Real> TestFunction<T> {
    fn from_shape(dim: usize, shape: Shape<T>, norms: Norms) -> Self {
        Self {
            dim,
            shape,
            norms,
            fourier: Arc::new(OnceLock::new()),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_shape(
            dim,
            Shape::Zero,
            Norms {
                sup: 0.0,
                grad: 0.0,
                hess: 0.0,
            },
        )
    }

    /// `u((x − c)/R)` for the standard bump `u`.
    pub fn bump(center: Vec<T>, radius: T) -> Result<Self> {
        check_center(&center)?;
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::Parameter(format!("bump radius {radius} must be positive")));
        }
        let r = to_f64(radius);
        let (g, h) = bump_derivative_sups();
        Ok(Self::from_shape(
            center.len(),
            Shape::Bump { center, radius },
            Norms {
                sup: 1.0,
                grad: g / r,
                hess: h / (r * r),
            },
        ))
    }

    /// `A e^{−a|x − c|²}`.
    pub fn gaussian(center: Vec<T>, amplitude: T, rate: T) -> Result<Self> {
        check_center(&center)?;
        if !(rate > T::zero() && rate.is_finite() && amplitude.is_finite()) {
            return Err(Error::Parameter("gaussian needs rate > 0 and finite amplitude".into()));
        }
        let a = to_f64(rate);
        let amp = to_f64(amplitude).abs();
        Ok(Self::from_shape(
            center.len(),
            Shape::Gaussian { center, amplitude, rate },
            Norms {
                sup: amp,
                grad: amp * (2.0 * a).sqrt() * (-0.5f64).exp(),
                hess: 2.0 * a * amp,
            },
        ))
    }

    /// `A e^{−a|x − c|²} u(|x − c|/R)`.
    pub fn gaussian_bump(center: Vec<T>, amplitude: T, rate: T, radius: T) -> Result<Self> {
        let g = Self::gaussian(center.clone(), amplitude, rate)?.norms;
        let u = Self::bump(center.clone(), radius)?.norms;
        Ok(Self::from_shape(
            center.len(),
            Shape::GaussianBump {
                center,
                amplitude,
                rate,
                radius,
            },
            Norms {
                sup: g.sup,
                grad: g.grad + g.sup * u.grad,
                hess: g.hess + 2.0 * g.grad * u.grad + g.sup * u.hess,
            },
        ))
    }

    /// `Σ cᵢ fᵢ`.
    pub fn linear(terms: Vec<(T, TestFunction<T>)>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::Parameter("empty linear combination".into()));
        };
        let dim = first.1.dim;
        if terms.iter().any(|(_, f)| f.dim != dim) {
            return Err(Error::Parameter("linear combination of functions on different spaces".into()));
        }
        let mut n = Norms {
            sup: 0.0,
            grad: 0.0,
            hess: 0.0,
        };
        for (c, f) in &terms {
            let c = to_f64(*c).abs();
            n.sup += c * f.norms.sup;
            n.grad += c * f.norms.grad;
            n.hess += c * f.norms.hess;
        }
        Ok(Self::from_shape(dim, Shape::Linear(terms), n))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norms(&self) -> Norms {
        self.norms
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.shape, Shape::Zero)
    }

    /// Declared support radius about [`Self::center`]; `None` for functions
    /// without compact support.
    pub fn support_radius(&self) -> Option<T> {
        match &self.shape {
            Shape::Zero => Some(T::zero()),
            Shape::Bump { radius, .. } | Shape::GaussianBump { radius, .. } => Some(*radius),
            Shape::Gaussian { .. } => None,
            Shape::Linear(terms) => {
                let c = self.center();
                let mut r = T::zero();
                for (_, f) in terms {
                    let d: Vec<T> = f.center().iter().zip(&c).map(|(a, b)| *a - *b).collect();
                    r = r.max(norm(&d) + f.support_radius()?);
                }
                Some(r)
            }
        }
    }

    /// Radius about the center outside which `|f|` is below `1e-18 ‖f‖_∞`.
    pub fn effective_radius(&self) -> T {
        match &self.shape {
            Shape::Gaussian { rate, .. } => lit(gaussian_reach(to_f64(*rate))),
            Shape::Linear(terms) => {
                let c = self.center();
                terms.iter().fold(T::zero(), |r, (_, f)| {
                    let d: Vec<T> = f.center().iter().zip(&c).map(|(a, b)| *a - *b).collect();
                    r.max(norm(&d) + f.effective_radius())
                })
            }
            _ => self.support_radius().unwrap_or(T::zero()),
        }
    }

    /// Smallest `R` with the (effective) support inside the closed ball `B(0, R)`.
    pub fn reach_from_origin(&self) -> T {
        norm(&self.center()) + self.effective_radius()
    }

    pub fn center(&self) -> Vec<T> {
        match &self.shape {
            Shape::Zero => vec![T::zero(); self.dim],
            Shape::Bump { center, .. } | Shape::Gaussian { center, .. } | Shape::GaussianBump { center, .. } => center.clone(),
            Shape::Linear(terms) => terms[0].1.center(),
        }
    }

    /// Finest length scale, which sets quadrature panel widths.
    pub fn scale(&self) -> T {
        match &self.shape {
            Shape::Zero => T::one(),
            Shape::Bump { radius, .. } => *radius,
            Shape::GaussianBump { radius, rate, .. } => {
                // the Gaussian factor may be narrower than the bump
                radius.min(lit(gaussian_reach(to_f64(*rate))))
            }
            Shape::Gaussian { rate, .. } => lit(gaussian_reach(to_f64(*rate))),
            Shape::Linear(terms) => terms.iter().fold(T::infinity(), |s, (_, f)| s.min(f.scale())),
        }
    }

    fn offset(center: &[T], x: &[T]) -> (Vec<T>, T) {
        let d: Vec<T> = x.iter().zip(center).map(|(a, b)| *a - *b).collect();
        let r = norm(&d);
        (d, r)
    }

    /// `f(x)`.
    pub fn value(&self, x: &[T]) -> T {
        match &self.shape {
            Shape::Zero => T::zero(),
            Shape::Bump { center, radius } => {
                let (_, r) = Self::offset(center, x);
                bump_profile(r / *radius)[0]
            }
            Shape::Gaussian { center, amplitude, rate } => {
                let (_, r) = Self::offset(center, x);
                *amplitude * (-*rate * r * r).exp()
            }
            Shape::GaussianBump {
                center,
                amplitude,
                rate,
                radius,
            } => {
                let (_, r) = Self::offset(center, x);
                *amplitude * (-*rate * r * r).exp() * bump_profile(r / *radius)[0]
            }
            Shape::Linear(terms) => terms.iter().fold(T::zero(), |s, (c, f)| s + *c * f.value(x)),
        }
    }

    /// Radial data `(φ, φ', φ'')` as functions of `r = |x − c|`.
    fn radial(&self, r: T) -> [T; 3] {
        let two = lit::<T>(2.0);
        match &self.shape {
            Shape::Bump { radius, .. } => {
                let [u, d1, d2] = bump_profile(r / *radius);
                [u, d1 / *radius, d2 / (*radius * *radius)]
            }
            Shape::Gaussian { amplitude, rate, .. } => {
                let g = *amplitude * (-*rate * r * r).exp();
                [g, -two * *rate * r * g, two * *rate * (two * *rate * r * r - T::one()) * g]
            }
            Shape::GaussianBump {
                amplitude, rate, radius, ..
            } => {
                let g = *amplitude * (-*rate * r * r).exp();
                let g1 = -two * *rate * r * g;
                let g2 = two * *rate * (two * *rate * r * r - T::one()) * g;
                let [u, d1, d2] = bump_profile(r / *radius);
                let (u1, u2) = (d1 / *radius, d2 / (*radius * *radius));
                [g * u, g1 * u + g * u1, g2 * u + two * g1 * u1 + g * u2]
            }
            _ => unreachable!("radial() on a non-radial shape"),
        }
    }

    /// `∇f(x)`.
    pub fn gradient(&self, x: &[T]) -> Vec<T> {
        match &self.shape {
            Shape::Zero => vec![T::zero(); self.dim],
            Shape::Linear(terms) => {
                let mut g = vec![T::zero(); self.dim];
                for (c, f) in terms {
                    for (a, b) in g.iter_mut().zip(f.gradient(x)) {
                        *a += *c * b;
                    }
                }
                g
            }
            Shape::Bump { center, .. } | Shape::Gaussian { center, .. } | Shape::GaussianBump { center, .. } => {
                let (d, r) = Self::offset(center, x);
                if r == T::zero() {
                    return vec![T::zero(); self.dim];
                }
                let [_, p1, _] = self.radial(r);
                d.iter().map(|v| p1 * *v / r).collect()
            }
        }
    }

    /// `∇²f(x)`, row-major.
    pub fn hessian(&self, x: &[T]) -> Vec<T> {
        let n = self.dim;
        match &self.shape {
            Shape::Zero => vec![T::zero(); n * n],
            Shape::Linear(terms) => {
                let mut h = vec![T::zero(); n * n];
                for (c, f) in terms {
                    for (a, b) in h.iter_mut().zip(f.hessian(x)) {
                        *a += *c * b;
                    }
                }
                h
            }
            Shape::Bump { center, .. } | Shape::Gaussian { center, .. } | Shape::GaussianBump { center, .. } => {
                let (d, r) = Self::offset(center, x);
                let mut h = vec![T::zero(); n * n];
                if r == T::zero() {
                    // φ'(r)/r → φ''(0) at the center
                    let [_, _, p2] = self.radial(T::zero());
                    for i in 0..n {
                        h[i * n + i] = p2;
                    }
                    return h;
                }
                let [_, p1, p2] = self.radial(r);
                let t = p1 / r;
                for i in 0..n {
                    for j in 0..n {
                        let nn = d[i] * d[j] / (r * r);
                        h[i * n + j] = p2 * nn + t * (if i == j { T::one() } else { T::zero() } - nn);
                    }
                }
                h
            }
        }
    }

    /// Fourier transform `f̂(ξ) = (2π)^{−1} ∫ e^{−ixξ} f(x) dx` in dimension one.
    pub fn fourier(&self, xi: T) -> Result<Complex<T>> {
        if self.dim != 1 {
            return Err(Error::Dimension {
                dim: self.dim,
                op: "Fourier transform of a test function",
            });
        }
        Ok(self.fourier_1d(xi))
    }

    fn fourier_1d(&self, xi: T) -> Complex<T> {
        let phase = |c: T| Complex::new(T::zero(), -c * xi).exp();
        match &self.shape {
            Shape::Zero => Complex::new(T::zero(), T::zero()),
            Shape::Bump { center, radius } => phase(center[0]) * (*radius * lit::<T>(bump_hat(to_f64(*radius * xi)))),
            Shape::Gaussian { center, amplitude, rate } => {
                let v = *amplitude / (lit::<T>(2.0) * (T::PI() * *rate).sqrt()) * (-(xi * xi) / (lit::<T>(4.0) * *rate)).exp();
                phase(center[0]) * v
            }
            Shape::GaussianBump {
                center,
                amplitude,
                rate,
                radius,
            } => {
                let v = gaussian_bump_hat(to_f64(*amplitude), to_f64(*rate), to_f64(*radius), to_f64(xi));
                phase(center[0]) * lit::<T>(v)
            }
            Shape::Linear(terms) => terms
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |s, (c, f)| s + f.fourier_1d(xi) * *c),
        }
    }

    /// `ξ ↦ e^{icξ} f̂(ξ)` as a real even function when every term shares the
    /// center `c`.
    pub(crate) fn centered_hat_fn(&self) -> Option<impl Fn(f64) -> f64 + Sync + '_> {
        if self.dim != 1 || !self.common_center() {
            return None;
        }
        let c = to_f64(self.center()[0]);
        Some(move |xi: f64| {
            let v = self.fourier_1d(lit(xi));
            to_f64(v.re) * (c * xi).cos() - to_f64(v.im) * (c * xi).sin()
        })
    }

    fn common_center(&self) -> bool {
        match &self.shape {
            Shape::Linear(terms) => {
                let c = self.center();
                terms.iter().all(|(_, f)| f.is_zero() || (f.common_center() && f.center() == c))
            }
            _ => true,
        }
    }

    /// Fourier data on the quadrature plan, built once per function.
    pub(crate) fn fourier_table(&self) -> Result<&FourierTable<T>> {
        if self.dim != 1 {
            return Err(Error::Dimension {
                dim: self.dim,
                op: "Fourier form of the operator",
            });
        }
        Ok(self.fourier.get_or_init(|| self.build_table()))
    }

    fn build_table(&self) -> FourierTable<T> {
        let plan = eta_plan();
        let s = self.scale();
        let inv = s.recip();
        let xi: Vec<T> = plan.nodes.iter().map(|&e| lit::<T>(e) * inv).collect();
        let w: Vec<T> = plan.weights.iter().map(|&e| lit::<T>(e) * inv).collect();
        let (hat_pos, hat_neg): (Vec<_>, Vec<_>) = match &self.shape {
            // exact reuse of the master table
            Shape::Bump { center, radius } if *radius == s => plan
                .uhat
                .iter()
                .zip(&xi)
                .map(|(&u, &k)| {
                    let v = *radius * lit::<T>(u);
                    let p = Complex::new(T::zero(), -center[0] * k).exp();
                    (p * v, p.conj() * v)
                })
                .unzip(),
            _ => xi.par_iter().map(|&k| (self.fourier_1d(k), self.fourier_1d(-k))).unzip(),
        };
        let n = xi.len();
        let mut tail = vec![T::zero(); n + 1];
        for k in (0..n).rev() {
            tail[k] = tail[k + 1] + w[k] * (T::one() + xi[k] * xi[k]) * (hat_pos[k].norm() + hat_neg[k].norm());
        }
        debug_assert!(plan.panels.windows(2).all(|p| p[1] - p[0] == ETA_NODES_PER_PANEL));
        FourierTable {
            xi,
            w,
            hat_pos,
            hat_neg,
            panels: plan.panels.clone(),
            tail,
            scale: s,
        }
    }
}

/// `(2π)^{−1} ∫ e^{−iξx} A e^{−a x²} u(|x|/R) dx`, real and even in `ξ`.
fn gaussian_bump_hat(amplitude: f64, rate: f64, radius: f64, xi: f64) -> f64 {
    let g = unit_grid();
    let eta = radius * xi;
    let mut s = 0.0;
    for (&rho, &w) in g.nodes.iter().zip(&g.weights) {
        let r = radius * rho;
        s += w * (eta * rho).cos() * (-rate * r * r).exp() * bump_profile(rho)[0];
    }
    amplitude * radius * s / std::f64::consts::PI
}

/// Declarative form of a test function, as used in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TestFunctionSpec {
    Zero,
    Bump {
        #[serde(default)]
        center: Vec<f64>,
        radius: f64,
    },
    Gaussian {
        #[serde(default)]
        center: Vec<f64>,
        #[serde(default = "one")]
        amplitude: f64,
        rate: f64,
    },
    GaussianBump {
        #[serde(default)]
        center: Vec<f64>,
        #[serde(default = "one")]
        amplitude: f64,
        rate: f64,
        radius: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl TestFunctionSpec {
    /// Builds the function on `ℝ^dim`; an empty center means the origin.
    pub fn build<T: Real>(&self, dim: usize) -> Result<TestFunction<T>> {
        let c = |v: &Vec<f64>| -> Result<Vec<T>> {
            if v.is_empty() {
                Ok(vec![T::zero(); dim])
            } else if v.len() != dim {
                Err(Error::Parameter(format!("center of length {} on R^{dim}", v.len())))
            } else {
                Ok(v.iter().map(|&x| lit(x)).collect())
            }
        };
        match self {
            TestFunctionSpec::Zero => Ok(TestFunction::zero(dim)),
            TestFunctionSpec::Bump { center, radius } => TestFunction::bump(c(center)?, lit(*radius)),
            TestFunctionSpec::Gaussian { center, amplitude, rate } => TestFunction::gaussian(c(center)?, lit(*amplitude), lit(*rate)),
            TestFunctionSpec::GaussianBump {
                center,
                amplitude,
                rate,
                radius,
            } => TestFunction::gaussian_bump(c(center)?, lit(*amplitude), lit(*rate), lit(*radius)),
        }
    }
}

/// The standard bump scaled to radius `R` and centered at the origin of `ℝ^d`.
pub fn make_bump<T: Real>(radius: T, dim: usize) -> Result<TestFunction<T>> {
    TestFunction::bump(vec![T::zero(); dim.max(1)], radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice() -> Vec<f64> {
        (0..=160).map(|k| -2.0 + 0.025 * k as f64).collect()
    }

    fn all() -> Vec<TestFunction<f64>> {
        let b = TestFunction::bump(vec![0.3], 1.5).unwrap();
        let g = TestFunction::gaussian(vec![-0.2], 2.0, 1.7).unwrap();
        let gb = TestFunction::gaussian_bump(vec![0.1], 1.0, 0.8, 1.2).unwrap();
        let lin = TestFunction::linear(vec![(2.0, b.clone()), (-0.5, gb.clone())]).unwrap();
        vec![b, g, gb, lin]
    }

    #[test]
    fn bump_basics() {
        let b1 = make_bump(1.0f64, 1).unwrap();
        let b2 = make_bump(2.0f64, 1).unwrap();
        assert_eq!(b1.value(&[0.0]), 1.0);
        assert_eq!(b1.value(&[1.0]), 0.0);
        assert_eq!(b1.value(&[-1.3]), 0.0);
        for x in lattice() {
            assert_eq!(b2.value(&[x]), b1.value(&[x / 2.0]));
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-5;
        for f in all() {
            for x in lattice() {
                let fd = (f.value(&[x + h]) - f.value(&[x - h])) / (2.0 * h);
                let g = f.gradient(&[x])[0];
                assert!((g - fd).abs() <= 1e-5 * (1.0 + g.abs()), "{f:?} at {x}: {g} vs {fd}");
                let fd2 = (f.gradient(&[x + h])[0] - f.gradient(&[x - h])[0]) / (2.0 * h);
                let hh = f.hessian(&[x])[0];
                assert!((hh - fd2).abs() <= 1e-5 * (1.0 + hh.abs()), "{f:?} at {x}: {hh} vs {fd2}");
            }
        }
    }

    #[test]
    fn norms_dominate_samples() {
        for f in all() {
            let n = f.norms();
            for k in 0..=8000 {
                let x = -4.0 + 0.001 * k as f64;
                assert!(f.value(&[x]).abs() <= n.sup);
                assert!(f.gradient(&[x])[0].abs() <= n.grad);
                assert!(f.hessian(&[x])[0].abs() <= n.hess);
            }
        }
    }

    #[test]
    fn radial_hessian_in_two_dimensions() {
        let f = TestFunction::gaussian(vec![0.0, 0.0], 1.0, 0.5).unwrap();
        let x = [0.4f64, -0.3];
        let h = 1e-5;
        let hs = f.hessian(&x);
        for j in 0..2 {
            let mut p = x;
            let mut m = x;
            p[j] += h;
            m[j] -= h;
            let gp = f.gradient(&p);
            let gm = f.gradient(&m);
            for i in 0..2 {
                assert!((hs[i * 2 + j] - (gp[i] - gm[i]) / (2.0 * h)).abs() < 1e-8);
            }
        }
        let b = make_bump(1.0, 3).unwrap();
        assert_eq!(b.value(&[0.2, 0.2, 0.2]), 1.0);
        assert_eq!(b.value(&[0.6, 0.6, 0.6]), 0.0);
    }

    #[test]
    fn transforms() {
        // Gaussian closed form: (2π)^{-1} √π e^{−ξ²/4}
        let g = TestFunction::gaussian(vec![0.0], 1.0, 1.0).unwrap();
        let v = g.fourier(2.0).unwrap();
        assert!((v.re - (-1.0f64).exp() / (2.0 * std::f64::consts::PI.sqrt())).abs() < 1e-15);
        // A wide bump times a Gaussian is the Gaussian to high accuracy
        let gb = TestFunction::gaussian_bump(vec![0.0], 1.0, 4.0, 10.0).unwrap();
        let g4 = TestFunction::gaussian(vec![0.0], 1.0, 4.0).unwrap();
        for xi in [0.0, 1.0, 3.5] {
            assert!((gb.fourier(xi).unwrap() - g4.fourier(xi).unwrap()).norm() < 1e-13);
        }
        // Shift theorem
        let b = TestFunction::bump(vec![0.7], 2.0).unwrap();
        let b0 = TestFunction::bump(vec![0.0], 2.0).unwrap();
        let xi = 1.3;
        let want = b0.fourier(xi).unwrap() * Complex::new(0.0, -0.7 * xi).exp();
        assert!((b.fourier(xi).unwrap() - want).norm() < 1e-15);
        assert!(make_bump(1.0, 2).unwrap().fourier(1.0).is_err());
    }

    #[test]
    fn table_is_consistent() {
        let b = TestFunction::bump(vec![0.25], 1.0).unwrap();
        let t = b.fourier_table().unwrap();
        for k in [0, 100, 5000, 20000] {
            assert!((t.hat_pos[k] - b.fourier(t.xi[k]).unwrap()).norm() < 1e-15);
            assert!((t.hat_neg[k] - b.fourier(-t.xi[k]).unwrap()).norm() < 1e-15);
        }
        assert!(t.tail[0] > 0.0 && *t.tail.last().unwrap() == 0.0);
    }

    #[test]
    fn spec_roundtrip() {
        let s: TestFunctionSpec = serde_json::from_str(r#"{"type":"gaussian_bump","rate":1.0,"radius":2.0}"#).unwrap();
        let f = s.build::<f64>(1).unwrap();
        assert_eq!(f.value(&[0.0]), 1.0);
        assert!(TestFunctionSpec::Bump {
            center: vec![0.0, 1.0],
            radius: 1.0
        }
        .build::<f64>(1)
        .is_err());
    }
}
