//! Lévy triplets `(b, Q, ν)` and the Lévy–Khintchine integral
//! `q(ξ) = −i b·ξ + ½ ξ·Qξ + ∫ (1 − e^{i y·ξ} + i y·ξ 𝟙_{(0,1)}(|y|)) ν(dy)`.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{is_symmetric, quad_form, sym_eigenvalues, sym_spectral_norm};
use crate::quad::{gauss_legendre, half_line_log, oscillatory_tail, toward_zero_corrected, Trig};
use crate::scalar::{dot, lit, norm, to_f64, Real};
use crate::special::{bessel_j0, one_minus_j0, one_minus_sinc, sphere_area};

pub type Density<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;
pub type Profile<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// One summand of a jump density on `ℝ^d ∖ {0}`.
///
/// `singularity` is the exponent `s` in `κ(y) ≲ |y|^{−d−s}` near zero and
/// `decay` the exponent `δ` in `κ(y) ≲ |y|^{−d−δ}` at infinity.
#[derive(Clone)]
pub enum KernelTerm<T> {
    /// `scale · |y|^{−d−α} · e^{−tempering |y|}` with `0 < α < 2`.
    Power { scale: T, alpha: T, tempering: T },
    /// `κ(y) = profile(|y|)`.
    Radial { profile: Profile<T>, singularity: T, decay: T },
    /// Arbitrary density; quadrature is available in dimension one.
    General { density: Density<T>, singularity: T, decay: T },
}

impl<T: std::fmt::Debug> std::fmt::Debug for KernelTerm<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelTerm::Power { scale, alpha, tempering } => {
                write!(f, "Power {{ scale: {scale:?}, alpha: {alpha:?}, tempering: {tempering:?} }}")
            }
            KernelTerm::Radial { singularity, decay, .. } => {
                write!(f, "Radial {{ singularity: {singularity:?}, decay: {decay:?} }}")
            }
            KernelTerm::General { singularity, decay, .. } => {
                write!(f, "General {{ singularity: {singularity:?}, decay: {decay:?} }}")
            }
        }
    }
}

/// Jump measure of a triplet.
#[derive(Clone, Debug)]
pub enum JumpMeasure<T> {
    Zero,
    /// `(location, mass)` pairs.
    Atoms(Vec<(Vec<T>, T)>),
    /// Sum of density terms.
    Density(Vec<KernelTerm<T>>),
}

impl<T: Real> KernelTerm<T> {
    pub fn radial<F: Fn(T) -> T + Send + Sync + 'static>(profile: F, singularity: T, decay: T) -> Self {
        KernelTerm::Radial {
            profile: Arc::new(profile),
            singularity,
            decay,
        }
    }

    pub fn general<F: Fn(&[T]) -> T + Send + Sync + 'static>(density: F, singularity: T, decay: T) -> Self {
        KernelTerm::General {
            density: Arc::new(density),
            singularity,
            decay,
        }
    }

    pub fn singularity(&self) -> T {
        match self {
            KernelTerm::Power { alpha, .. } => *alpha,
            KernelTerm::Radial { singularity, .. } | KernelTerm::General { singularity, .. } => *singularity,
        }
    }

    /// Tail exponent; tempered terms report a large finite value.
    pub fn decay(&self) -> T {
        match self {
            KernelTerm::Power { alpha, tempering, .. } => {
                if *tempering > T::zero() {
                    lit(50.0)
                } else {
                    *alpha
                }
            }
            KernelTerm::Radial { decay, .. } | KernelTerm::General { decay, .. } => *decay,
        }
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, KernelTerm::General { .. })
    }

    /// Radial profile `κ(r)` in dimension `d` (radial terms only).
    pub fn profile(&self, r: T, d: usize) -> T {
        match self {
            KernelTerm::Power { scale, alpha, tempering } => {
                let mut v = *scale * r.powf(-(lit::<T>(d as f64) + *alpha));
                if *tempering > T::zero() {
                    v *= (-*tempering * r).exp();
                }
                v
            }
            KernelTerm::Radial { profile, .. } => profile(r),
            KernelTerm::General { .. } => panic!("profile() called on a non-radial kernel"),
        }
    }

    /// `κ(y)`.
    pub fn density(&self, y: &[T]) -> T {
        match self {
            KernelTerm::General { density, .. } => density(y),
            _ => self.profile(norm(y), y.len()),
        }
    }

    /// `κ(r) + κ(−r)` and `κ(r) − κ(−r)` for `r > 0` in dimension one.
    fn even_odd(&self, r: T) -> (T, T) {
        match self {
            KernelTerm::General { density, .. } => {
                let p = density(&[r]);
                let m = density(&[-r]);
                (p + m, p - m)
            }
            _ => (lit::<T>(2.0) * self.profile(r, 1), T::zero()),
        }
    }

    /// `∫_{|y| ≥ a} κ(y) dy`, split into the parts over `y ≥ a` and
    /// `y ≤ −a` in dimension one.
    pub fn tail_mass_1d(&self, a: T, tol: T) -> Result<(T, T)> {
        match self {
            KernelTerm::Power { scale, alpha, tempering } if *tempering == T::zero() => {
                let m = *scale * a.powf(-*alpha) / *alpha;
                Ok((m, m))
            }
            KernelTerm::General { density, .. } => {
                let dec = self.decay();
                let p = half_line_log(|r: T| density(&[r]), a, dec, tol)?;
                let m = half_line_log(|r: T| density(&[-r]), a, dec, tol)?;
                Ok((p, m))
            }
            _ => {
                let m = half_line_log(|r: T| self.profile(r, 1), a, self.decay(), tol)?;
                Ok((m, m))
            }
        }
    }

    /// `∫ min(1, |y|²) κ(y) dy`.
    pub fn small_jump_moment(&self, d: usize, tol: T) -> Result<T> {
        if let KernelTerm::Power { scale, alpha, tempering } = self {
            if *tempering == T::zero() {
                let two = lit::<T>(2.0);
                return Ok(*scale * lit(sphere_area(d)) * ((two - *alpha).recip() + alpha.recip()));
            }
        }
        let e = self.shell_density(d)?;
        let s = self.singularity();
        let inner = toward_zero_corrected(|r| r * r * e(r), T::one(), lit::<T>(2.0) - s, lit(1e-7), |_, _| 1)?;
        let outer = half_line_log(&e, T::one(), self.decay(), tol)?;
        Ok(inner + outer)
    }

    /// Density of `|Y|` under the measure: `κ(r) + κ(−r)` for `d = 1`,
    /// `|S^{d−1}| r^{d−1} κ(r)` for radial terms.
    fn shell_density(&self, d: usize) -> Result<impl Fn(T) -> T + '_> {
        if d > 1 && !self.is_radial() {
            return Err(Error::Dimension {
                dim: d,
                op: "quadrature of a non-radial jump density",
            });
        }
        let area = lit::<T>(sphere_area(d));
        Ok(move |r: T| {
            if d == 1 {
                self.even_odd(r).0
            } else {
                area * r.powi(d as i32 - 1) * self.profile(r, d)
            }
        })
    }

    /// Lévy–Khintchine integral of this term at `ξ` (`tol` absolute).
    pub fn symbol(&self, xi: &[T], tol: T) -> Result<Complex<T>> {
        let d = xi.len();
        let w = norm(xi);
        if w == T::zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        if d == 1 {
            let re = self.even_part(w, 1, tol)?;
            let im = if self.is_radial() {
                T::zero()
            } else {
                self.odd_part_1d(w, tol)? * xi[0].signum()
            };
            return Ok(Complex::new(re, im));
        }
        if !self.is_radial() {
            return Err(Error::Dimension {
                dim: d,
                op: "Lévy–Khintchine quadrature of a non-radial density",
            });
        }
        if d > 3 {
            return Err(Error::Dimension {
                dim: d,
                op: "Lévy–Khintchine quadrature (radial kernels need d <= 3)",
            });
        }
        // Odd part vanishes by symmetry.
        Ok(Complex::new(self.even_part(w, d, tol)?, T::zero()))
    }

    /// `∫ (1 − cos(y·ξ)) κ(y) dy` for `|ξ| = w`, reduced to an integral
    /// over `r = |y|` with kernel `1 − A_d(rw)`, where `A_d` is the average of
    /// `cos(r w e·θ)` over the sphere.
    fn even_part(&self, w: T, d: usize, tol: T) -> Result<T> {
        let e = self.shell_density(d)?;
        let s = self.singularity();
        let kernel = |z: T| -> T {
            match d {
                1 => {
                    let h = (z * lit(0.5)).sin();
                    lit::<T>(2.0) * h * h
                }
                2 => lit(one_minus_j0(to_f64(z))),
                _ => lit(one_minus_sinc(to_f64(z))),
            }
        };
        let pi = T::PI();
        let split = |lo: T, hi: T| to_f64(((hi - lo) * w / pi).ceil()) as usize;
        let min_h = lit::<T>(1e-5) / (T::one() + w + self.tempering());
        let inner = toward_zero_corrected(|r| kernel(r * w) * e(r), T::one(), lit::<T>(2.0) - s, min_h, split)?;

        // [1, start]: no oscillation when start·w ≤ max(1, w).
        let start = T::one().max(w.recip());
        let mut mid = T::zero();
        if start > T::one() {
            let rule = gauss_legendre::<T>(16);
            let mut a = T::one();
            while a < start {
                let b = (a * lit(2.0)).min(start);
                mid += rule.integrate(|r| kernel(r * w) * e(r), a, b);
                a = b;
            }
        }
        let mass = match self {
            KernelTerm::Power { scale, alpha, tempering } if *tempering == T::zero() => {
                lit::<T>(sphere_area(d)) * *scale * start.powf(-*alpha) / *alpha
            }
            _ => half_line_log(&e, start, self.decay(), tol)?,
        };
        let osc = match d {
            1 => oscillatory_tail(&e, start, w, Trig::Cos, tol * lit(0.01))?,
            3 => oscillatory_tail(|r: T| e(r) / (r * w), start, w, Trig::Sin, tol * lit(0.01))?,
            _ => j0_tail(&e, start, w, tol * lit(0.01))?,
        };
        Ok(inner + mid + mass - osc)
    }

    fn tempering(&self) -> T {
        match self {
            KernelTerm::Power { tempering, .. } => *tempering,
            _ => T::zero(),
        }
    }

    /// `∫_0^∞ (r w 𝟙_{r<1} − sin(r w)) (κ(r) − κ(−r)) dr`, the imaginary part
    /// for `ξ = w > 0` in dimension one.
    fn odd_part_1d(&self, w: T, tol: T) -> Result<T> {
        let KernelTerm::General { density, .. } = self else {
            return Ok(T::zero());
        };
        let dd = |r: T| density(&[r]) - density(&[-r]);
        let s = self.singularity();
        let kern = |z: T| {
            if z < lit(1e-2) {
                let z2 = z * z;
                z * z2 / lit(6.0) * (T::one() - z2 / lit(20.0) * (T::one() - z2 / lit(42.0)))
            } else {
                z - z.sin()
            }
        };
        let pi = T::PI();
        let split = |lo: T, hi: T| to_f64(((hi - lo) * w / pi).ceil()) as usize;
        let min_h = lit::<T>(1e-5) / (T::one() + w);
        let inner = toward_zero_corrected(|r| kern(r * w) * dd(r), T::one(), lit::<T>(3.0) - s, min_h, split)?;
        let start = T::one().max(w.recip());
        let mut mid = T::zero();
        if start > T::one() {
            let rule = gauss_legendre::<T>(16);
            let mut a = T::one();
            while a < start {
                let b = (a * lit(2.0)).min(start);
                mid += rule.integrate(|r| (r * w).sin() * dd(r), a, b);
                a = b;
            }
        }
        let tail = oscillatory_tail(dd, start, w, Trig::Sin, tol * lit(0.01))?;
        Ok(inner - mid - tail)
    }
}

/// `∫_a^∞ g(r) J_0(r w) dr` for smooth decaying `g`.
fn j0_tail<T: Real, G: Fn(T) -> T>(g: G, a: T, w: T, tol: T) -> Result<T> {
    let j0 = |z: T| lit::<T>(bessel_j0(to_f64(z)));
    let r0 = a.max(lit::<T>(40.0) / w);
    let mut acc = T::zero();
    if r0 > a {
        let rule = gauss_legendre::<T>(16);
        let h = T::PI() / w;
        let mut lo = a;
        while lo < r0 {
            let hi = (lo + h).min(r0);
            acc += rule.integrate(|r| g(r) * j0(r * w), lo, hi);
            lo = hi;
        }
    }
    // Hankel form: J0(z) = [(P+Q) cos z + (P−Q) sin z] / √(π z)
    let pq = |z: T| {
        let iz2 = (z * z).recip();
        let p = T::one() - lit::<T>(9.0 / 128.0) * iz2 + lit::<T>(3675.0 / 32768.0) * iz2 * iz2;
        let q = (lit::<T>(-1.0 / 8.0) + lit::<T>(75.0 / 1024.0) * iz2) / z;
        (p, q)
    };
    let amp = |r: T| g(r) / (T::PI() * r * w).sqrt();
    let c = oscillatory_tail(
        |r| {
            let (p, q) = pq(r * w);
            amp(r) * (p + q)
        },
        r0,
        w,
        Trig::Cos,
        tol,
    )?;
    let s = oscillatory_tail(
        |r| {
            let (p, q) = pq(r * w);
            amp(r) * (p - q)
        },
        r0,
        w,
        Trig::Sin,
        tol,
    )?;
    Ok(acc + c + s)
}

/// Drift, diffusion matrix (row-major) and jump measure at one point.
#[derive(Clone, Debug)]
pub struct LevyTriplet<T> {
    pub drift: Vec<T>,
    pub diffusion: Vec<T>,
    pub jumps: JumpMeasure<T>,
}

impl<T: Real> LevyTriplet<T> {
    pub fn new(drift: Vec<T>, diffusion: Vec<T>, jumps: JumpMeasure<T>) -> Result<Self> {
        let d = drift.len();
        if d == 0 || diffusion.len() != d * d {
            return Err(Error::Parameter(format!(
                "triplet shapes: drift {} entries, diffusion {} entries",
                d,
                diffusion.len()
            )));
        }
        if drift.iter().chain(&diffusion).any(|v| !v.is_finite()) {
            return Err(Error::Parameter("triplet contains non-finite entries".into()));
        }
        let scale = diffusion.iter().fold(T::one(), |m, v| m.max(v.abs()));
        if !is_symmetric(&diffusion, d, scale * lit(1e-12)) {
            return Err(Error::Parameter("diffusion matrix is not symmetric".into()));
        }
        if d > 1 || diffusion[0] != T::zero() {
            let lo = sym_eigenvalues(&diffusion, d)[0];
            if lo < lit(-1e-12) {
                return Err(Error::Parameter(format!("diffusion matrix has eigenvalue {lo:e} < -1e-12")));
            }
        }
        if let JumpMeasure::Atoms(a) = &jumps {
            if a.iter().any(|(y, m)| y.len() != d || *m < T::zero() || !m.is_finite()) {
                return Err(Error::Parameter("atoms need location of length d and finite mass >= 0".into()));
            }
        }
        Ok(Self { drift, diffusion, jumps })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            drift: vec![T::zero(); d],
            diffusion: vec![T::zero(); d * d],
            jumps: JumpMeasure::Zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.drift.len()
    }

    /// Spectral norm `|Q|`.
    pub fn diffusion_norm(&self) -> T {
        sym_spectral_norm(&self.diffusion, self.dim())
    }

    /// `∫ min(1, |y|²) ν(dy)`.
    pub fn small_jump_moment(&self, tol: T) -> Result<T> {
        match &self.jumps {
            JumpMeasure::Zero => Ok(T::zero()),
            JumpMeasure::Atoms(a) => Ok(a.iter().fold(T::zero(), |s, (y, m)| {
                let r2 = dot(y, y);
                s + *m * r2.min(T::one())
            })),
            JumpMeasure::Density(terms) => {
                let mut s = T::zero();
                for t in terms {
                    s += t.small_jump_moment(self.dim(), tol)?;
                }
                Ok(s)
            }
        }
    }

    /// `|b| + |Q| + ∫ min(1, |y|²) ν(dy)`.
    pub fn characteristic_size(&self, tol: T) -> Result<T> {
        Ok(norm(&self.drift) + self.diffusion_norm() + self.small_jump_moment(tol)?)
    }

    /// Lévy–Khintchine exponent at `ξ` with absolute quadrature tolerance `tol`.
    pub fn symbol(&self, xi: &[T], tol: T) -> Result<Complex<T>> {
        let d = self.dim();
        if xi.len() != d {
            return Err(Error::Parameter(format!("xi has length {}, triplet dimension {d}", xi.len())));
        }
        if xi.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("xi must be finite".into()));
        }
        let half = lit::<T>(0.5);
        let mut q = Complex::new(half * quad_form(&self.diffusion, xi), -dot(&self.drift, xi));
        match &self.jumps {
            JumpMeasure::Zero => {}
            JumpMeasure::Atoms(atoms) => {
                for (y, m) in atoms {
                    let t = dot(y, xi);
                    let comp = if norm(y) < T::one() { t } else { T::zero() };
                    q += Complex::new(T::one() - t.cos(), comp - t.sin()) * *m;
                }
            }
            JumpMeasure::Density(terms) => {
                for term in terms {
                    q += term.symbol(xi, tol)?;
                }
            }
        }
        Ok(q)
    }

    /// `ν(B̄(c, ρ))` in dimension one, for balls not containing the origin
    /// in their closure unless the measure is finite there.
    pub fn mass_in_ball_1d(&self, c: T, rho: T, tol: T) -> Result<T> {
        if self.dim() != 1 {
            return Err(Error::Dimension {
                dim: self.dim(),
                op: "jump mass of a ball",
            });
        }
        let (a, b) = (c - rho, c + rho);
        match &self.jumps {
            JumpMeasure::Zero => Ok(T::zero()),
            JumpMeasure::Atoms(atoms) => Ok(atoms
                .iter()
                .filter(|(y, _)| y[0] >= a && y[0] <= b)
                .fold(T::zero(), |s, (_, m)| s + *m)),
            JumpMeasure::Density(terms) => {
                if a <= T::zero() && b >= T::zero() {
                    return Ok(T::infinity());
                }
                // reflect to the positive half-line
                let (lo, hi, neg) = if b < T::zero() { (-b, -a, true) } else { (a, b, false) };
                let mut total = T::zero();
                for t in terms {
                    let m = match t {
                        KernelTerm::Power { scale, alpha, tempering } if *tempering == T::zero() => {
                            *scale / *alpha * (lo.powf(-*alpha) - hi.powf(-*alpha))
                        }
                        _ => {
                            let f = |r: T| t.density(&[if neg { -r } else { r }]);
                            mass_on_interval(f, lo, hi, t.singularity(), tol)?
                        }
                    };
                    total += m;
                }
                Ok(total)
            }
        }
    }
}

/// `∫_lo^hi f` for `0 < lo < hi` with `f` possibly steep near `lo`.
fn mass_on_interval<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, _s: T, tol: T) -> Result<T> {
    let rule = gauss_legendre::<T>(16);
    let mut acc = T::zero();
    let mut a = lo;
    // geometric panels from lo, as the density varies on the scale of r
    while a < hi {
        let b = (a * lit(1.25)).min(hi);
        acc += rule.integrate(&f, a, b);
        a = b;
    }
    if !acc.is_finite() {
        return Err(Error::Quadrature {
            context: "jump mass of an interval".into(),
            partial: to_f64(acc),
            last_increment: f64::NAN,
        });
    }
    let _ = tol;
    Ok(acc)
}
