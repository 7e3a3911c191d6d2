//! `Af(x) = b·∇f + ½ tr(Q ∇²f) + ∫ (f(x+y) − f(x) − ∇f(x)·y 𝟙_{(0,1)}(|y|)) ν(x, dy)`.

use crate::error::{Error, Result};
use crate::generator::test_function::TestFunction;
use crate::levy::symbol::SymbolField;
use crate::levy::triplet::{JumpMeasure, KernelTerm, LevyTriplet};
use crate::quad::{gauss_legendre, toward_zero_corrected};
use crate::scalar::{dot, lit, norm, Real};

/// Quadrature layout for the jump integral.
#[derive(Debug, Clone, Copy)]
pub struct IntegroOptions<T> {
    /// Below this jump size the integrand is replaced by its Taylor expansion.
    pub delta: T,
    /// Panel width away from the origin; defaults to `scale(f)/16`.
    pub panel_width: Option<T>,
    /// Jump size beyond which `f(x ± y)` is treated as zero; defaults to the
    /// distance from `x` to the far edge of the (effective) support.
    pub extent: Option<T>,
}

impl<T: Real> Default for IntegroOptions<T> {
    fn default() -> Self {
        Self {
            delta: lit(1e-4),
            panel_width: None,
            extent: None,
        }
    }
}

impl<T: Real> IntegroOptions<T> {
    /// A layout fine enough for every function in `fs` around every point of
    /// `xs`, so that `A` is evaluated with one quadrature rule across them.
    pub fn shared(fs: &[&TestFunction<T>], xs: &[Vec<T>]) -> Self {
        let mut width = T::infinity();
        let mut extent = T::zero();
        for f in fs {
            width = width.min(f.scale() / lit(16.0));
            for x in xs {
                let d: Vec<T> = x.iter().zip(f.center()).map(|(a, b)| *a - b).collect();
                extent = extent.max(norm(&d) + f.effective_radius());
            }
        }
        Self {
            delta: lit(1e-4),
            panel_width: Some(width),
            extent: Some(extent),
        }
    }
}

/// `Af(x)` in the integro-differential form with default quadrature.
pub fn apply_integro<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, x: &[T]) -> Result<T> {
    apply_integro_with(sym, f, x, &IntegroOptions::default())
}

pub fn apply_integro_with<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, x: &[T], opts: &IntegroOptions<T>) -> Result<T> {
    let t = sym.triplet(x)?;
    integro_from_triplet(&t, f, x, opts)
}

/// `Af(x)` for the operator with constant triplet `t`, evaluated at `x`.
pub fn integro_from_triplet<T: Real>(t: &LevyTriplet<T>, f: &TestFunction<T>, x: &[T], opts: &IntegroOptions<T>) -> Result<T> {
    let d = t.dim();
    if f.dim() != d || x.len() != d {
        return Err(Error::Parameter("test function, point and triplet dimensions differ".into()));
    }
    if f.is_zero() {
        return Ok(T::zero());
    }
    let half = lit::<T>(0.5);
    let grad = f.gradient(x);
    let hess = f.hessian(x);
    let mut acc = dot(&t.drift, &grad);
    let mut tr = T::zero();
    for i in 0..d {
        for j in 0..d {
            tr += t.diffusion[i * d + j] * hess[j * d + i];
        }
    }
    acc += half * tr;
    match &t.jumps {
        JumpMeasure::Zero => {}
        JumpMeasure::Atoms(atoms) => {
            let fx = f.value(x);
            for (y, m) in atoms {
                let xy: Vec<T> = x.iter().zip(y).map(|(a, b)| *a + *b).collect();
                let comp = if norm(y) < T::one() { dot(&grad, y) } else { T::zero() };
                acc += *m * (f.value(&xy) - fx - comp);
            }
        }
        JumpMeasure::Density(terms) => {
            if d != 1 {
                return Err(Error::Dimension {
                    dim: d,
                    op: "integro-differential form with a jump density",
                });
            }
            acc += jump_part_1d(terms, f, x[0], grad[0], hess[0], opts)?;
        }
    }
    Ok(acc)
}

/// Even and odd parts `S(y) = (κ(y) + κ(−y))/2`, `O(y) = (κ(y) − κ(−y))/2`
/// of the summed kernel at `y > 0`.
fn parts<T: Real>(terms: &[KernelTerm<T>], y: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let mut s = T::zero();
    let mut o = T::zero();
    for k in terms {
        match k {
            KernelTerm::General { .. } => {
                let p = k.density(&[y]);
                let m = k.density(&[-y]);
                s += half * (p + m);
                o += half * (p - m);
            }
            _ => s += k.profile(y, 1),
        }
    }
    (s, o)
}

fn jump_part_1d<T: Real>(terms: &[KernelTerm<T>], f: &TestFunction<T>, x: T, f1: T, f2: T, opts: &IntegroOptions<T>) -> Result<T> {
    let one = T::one();
    let two = lit::<T>(2.0);
    let delta = opts.delta;
    let width = opts.panel_width.unwrap_or_else(|| f.scale() / lit(16.0));
    let reach = opts.extent.unwrap_or_else(|| (x - f.center()[0]).abs() + f.effective_radius());
    let ymax = reach.max(one);
    let fx = f.value(&[x]);
    let asymmetric = terms.iter().any(|k| !k.is_radial());

    // (0, δ): second-order Taylor for the even part, third order for the odd part
    let mut small = T::zero();
    let smax = terms.iter().fold(T::zero(), |a, k| a.max(k.singularity()));
    if f2 != T::zero() {
        let i2 = toward_zero_corrected(|y| y * y * parts(terms, y).0, delta, two - smax, delta * lit(1e-6), |_, _| 1)?;
        small += f2 * i2;
    }
    if asymmetric {
        let h = f.scale() * lit(1e-3);
        let f3 = (f.hessian(&[x + h])[0] - f.hessian(&[x - h])[0]) / (two * h);
        if f3 != T::zero() {
            let i3 = toward_zero_corrected(
                |y| y * y * y * parts(terms, y).1,
                delta,
                lit::<T>(3.0) - smax,
                delta * lit(1e-6),
                |_, _| 1,
            )?;
            small += f3 / lit(3.0) * i3;
        }
    }

    // panel edges on [δ, ymax]: dyadic growth up to the panel width, then
    // uniform, with a break at the compensator cutoff |y| = 1
    // outside the support f(x ± y) vanishes for |y| < |x − c| − R, as do f
    // and its derivatives at x, so the panels start at the support
    let gap = (x - f.center()[0]).abs() - f.effective_radius();
    let start = if opts.extent.is_none() && gap > delta { gap } else { delta };
    let mut edges = vec![start];
    let mut e = start;
    while e * two < width.min(one) {
        e *= two;
        edges.push(e);
    }
    let mut stops = vec![ymax];
    if one > e && one < ymax {
        stops.insert(0, one);
    }
    for s in stops {
        let n = ((s - e) / width).ceil().max(one);
        let h = (s - e) / n;
        let m = crate::scalar::to_f64(n) as usize;
        for k in 1..=m {
            edges.push(if k == m { s } else { e + h * lit(k as f64) });
        }
        e = s;
    }
    let rule = gauss_legendre::<T>(20);
    let integrand = |y: T| {
        let (s, o) = parts(terms, y);
        let fp = f.value(&[x + y]);
        let fm = f.value(&[x - y]);
        let mut v = (fp + fm - two * fx) * s;
        if o != T::zero() {
            let comp = if y < one { two * f1 * y } else { T::zero() };
            v += (fp - fm - comp) * o;
        }
        v
    };
    let mut mid = T::zero();
    for w in edges.windows(2) {
        mid += rule.integrate(integrand, w[0], w[1]);
    }

    // |y| > ymax: f(x ± y) = 0 and no compensator
    let mut tail = T::zero();
    if fx != T::zero() {
        let tol = lit::<T>(1e-12);
        for k in terms {
            let (p, m) = k.tail_mass_1d(ymax, tol)?;
            tail += p + m;
        }
    }
    Ok(small + mid - fx * tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::catalog::{make_catalog_symbol, SymbolSpec};
    use crate::levy::coeff::CoeffFn;

    fn gauss() -> TestFunction<f64> {
        TestFunction::gaussian(vec![0.0], 1.0, 1.0).unwrap()
    }

    #[test]
    fn laplacian_of_gaussian() {
        let t = LevyTriplet::new(vec![0.0], vec![2.0], JumpMeasure::Zero).unwrap();
        let s = SymbolField::from_triplet("laplace", t);
        let v = apply_integro(&s, &gauss(), &[0.0]).unwrap();
        assert!((v + 2.0).abs() < 1e-12);
    }

    #[test]
    fn drift_vanishes_on_flat_top() {
        let t = LevyTriplet::new(vec![1.0, 0.0], vec![0.0; 4], JumpMeasure::Zero).unwrap();
        let s = SymbolField::from_triplet("drift", t);
        let b = TestFunction::bump(vec![0.0, 0.0], 1.0).unwrap();
        assert_eq!(apply_integro(&s, &b, &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn cauchy_on_gaussian() {
        // −(−Δ)^{1/2} e^{−x²} at 0 = −∫|ξ| e^{−ξ²/4}/(2√π) dξ = −2/√π
        let s = make_catalog_symbol::<f64>(&SymbolSpec::IsotropicStableLike {
            alpha: CoeffFn::constant(1.0),
            dim: 1,
        })
        .unwrap();
        let v = apply_integro(&s, &gauss(), &[0.0]).unwrap();
        let want = -2.0 / std::f64::consts::PI.sqrt();
        assert!((v - want).abs() < 1e-7, "{v} vs {want}");
    }

    #[test]
    fn maximum_principle_at_bump_peak() {
        for a in [0.3, 1.0, 1.7, 1.99] {
            let s = make_catalog_symbol::<f64>(&SymbolSpec::IsotropicStableLike {
                alpha: CoeffFn::constant(a),
                dim: 1,
            })
            .unwrap();
            let b = TestFunction::bump(vec![0.5], 1.0).unwrap();
            assert!(apply_integro(&s, &b, &[0.5]).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn atoms_in_two_dimensions() {
        let t = LevyTriplet::new(vec![0.0, 0.0], vec![0.0; 4], JumpMeasure::Atoms(vec![(vec![0.5, 0.0], 2.0)])).unwrap();
        let s = SymbolField::from_triplet("atoms", t);
        let f = TestFunction::gaussian(vec![0.0, 0.0], 1.0, 1.0).unwrap();
        let x = [0.2f64, 0.1];
        let want = 2.0 * (f.value(&[0.7, 0.1]) - f.value(&x) - 0.5 * f.gradient(&x)[0]);
        assert!((apply_integro(&s, &f, &x).unwrap() - want).abs() < 1e-15);
    }
}
