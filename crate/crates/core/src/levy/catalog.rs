//! Named families of symbols that can be declared in configuration files.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::coeff::CoeffFn;
use crate::levy::exponent::LevyExponent;
use crate::levy::symbol::{CoefficientFlags, SymbolField};
use crate::levy::triplet::{JumpMeasure, KernelTerm, LevyTriplet};
use crate::quad::{adaptive, gauss_legendre};
use crate::scalar::{dot, lit, norm, to_f64, Real};
use crate::special::{stable_constant, tempered_stable_half_symbol};

fn one() -> usize {
    1
}

fn unit() -> f64 {
    1.0
}

/// Weight `f(α, β)` of the integrated-stable family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlphaWeight {
    Constant {
        value: f64,
    },
    /// `c0 + c_alpha α + c_phi β`.
    Affine {
        c0: f64,
        c_alpha: f64,
        c_phi: f64,
    },
}

impl AlphaWeight {
    pub fn eval<T: Real>(&self, alpha: T, beta: T) -> T {
        match *self {
            AlphaWeight::Constant { value } => lit(value),
            AlphaWeight::Affine { c0, c_alpha, c_phi } => lit::<T>(c0) + lit::<T>(c_alpha) * alpha + lit::<T>(c_phi) * beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub at: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StablePart {
    pub alpha: f64,
    #[serde(default = "unit")]
    pub scale: f64,
}

/// Symbol declarations. All coefficient functions act on the first
/// coordinate of `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolSpec {
    /// `q(x, ξ) = |ξ|^{α(x)}` on `ℝ^dim`.
    IsotropicStableLike {
        alpha: CoeffFn,
        #[serde(default = "one")]
        dim: usize,
    },
    /// `q(x, ξ) = −i b(x) ξ + ψ(σ(x) ξ)` on `ℝ`.
    SdeSymbol { drift: CoeffFn, sigma: CoeffFn, psi: LevyExponent },
    /// `q(x, ξ) = φ₁(x) ψ₁(ξ) + φ₂(x) ψ₂(ξ)` on `ℝ`.
    Mixed {
        phi1: CoeffFn,
        phi2: CoeffFn,
        psi1: LevyExponent,
        psi2: LevyExponent,
    },
    /// `q(x, ξ) = ∫_I |ξ|^α f(α, φ(x)) dα` on `ℝ`.
    IntegratedStable {
        weight: AlphaWeight,
        phi: CoeffFn,
        interval: [f64; 2],
    },
    /// Jump kernel `κ(x, y) = scale · e^{−tempering |y|} |y|^{−1−α(x)}` on `ℝ`.
    StableDominated {
        alpha: CoeffFn,
        #[serde(default = "unit")]
        scale: f64,
        #[serde(default)]
        tempering: f64,
    },
    /// Constant triplet on `ℝ^d` with `d = drift.len()`; `atoms` only in `d = 1`.
    ConstantTriplet {
        drift: Vec<f64>,
        diffusion: Vec<f64>,
        #[serde(default)]
        atoms: Vec<Atom>,
        #[serde(default)]
        stable: Option<StablePart>,
    },
}

/// Adds `factor · ψ(σ ξ)` (one-dimensional) to a diffusion coefficient and
/// a list of kernel terms.
fn push_scaled_exponent<T: Real>(psi: &LevyExponent, sigma: T, factor: T, q: &mut T, terms: &mut Vec<KernelTerm<T>>) {
    let s = sigma.abs();
    if s == T::zero() || factor == T::zero() {
        return;
    }
    match psi.stable_index() {
        Some(2.0) => *q += factor * lit::<T>(2.0) * s * s,
        Some(a) => terms.push(KernelTerm::Power {
            scale: factor * lit::<T>(stable_constant(a, 1)) * s.powf(lit(a)),
            alpha: lit(a),
            tempering: T::zero(),
        }),
        None => {
            if let Some(KernelTerm::Radial {
                profile,
                singularity,
                decay,
            }) = psi.kernel::<T>(1, factor)
            {
                terms.push(KernelTerm::radial(move |r: T| profile(r / s) / s, singularity, decay));
            }
        }
    }
}

fn jumps_of<T>(terms: Vec<KernelTerm<T>>) -> JumpMeasure<T> {
    if terms.is_empty() {
        JumpMeasure::Zero
    } else {
        JumpMeasure::Density(terms)
    }
}

impl SymbolSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SymbolSpec::IsotropicStableLike { .. } => "isotropic_stable_like",
            SymbolSpec::SdeSymbol { .. } => "sde_symbol",
            SymbolSpec::Mixed { .. } => "mixed",
            SymbolSpec::IntegratedStable { .. } => "integrated_stable",
            SymbolSpec::StableDominated { .. } => "stable_dominated",
            SymbolSpec::ConstantTriplet { .. } => "constant_triplet",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SymbolSpec::IsotropicStableLike { dim, .. } => *dim,
            SymbolSpec::ConstantTriplet { drift, .. } => drift.len(),
            _ => 1,
        }
    }

    /// All coefficient functions involved.
    pub fn coefficients(&self) -> Vec<&CoeffFn> {
        match self {
            SymbolSpec::IsotropicStableLike { alpha, .. } | SymbolSpec::StableDominated { alpha, .. } => vec![alpha],
            SymbolSpec::SdeSymbol { drift, sigma, .. } => vec![drift, sigma],
            SymbolSpec::Mixed { phi1, phi2, .. } => vec![phi1, phi2],
            SymbolSpec::IntegratedStable { phi, .. } => vec![phi],
            SymbolSpec::ConstantTriplet { .. } => vec![],
        }
    }

    /// The same symbol with every coefficient replaced by `f(coefficient)`.
    pub fn map_coefficients(&self, f: impl Fn(&CoeffFn) -> CoeffFn) -> SymbolSpec {
        let mut out = self.clone();
        match &mut out {
            SymbolSpec::IsotropicStableLike { alpha, .. } | SymbolSpec::StableDominated { alpha, .. } => *alpha = f(alpha),
            SymbolSpec::SdeSymbol { drift, sigma, .. } => {
                *drift = f(drift);
                *sigma = f(sigma);
            }
            SymbolSpec::Mixed { phi1, phi2, .. } => {
                *phi1 = f(phi1);
                *phi2 = f(phi2);
            }
            SymbolSpec::IntegratedStable { phi, .. } => *phi = f(phi),
            SymbolSpec::ConstantTriplet { .. } => {}
        }
        out
    }

    /// Points where some coefficient may jump.
    pub fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.coefficients().iter().flat_map(|c| c.breaks()).collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    fn flags(&self) -> CoefficientFlags {
        let cs = self.coefficients();
        let bounded_growth = match self {
            // b and σ enter the symbol directly
            SymbolSpec::SdeSymbol { drift, sigma, .. } => {
                let (a, b) = drift.range();
                let (c, d) = sigma.range();
                a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()
            }
            SymbolSpec::Mixed { phi1, phi2, .. } => phi1.range().1.is_finite() && phi2.range().1.is_finite(),
            SymbolSpec::IntegratedStable { weight, phi, interval } => {
                let (lo, hi) = phi.range();
                lo.is_finite() && hi.is_finite() || matches!(weight, AlphaWeight::Constant { .. }) && interval[0] > 0.0
            }
            _ => true,
        };
        CoefficientFlags {
            continuous_in_x: cs.iter().all(|c| c.continuous()),
            bounded: bounded_growth,
            constant: cs.iter().all(|c| c.is_constant().is_some()),
        }
    }

    /// Validates parameter ranges and builds the symbol.
    pub fn build<T: Real>(&self) -> Result<SymbolField<T>> {
        let flags = self.flags();
        let label = self.kind();
        match self.clone() {
            SymbolSpec::IsotropicStableLike { alpha, dim } => {
                if dim == 0 {
                    return Err(Error::Parameter("dimension must be positive".into()));
                }
                alpha.check_range("alpha(x)", 0.0, 2.0, true, false, "(0, 2]")?;
                let a = alpha.build::<T>()?;
                let a2 = a.clone();
                let triplet = move |x: &[T]| {
                    let al = a.at(x);
                    let d = x.len();
                    let mut diffusion = vec![T::zero(); d * d];
                    let jumps = if al >= lit(2.0) {
                        for i in 0..d {
                            diffusion[i * d + i] = lit(2.0);
                        }
                        JumpMeasure::Zero
                    } else {
                        JumpMeasure::Density(vec![KernelTerm::Power {
                            scale: lit(stable_constant(to_f64(al), d)),
                            alpha: al,
                            tempering: T::zero(),
                        }])
                    };
                    LevyTriplet::new(vec![T::zero(); d], diffusion, jumps)
                };
                Ok(SymbolField::new(dim, label, triplet, flags).with_direct(move |x, xi| {
                    let w = norm(xi);
                    let v = if w == T::zero() { T::zero() } else { w.powf(a2.at(x)) };
                    Ok(Complex::new(v, T::zero()))
                }))
            }
            SymbolSpec::SdeSymbol { drift, sigma, psi } => {
                psi.validate()?;
                let b = drift.build::<T>()?;
                let s = sigma.build::<T>()?;
                let (b2, s2) = (b.clone(), s.clone());
                let triplet = move |x: &[T]| {
                    let mut q = T::zero();
                    let mut terms = Vec::new();
                    push_scaled_exponent(&psi, s.at(x), T::one(), &mut q, &mut terms);
                    LevyTriplet::new(vec![b.at(x)], vec![q], jumps_of(terms))
                };
                Ok(SymbolField::new(1, label, triplet, flags).with_direct(move |x, xi| {
                    let v = psi.eval_radial(s2.at(x) * xi[0]);
                    Ok(Complex::new(v, -b2.at(x) * xi[0]))
                }))
            }
            SymbolSpec::Mixed { phi1, phi2, psi1, psi2 } => {
                psi1.validate()?;
                psi2.validate()?;
                phi1.check_range("phi1(x)", 0.0, f64::INFINITY, false, false, "[0, inf)")?;
                phi2.check_range("phi2(x)", 0.0, f64::INFINITY, false, false, "[0, inf)")?;
                let f1 = phi1.build::<T>()?;
                let f2 = phi2.build::<T>()?;
                let (g1, g2) = (f1.clone(), f2.clone());
                let triplet = move |x: &[T]| {
                    let mut q = T::zero();
                    let mut terms = Vec::new();
                    push_scaled_exponent(&psi1, T::one(), f1.at(x), &mut q, &mut terms);
                    push_scaled_exponent(&psi2, T::one(), f2.at(x), &mut q, &mut terms);
                    LevyTriplet::new(vec![T::zero()], vec![q], jumps_of(terms))
                };
                Ok(SymbolField::new(1, label, triplet, flags).with_direct(move |x, xi| {
                    let v = g1.at(x) * psi1.eval(xi) + g2.at(x) * psi2.eval(xi);
                    Ok(Complex::new(v, T::zero()))
                }))
            }
            SymbolSpec::IntegratedStable { weight, phi, interval } => {
                let [a0, a1] = interval;
                if !(a0 > 0.0 && a0 < a1 && a1 <= 2.0) {
                    return Err(Error::Parameter(format!(
                        "index interval [{a0}, {a1}] must satisfy 0 < a0 < a1 <= 2"
                    )));
                }
                let (plo, phi_hi) = phi.range();
                for al in [a0, a1] {
                    for be in [plo, phi_hi] {
                        let v = weight.eval::<f64>(al, be);
                        if be.is_finite() && v < 0.0 || v.is_nan() {
                            return Err(Error::Inadmissible {
                                what: "f(alpha, phi(x))",
                                value: v,
                                range: "[0, inf)",
                                x: vec![f64::NAN],
                            });
                        }
                    }
                }
                let p = phi.build::<T>()?;
                let p2 = p.clone();
                let rule = gauss_legendre::<T>(32);
                let (lo, hi) = (lit::<T>(a0), lit::<T>(a1));
                let triplet = move |x: &[T]| {
                    let beta = p.at(x);
                    let half = (hi - lo) * lit(0.5);
                    let mid = (hi + lo) * lit(0.5);
                    let mut terms = Vec::new();
                    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                        let al = mid + half * *t;
                        let f = weight.eval(al, beta);
                        if f < T::zero() {
                            return Err(Error::Inadmissible {
                                what: "f(alpha, phi(x))",
                                value: to_f64(f),
                                range: "[0, inf)",
                                x: x.iter().map(|v| to_f64(*v)).collect(),
                            });
                        }
                        terms.push(KernelTerm::Power {
                            scale: *w * half * f * lit(stable_constant(to_f64(al), 1)),
                            alpha: al,
                            tempering: T::zero(),
                        });
                    }
                    LevyTriplet::new(vec![T::zero()], vec![T::zero()], JumpMeasure::Density(terms))
                };
                Ok(SymbolField::new(1, label, triplet, flags).with_direct(move |x, xi| {
                    let w = xi[0].abs();
                    if w == T::zero() {
                        return Ok(Complex::new(T::zero(), T::zero()));
                    }
                    let beta = p2.at(x);
                    let lw = w.ln();
                    let e = adaptive(
                        |al: T| (al * lw).exp() * weight.eval(al, beta),
                        lo,
                        hi,
                        T::tol(1e-13),
                        T::tol(1e-13),
                    )?;
                    Ok(Complex::new(e.value, T::zero()))
                }))
            }
            SymbolSpec::StableDominated { alpha, scale, tempering } => {
                alpha.check_range("alpha(x)", 0.0, 2.0, true, true, "(0, 2)")?;
                if !(scale > 0.0 && tempering >= 0.0) {
                    return Err(Error::Parameter("stable_dominated needs scale > 0 and tempering >= 0".into()));
                }
                let a = alpha.build::<T>()?;
                let a2 = a.clone();
                let (sc, lam) = (lit::<T>(scale), lit::<T>(tempering));
                let triplet = move |x: &[T]| {
                    LevyTriplet::new(
                        vec![T::zero()],
                        vec![T::zero()],
                        JumpMeasure::Density(vec![KernelTerm::Power {
                            scale: sc,
                            alpha: a.at(x),
                            tempering: lam,
                        }]),
                    )
                };
                Ok(SymbolField::new(1, label, triplet, flags).with_direct(move |x, xi| {
                    let al = a2.at(x);
                    let w = xi[0].abs();
                    let v = if w == T::zero() {
                        T::zero()
                    } else if tempering > 0.0 {
                        sc * lit::<T>(2.0 * tempered_stable_half_symbol(to_f64(al), tempering, to_f64(w)))
                    } else {
                        sc / lit::<T>(stable_constant(to_f64(al), 1)) * w.powf(al)
                    };
                    Ok(Complex::new(v, T::zero()))
                }))
            }
            SymbolSpec::ConstantTriplet {
                drift,
                diffusion,
                atoms,
                stable,
            } => {
                let d = drift.len();
                if !atoms.is_empty() && d != 1 {
                    return Err(Error::Parameter("atoms are declared as scalars and need d = 1".into()));
                }
                let mut terms = Vec::new();
                if let Some(st) = stable {
                    if !(st.alpha > 0.0 && st.alpha < 2.0 && st.scale >= 0.0) {
                        return Err(Error::Parameter("stable part needs 0 < alpha < 2 and scale >= 0".into()));
                    }
                    terms.push(KernelTerm::Power {
                        scale: lit(st.scale * stable_constant(st.alpha, d)),
                        alpha: lit(st.alpha),
                        tempering: T::zero(),
                    });
                }
                let jumps = if !atoms.is_empty() {
                    if !terms.is_empty() {
                        return Err(Error::Parameter("constant_triplet takes either atoms or a stable part".into()));
                    }
                    JumpMeasure::Atoms(atoms.iter().map(|a| (vec![lit(a.at)], lit(a.mass))).collect())
                } else {
                    jumps_of(terms)
                };
                let t = LevyTriplet::new(
                    drift.iter().map(|&v| lit(v)).collect(),
                    diffusion.iter().map(|&v| lit(v)).collect(),
                    jumps,
                )?;
                let bt = t.clone();
                let st = stable;
                Ok(SymbolField::from_triplet(label, t).with_direct(move |_, xi| {
                    let half = lit::<T>(0.5);
                    let mut q = Complex::new(half * crate::linalg::quad_form(&bt.diffusion, xi), -dot(&bt.drift, xi));
                    if let JumpMeasure::Atoms(a) = &bt.jumps {
                        for (y, m) in a {
                            let s = dot(y, xi);
                            let c = if norm(y) < T::one() { s } else { T::zero() };
                            q += Complex::new(T::one() - s.cos(), c - s.sin()) * *m;
                        }
                    }
                    if let Some(sp) = st {
                        let w = norm(xi);
                        if w > T::zero() {
                            q += Complex::new(lit::<T>(sp.scale) * w.powf(lit(sp.alpha)), T::zero());
                        }
                    }
                    Ok(q)
                }))
            }
        }
    }
}

/// Builds the symbol described by `spec`.
pub fn make_catalog_symbol<T: Real>(spec: &SymbolSpec) -> Result<SymbolField<T>> {
    spec.build()
}

/// Human-readable listing of the catalog.
pub fn list_catalog() -> String {
    let entries: [(&str, &str, &str); 6] = [
        (
            "isotropic_stable_like",
            "alpha: coefficient with values in (0, 2]; dim (default 1)",
            "q(x,xi) = |xi|^alpha(x). Isotropic stable-like process (existence example).",
        ),
        (
            "sde_symbol",
            "drift: coefficient b; sigma: coefficient; psi: stable | gaussian | relativistic_stable",
            "q(x,xi) = -i b(x) xi + psi(sigma(x) xi). Levy-driven SDE dX = b(X-)dt + sigma(X-)dL.",
        ),
        (
            "mixed",
            "phi1, phi2: nonnegative coefficients; psi1, psi2: exponents",
            "q(x,xi) = phi1(x) psi1(xi) + phi2(x) psi2(xi). Mixed Levy processes example.",
        ),
        (
            "integrated_stable",
            "weight: constant | affine f(alpha, beta); phi: coefficient; interval: [a0, a1] in (0, 2]",
            "q(x,xi) = integral over I of |xi|^alpha f(alpha, phi(x)) dalpha. Stable-like process with integrated index.",
        ),
        (
            "stable_dominated",
            "alpha: coefficient with values in (0, 2); scale (default 1); tempering (default 0)",
            "jump kernel scale * exp(-tempering |y|) |y|^(-1-alpha(x)). Variable-order kernel of the Harnack section.",
        ),
        (
            "constant_triplet",
            "drift: vector; diffusion: row-major matrix; atoms: [{at, mass}] (d = 1); stable: {alpha, scale}",
            "Levy process with a fixed triplet; reference case for the Monte Carlo checks.",
        ),
    ];
    let mut out = String::from("symbol catalog\n");
    for (k, p, d) in entries {
        out.push_str(&format!("\n{k}\n  parameters: {p}\n  {d}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stable_like(alpha: CoeffFn) -> SymbolSpec {
        SymbolSpec::IsotropicStableLike { alpha, dim: 1 }
    }

    #[test]
    fn catalog_examples() {
        let s = make_catalog_symbol::<f64>(&stable_like(CoeffFn::constant(1.0))).unwrap();
        assert!((s.eval(&[0.0], &[3.0]).unwrap().re - 3.0).abs() < 1e-15);

        let s = make_catalog_symbol::<f64>(&SymbolSpec::SdeSymbol {
            drift: CoeffFn::constant(0.0),
            sigma: CoeffFn::constant(2.0),
            psi: LevyExponent::Stable { alpha: 2.0 },
        })
        .unwrap();
        assert_eq!(s.eval(&[0.3], &[1.0]).unwrap(), Complex::new(4.0, 0.0));

        let s = make_catalog_symbol::<f64>(&SymbolSpec::IntegratedStable {
            weight: AlphaWeight::Constant { value: 1.0 },
            phi: CoeffFn::constant(0.0),
            interval: [1.0, 2.0],
        })
        .unwrap();
        let e = std::f64::consts::E;
        let q = s.eval(&[0.0], &[e]).unwrap();
        assert!((q.re - 4.670_774_270_471_604).abs() < 1e-6, "{q}");
        let qt = s.eval_by_triplet(&[0.0], &[e]).unwrap();
        assert!((qt.re - 4.670_774_270_471_604).abs() < 1e-6, "{qt}");
    }

    #[test]
    fn inadmissible_index_reports_x() {
        let spec = stable_like(CoeffFn::Step {
            at: 0.5,
            left: 1.0,
            right: 2.5,
        });
        match make_catalog_symbol::<f64>(&spec) {
            Err(Error::Inadmissible { x, .. }) => assert!(x[0] >= 0.5),
            other => panic!("{other:?}"),
        }
        let zero_at = stable_like(CoeffFn::Sine {
            mean: 1.0,
            amplitude: 1.0,
            frequency: 1.0,
        });
        assert!(make_catalog_symbol::<f64>(&zero_at).is_err());
    }

    #[test]
    fn direct_and_triplet_agree() {
        let specs = vec![
            stable_like(CoeffFn::Tanh {
                lo: 0.6,
                hi: 1.7,
                center: 0.0,
                width: 1.0,
            }),
            SymbolSpec::SdeSymbol {
                drift: CoeffFn::Sign { scale: 1.0 },
                sigma: CoeffFn::Step {
                    at: 0.0,
                    left: 1.0,
                    right: 2.0,
                },
                psi: LevyExponent::RelativisticStable { rho: 1.2, mass: 1.0 },
            },
            SymbolSpec::Mixed {
                phi1: CoeffFn::constant(0.5),
                phi2: CoeffFn::Step {
                    at: 0.0,
                    left: 1.0,
                    right: 3.0,
                },
                psi1: LevyExponent::Gaussian,
                psi2: LevyExponent::Stable { alpha: 0.7 },
            },
            SymbolSpec::StableDominated {
                alpha: CoeffFn::Step {
                    at: 0.0,
                    left: 1.0,
                    right: 1.4,
                },
                scale: 1.0,
                tempering: 0.0,
            },
            SymbolSpec::StableDominated {
                alpha: CoeffFn::Tanh {
                    lo: 0.5,
                    hi: 1.6,
                    center: 0.0,
                    width: 1.0,
                },
                scale: 0.8,
                tempering: 0.7,
            },
            SymbolSpec::ConstantTriplet {
                drift: vec![0.3],
                diffusion: vec![0.5],
                atoms: vec![Atom { at: 0.5, mass: 1.0 }, Atom { at: -2.0, mass: 0.5 }],
                stable: None,
            },
        ];
        for spec in specs {
            let s = make_catalog_symbol::<f64>(&spec).unwrap();
            for x in [-1.3, 0.0, 0.8] {
                for xi in [-4.0, -0.1, 0.5, 9.0] {
                    let a = s.eval(&[x], &[xi]).unwrap();
                    let b = s.eval_by_triplet(&[x], &[xi]).unwrap();
                    assert!(
                        (a - b).norm() <= 1e-6 * (1.0 + a.norm()),
                        "{}: x={x} xi={xi}: {a} vs {b}",
                        spec.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn listing_mentions_every_kind() {
        let l = list_catalog();
        for k in [
            "isotropic_stable_like",
            "sde_symbol",
            "mixed",
            "integrated_stable",
            "stable_dominated",
            "constant_triplet",
        ] {
            assert!(l.contains(k));
        }
    }

    #[test]
    fn toml_declaration() {
        let spec: SymbolSpec = toml::from_str(
            r#"
            kind = "sde_symbol"
            drift = { type = "mollified", n = 8, inner = { type = "sign", scale = 1.0 } }
            sigma = { type = "step", at = 0.0, left = 1.0, right = 2.0 }
            psi = { type = "stable", alpha = 1.5 }
            "#,
        )
        .unwrap();
        assert_eq!(spec.kind(), "sde_symbol");
        let s = make_catalog_symbol::<f32>(&spec).unwrap();
        assert!(s.eval(&[1.0], &[1.0]).unwrap().re > 0.0);
    }
}
