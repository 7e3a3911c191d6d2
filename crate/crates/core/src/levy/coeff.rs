//! Scalar coefficient functions `x ↦ c(x)` declared in configuration files.
//! On `ℝ^d` they act on the first coordinate.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mollify::mollify_sequence;
use crate::scalar::{lit, to_f64, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoeffFn {
    Constant {
        value: f64,
    },
    /// `left` for `x < at`, `right` for `x ≥ at`.
    Step {
        at: f64,
        left: f64,
        right: f64,
    },
    /// `scale · sgn(x)` with `sgn(0) = 0`.
    Sign {
        scale: f64,
    },
    /// `values[i]` on `[breaks[i-1], breaks[i])`, right-continuous.
    PiecewiseConstant {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
    /// `scale · sgn(x) √|x|`.
    SignSqrt {
        scale: f64,
    },
    /// `mean + amplitude · sin(frequency · x)`.
    Sine {
        mean: f64,
        amplitude: f64,
        frequency: f64,
    },
    /// Smooth transition from `lo` (x → −∞) to `hi` (x → ∞).
    Tanh {
        lo: f64,
        hi: f64,
        center: f64,
        width: f64,
    },
    /// `inner` everywhere except on the finite set `at`, where it equals `value`.
    NullSetModified {
        inner: Box<CoeffFn>,
        at: Vec<f64>,
        value: f64,
    },
    /// `inner ∗ χ_n`.
    Mollified {
        inner: Box<CoeffFn>,
        n: usize,
    },
}

/// A coefficient compiled for scalar type `T`.
#[derive(Clone)]
pub struct Coeff<T> {
    f: Arc<dyn Fn(T) -> T + Send + Sync>,
    /// Closed range of values `[inf, sup]` (possibly infinite).
    pub range: (f64, f64),
    pub continuous: bool,
    /// Points where the function may jump.
    pub breaks: Vec<f64>,
}

impl<T: Real> Coeff<T> {
    #[inline]
    pub fn eval(&self, x: T) -> T {
        (self.f)(x)
    }

    #[inline]
    pub fn at(&self, x: &[T]) -> T {
        (self.f)(x[0])
    }

    pub fn bounded(&self) -> bool {
        self.range.0.is_finite() && self.range.1.is_finite()
    }
}

fn sgn<T: Real>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

impl CoeffFn {
    pub fn constant(value: f64) -> Self {
        CoeffFn::Constant { value }
    }

    /// `self ∗ χ_n`; constants are returned unchanged.
    pub fn mollified(&self, n: usize) -> CoeffFn {
        match self {
            CoeffFn::Constant { .. } => self.clone(),
            _ => CoeffFn::Mollified {
                inner: Box::new(self.clone()),
                n,
            },
        }
    }

    pub fn is_constant(&self) -> Option<f64> {
        match self {
            CoeffFn::Constant { value } => Some(*value),
            _ => None,
        }
    }

    /// Closed hull of the range.
    pub fn range(&self) -> (f64, f64) {
        match self {
            CoeffFn::Constant { value } => (*value, *value),
            CoeffFn::Step { left, right, .. } => (left.min(*right), left.max(*right)),
            CoeffFn::Sign { scale } => (-scale.abs(), scale.abs()),
            CoeffFn::PiecewiseConstant { values, .. } => values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v))),
            CoeffFn::SignSqrt { scale } => {
                if *scale == 0.0 {
                    (0.0, 0.0)
                } else {
                    (f64::NEG_INFINITY, f64::INFINITY)
                }
            }
            CoeffFn::Sine { mean, amplitude, .. } => (mean - amplitude.abs(), mean + amplitude.abs()),
            CoeffFn::Tanh { lo, hi, .. } => (lo.min(*hi), lo.max(*hi)),
            CoeffFn::NullSetModified { inner, value, .. } => {
                let (a, b) = inner.range();
                (a.min(*value), b.max(*value))
            }
            // convolution with a probability density stays in the hull
            CoeffFn::Mollified { inner, .. } => inner.range(),
        }
    }

    pub fn continuous(&self) -> bool {
        match self {
            CoeffFn::Constant { .. }
            | CoeffFn::SignSqrt { .. }
            | CoeffFn::Sine { .. }
            | CoeffFn::Tanh { .. }
            | CoeffFn::Mollified { .. } => true,
            CoeffFn::Step { left, right, .. } => left == right,
            CoeffFn::Sign { scale } => *scale == 0.0,
            CoeffFn::PiecewiseConstant { values, .. } => values.windows(2).all(|w| w[0] == w[1]),
            CoeffFn::NullSetModified { .. } => false,
        }
    }

    /// Points of possible discontinuity (or, for `SignSqrt`, of a cusp).
    pub fn breaks(&self) -> Vec<f64> {
        match self {
            CoeffFn::Step { at, .. } => vec![*at],
            CoeffFn::Sign { .. } | CoeffFn::SignSqrt { .. } => vec![0.0],
            CoeffFn::PiecewiseConstant { breaks, .. } => breaks.clone(),
            CoeffFn::NullSetModified { inner, at, .. } => {
                let mut b = inner.breaks();
                b.extend(at.iter().copied());
                b
            }
            _ => Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CoeffFn::PiecewiseConstant { breaks, values } => {
                if values.len() != breaks.len() + 1 {
                    return Err(Error::Parameter(format!(
                        "piecewise_constant needs {} values for {} breaks, got {}",
                        breaks.len() + 1,
                        breaks.len(),
                        values.len()
                    )));
                }
                if breaks.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Parameter("piecewise_constant breaks must increase".into()));
                }
            }
            CoeffFn::Tanh { width, .. } if *width <= 0.0 => {
                return Err(Error::Parameter("tanh width must be positive".into()));
            }
            CoeffFn::Mollified { inner, n } => {
                if *n == 0 {
                    return Err(Error::Parameter("mollification level must be >= 1".into()));
                }
                if !inner.range().0.is_finite() || !inner.range().1.is_finite() {
                    return Err(Error::Parameter("only bounded coefficients can be mollified".into()));
                }
                inner.validate()?;
            }
            CoeffFn::NullSetModified { inner, .. } => inner.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// Compiles the description into an evaluator.
    pub fn build<T: Real>(&self) -> Result<Coeff<T>> {
        self.validate()?;
        let f: Arc<dyn Fn(T) -> T + Send + Sync> = match self.clone() {
            CoeffFn::Constant { value } => {
                let v = lit::<T>(value);
                Arc::new(move |_| v)
            }
            CoeffFn::Step { at, left, right } => {
                let (a, l, r) = (lit::<T>(at), lit::<T>(left), lit::<T>(right));
                Arc::new(move |x| if x < a { l } else { r })
            }
            CoeffFn::Sign { scale } => {
                let s = lit::<T>(scale);
                Arc::new(move |x| s * sgn(x))
            }
            CoeffFn::PiecewiseConstant { breaks, values } => {
                let b: Vec<T> = breaks.iter().map(|&v| lit(v)).collect();
                let v: Vec<T> = values.iter().map(|&v| lit(v)).collect();
                Arc::new(move |x| v[b.partition_point(|&t| t <= x)])
            }
            CoeffFn::SignSqrt { scale } => {
                let s = lit::<T>(scale);
                Arc::new(move |x| s * sgn(x) * x.abs().sqrt())
            }
            CoeffFn::Sine {
                mean,
                amplitude,
                frequency,
            } => {
                let (m, a, w) = (lit::<T>(mean), lit::<T>(amplitude), lit::<T>(frequency));
                Arc::new(move |x| m + a * (w * x).sin())
            }
            CoeffFn::Tanh { lo, hi, center, width } => {
                let (l, h, c, w) = (lit::<T>(lo), lit::<T>(hi), lit::<T>(center), lit::<T>(width));
                let half = lit::<T>(0.5);
                Arc::new(move |x| l + (h - l) * half * (T::one() + ((x - c) / w).tanh()))
            }
            CoeffFn::NullSetModified { inner, at, value } => {
                let g = inner.build::<T>()?;
                let pts: Vec<T> = at.iter().map(|&v| lit(v)).collect();
                let v = lit::<T>(value);
                Arc::new(move |x| if pts.contains(&x) { v } else { g.eval(x) })
            }
            CoeffFn::Mollified { inner, n } => {
                let g = inner.build::<T>()?;
                let (lo, hi) = inner.range();
                let bound = lit::<T>(lo.abs().max(hi.abs()));
                let breaks: Vec<T> = inner.breaks().iter().map(|&v| lit(v)).collect();
                let m = mollify_sequence(move |x| g.eval(x), &breaks, bound, n)?;
                Arc::new(move |x| m.eval(x))
            }
        };
        Ok(Coeff {
            f,
            range: self.range(),
            continuous: self.continuous(),
            breaks: self.breaks(),
        })
    }

    /// Checks that the coefficient stays inside `[lo, hi]` (with open ends
    /// where requested) and reports an offending point otherwise.
    pub fn check_range(&self, what: &'static str, lo: f64, hi: f64, open_lo: bool, open_hi: bool, range_text: &'static str) -> Result<()> {
        let bad = |v: f64| v.is_nan() || v < lo || v > hi || (open_lo && v == lo) || (open_hi && v == hi);
        let (a, b) = self.range();
        if !bad(a) && !bad(b) {
            return Ok(());
        }
        let c = self.build::<f64>()?;
        let mut probes: Vec<f64> = (0..=20_000).map(|k| -100.0 + 0.01 * k as f64).collect();
        for b in self.breaks() {
            probes.extend([b - 1e-9, b, b + 1e-9]);
        }
        probes.extend([-1e6, 1e6]);
        for x in probes {
            let v = c.eval(x);
            if bad(v) {
                return Err(Error::Inadmissible {
                    what,
                    value: v,
                    range: range_text,
                    x: vec![x],
                });
            }
        }
        // The hull is out of range but no sampled point is: the extreme
        // value is approached only asymptotically.
        let v = if bad(a) { a } else { b };
        Err(Error::Inadmissible {
            what,
            value: v,
            range: range_text,
            x: vec![if bad(a) { f64::NEG_INFINITY } else { f64::INFINITY }],
        })
    }
}

/// Convenience: a constant compiled coefficient.
pub fn constant<T: Real>(v: T) -> Coeff<T> {
    let val = to_f64(v);
    Coeff {
        f: Arc::new(move |_| v),
        range: (val, val),
        continuous: true,
        breaks: Vec::new(),
    }
}
