//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All kernels are written against [`Real`] so the same code runs in `f32`
//! and `f64`. Constants enter through [`lit`], which is exact for every
//! literal used in this crate when `T = f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Absolute tolerance that is meaningful at this precision: `requested`
    /// floored at a few hundred ulps.
    fn tol(requested: f64) -> Self {
        let floor = Self::epsilon() * lit(256.0);
        let t: Self = lit(requested);
        if t < floor {
            floor
        } else {
            t
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline(always)]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable")
}

#[inline(always)]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Euclidean norm of a slice.
pub fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt()
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Sum in a fixed pairwise order; the result depends only on the slice
/// contents, never on how the values were produced.
pub fn pairwise_sum<T: Real>(v: &[T]) -> T {
    const LEAF: usize = 32;
    if v.len() <= LEAF {
        return v.iter().fold(T::zero(), |a, &b| a + b);
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Builds `[lo, hi]` sampled at `n >= 2` equispaced points, both ends included.
pub fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / lit::<T>((n - 1) as f64);
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * lit::<T>(i as f64) })
                .collect()
        }
    }
}
