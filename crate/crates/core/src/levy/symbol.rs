//! State-dependent symbols `q(x, ξ)`.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy::triplet::LevyTriplet;
use crate::scalar::Real;

pub type TripletMap<T> = Arc<dyn Fn(&[T]) -> Result<LevyTriplet<T>> + Send + Sync>;
pub type DirectEval<T> = Arc<dyn Fn(&[T], &[T]) -> Result<Complex<T>> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientFlags {
    pub continuous_in_x: bool,
    pub bounded: bool,
    /// The triplet does not depend on `x`.
    pub constant: bool,
}

/// `x ↦ (b(x), Q(x), ν(x, dy))` together with an optional closed form.
#[derive(Clone)]
pub struct SymbolField<T> {
    dim: usize,
    label: String,
    triplet_at: TripletMap<T>,
    direct: Option<DirectEval<T>>,
    flags: CoefficientFlags,
    tol: T,
}

impl<T: Real> std::fmt::Debug for SymbolField<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymbolField")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("direct", &self.direct.is_some())
            .field("flags", &self.flags)
            .finish()
    }
}

impl<T: Real> SymbolField<T> {
    pub fn new<F>(dim: usize, label: impl Into<String>, triplet_at: F, flags: CoefficientFlags) -> Self
    where
        F: Fn(&[T]) -> Result<LevyTriplet<T>> + Send + Sync + 'static,
    {
        Self {
            dim,
            label: label.into(),
            triplet_at: Arc::new(triplet_at),
            direct: None,
            flags,
            tol: T::tol(1e-8),
        }
    }

    /// Symbol of a constant triplet.
    pub fn from_triplet(label: impl Into<String>, t: LevyTriplet<T>) -> Self {
        let d = t.dim();
        Self::new(
            d,
            label,
            move |_| Ok(t.clone()),
            CoefficientFlags {
                continuous_in_x: true,
                bounded: true,
                constant: true,
            },
        )
    }

    pub fn with_direct<F>(mut self, f: F) -> Self
    where
        F: Fn(&[T], &[T]) -> Result<Complex<T>> + Send + Sync + 'static,
    {
        self.direct = Some(Arc::new(f));
        self
    }

    /// Absolute tolerance of the Lévy–Khintchine quadrature.
    pub fn with_tolerance(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn flags(&self) -> CoefficientFlags {
        self.flags
    }

    pub fn tolerance(&self) -> T {
        self.tol
    }

    pub fn has_direct(&self) -> bool {
        self.direct.is_some()
    }

    pub fn triplet(&self, x: &[T]) -> Result<LevyTriplet<T>> {
        self.check_dim(x)?;
        (self.triplet_at)(x)
    }

    fn check_dim(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Parameter(format!(
                "vector of length {} for a symbol on R^{}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `q(x, ξ)` through the closed form when present, otherwise through
    /// the triplet.
    pub fn eval(&self, x: &[T], xi: &[T]) -> Result<Complex<T>> {
        match &self.direct {
            Some(f) => {
                self.check_dim(x)?;
                self.check_dim(xi)?;
                if xi.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Parameter("xi must be finite".into()));
                }
                f(x, xi)
            }
            None => self.eval_by_triplet(x, xi),
        }
    }

    /// `q(x, ξ)` by Lévy–Khintchine quadrature of `triplet_at(x)`.
    pub fn eval_by_triplet(&self, x: &[T], xi: &[T]) -> Result<Complex<T>> {
        self.check_dim(xi)?;
        self.triplet(x)?.symbol(xi, self.tol)
    }

    /// Closed form only.
    pub fn eval_direct(&self, x: &[T], xi: &[T]) -> Option<Result<Complex<T>>> {
        self.direct.as_ref().map(|f| f(x, xi))
    }
}

/// `q(x, ξ)`.
pub fn eval_symbol<T: Real>(sym: &SymbolField<T>, x: &[T], xi: &[T]) -> Result<Complex<T>> {
    sym.eval(x, xi)
}
