//! `Af` tabulated on a one-dimensional grid for evaluation along many paths.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generator::integro::apply_integro;
use crate::generator::test_function::TestFunction;
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};

struct Piece {
    lo: f64,
    h: f64,
    values: Vec<f64>,
}

impl Piece {
    fn hi(&self) -> f64 {
        self.lo + self.h * (self.values.len() - 1) as f64
    }

    /// Cubic Lagrange interpolation on the four nearest nodes of the piece.
    fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        if n < 4 {
            let u = ((x - self.lo) / self.h).clamp(0.0, (n - 1) as f64);
            let i = (u.floor() as usize).min(n - 2);
            let t = u - i as f64;
            return self.values[i] * (1.0 - t) + self.values[i + 1] * t;
        }
        let u = (x - self.lo) / self.h;
        let i0 = (u.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let t = u - i0 as f64;
        let v = &self.values[i0..i0 + 4];
        // nodes at 0, 1, 2, 3
        let l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
        let l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
        let l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
        let l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
        v[0] * l0 + v[1] * l1 + v[2] * l2 + v[3] * l3
    }
}

/// `Af` on `[lo, hi]`, split at coefficient discontinuities so that no
/// interpolation stencil straddles one. Outside the range `Af` is evaluated
/// directly.
pub struct AfTable<'a, T: Real> {
    sym: &'a SymbolField<T>,
    f: &'a TestFunction<T>,
    pieces: Vec<Piece>,
    interpolation_error: f64,
}

impl<'a, T: Real> AfTable<'a, T> {
    /// `spacing` is the largest node distance; `breaks` are points where
    /// `x ↦ q(x, ·)` may jump (right-continuous there).
    pub fn build(sym: &'a SymbolField<T>, f: &'a TestFunction<T>, lo: f64, hi: f64, spacing: f64, breaks: &[f64]) -> Result<Self> {
        if sym.dim() != 1 || f.dim() != 1 {
            return Err(Error::Dimension {
                dim: sym.dim(),
                op: "tabulated generator",
            });
        }
        if !(hi > lo && spacing > 0.0) {
            return Err(Error::Parameter("table range and spacing must be positive".into()));
        }
        let mut cuts = vec![lo];
        let mut b: Vec<f64> = breaks.iter().copied().filter(|v| *v > lo && *v < hi).collect();
        b.sort_by(f64::total_cmp);
        cuts.extend(b);
        cuts.push(hi);
        let mut specs = Vec::new();
        for w in cuts.windows(2) {
            let n = ((w[1] - w[0]) / spacing).ceil().max(1.0) as usize;
            specs.push((w[0], (w[1] - w[0]) / n as f64, n + 1));
        }
        let nodes: Vec<(usize, usize, f64)> = specs
            .iter()
            .enumerate()
            .flat_map(|(j, &(a, h, n))| {
                let last = j + 1 < specs.len();
                (0..n).map(move |k| {
                    let mut x = a + h * k as f64;
                    // left limit at an interior break
                    if k == n - 1 && last {
                        x -= 1e-9 * (1.0 + x.abs());
                    }
                    (j, k, x)
                })
            })
            .collect();
        let vals: Vec<f64> = nodes
            .par_iter()
            .map(|&(_, _, x)| Ok(to_f64(apply_integro(sym, f, &[lit::<T>(x)])?)))
            .collect::<Result<_>>()?;
        let mut pieces: Vec<Piece> = specs
            .iter()
            .map(|&(a, h, n)| Piece {
                lo: a,
                h,
                values: Vec::with_capacity(n),
            })
            .collect();
        for (&(j, _, _), v) in nodes.iter().zip(vals) {
            pieces[j].values.push(v);
        }
        let mut table = Self {
            sym,
            f,
            pieces,
            interpolation_error: 0.0,
        };
        table.interpolation_error = table.probe_error()?;
        Ok(table)
    }

    /// Largest `|interpolated − direct|` over midpoints of every fourth cell.
    fn probe_error(&self) -> Result<f64> {
        let mids: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| (0..p.values.len() - 1).step_by(4).map(move |k| p.lo + p.h * (k as f64 + 0.5)))
            .collect();
        let errs: Vec<f64> = mids
            .par_iter()
            .map(|&x| Ok((self.eval(x)? - self.direct(x)?).abs()))
            .collect::<Result<_>>()?;
        Ok(errs.into_iter().fold(0.0, f64::max))
    }

    fn direct(&self, x: f64) -> Result<f64> {
        Ok(to_f64(apply_integro(self.sym, self.f, &[lit::<T>(x)])?))
    }

    pub fn interpolation_error(&self) -> f64 {
        self.interpolation_error
    }

    pub fn range(&self) -> (f64, f64) {
        (self.pieces[0].lo, self.pieces.last().unwrap().hi())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if x < lo || x > hi {
            return self.direct(x);
        }
        // last piece whose left end is ≤ x (pieces are right-continuous)
        let j = self.pieces.partition_point(|p| p.lo <= x).max(1) - 1;
        Ok(self.pieces[j].eval(x))
    }

    /// Largest tabulated `|Af|`.
    pub fn max_abs(&self) -> f64 {
        self.pieces.iter().flat_map(|p| p.values.iter()).fold(0.0, |m, v| m.max(v.abs()))
    }
}
