//! Evaluation of `Af` on a lattice, with CSV export.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generator::fourier::apply_fourier_raw;
use crate::generator::integro::{apply_integro_with, IntegroOptions};
use crate::generator::test_function::TestFunction;
use crate::levy::symbol::SymbolField;
use crate::scalar::{lit, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Integro,
    Fourier,
}

impl Form {
    pub fn as_str(&self) -> &'static str {
        match self {
            Form::Integro => "integro",
            Form::Fourier => "fourier",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeRow {
    pub x: f64,
    pub af: f64,
    pub form: Form,
    /// Imaginary residual for the Fourier form, zero for the integro form.
    pub residual: f64,
}

/// `Af` at each point of a one-dimensional lattice, rows ordered by point and
/// then by form.
pub fn generator_lattice<T: Real>(sym: &SymbolField<T>, f: &TestFunction<T>, xs: &[f64], forms: &[Form]) -> Result<Vec<LatticeRow>> {
    let opts = IntegroOptions::default();
    let rows: Vec<Vec<LatticeRow>> = xs
        .par_iter()
        .map(|&x| {
            let p = [lit::<T>(x)];
            forms
                .iter()
                .map(|form| {
                    Ok(match form {
                        Form::Integro => LatticeRow {
                            x,
                            af: to_f64(apply_integro_with(sym, f, &p, &opts)?),
                            form: *form,
                            residual: 0.0,
                        },
                        Form::Fourier => {
                            let v = apply_fourier_raw(sym, f, &p)?;
                            LatticeRow {
                                x,
                                af: v.value,
                                form: *form,
                                residual: v.imag_residual,
                            }
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_lattice_csv<W: Write>(rows: &[LatticeRow], mut w: W) -> Result<()> {
    writeln!(w, "x,af,form,residual")?;
    for r in rows {
        writeln!(w, "{:e},{:e},{},{:e}", r.x, r.af, r.form.as_str(), r.residual)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::triplet::{JumpMeasure, LevyTriplet};

    #[test]
    fn csv_layout() {
        let t = LevyTriplet::new(vec![0.0], vec![2.0], JumpMeasure::Zero).unwrap();
        let s = SymbolField::from_triplet("laplace", t);
        let f = TestFunction::gaussian(vec![0.0], 1.0, 1.0).unwrap();
        let rows = generator_lattice(&s, &f, &[0.0, 0.5], &[Form::Integro, Form::Fourier]).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1].form, Form::Fourier);
        let mut buf = Vec::new();
        write_lattice_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,af,form,residual\n0e0,-2e0,integro,0e0\n"));
        assert_eq!(text.lines().count(), 5);
    }
}
