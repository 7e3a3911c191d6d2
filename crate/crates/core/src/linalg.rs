//! Small dense linear algebra on row-major `d × d` matrices.

use crate::scalar::{lit, Real};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues<T: Real>(m: &[T], d: usize) -> Vec<T> {
    assert_eq!(m.len(), d * d);
    let mut a = m.to_vec();
    for _sweep in 0..100 {
        let mut off = T::zero();
        for i in 0..d {
            for j in (i + 1)..d {
                off += a[i * d + j] * a[i * d + j];
            }
        }
        if off <= T::epsilon() * T::epsilon() * lit(1e-4) {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p * d + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (lit::<T>(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..d).map(|i| a[i * d + i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// Spectral norm of a symmetric matrix.
pub fn sym_spectral_norm<T: Real>(m: &[T], d: usize) -> T {
    sym_eigenvalues(m, d).into_iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

pub fn is_symmetric<T: Real>(m: &[T], d: usize, tol: T) -> bool {
    (0..d).all(|i| (0..d).all(|j| (m[i * d + j] - m[j * d + i]).abs() <= tol))
}

/// Lower Cholesky factor of a symmetric positive semidefinite matrix;
/// non-positive pivots are clamped to zero.
pub fn cholesky_psd<T: Real>(m: &[T], d: usize) -> Vec<T> {
    let mut l = vec![T::zero(); d * d];
    for j in 0..d {
        let mut s = m[j * d + j];
        for k in 0..j {
            s -= l[j * d + k] * l[j * d + k];
        }
        let piv = if s > T::zero() { s.sqrt() } else { T::zero() };
        l[j * d + j] = piv;
        for i in (j + 1)..d {
            let mut s = m[i * d + j];
            for k in 0..j {
                s -= l[i * d + k] * l[j * d + k];
            }
            l[i * d + j] = if piv > T::zero() { s / piv } else { T::zero() };
        }
    }
    l
}

/// `y = M x` for a row-major `r × c` matrix.
pub fn mat_vec<T: Real>(m: &[T], x: &[T], out: &mut [T]) {
    let c = x.len();
    for (i, o) in out.iter_mut().enumerate() {
        let row = &m[i * c..(i + 1) * c];
        *o = row.iter().zip(x).fold(T::zero(), |a, (&p, &q)| a + p * q);
    }
}

/// `ξ · M ξ`.
pub fn quad_form<T: Real>(m: &[T], xi: &[T]) -> T {
    let d = xi.len();
    let mut s = T::zero();
    for i in 0..d {
        for j in 0..d {
            s += xi[i] * m[i * d + j] * xi[j];
        }
    }
    s
}
