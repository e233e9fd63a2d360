//! Singular values via Householder bidiagonalization followed by
//! Golub-Kahan implicit-shift QR on the bidiagonal.
//!
//! For complex input the bidiagonal entries are complex, but a unitary
//! diagonal scaling on each side makes them real and nonnegative without
//! changing the singular values, so the QR phase always runs on the entry
//! moduli in real arithmetic.

use super::householder::Reflector;
use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Singular values below this multiple of `||A||_F` are reported as exactly 0.
pub const ZERO_THRESHOLD: f64 = 1e-12;
const SWEEPS_PER_VALUE: usize = 40;

/// Singular values of `a`, descending, `min(rows, cols)` of them.
pub fn singular_values<T: Scalar>(a: &Matrix<T>) -> Result<Vec<f64>> {
    let fro = a.frobenius_norm();
    // Bidiagonalize the tall orientation; singular values are invariant under adjoint.
    let (d, e) = if a.rows() >= a.cols() { bidiagonalize(a.clone()) } else { bidiagonalize(a.adjoint()) };
    let mut s = bidiagonal_singular_values(d, e)?;
    let cutoff = ZERO_THRESHOLD * fro;
    for x in &mut s {
        if *x <= cutoff {
            *x = 0.0;
        }
    }
    Ok(s)
}

/// `s_1(a) = max_{|x|=1} |a x|`.
pub fn operator_norm<T: Scalar>(a: &Matrix<T>) -> Result<f64> {
    Ok(singular_values(a)?[0])
}

/// `s_n(a) = min_{|x|=1} |a x|` for square `a`; 0 for numerically singular input.
pub fn smallest_singular_value<T: Scalar>(a: &Matrix<T>) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("smallest singular value of a {}x{} matrix", a.rows(), a.cols())));
    }
    Ok(*singular_values(a)?.last().expect("nonempty"))
}

/// Reduces a tall matrix (`rows >= cols`) to upper bidiagonal form and
/// returns the moduli of the diagonal and superdiagonal.
fn bidiagonalize<T: Scalar>(mut a: Matrix<T>) -> (Vec<f64>, Vec<f64>) {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    for k in 0..n {
        let col: Vec<T> = (k..m).map(|i| a[(i, k)]).collect();
        d[k] = match Reflector::new(&col) {
            Some(h) => {
                h.apply_left(&mut a, k, k + 1, n);
                h.alpha.modulus()
            }
            None => col[0].modulus(),
        };
        if k + 1 < n {
            // Zero row k to the right of the superdiagonal: reflect conj(row).
            let row: Vec<T> = a.row(k)[k + 1..].iter().map(|x| x.conj()).collect();
            e[k] = match Reflector::new(&row) {
                Some(h) => {
                    h.apply_right(&mut a, k + 1, m, k + 1);
                    h.alpha.modulus()
                }
                None => row[0].modulus(),
            };
        }
    }
    (d, e)
}

/// Plane rotation `(c, s, r)` with `c f + s g = r`, `-s f + c g = 0`.
#[inline]
fn rotation(f: f64, g: f64) -> (f64, f64, f64) {
    if g == 0.0 {
        (1.0, 0.0, f)
    } else if f == 0.0 {
        (0.0, 1.0, g)
    } else {
        let r = f.hypot(g);
        (f / r, g / r, r)
    }
}

/// Singular values of the real upper bidiagonal matrix with diagonal `d`
/// and superdiagonal `e`, sorted descending.
pub fn bidiagonal_singular_values(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    debug_assert_eq!(e.len(), n.saturating_sub(1));
    let eps = f64::EPSILON;
    let bnorm = d.iter().chain(&e).fold(0.0_f64, |m, x| m.max(x.abs()));
    let tiny = eps * bnorm;
    let budget = SWEEPS_PER_VALUE * n.max(1);
    let mut sweeps = 0;

    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        // Deflate negligible superdiagonal entries.
        for i in 0..hi {
            if e[i].abs() <= eps * (d[i].abs() + d[i + 1].abs()) || e[i].abs() <= f64::MIN_POSITIVE {
                e[i] = 0.0;
            }
        }
        if e[hi - 1] == 0.0 {
            hi -= 1;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 && e[lo - 1] != 0.0 {
            lo -= 1;
        }

        sweeps += 1;
        if sweeps > budget {
            return Err(Error::IterationLimit { routine: "bidiagonal QR", limit: budget });
        }

        // A zero on the diagonal lets the block split after chasing its row
        // (or column, at the bottom) to zero with rotations.
        if let Some(k) = (lo..=hi).find(|&k| d[k].abs() <= tiny) {
            d[k] = 0.0;
            if k < hi {
                let mut f = e[k];
                e[k] = 0.0;
                for j in k + 1..=hi {
                    let (c, s, r) = rotation(d[j], f);
                    d[j] = r;
                    if j < hi {
                        f = -s * e[j];
                        e[j] *= c;
                    }
                }
            } else {
                let mut f = e[hi - 1];
                e[hi - 1] = 0.0;
                for j in (lo..hi).rev() {
                    let (c, s, r) = rotation(d[j], f);
                    d[j] = r;
                    if j > lo {
                        f = -s * e[j - 1];
                        e[j - 1] *= c;
                    }
                }
            }
            continue;
        }

        // Wilkinson shift from the trailing 2x2 of B^T B.
        let a11 = d[hi - 1] * d[hi - 1] + if hi - 1 > lo { e[hi - 2] * e[hi - 2] } else { 0.0 };
        let a12 = d[hi - 1] * e[hi - 1];
        let a22 = d[hi] * d[hi] + e[hi - 1] * e[hi - 1];
        let delta = 0.5 * (a11 - a22);
        let mut mu = if delta == 0.0 && a12 == 0.0 {
            a22
        } else {
            let sgn = if delta >= 0.0 { 1.0 } else { -1.0 };
            let denom = delta + sgn * delta.hypot(a12);
            if denom == 0.0 {
                a22 - a12.abs()
            } else {
                a22 - a12 * a12 / denom
            }
        };
        // Zero-shift sweep when the shift is negligible at the block's scale;
        // this keeps relative accuracy of tiny singular values.
        let block_max = (lo..=hi).fold(0.0_f64, |m, k| m.max(d[k].abs()));
        if mu <= (eps * block_max).powi(2) || mu < 0.0 {
            mu = 0.0;
        }

        let mut y = d[lo] * d[lo] - mu;
        let mut z = d[lo] * e[lo];
        for k in lo..hi {
            // Column rotation on (k, k+1).
            let (c, s, r) = rotation(y, z);
            if k > lo {
                e[k - 1] = r;
            }
            let dk = c * d[k] + s * e[k];
            e[k] = -s * d[k] + c * e[k];
            let bulge = s * d[k + 1];
            d[k + 1] *= c;
            // Row rotation on (k, k+1) removing the subdiagonal bulge.
            let (c, s, r) = rotation(dk, bulge);
            d[k] = r;
            let ek = e[k];
            e[k] = c * ek + s * d[k + 1];
            d[k + 1] = -s * ek + c * d[k + 1];
            if k + 1 < hi {
                z = s * e[k + 1];
                e[k + 1] *= c;
            }
            y = e[k];
        }
    }

    for x in &mut d {
        *x = x.abs();
    }
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Top eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration with Rayleigh quotients.
///
/// Intended as an independent cross-check of the SVD kernel (applied to
/// `A A*`), not as a production eigensolver.
pub fn power_iteration_top<T: Scalar>(a: &Matrix<T>, tol: f64, max_iter: usize) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("power iteration on a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    // Deterministic start vector with no special alignment.
    let mut v: Vec<T> = (0..n).map(|i| T::from_real(1.0 + ((i as f64) * 0.618_033_988_75).fract())).collect();
    let norm = super::scalar::norm2(&v);
    v.iter_mut().for_each(|x| *x = x.scale(1.0 / norm));
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let w = a.mul_vec(&v);
        let next = super::scalar::dot_conj(&v, &w).re();
        let wn = super::scalar::norm2(&w);
        if wn == 0.0 {
            return Ok(0.0);
        }
        v = w.into_iter().map(|x| x.scale(1.0 / wn)).collect();
        if (next - lambda).abs() <= tol * next.abs() {
            return Ok(next);
        }
        lambda = next;
    }
    Err(Error::IterationLimit { routine: "power iteration", limit: max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn diagonal_and_rank_one() {
        assert_eq!(singular_values(&Matrix::from_diagonal(&[1.0, 2.0])).unwrap(), vec![2.0, 1.0]);
        let ones = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let s = singular_values(&ones).unwrap();
        assert_relative_eq!(s[0], 2.0, epsilon = 1e-14);
        assert_eq!(s[1], 0.0);
    }

    #[test]
    fn special_two_by_two() {
        // I - w * [[1, 0], [1, 0]] with w = 1.
        let a = Matrix::from_rows(&[[0.0, 0.0], [-1.0, 1.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert_relative_eq!(s[0], 2f64.sqrt(), epsilon = 1e-14);
        assert_eq!(s[1], 0.0);
    }

    #[test]
    fn norms() {
        assert_eq!(operator_norm(&Matrix::<f64>::identity(4)).unwrap(), 1.0);
        let ones = Matrix::from_fn(5, 5, |_, _| 1.0);
        assert_relative_eq!(operator_norm(&ones).unwrap(), 5.0, epsilon = 1e-13);
        let nil = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(operator_norm(&nil).unwrap(), 1.0);
        assert_eq!(smallest_singular_value(&Matrix::from_diagonal(&[1.0, 2.0])).unwrap(), 1.0);
        assert!(smallest_singular_value(&Matrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn wide_and_complex() {
        let a = Matrix::from_rows(&[[3.0, 0.0, 0.0], [0.0, 0.0, 4.0]]).unwrap();
        assert_eq!(singular_values(&a).unwrap(), vec![4.0, 3.0]);
        let i = Complex64::new(0.0, 1.0);
        let c = Matrix::from_rows(&[[i, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), i.scale(-2.0)]]).unwrap();
        assert_eq!(singular_values(&c).unwrap(), vec![2.0, 1.0]);
    }

    #[test]
    fn power_iteration_examples() {
        let d = Matrix::from_diagonal(&[4.0, 1.0]);
        assert_relative_eq!(power_iteration_top(&d, 1e-14, 1000).unwrap(), 4.0, max_relative = 1e-12);
        let ones = Matrix::from_fn(3, 3, |_, _| 1.0);
        let gram = ones.matmul(&ones.adjoint()).unwrap();
        assert_relative_eq!(power_iteration_top(&gram, 1e-14, 1000).unwrap(), 9.0, max_relative = 1e-12);
        let close = Matrix::from_diagonal(&[4.0, 3.999]);
        assert!(power_iteration_top(&close, 1e-14, 2).is_err());
    }

    #[test]
    fn bidiagonal_with_zero_diagonal() {
        let s = bidiagonal_singular_values(vec![1.0, 0.0, 2.0], vec![1.0, 1.0]).unwrap();
        // B B^T = [[2,0,0],[0,1,2],[0,2,4]] -> eigenvalues 5, 2, 0.
        assert_relative_eq!(s[0], 5f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(s[1], 2f64.sqrt(), epsilon = 1e-14);
        assert!(s[2].abs() < 1e-15);
    }
}
