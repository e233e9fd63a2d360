//! Eigenvalues of dense nonsymmetric matrices.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, then QR iteration on the Hessenberg matrix. Real matrices use the
//! Francis implicit double-shift iteration, which stays in real arithmetic
//! and reads complex conjugate pairs off terminal 2x2 blocks. Complex
//! matrices use an explicit single-shift iteration with Wilkinson shifts.
//!
//! Only the active diagonal window is updated, since eigenvectors are never
//! formed.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::hessenberg::{balance, hessenberg_reduce};
use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Unit roundoff used in the deflation test.
pub const DEFLATION_EPS: f64 = f64::EPSILON; // 2^-52
/// QR sweeps allowed per eigenvalue before giving up.
pub const SWEEPS_PER_EIGENVALUE: usize = 40;
/// An exceptional shift is used after this many stalled sweeps.
pub const EXCEPTIONAL_SHIFT_PERIOD: usize = 10;

/// Scalars whose Hessenberg matrices we can iterate to eigenvalues.
pub trait EigenScalar: Scalar {
    fn hessenberg_eigenvalues(h: Matrix<Self>) -> Result<Vec<Complex64>>;
}

impl EigenScalar for f64 {
    fn hessenberg_eigenvalues(h: Matrix<f64>) -> Result<Vec<Complex64>> {
        francis_double_shift(h)
    }
}

impl EigenScalar for Complex64 {
    fn hessenberg_eigenvalues(h: Matrix<Complex64>) -> Result<Vec<Complex64>> {
        single_shift(h)
    }
}

/// All eigenvalues of a square matrix, sorted by [`sort_eigenvalues`].
pub fn eigenvalues<T: EigenScalar>(a: &Matrix<T>) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::Shape(format!("eigenvalues of a {}x{} matrix", a.rows(), a.cols())));
    }
    let mut b = a.clone();
    balance(&mut b);
    let h = hessenberg_reduce(&b)?;
    let mut ev = T::hessenberg_eigenvalues(h)?;
    sort_eigenvalues(&mut ev);
    Ok(ev)
}

/// Phase in `(-pi, pi]`.
pub fn phase(z: Complex64) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -PI {
        PI
    } else {
        t
    }
}

/// Stable sort by modulus descending, then phase ascending in `(-pi, pi]`.
pub fn sort_eigenvalues(ev: &mut [Complex64]) {
    ev.sort_by(|a, b| compare_eigenvalues(*a, *b));
}

pub fn compare_eigenvalues(a: Complex64, b: Complex64) -> Ordering {
    let (ma, mb) = (a.re.hypot(a.im), b.re.hypot(b.im));
    mb.total_cmp(&ma).then_with(|| phase(a).total_cmp(&phase(b)))
}

fn iteration_limit(n: usize) -> Error {
    Error::IterationLimit { routine: "Hessenberg QR", limit: SWEEPS_PER_EIGENVALUE * n.max(1) }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

fn francis_double_shift(mut a: Matrix<f64>) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    // Accumulated exceptional shifts.
    let mut t = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let nu = nn as usize;
        let mut its = 0;
        loop {
            let mut l = nu;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= DEFLATION_EPS * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nu, nu)];
            if l == nu {
                out.push(Complex64::new(x + t, 0.0));
                nn -= 1;
                break;
            }
            let mut y = a[(nu - 1, nu - 1)];
            let mut w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    let second = if z != 0.0 { x - w / z } else { x + z };
                    out.push(Complex64::new(x + z, 0.0));
                    out.push(Complex64::new(second, 0.0));
                } else {
                    out.push(Complex64::new(x + p, z));
                    out.push(Complex64::new(x + p, -z));
                }
                nn -= 2;
                break;
            }
            if its == SWEEPS_PER_EIGENVALUE {
                return Err(iteration_limit(n));
            }
            if its > 0 && its % EXCEPTIONAL_SHIFT_PERIOD == 0 {
                t += x;
                for i in 0..=nu {
                    a[(i, i)] -= x;
                }
                let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Find two consecutive small subdiagonal entries.
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= DEFLATION_EPS * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }

            // Chase the bulge with 3x3 reflectors.
            for k in m..nu {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nu - 1 { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nu - 1 {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * z;
                    }
                    a[(k + 1, j)] -= pp * y;
                    a[(k, j)] -= pp * x;
                }
                let mmin = nu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nu - 1 {
                        pp += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
        }
    }
    Ok(out)
}

/// Wilkinson shift: the eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn single_shift(mut h: Matrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut out = Vec::with_capacity(n);
    let anorm = h.frobenius_norm();
    let mut hi = n - 1;
    let mut its = 0;
    let mut rotations: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            out.push(h[(0, 0)]);
            break;
        }
        let mut l = hi;
        while l >= 1 {
            let mut s = h[(l - 1, l - 1)].modulus() + h[(l, l)].modulus();
            if s == 0.0 {
                s = anorm;
            }
            if h[(l, l - 1)].modulus() <= DEFLATION_EPS * s {
                h[(l, l - 1)] = <Complex64 as Scalar>::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            out.push(h[(hi, hi)]);
            hi -= 1;
            its = 0;
            continue;
        }
        if its == SWEEPS_PER_EIGENVALUE {
            return Err(iteration_limit(n));
        }
        let mu = if its > 0 && its % EXCEPTIONAL_SHIFT_PERIOD == 0 {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].modulus(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        its += 1;

        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        rotations.clear();
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = x.modulus().hypot(y.modulus());
            let (c, s) = if r == 0.0 {
                (<Complex64 as Scalar>::one(), <Complex64 as Scalar>::zero())
            } else {
                (x.scale(1.0 / r), y.scale(1.0 / r))
            };
            for j in k..=hi {
                let (u, v) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = c.conj() * u + s.conj() * v;
                h[(k + 1, j)] = -s * u + c * v;
            }
            rotations.push((c, s));
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 1).min(hi) {
                let (u, v) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = u * c + v * s;
                h[(i, k + 1)] = -u * s.conj() + v * c.conj();
            }
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triangular_gives_diagonal() {
        let a = Matrix::from_rows(&[[3.0, 1.0, 2.0], [0.0, -5.0, 4.0], [0.0, 0.0, 1.0]]).unwrap();
        let ev = eigenvalues(&a).unwrap();
        assert_eq!(ev, vec![c(-5.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn rotation_generator() {
        let a = Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let ev = eigenvalues(&a).unwrap();
        assert_relative_eq!(ev[0].re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(ev[0].im, -1.0, epsilon = 1e-15);
        assert_relative_eq!(ev[1].im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let a = Matrix::from_rows(&[[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let ev = eigenvalues(&a).unwrap();
        for (got, want) in ev.iter().zip([3.0, 2.0, 1.0]) {
            assert_relative_eq!(got.re, want, epsilon = 1e-12);
            assert_eq!(got.im, 0.0);
        }
    }

    #[test]
    fn complex_matrix_eigenvalues() {
        // Upper triangular complex matrix: eigenvalues are the diagonal.
        let a = Matrix::from_rows(&[[c(1.0, 1.0), c(2.0, 0.0)], [c(0.0, 0.0), c(0.0, -3.0)]]).unwrap();
        let ev = eigenvalues(&a).unwrap();
        assert_relative_eq!(ev[0].im, -3.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1].re, 1.0, epsilon = 1e-14);

        // i * rotation generator has eigenvalues +-1 scaled by i^2... check trace and det.
        let b = Matrix::from_fn(6, 6, |i, j| c(((i + 2 * j) % 5) as f64 - 2.0, ((3 * i + j) % 4) as f64 - 1.5));
        let ev = eigenvalues(&b).unwrap();
        let sum: Complex64 = ev.iter().sum();
        assert_relative_eq!(sum.re, b.trace().re, epsilon = 1e-10);
        assert_relative_eq!(sum.im, b.trace().im, epsilon = 1e-10);
    }

    #[test]
    fn ordering_ties_by_phase() {
        let mut ev = vec![c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, -1.0), c(0.0, 2.0)];
        sort_eigenvalues(&mut ev);
        assert_eq!(ev, vec![c(0.0, 2.0), c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(phase(c(-1.0, -0.0)), PI);
    }

    #[test]
    fn rejects_rectangular() {
        assert!(eigenvalues(&Matrix::<f64>::zeros(2, 3)).is_err());
    }
}
