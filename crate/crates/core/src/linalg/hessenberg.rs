use super::householder::Reflector;
use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Reduces a square matrix to upper Hessenberg form by a unitary similarity
/// `Q* A Q` built from Householder reflectors.
pub fn hessenberg_reduce<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::Shape(format!("Hessenberg reduction of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let col: Vec<T> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let Some(refl) = Reflector::new(&col) else {
            continue;
        };
        refl.apply_left(&mut h, k + 1, k, n);
        refl.apply_right(&mut h, 0, n, k + 1);
        h[(k + 1, k)] = refl.alpha;
        for i in k + 2..n {
            h[(i, k)] = T::zero();
        }
    }
    Ok(h)
}

/// Diagonal similarity scaling by powers of two so that row and column
/// off-diagonal norms are comparable. Powers of two keep the scaling exact.
pub(crate) fn balance<T: Scalar>(a: &mut Matrix<T>) {
    const RADIX: f64 = 2.0;
    const RADIX_SQ: f64 = RADIX * RADIX;
    let n = a.rows();
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].modulus();
                    r += a[(i, j)].modulus();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX_SQ;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX_SQ;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for x in a.row_mut(i) {
                    *x = x.scale(g);
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)].scale(f);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hessenberg_input_is_unchanged() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [0.0, 7.0, 8.0]]).unwrap();
        assert_eq!(hessenberg_reduce(&a).unwrap(), a);
    }

    #[test]
    fn reduction_preserves_invariants() {
        let a = Matrix::from_fn(5, 5, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0 + 0.1 * j as f64);
        let h = hessenberg_reduce(&a).unwrap();
        assert!(h.is_upper_hessenberg());
        assert_relative_eq!(h.trace(), a.trace(), max_relative = 1e-10);
        assert_relative_eq!(h.frobenius_norm(), a.frobenius_norm(), max_relative = 1e-10);
        assert!(hessenberg_reduce(&Matrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn balancing_is_a_similarity() {
        let mut a = Matrix::from_rows(&[[1.0, 1e6, 0.0], [1e-6, 2.0, 1e4], [0.0, 1e-4, 3.0]]).unwrap();
        let trace = a.trace();
        balance(&mut a);
        assert_eq!(a.trace(), trace);
        assert!(a[(0, 1)] < 1e6);
    }
}
