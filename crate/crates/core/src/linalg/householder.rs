//! Householder reflectors and the factorizations built directly on them:
//! thin QR, `|det|`, and orthogonal projection onto a span.

use super::matrix::Matrix;
use super::scalar::{norm2, Scalar};
use crate::error::{Error, Result};

/// Relative threshold below which a new vector is considered to lie in the
/// span accumulated so far.
pub const RANK_TOL: f64 = 1e-12;

/// Hermitian reflector `H = I - beta v v*` with `H x = alpha e_1`.
#[derive(Clone, Debug)]
pub(crate) struct Reflector<T> {
    pub v: Vec<T>,
    pub beta: f64,
    pub alpha: T,
}

impl<T: Scalar> Reflector<T> {
    /// Returns `None` when `x` already has the form `alpha e_1` (including `x = 0`).
    pub fn new(x: &[T]) -> Option<Self> {
        let x0 = x[0];
        let tail = norm2(&x[1..]);
        if tail == 0.0 {
            return None;
        }
        let a0 = x0.modulus();
        let norm = a0.hypot(tail);
        let phase = if a0 == 0.0 { T::one() } else { x0.scale(1.0 / a0) };
        let alpha = -phase.scale(norm);
        let mut v = x.to_vec();
        v[0] = x0 - alpha;
        Some(Self { v, beta: 1.0 / (norm * (norm + a0)), alpha })
    }

    /// Applies `H` to a vector segment of the same length.
    #[inline]
    pub fn apply_vec(&self, w: &mut [T]) {
        let s = super::scalar::dot_conj(&self.v, w).scale(self.beta);
        for (wi, vi) in w.iter_mut().zip(&self.v) {
            *wi -= *vi * s;
        }
    }

    /// `A[r0.., c0..c1] <- H A[r0.., c0..c1]` where `H` acts on rows `r0..r0+len`.
    pub fn apply_left(&self, a: &mut Matrix<T>, r0: usize, c0: usize, c1: usize) {
        if c0 >= c1 {
            return;
        }
        let mut w = vec![T::zero(); c1 - c0];
        for (k, vk) in self.v.iter().enumerate() {
            let cv = vk.conj();
            for (wj, &aj) in w.iter_mut().zip(&a.row(r0 + k)[c0..c1]) {
                *wj += cv * aj;
            }
        }
        for (k, &vk) in self.v.iter().enumerate() {
            let s = vk.scale(self.beta);
            for (aj, &wj) in a.row_mut(r0 + k)[c0..c1].iter_mut().zip(&w) {
                *aj -= s * wj;
            }
        }
    }

    /// `A[r0..r1, c0..] <- A[r0..r1, c0..] H` where `H` acts on columns `c0..c0+len`.
    pub fn apply_right(&self, a: &mut Matrix<T>, r0: usize, r1: usize, c0: usize) {
        let len = self.v.len();
        for i in r0..r1 {
            let row = &mut a.row_mut(i)[c0..c0 + len];
            let mut s = T::zero();
            for (&x, &vj) in row.iter().zip(&self.v) {
                s += x * vj;
            }
            let s = s.scale(self.beta);
            for (x, &vj) in row.iter_mut().zip(&self.v) {
                *x -= s * vj.conj();
            }
        }
    }
}

/// Thin QR factorization `a = Q R` of a matrix with `rows >= cols`.
///
/// `Q` is `rows x cols` with orthonormal columns, `R` is `cols x cols` upper
/// triangular with a real nonnegative diagonal.
pub fn householder_qr<T: Scalar>(a: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::Shape(format!("QR needs rows >= cols, got {m}x{n}")));
    }
    let mut work = a.clone();
    let mut reflectors = Vec::with_capacity(n);
    for k in 0..n {
        let col: Vec<T> = (k..m).map(|i| work[(i, k)]).collect();
        let h = Reflector::new(&col);
        if let Some(h) = &h {
            h.apply_left(&mut work, k, k, n);
            work[(k, k)] = h.alpha;
            for i in k + 1..m {
                work[(i, k)] = T::zero();
            }
        }
        reflectors.push(h);
    }

    let mut q = Matrix::from_fn(m, n, |i, j| if i == j { T::one() } else { T::zero() });
    for (k, h) in reflectors.iter().enumerate().rev() {
        if let Some(h) = h {
            h.apply_left(&mut q, k, k, n);
        }
    }
    let mut r = Matrix::from_fn(n, n, |i, j| if j >= i { work[(i, j)] } else { T::zero() });

    // Normalize to a nonnegative real diagonal of R.
    for k in 0..n {
        let d = r[(k, k)];
        let modulus = d.modulus();
        if modulus == 0.0 || (d.im() == 0.0 && d.re() > 0.0) {
            continue;
        }
        let phase = d.scale(1.0 / modulus);
        for x in &mut r.row_mut(k)[k..] {
            *x = phase.conj() * *x;
        }
        r[(k, k)] = T::from_real(modulus);
        for i in 0..m {
            q[(i, k)] *= phase;
        }
    }
    Ok((q, r))
}

/// Natural log of `|det(a)|` via Householder triangularization; `-inf` for
/// an exactly singular reduction.
pub fn log_abs_determinant<T: Scalar>(a: &Matrix<T>) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut log_det = 0.0;
    for k in 0..n {
        let col: Vec<T> = (k..n).map(|i| work[(i, k)]).collect();
        let pivot = match Reflector::new(&col) {
            Some(h) => {
                h.apply_left(&mut work, k, k + 1, n);
                h.alpha
            }
            None => col[0],
        };
        log_det += pivot.modulus().ln();
    }
    Ok(log_det)
}

/// `|det(a)|` computed as the product of the diagonal of `R` in `a = QR`.
pub fn abs_determinant<T: Scalar>(a: &Matrix<T>) -> Result<f64> {
    log_abs_determinant(a).map(f64::exp)
}

/// Orthogonal projector onto the span of a growing set of vectors.
///
/// Vectors whose component outside the current span falls below
/// [`RANK_TOL`] times their norm are treated as dependent and do not
/// enlarge the span.
#[derive(Clone, Debug)]
pub struct SpanProjector<T> {
    dim: usize,
    reflectors: Vec<Reflector<T>>,
}

impl<T: Scalar> SpanProjector<T> {
    pub fn new(dim: usize) -> Self {
        Self { dim, reflectors: Vec::new() }
    }

    pub fn from_basis<V: AsRef<[T]>>(dim: usize, basis: &[V]) -> Result<Self> {
        let mut p = Self::new(dim);
        for b in basis {
            p.push(b.as_ref())?;
        }
        Ok(p)
    }

    /// Dimension of the spanned subspace.
    pub fn rank(&self) -> usize {
        self.reflectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v` in the rotated frame: the first `rank` entries lie
    /// in the span, the rest in its orthogonal complement.
    fn rotate(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!("vector of length {} in dimension {}", v.len(), self.dim)));
        }
        let mut w = v.to_vec();
        for (k, h) in self.reflectors.iter().enumerate() {
            h.apply_vec(&mut w[k..]);
        }
        Ok(w)
    }

    /// Euclidean distance from `v` to the span.
    pub fn distance(&self, v: &[T]) -> Result<f64> {
        let w = self.rotate(v)?;
        Ok(norm2(&w[self.rank()..]))
    }

    /// Adds `v` to the spanning set and returns its distance to the span
    /// before the addition.
    pub fn push(&mut self, v: &[T]) -> Result<f64> {
        let w = self.rotate(v)?;
        let k = self.rank();
        let dist = norm2(&w[k..]);
        let scale = norm2(v);
        if k < self.dim && dist > RANK_TOL * scale {
            let h = Reflector::new(&w[k..]).unwrap_or(Reflector {
                // Residual already along e_k: an identity step that still
                // records the new direction.
                v: {
                    let mut e = vec![T::zero(); self.dim - k];
                    e[0] = T::one();
                    e
                },
                beta: 0.0,
                alpha: w[k],
            });
            self.reflectors.push(h);
        }
        Ok(dist)
    }
}

/// Euclidean distance from `v` to the linear span of `basis` (an empty basis
/// spans `{0}`).
pub fn distance_to_span<T: Scalar, V: AsRef<[T]>>(v: &[T], basis: &[V]) -> Result<f64> {
    SpanProjector::from_basis(v.len(), basis)?.distance(v)
}

/// `dist(R_i, span{R_j : j != i})` for every row `R_i` of `a`.
pub fn row_complement_distances<T: Scalar>(a: &Matrix<T>) -> Vec<f64> {
    (0..a.rows())
        .map(|i| {
            let others: Vec<&[T]> = (0..a.rows()).filter(|&j| j != i).map(|j| a.row(j)).collect();
            distance_to_span(a.row(i), &others).expect("rows share the column dimension")
        })
        .collect()
}

/// `prod_k dist(R_k, span{R_1, ..., R_{k-1}})`, the volume spanned by the rows.
pub fn row_volume<T: Scalar>(a: &Matrix<T>) -> f64 {
    let mut p = SpanProjector::new(a.cols());
    (0..a.rows()).map(|i| p.push(a.row(i)).expect("rows share the column dimension")).product()
}
