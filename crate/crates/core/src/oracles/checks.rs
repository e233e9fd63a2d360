use num_complex::Complex64;

use super::report::{CheckReport, Tracker};
use crate::ensembles::{EntryLaw, SeededStream};
use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues, row_complement_distances, singular_values, ComplexMatrix, Matrix, SpanProjector, ZERO_THRESHOLD,
};

/// Relative slack for the singular value inequalities.
pub const INEQUALITY_TOL: f64 = 1e-8;
/// Relative slack on products of eigenvalue moduli / singular values.
pub const PRODUCT_TOL: f64 = 1e-6;
/// Relative cut-off on singular values of `A - B` when counting its rank.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// Dimension above which the special matrix is handled through its 2x2 block.
pub const SPECIAL_DENSE_LIMIT: usize = 1000;

fn sv(a: &Matrix) -> Result<Vec<f64>> {
    singular_values(a)
}

fn require_same_square(a: &Matrix, b: &Matrix) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::Shape(format!(
            "need square matrices of equal size, got {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// Submultiplicativity of `s_1`, the 1-Lipschitz property of each `s_i`,
/// supermultiplicativity of `s_n`, and, when `a` is diagonal, the sandwich
/// `s_n(D) s_i(B) <= s_i(DB) <= s_1(D) s_i(B)`.
pub fn check_basic_inequalities(a: &Matrix, b: &Matrix) -> Result<CheckReport> {
    require_same_square(a, b)?;
    let n = a.rows();
    let mut t = Tracker::new("basic", INEQUALITY_TOL);
    let (sa, sb) = (sv(a)?, sv(b)?);
    let sab = sv(&a.matmul(b)?)?;
    let norm_scale = sa[0] * sb[0];

    t.le(sab[0], sa[0] * sb[0], norm_scale, || "s1(AB) <= s1(A) s1(B)".into());

    let gap = sv(&a.checked_sub(b)?)?[0];
    let lip_scale = sa[0].max(sb[0]);
    for i in 0..n {
        t.le((sa[i] - sb[i]).abs(), gap, lip_scale, || format!("|s{}(A) - s{}(B)| <= s1(A - B)", i + 1, i + 1));
    }

    t.le(sa[n - 1] * sb[n - 1], sab[n - 1], norm_scale, || "sn(A) sn(B) <= sn(AB)".into());

    if a.is_diagonal() {
        for i in 0..n {
            t.le(sa[n - 1] * sb[i], sab[i], norm_scale, || format!("sn(D) s{}(B) <= s{}(DB)", i + 1, i + 1));
            t.le(sab[i], sa[0] * sb[i], norm_scale, || format!("s{}(DB) <= s1(D) s{}(B)", i + 1, i + 1));
        }
        t.flag("diagonal-sandwich");
    }
    Ok(t.finish())
}

/// `n^{-1/2} min_i dist(R_i, R_{-i}) <= s_n(A) <= min_i dist(R_i, R_{-i})`.
pub fn check_rv_row_bound(a: &Matrix) -> Result<CheckReport> {
    if !a.is_square() {
        return Err(Error::Shape(format!("row bound needs a square matrix, got {:?}", a.shape())));
    }
    let n = a.rows();
    let mut t = Tracker::new("rv-row-bound", INEQUALITY_TOL);
    let s = sv(a)?;
    let sn = s[n - 1];
    let dists = row_complement_distances(a);
    let (argmin, dmin) =
        dists
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, d)| if d < best.1 { (i, d) } else { best });
    t.le(dmin / (n as f64).sqrt(), sn, s[0], || format!("n^-1/2 dist(R{}, rest) <= sn", argmin + 1));
    t.le(sn, dmin, s[0], || format!("sn <= dist(R{}, rest)", argmin + 1));
    if sn < ZERO_THRESHOLD * a.frobenius_norm() {
        t.flag("near-singular");
    }
    Ok(t.finish())
}

/// `sum_i s_i(A)^{-2} = sum_i dist(R_i, R_{-i})^{-2}` for a full-rank `n' x n`, `n' <= n`.
pub fn check_tao_vu_negative_moment(a: &Matrix) -> Result<CheckReport> {
    if a.rows() > a.cols() {
        return Err(Error::Shape(format!("negative moment identity needs rows <= cols, got {:?}", a.shape())));
    }
    let s = sv(a)?;
    let smallest = *s.last().expect("nonempty");
    let threshold = ZERO_THRESHOLD * a.frobenius_norm();
    if smallest < threshold {
        return Err(Error::RankDeficient { smallest, threshold });
    }
    let mut t = Tracker::new("tao-vu-negative-moment", INEQUALITY_TOL);
    let lhs: f64 = s.iter().map(|x| x.powi(-2)).sum();
    let rhs: f64 = row_complement_distances(a).iter().map(|d| d.powi(-2)).sum();
    t.eq(lhs, rhs, lhs.max(rhs), || format!("sum s^-2 vs sum dist^-2 ({}x{})", a.rows(), a.cols()));
    Ok(t.finish())
}

/// Deleting rows: `s_i(A) >= s_i(B) >= s_{i + n - n'}(A)`.
pub fn check_cauchy_interlacing(a: &Matrix, deleted_rows: &[usize]) -> Result<CheckReport> {
    let n = a.rows();
    if let Some(&bad) = deleted_rows.iter().find(|&&i| i >= n) {
        return Err(Error::Dimension(format!("row {bad} out of range for {n} rows")));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !deleted_rows.contains(i)).collect();
    if keep.is_empty() {
        return Err(Error::Dimension("cannot delete every row".into()));
    }
    let b = a.select_rows(&keep)?;
    let (sa, sb) = (sv(a)?, sv(&b)?);
    let deleted = n - keep.len();
    let mut t = Tracker::new("cauchy-interlacing", INEQUALITY_TOL);
    for i in 0..sb.len() {
        t.le(sb[i], sa[i], sa[0], || format!("s{}(B) <= s{}(A), {deleted} rows deleted", i + 1, i + 1));
        let lower = sa.get(i + deleted).copied().unwrap_or(0.0);
        t.le(lower, sb[i], sa[0], || format!("s{}(A) <= s{}(B), {deleted} rows deleted", i + 1 + deleted, i + 1));
    }
    Ok(t.finish())
}

/// Numerical rank of `a - b`.
pub fn perturbation_rank(a: &Matrix, b: &Matrix) -> Result<usize> {
    let scale = sv(a)?[0].max(sv(b)?[0]);
    let d = sv(&a.checked_sub(b)?)?;
    Ok(d.iter().filter(|&&x| x > RANK_THRESHOLD * scale).count())
}

/// With `k = rank(A - B)`: `s_{i-k}(A) >= s_i(B) >= s_{i+k}(A)` (out-of-range
/// indices read as `+inf` and 0), and `||F_A - F_B||_inf <= k / n` for the
/// singular value distribution functions.
pub fn check_thompson_lidskii(a: &Matrix, b: &Matrix) -> Result<CheckReport> {
    if a.shape() != b.shape() {
        return Err(Error::Shape(format!("shapes {:?} and {:?} differ", a.shape(), b.shape())));
    }
    let (sa, sb) = (sv(a)?, sv(b)?);
    let scale = sa[0].max(sb[0]);
    let k = perturbation_rank(a, b)?;
    let p = sa.len();
    let mut t = Tracker::new("thompson-lidskii", INEQUALITY_TOL);
    for i in 0..p {
        if i >= k {
            t.le(sb[i], sa[i - k], scale, || format!("s{}(B) <= s{}(A), k={k}", i + 1, i + 1 - k));
        }
        let lower = sa.get(i + k).copied().unwrap_or(0.0);
        t.le(lower, sb[i], scale, || format!("s{}(A) <= s{}(B), k={k}", i + 1 + k, i + 1));
    }

    // Counting with a small absolute slack keeps values that agree to
    // rounding from opening a spurious gap.
    let slack = INEQUALITY_TOL * scale;
    let count = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x + slack).count() as isize;
    let gap = sa.iter().chain(&sb).map(|&x| (count(&sa, x) - count(&sb, x)).unsigned_abs()).max().unwrap_or(0);
    let bound = k as f64 / p as f64;
    let sup = gap as f64 / p as f64;
    t.margin(bound - sup, || format!("sup |F_A - F_B| = {sup:.4} <= k/n = {bound:.4}"));
    t.flag(&format!("rank-{k}"));
    Ok(t.finish())
}

/// Weyl's multiplicative majorization. With moduli `|lambda|` and singular
/// values `s` both descending:
/// `prod_{i<=k} |lambda_i| <= prod_{i<=k} s_i`, `prod_{i>=k} s_i <= prod_{i>=k} |lambda_i|`,
/// equality of full products, `sum_{i<=k} |lambda_i| <= sum_{i<=k} s_i`, and
/// `sum |lambda_i|^2 <= sum s_i^2 = ||A||_F^2`.
///
/// Eigenvalue moduli at or below the SVD zero threshold are read as 0 so that
/// both spectra use the same rank decision.
pub fn check_weyl(a: &Matrix) -> Result<CheckReport> {
    if !a.is_square() {
        return Err(Error::Shape(format!("Weyl inequalities need a square matrix, got {:?}", a.shape())));
    }
    let n = a.rows();
    let s = sv(a)?;
    let zero = ZERO_THRESHOLD * a.frobenius_norm();
    let mut t = Tracker::new("weyl", PRODUCT_TOL);
    let mut lam: Vec<f64> = eigenvalues(a)?.iter().map(|l| l.norm()).collect();
    lam.sort_by(|x, y| y.total_cmp(x));
    for l in lam.iter_mut() {
        if *l <= zero && *l > 0.0 {
            *l = 0.0;
            t.flag("snapped-zero-eigenvalue");
        }
    }
    if s[0] == 0.0 {
        t.flag("zero-matrix");
        return Ok(t.finish());
    }
    // Products of values normalized by s_1 stay in [0, ~1].
    const FLOOR: f64 = 1e-10;
    let rel = |x: f64, y: f64| x.max(y).max(FLOOR);
    // Additive checks are scaled so that PRODUCT_TOL acts as INEQUALITY_TOL on them.
    let additive = PRODUCT_TOL / INEQUALITY_TOL;
    let (mut ps, mut pl) = (1.0, 1.0);
    let (mut sum_s, mut sum_l) = (0.0, 0.0);
    for k in 0..n {
        ps *= s[k] / s[0];
        pl *= lam[k] / s[0];
        sum_s += s[k];
        sum_l += lam[k];
        t.le(pl, ps, rel(pl, ps), || format!("prod_{{i<={}}} |lambda_i| <= prod s_i", k + 1));
        t.le(sum_l, sum_s, s[0] * (k + 1) as f64 / additive, || format!("sum_{{i<={}}} |lambda_i| <= sum s_i", k + 1));
    }
    t.eq(pl, ps, rel(pl, ps), || format!("prod_{{i<={n}}} |lambda_i| == prod s_i"));
    let (mut ts, mut tl) = (1.0, 1.0);
    for k in (0..n).rev() {
        ts *= s[k] / s[0];
        tl *= lam[k] / s[0];
        t.le(ts, tl, rel(ts, tl), || format!("prod_{{i>={}}} s_i <= prod |lambda_i|", k + 1));
    }
    let f2 = a.frobenius_norm_sq();
    let s2: f64 = s.iter().map(|x| x * x).sum();
    let l2: f64 = lam.iter().map(|x| x * x).sum();
    let moment_scale = f2 / additive;
    t.le(l2, s2, moment_scale, || "sum |lambda|^2 <= sum s^2".into());
    t.eq(s2, f2, moment_scale, || "sum s^2 == ||A||_F^2".into());
    Ok(t.finish())
}

/// Closed-form quantities for `A_w = I - w 1 e_1^T` with `w = z / sqrt(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialMatrixForm {
    /// Linear coefficient `1 + (n-1)|w|^2 + |1-w|^2` of the quadratic.
    pub b: f64,
    /// Constant coefficient `|1-w|^2`.
    pub c: f64,
    pub u_plus: f64,
    pub u_minus: f64,
}

impl SpecialMatrixForm {
    pub fn new(n: usize, z: Complex64) -> Self {
        let w = z / (n as f64).sqrt();
        let one_minus_w = (Complex64::new(1.0, 0.0) - w).norm_sqr();
        let b = 1.0 + (n as f64 - 1.0) * w.norm_sqr() + one_minus_w;
        let c = one_minus_w;
        let disc = (b * b - 4.0 * c).max(0.0).sqrt();
        let plus_sq = 0.5 * (b + disc);
        // Product of roots is c; dividing avoids cancellation in b - disc.
        let minus_sq = if plus_sq > 0.0 { c / plus_sq } else { 0.0 };
        Self { b, c, u_plus: plus_sq.sqrt(), u_minus: minus_sq.sqrt() }
    }

    /// `|s^4 - b s^2 + c|`.
    pub fn residual(&self, s: f64) -> f64 {
        let x = s * s;
        (x * x - self.b * x + self.c).abs()
    }
}

/// `lim_n s_n(A_{z/sqrt(n)}) = sqrt(2) / sqrt(2 + |z|^2 + |z| sqrt(4 + |z|^2))`.
pub fn special_matrix_limit(z: Complex64) -> f64 {
    let r = z.norm();
    2f64.sqrt() / (2.0 + r * r + r * (4.0 + r * r).sqrt()).sqrt()
}

/// Dense `A_w`.
pub fn special_matrix(n: usize, z: Complex64) -> ComplexMatrix {
    let w = z / (n as f64).sqrt();
    Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        Complex64::new(id, 0.0) - if j == 0 { w } else { Complex64::new(0.0, 0.0) }
    })
}

/// Singular values of `A_w`, descending. Up to `SPECIAL_DENSE_LIMIT` the
/// dense matrix goes through the SVD kernel; beyond it `A_w` is reduced
/// exactly: in the orthonormal frame `f_1 = e_1`, `f_2 = (1 - e_1)/sqrt(n-1)`
/// it acts as `[[1-w, 0], [-w sqrt(n-1), 1]]` and as the identity on the
/// orthogonal complement of `span{f_1, f_2}`.
pub fn special_matrix_singular_values(n: usize, z: Complex64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Dimension(format!("special matrix needs n >= 2, got {n}")));
    }
    if n <= SPECIAL_DENSE_LIMIT {
        return if z.im == 0.0 {
            singular_values(&special_matrix(n, z).map(|x| x.re))
        } else {
            singular_values(&special_matrix(n, z))
        };
    }
    let w = z / (n as f64).sqrt();
    let one = Complex64::new(1.0, 0.0);
    let block = ComplexMatrix::from_rows(&[[one - w, Complex64::new(0.0, 0.0)], [-w * (n as f64 - 1.0).sqrt(), one]])?;
    let pair = singular_values(&block)?;
    let mut s = Vec::with_capacity(n);
    s.push(pair[0]);
    s.extend(std::iter::repeat_n(1.0, n - 2));
    s.push(pair[1]);
    Ok(s)
}

/// Compares the singular values of `A_w` with the roots `u_+ >= u_-` of
/// `X^2 - (1 + (n-1)|w|^2 + |1-w|^2) X + |1-w|^2` (in `X = u^2`): the other
/// `n - 2` values are 1, `s_1 = u_+`, `s_n = u_-`; for `n >= 10^4` also
/// `|s_n - limit| <= 2 n^{-1/2}`.
pub fn check_special_matrix_a(n: usize, z: Complex64) -> Result<CheckReport> {
    let s = special_matrix_singular_values(n, z)?;
    let form = SpecialMatrixForm::new(n, z);
    let mut t = Tracker::new("special-matrix", INEQUALITY_TOL);
    let w = z / (n as f64).sqrt();
    if (w - 1.0).norm() <= f64::EPSILON {
        t.flag("singular-case-w-equals-1");
    }
    if n > SPECIAL_DENSE_LIMIT {
        t.flag("block-reduction");
    }
    for (i, &x) in s.iter().enumerate().take(n - 1).skip(1) {
        t.within((x - 1.0).abs(), 1e-9, || format!("s{}(A_w) == 1", i + 1));
    }
    let coeff_scale = 1.0 + form.b + form.c;
    for (label, x) in [("s1", s[0]), ("sn", s[n - 1])] {
        t.within(form.residual(x), INEQUALITY_TOL * coeff_scale, || format!("quadratic residual at {label}"));
    }
    t.within((s[0] - form.u_plus).abs(), INEQUALITY_TOL * form.u_plus.max(1.0), || "s1 == u+".into());
    t.within((s[n - 1] - form.u_minus).abs(), INEQUALITY_TOL, || "sn == u-".into());
    if n >= 10_000 {
        let limit = special_matrix_limit(z);
        t.within((s[n - 1] - limit).abs(), 2.0 / (n as f64).sqrt(), || format!("sn near limit {limit:.6}"));
    }
    Ok(t.finish())
}

/// Monte Carlo estimate of `P(dist(R, H) <= (sigma/2) sqrt(n - dim H))` for
/// rows `R` with i.i.d. entries of law `law` and a subspace `H` spanned by
/// `dim_h` independent rows of the same law, drawn once.
///
/// Passes when the observed frequency is at most
/// `max(10 exp(-n^0.01), 5 / replicas)`. Any `0 <= dim_h < n` is accepted;
/// the flag `outside-stated-range` marks `dim_h` outside `[1, n - n^0.99]`.
pub fn check_distance_concentration(
    n: usize,
    law: &EntryLaw,
    dim_h: usize,
    replicas: usize,
    stream: SeededStream,
) -> Result<CheckReport> {
    if n == 0 || dim_h >= n {
        return Err(Error::Dimension(format!("need 0 <= dim_h < n, got dim_h = {dim_h}, n = {n}")));
    }
    if replicas == 0 {
        return Err(Error::Dimension("need at least one replica".into()));
    }
    let sigma = law.std_dev();
    if !sigma.is_finite() {
        return Err(Error::InvalidLaw(format!("{law} has infinite variance")));
    }
    let mut t = Tracker::new("distance-concentration", 0.0);
    let nf = n as f64;
    if dim_h < 1 || dim_h as f64 > nf - nf.powf(0.99) {
        t.flag("outside-stated-range");
    }
    let mut rng = stream.rng();
    let draw = |rng: &mut crate::ensembles::StreamRng| -> Vec<f64> { (0..n).map(|_| law.sample(rng)).collect() };
    let mut h = SpanProjector::new(n);
    for _ in 0..dim_h {
        let v = draw(&mut rng);
        h.push(&v)?;
    }
    if h.rank() < dim_h {
        t.flag("subspace-rank-deficient");
    }
    let threshold = 0.5 * sigma * ((n - h.rank()) as f64).sqrt();
    let mut hits = 0usize;
    let mut min_ratio = f64::INFINITY;
    for _ in 0..replicas {
        let d = h.distance(&draw(&mut rng))?;
        min_ratio = min_ratio.min(d / threshold);
        if d <= threshold {
            hits += 1;
        }
    }
    let freq = hits as f64 / replicas as f64;
    let allowed = (10.0 * (-nf.powf(0.01)).exp()).max(5.0 / replicas as f64);
    t.margin(allowed - freq, || {
        format!("frequency {freq:.4} <= {allowed:.4} (min dist/threshold {min_ratio:.3}, {replicas} rows)")
    });
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_form_examples() {
        let f = SpecialMatrixForm::new(2, c(2f64.sqrt(), 0.0));
        assert!((f.u_plus * f.u_plus - 2.0).abs() < 1e-14 && f.u_minus == 0.0);
        assert!((special_matrix_limit(c(1.0, 0.0)) - 0.618_034).abs() < 1e-6);
        let s = special_matrix_singular_values(5, c(0.0, 0.0)).unwrap();
        assert!(s.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn block_reduction_matches_dense() {
        for z in [c(1.0, 0.0), c(1.0, 1.0), c(3.0, 0.0), c(-0.5, 2.0)] {
            let dense = special_matrix_singular_values(40, z).unwrap();
            let w = z / 40f64.sqrt();
            let one = Complex64::new(1.0, 0.0);
            let block = ComplexMatrix::from_rows(&[[one - w, c(0.0, 0.0)], [-w * 39f64.sqrt(), one]]).unwrap();
            let pair = singular_values(&block).unwrap();
            assert!((dense[0] - pair[0]).abs() < 1e-12 && (dense[39] - pair[1]).abs() < 1e-12);
        }
    }
}
