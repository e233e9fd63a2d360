use num_complex::Complex64;

use super::EmpiricalMeasure;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, singular_values, EigenScalar, Matrix};

/// Eigenvalues closer than this (relative to `1 + |z|`) count as hitting `z`.
pub const ATOM_TOL: f64 = 1e-12;

/// `U_mu(z) = -integral log|z - w| dmu(w)`; `+inf` when `z` is an atom.
pub fn log_potential_empirical(mu: &EmpiricalMeasure, z: Complex64) -> f64 {
    let pts = mu.points();
    let mut sum = 0.0;
    for w in &pts {
        let d = (z - w).norm();
        if d == 0.0 {
            return f64::INFINITY;
        }
        sum += d.ln();
    }
    -sum / pts.len() as f64
}

/// Potential of the uniform law on the disc of radius `sigma`:
/// `(1 - |z|^2)/2` inside the unit disc and `-log|z|` outside, after rescaling by `sigma`.
pub fn log_potential_circular(z: Complex64, sigma: f64) -> f64 {
    let r = z.norm() / sigma;
    let unit = if r <= 1.0 { 0.5 * (1.0 - r * r) } else { -r.ln() };
    unit - sigma.ln()
}

/// `-integral log t dnu(t)` over a real measure; `+inf` if it has an atom at 0.
pub fn negative_log_integral(nu: &EmpiricalMeasure) -> Result<f64> {
    let atoms = nu.real_atoms().ok_or_else(|| Error::Dimension("needs a real-line measure".into()))?;
    if atoms.iter().any(|&s| s <= 0.0) {
        return Ok(f64::INFINITY);
    }
    Ok(-atoms.iter().map(|s| s.ln()).sum::<f64>() / atoms.len() as f64)
}

/// `|U_{mu_A}(z) + integral log t dnu_{A - zI}(t)|`.
///
/// The two sides are computed independently (eigenvalue kernel versus SVD of
/// the shifted matrix). Returns `+inf` when `z` is within [`ATOM_TOL`] of an
/// eigenvalue.
pub fn girko_identity_residual<T: EigenScalar>(a: &Matrix<T>, z: Complex64) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("Girko identity needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let eig = eigenvalues(a)?;
    let n = eig.len() as f64;
    if eig.iter().any(|l| (z - l).norm() <= ATOM_TOL * (1.0 + z.norm())) {
        return Ok(f64::INFINITY);
    }
    let u = -eig.iter().map(|l| (z - l).norm().ln()).sum::<f64>() / n;
    let s = if z.im == 0.0 && !T::IS_COMPLEX {
        singular_values(&a.shifted(T::from_real(z.re)))?
    } else {
        singular_values(&a.to_complex().shifted(z))?
    };
    if s.contains(&0.0) {
        return Ok(f64::INFINITY);
    }
    let log_integral = s.iter().map(|t| t.ln()).sum::<f64>() / n;
    Ok((u + log_integral).abs())
}

/// Upper tail `integral_{s > t} log s dnu` for `t >= 1`; lower tail
/// `integral_{s < t} -log s dnu` for `0 < t < 1` (`+inf` with an atom at 0).
pub fn log_tail_integral(nu: &EmpiricalMeasure, t: f64) -> Result<f64> {
    let atoms = nu.real_atoms().ok_or_else(|| Error::Dimension("needs a real-line measure".into()))?;
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Dimension(format!("tail threshold must be positive, got {t}")));
    }
    let w = nu.weight();
    if t >= 1.0 {
        Ok(atoms.iter().filter(|&&s| s > t).map(|s| s.ln()).sum::<f64>() * w)
    } else if atoms.first().is_some_and(|&s| s <= 0.0) {
        Ok(f64::INFINITY)
    } else {
        Ok(atoms.iter().take_while(|&&s| s < t).map(|s| -s.ln()).sum::<f64>() * w)
    }
}
