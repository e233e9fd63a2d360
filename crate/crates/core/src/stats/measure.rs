use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{sort_eigenvalues, Spectrum};

#[derive(Clone, Debug, PartialEq)]
enum Atoms {
    /// Ascending.
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Uniform probability measure on a finite multiset of points in R or C.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    atoms: Atoms,
}

impl EmpiricalMeasure {
    pub fn real(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("empirical measure needs at least one atom".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dimension("empirical measure atoms must be finite".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { atoms: Atoms::Real(values) })
    }

    pub fn complex(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Dimension("empirical measure needs at least one atom".into()));
        }
        if points.iter().any(|z| !z.is_finite()) {
            return Err(Error::Dimension("empirical measure atoms must be finite".into()));
        }
        Ok(Self { atoms: Atoms::Complex(points) })
    }

    pub fn len(&self) -> usize {
        match &self.atoms {
            Atoms::Real(v) => v.len(),
            Atoms::Complex(v) => v.len(),
        }
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mass of each atom.
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    pub fn is_real(&self) -> bool {
        matches!(self.atoms, Atoms::Real(_))
    }

    /// Sorted atoms of a real-line measure.
    pub fn real_atoms(&self) -> Option<&[f64]> {
        match &self.atoms {
            Atoms::Real(v) => Some(v),
            Atoms::Complex(_) => None,
        }
    }

    pub fn complex_atoms(&self) -> Option<&[Complex64]> {
        match &self.atoms {
            Atoms::Complex(v) => Some(v),
            Atoms::Real(_) => None,
        }
    }

    /// Atoms as points of C, whatever the tag.
    pub fn points(&self) -> Vec<Complex64> {
        match &self.atoms {
            Atoms::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Atoms::Complex(v) => v.clone(),
        }
    }

    fn require_real(&self) -> Result<&[f64]> {
        self.real_atoms().ok_or_else(|| Error::Dimension("operation needs a real-line measure".into()))
    }

    /// `mu((-inf, t])`.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        let v = self.require_real()?;
        Ok(v.partition_point(|&x| x <= t) as f64 / v.len() as f64)
    }

    /// Smallest atom `x` with `mu((-inf, x]) >= p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let v = self.require_real()?;
        let k = (p.clamp(0.0, 1.0) * v.len() as f64).ceil() as usize;
        Ok(v[k.clamp(1, v.len()) - 1])
    }

    /// `integral |x|^k dmu`.
    pub fn abs_moment(&self, k: i32) -> f64 {
        let sum: f64 = match &self.atoms {
            Atoms::Real(v) => v.iter().map(|x| x.abs().powi(k)).sum(),
            Atoms::Complex(v) => v.iter().map(|z| z.norm().powi(k)).sum(),
        };
        sum / self.len() as f64
    }

    /// Drops the `k` atoms of largest modulus (the outliers separated from the bulk).
    pub fn without_top(&self, k: usize) -> Result<Self> {
        if k >= self.len() {
            return Err(Error::Dimension(format!("cannot remove {k} of {} atoms", self.len())));
        }
        Ok(match &self.atoms {
            Atoms::Real(v) => {
                let mut by_modulus = v.clone();
                by_modulus.sort_by(|a, b| b.abs().total_cmp(&a.abs()).then(b.total_cmp(a)));
                Self::real(by_modulus.split_off(k))?
            }
            Atoms::Complex(v) => {
                let mut sorted = v.clone();
                sort_eigenvalues(&mut sorted);
                Self::complex(sorted.split_off(k))?
            }
        })
    }

    /// Pushforward under `x -> c x`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        match &self.atoms {
            Atoms::Real(v) => Self::real(v.iter().map(|x| x * c).collect()),
            Atoms::Complex(v) => Self::complex(v.iter().map(|z| z * c).collect()),
        }
    }

    /// CSV with header `index,value` or `index,re,im`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.atoms {
            Atoms::Real(v) => {
                out.push_str("index,value\n");
                for (i, x) in v.iter().enumerate() {
                    let _ = writeln!(out, "{i},{x:.16e}");
                }
            }
            Atoms::Complex(v) => {
                out.push_str("index,re,im\n");
                for (i, z) in v.iter().enumerate() {
                    let _ = writeln!(out, "{i},{:.16e},{:.16e}", z.re, z.im);
                }
            }
        }
        out
    }
}

/// `mu_A`, the eigenvalue distribution.
pub fn esd_eigen(spectrum: &Spectrum) -> Result<EmpiricalMeasure> {
    EmpiricalMeasure::complex(spectrum.eigenvalues.clone())
}

/// `nu_A`, the singular value distribution.
pub fn esd_singular(spectrum: &Spectrum) -> Result<EmpiricalMeasure> {
    EmpiricalMeasure::real(spectrum.singular_values.clone())
}
