use std::f64::consts::PI;

use super::EmpiricalMeasure;
use crate::error::{Error, Result};

/// Limit laws of the bulk spectra of `sqrt(n) M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReferenceLaw {
    /// Density `sqrt(4 sigma^2 - x^2) / (pi sigma^2)` on `[0, 2 sigma]`.
    Quartercircular { sigma: f64 },
    /// Uniform law on the disc `|z| <= sigma`.
    Circular { sigma: f64 },
}

impl ReferenceLaw {
    pub fn quartercircular(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(Self::Quartercircular { sigma })
    }

    pub fn circular(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(Self::Circular { sigma })
    }

    pub fn sigma(&self) -> f64 {
        match *self {
            Self::Quartercircular { sigma } | Self::Circular { sigma } => sigma,
        }
    }

    /// CDF on the line for the quartercircular law, radial CDF for the circular one.
    pub fn cdf(&self, t: f64) -> f64 {
        match *self {
            Self::Quartercircular { sigma } => quartercircular_cdf(t, sigma),
            Self::Circular { sigma } => circular_radial_cdf(t, sigma),
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(Error::Dimension(format!("reference law needs sigma > 0, got {sigma}")))
    }
}

pub fn quartercircular_density(x: f64, sigma: f64) -> f64 {
    if (0.0..=2.0 * sigma).contains(&x) {
        (4.0 * sigma * sigma - x * x).max(0.0).sqrt() / (PI * sigma * sigma)
    } else {
        0.0
    }
}

/// `(t sqrt(4 sigma^2 - t^2)/2 + 2 sigma^2 asin(t / 2 sigma)) / (pi sigma^2)`, clamped to `[0, 1]`.
pub fn quartercircular_cdf(t: f64, sigma: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 2.0 * sigma {
        return 1.0;
    }
    // With t = 2 sigma sin(theta) this is (2 theta + sin(2 theta)) / pi. The
    // angle comes from atan2 and (2 sigma - t)(2 sigma + t) so that no
    // cancellation occurs near the right edge.
    let edge = 2.0 * sigma;
    let cos_side = ((edge - t) * (edge + t)).sqrt();
    let theta = t.atan2(cos_side);
    let value = 2.0 * (theta + t * cos_side / (edge * edge)) / PI;
    value.clamp(0.0, 1.0)
}

/// Inverse of [`quartercircular_cdf`] by bisection.
pub fn quartercircular_quantile(p: f64, sigma: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 2.0 * sigma);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if quartercircular_cdf(mid, sigma) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * sigma {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `min(r^2 / sigma^2, 1)`.
pub fn circular_radial_cdf(r: f64, sigma: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        (r * r / (sigma * sigma)).min(1.0)
    }
}

/// Sup distance between the empirical CDF and `law`: on the line for the
/// quartercircular law, on moduli for the circular law.
pub fn kolmogorov_distance(mu: &EmpiricalMeasure, law: &ReferenceLaw) -> Result<f64> {
    let sorted: Vec<f64> = match (law, mu.real_atoms(), mu.complex_atoms()) {
        (ReferenceLaw::Quartercircular { .. }, Some(v), _) => v.to_vec(),
        (ReferenceLaw::Circular { .. }, _, Some(z)) => {
            let mut r: Vec<f64> = z.iter().map(|w| w.norm()).collect();
            r.sort_by(f64::total_cmp);
            r
        }
        _ => {
            return Err(Error::Dimension(format!(
                "{} measure compared with {law:?}",
                if mu.is_real() { "real-line" } else { "complex-plane" }
            )))
        }
    };
    Ok(sup_distance(&sorted, |t| law.cdf(t)))
}

/// Radial sup distance of a complex measure to the circular law.
pub fn radial_kolmogorov_distance(mu: &EmpiricalMeasure, sigma: f64) -> Result<f64> {
    kolmogorov_distance(mu, &ReferenceLaw::circular(sigma)?)
}

/// Exact sup of `|F_emp - F|` for continuous `F`, checked on both sides of each jump.
fn sup_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    })
}
