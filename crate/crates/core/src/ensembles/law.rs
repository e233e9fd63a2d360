use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Law of the nonnegative i.i.d. entries `X_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntryLaw {
    /// Density `rate * exp(-rate x)` on `[0, inf)`.
    Exponential { rate: f64 },
    /// `P(X = 1) = p`, `P(X = 0) = 1 - p`.
    Bernoulli { p: f64 },
    /// Uniform on `[0, 1]`.
    Uniform,
    /// `X = U^(-beta)` with `U` uniform on `(0, 1)`.
    HeavyTail { beta: f64 },
    /// Uniform on `[a, b]`, `0 <= a < b`.
    ShiftedUniform { a: f64, b: f64 },
}

impl EntryLaw {
    pub fn exponential(rate: f64) -> Result<Self> {
        Self::Exponential { rate }.validated()
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::Bernoulli { p }.validated()
    }

    pub fn heavy_tail(beta: f64) -> Result<Self> {
        Self::HeavyTail { beta }.validated()
    }

    pub fn shifted_uniform(a: f64, b: f64) -> Result<Self> {
        Self::ShiftedUniform { a, b }.validated()
    }

    /// Unit-mean exponential law of the Dirichlet Markov ensemble.
    pub fn standard_exponential() -> Self {
        Self::Exponential { rate: 1.0 }
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Exponential { rate } => rate.is_finite() && rate > 0.0,
            Self::Bernoulli { p } => p > 0.0 && p < 1.0,
            Self::Uniform => true,
            Self::HeavyTail { beta } => beta.is_finite() && beta > 0.0,
            Self::ShiftedUniform { a, b } => a.is_finite() && b.is_finite() && a >= 0.0 && b > a,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidLaw(format!("parameters out of range: {self}")))
        }
    }

    /// `m = E X`; infinite for `HeavyTail` with `beta >= 1`.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Exponential { rate } => 1.0 / rate,
            Self::Bernoulli { p } => p,
            Self::Uniform => 0.5,
            Self::HeavyTail { beta } if beta < 1.0 => 1.0 / (1.0 - beta),
            Self::HeavyTail { .. } => f64::INFINITY,
            Self::ShiftedUniform { a, b } => 0.5 * (a + b),
        }
    }

    /// `sigma^2 = Var X`; infinite for `HeavyTail` with `2 beta >= 1`.
    pub fn variance(&self) -> f64 {
        match *self {
            Self::Exponential { rate } => 1.0 / (rate * rate),
            Self::Bernoulli { p } => p * (1.0 - p),
            Self::Uniform => 1.0 / 12.0,
            Self::HeavyTail { beta } if 2.0 * beta < 1.0 => {
                let m = 1.0 / (1.0 - beta);
                1.0 / (1.0 - 2.0 * beta) - m * m
            }
            Self::HeavyTail { .. } => f64::INFINITY,
            Self::ShiftedUniform { a, b } => (b - a) * (b - a) / 12.0,
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// `sigma / m`, the radius of the limiting disc for `sqrt(n) M` (and half
    /// the right edge of the quartercircular support).
    pub fn effective_radius(&self) -> f64 {
        self.std_dev() / self.mean()
    }

    /// True for the absolutely continuous laws, all of which have a bounded
    /// density (`U^(-beta)` has density `x^(-1/beta - 1) / beta <= 1/beta` on `[1, inf)`).
    pub fn has_bounded_density(&self) -> bool {
        !matches!(self, Self::Bernoulli { .. })
    }

    pub fn has_finite_fourth_moment(&self) -> bool {
        match *self {
            Self::HeavyTail { beta } => 4.0 * beta < 1.0,
            _ => true,
        }
    }

    /// `q = P(X = 0)`.
    pub fn zero_probability(&self) -> f64 {
        match *self {
            Self::Bernoulli { p } => 1.0 - p,
            _ => 0.0,
        }
    }

    /// One draw by inverse CDF (exponential, heavy tail, uniforms) or by
    /// thresholding a uniform (Bernoulli).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        match *self {
            Self::Exponential { rate } => -(-u).ln_1p() / rate,
            Self::Bernoulli { p } => {
                if u < p {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Uniform => u,
            Self::HeavyTail { beta } => {
                let mut u = u;
                while u == 0.0 {
                    u = rng.random();
                }
                u.powf(-beta)
            }
            Self::ShiftedUniform { a, b } => a + (b - a) * u,
        }
    }
}

impl fmt::Display for EntryLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exponential { rate } => write!(f, "exponential:rate={rate}"),
            Self::Bernoulli { p } => write!(f, "bernoulli:p={p}"),
            Self::Uniform => write!(f, "uniform"),
            Self::HeavyTail { beta } => write!(f, "heavytail:beta={beta}"),
            Self::ShiftedUniform { a, b } => write!(f, "shifteduniform:a={a},b={b}"),
        }
    }
}

/// Parses `family[:key=value[,key=value]]`, e.g. `bernoulli:p=0.5`.
impl FromStr for EntryLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let mut kv: Vec<(String, f64)> = Vec::new();
        for item in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidLaw(format!("expected key=value, got {item:?} in {s:?}")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::InvalidLaw(format!("bad number {v:?} in {s:?}")))?;
            kv.push((k.trim().to_ascii_lowercase(), v));
        }
        let mut take = |key: &str, default: Option<f64>| -> Result<f64> {
            match kv.iter().position(|(k, _)| k == key) {
                Some(i) => Ok(kv.remove(i).1),
                None => default.ok_or_else(|| Error::InvalidLaw(format!("missing parameter {key:?} in {s:?}"))),
            }
        };
        let law = match family.trim().to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Self::Exponential { rate: take("rate", Some(1.0))? },
            "bernoulli" => Self::Bernoulli { p: take("p", None)? },
            "uniform" => Self::Uniform,
            "heavytail" => Self::HeavyTail { beta: take("beta", None)? },
            "shifteduniform" => {
                let a = take("a", None)?;
                Self::ShiftedUniform { a, b: take("b", None)? }
            }
            other => return Err(Error::InvalidLaw(format!("unknown law family {other:?}"))),
        };
        if let Some((k, _)) = kv.first() {
            return Err(Error::InvalidLaw(format!("unexpected parameter {k:?} in {s:?}")));
        }
        law.validated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::SeededStream;
    use approx::assert_relative_eq;

    #[test]
    fn parses_config_strings() {
        assert_eq!("exponential:rate=1".parse::<EntryLaw>().unwrap(), EntryLaw::Exponential { rate: 1.0 });
        assert_eq!("bernoulli:p=0.5".parse::<EntryLaw>().unwrap(), EntryLaw::Bernoulli { p: 0.5 });
        assert_eq!("uniform".parse::<EntryLaw>().unwrap(), EntryLaw::Uniform);
        assert_eq!("heavytail:beta=0.75".parse::<EntryLaw>().unwrap(), EntryLaw::HeavyTail { beta: 0.75 });
        assert_eq!(
            "shifteduniform:a=0.5,b=1.5".parse::<EntryLaw>().unwrap(),
            EntryLaw::ShiftedUniform { a: 0.5, b: 1.5 }
        );
        for law in
            ["exponential:rate=2", "bernoulli:p=0.25", "uniform", "heavytail:beta=0.75", "shifteduniform:a=0.5,b=1.5"]
        {
            assert_eq!(law.parse::<EntryLaw>().unwrap().to_string(), law);
        }
    }

    #[test]
    fn rejects_bad_laws() {
        for bad in [
            "bernoulli:p=1",
            "bernoulli",
            "exponential:rate=-1",
            "shifteduniform:a=-0.5,b=1",
            "shifteduniform:a=2,b=1",
            "gaussian",
            "uniform:x=1",
            "bernoulli:p=abc",
            "heavytail:beta=0",
        ] {
            assert!(bad.parse::<EntryLaw>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn moments() {
        let b = EntryLaw::bernoulli(0.5).unwrap();
        assert_eq!((b.mean(), b.variance(), b.effective_radius()), (0.5, 0.25, 1.0));
        let e = EntryLaw::exponential(2.0).unwrap();
        assert_relative_eq!(e.effective_radius(), 1.0);
        let h = EntryLaw::heavy_tail(0.75).unwrap();
        assert_eq!(h.mean(), 4.0);
        assert!(h.variance().is_infinite());
        let h = EntryLaw::heavy_tail(0.25).unwrap();
        assert_relative_eq!(h.variance(), 2.0 - 16.0 / 9.0, epsilon = 1e-15);
        assert!(!b.has_bounded_density() && e.has_bounded_density());
        assert_eq!(b.zero_probability(), 0.5);
    }

    #[test]
    fn heavy_tail_draws_at_least_one() {
        let law = EntryLaw::heavy_tail(0.75).unwrap();
        let mut rng = SeededStream::new(1, 0).rng();
        assert!((0..100_000).all(|_| law.sample(&mut rng) >= 1.0));
    }

    #[test]
    fn sample_moments_match() {
        // Tolerances sit beyond 4 standard errors of the sample mean/variance
        // for 10^6 draws: sd(mean) = 5e-4 (bernoulli), 1e-3 (exponential),
        // sd(var) = sqrt(mu4 - sigma^4)/1000 = 2.8e-3 (exponential).
        let n = 1_000_000;
        let mut rng = SeededStream::new(2024, 0).rng();
        let b = EntryLaw::bernoulli(0.5).unwrap();
        let mean = (0..n).map(|_| b.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.002, "bernoulli mean {mean}");

        let e = EntryLaw::standard_exponential();
        let xs: Vec<f64> = (0..n).map(|_| e.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 1.0).abs() < 0.005, "exponential mean {mean}");
        assert!((var - 1.0).abs() < 0.012, "exponential variance {var}");
    }
}
