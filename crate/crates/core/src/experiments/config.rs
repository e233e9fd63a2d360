use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::ensembles::EntryLaw;
use crate::error::{Error, Result};
use crate::linalg::parse_complex;

/// The Monte Carlo experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    /// Singular value bulk of `sqrt(n) M` against the quartercircular law.
    Quartercircle,
    /// Eigenvalue bulk of `sqrt(n) M` against the uniform law on a disc.
    Circular,
    /// Top eigenvalue and the two top singular values.
    Extremes,
    /// Smallest singular value of `sqrt(n) M - z I`.
    Resolvent,
    /// Log singular value gap between `sqrt(n) M` and `X / (m sqrt(n))`.
    Perturbation,
    /// Loop probabilities and the invariant measure.
    Moments,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Quartercircle,
        ExperimentKind::Circular,
        ExperimentKind::Extremes,
        ExperimentKind::Resolvent,
        ExperimentKind::Perturbation,
        ExperimentKind::Moments,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExperimentKind::Quartercircle => "quartercircle",
            ExperimentKind::Circular => "circular",
            ExperimentKind::Extremes => "extremes",
            ExperimentKind::Resolvent => "resolvent",
            ExperimentKind::Perturbation => "perturbation",
            ExperimentKind::Moments => "moments",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim() {
            "quartercircle" | "quartercircular" => Self::Quartercircle,
            "circular" => Self::Circular,
            "extremes" => Self::Extremes,
            "resolvent" | "resolvent-bound" => Self::Resolvent,
            "perturbation" | "perturbation-gap" => Self::Perturbation,
            "moments" | "moments-and-invariant" => Self::Moments,
            other => {
                let ids: Vec<&str> = Self::ALL.iter().map(|k| k.id()).collect();
                return Err(Error::Config(format!("unknown experiment {other:?}; expected one of {}", ids.join(", "))));
            }
        };
        Ok(kind)
    }
}

/// Everything needed to rerun an experiment bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n_values: Vec<usize>,
    pub law: EntryLaw,
    pub replicas: usize,
    pub master_seed: u64,
    /// Shifts for the resolvent experiment.
    pub z_grid: Vec<Complex64>,
    /// Where artifacts go; `None` computes the report only.
    pub output_dir: Option<PathBuf>,
    /// Outliers removed before comparing a bulk with its limit.
    pub remove_top: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

pub const DEFAULT_N_VALUES: [usize; 4] = [100, 200, 400, 800];
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_REPLICAS: usize = 5;

/// Default shifts: inside the bulk, on its edge, off-axis, and two points
/// outside the support for unit radius.
pub fn default_z_grid() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(-2.0, 0.0),
        Complex64::new(3.0, 0.0),
    ]
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            n_values: DEFAULT_N_VALUES.to_vec(),
            law: EntryLaw::standard_exponential(),
            replicas: DEFAULT_REPLICAS,
            master_seed: DEFAULT_SEED,
            z_grid: default_z_grid(),
            output_dir: None,
            remove_top: 1,
            threads: None,
        }
    }

    /// Sets one `key=value` setting. Keys: experiment, n, law, replicas,
    /// seed, z, out, remove_top, threads.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("invalid {what} {value:?}"));
        match key.trim().replace('-', "_").as_str() {
            "experiment" => self.experiment = value.parse()?,
            "n" => {
                self.n_values =
                    split_list(value).map(|t| t.parse::<usize>().map_err(|_| bad("n"))).collect::<Result<_>>()?
            }
            "law" => self.law = value.parse()?,
            "replicas" => self.replicas = value.parse().map_err(|_| bad("replicas"))?,
            "seed" => self.master_seed = value.parse().map_err(|_| bad("seed"))?,
            "z" => {
                self.z_grid =
                    split_list(value).map(|t| parse_complex(t).map_err(|_| bad("z"))).collect::<Result<_>>()?
            }
            "out" => self.output_dir = Some(PathBuf::from(value)),
            "remove_top" => self.remove_top = value.parse().map_err(|_| bad("remove_top"))?,
            "threads" => self.threads = Some(value.parse().map_err(|_| bad("threads"))?),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key=value` file; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got {line:?}", lineno + 1)))?;
            self.apply(k, v).map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::new(ExperimentKind::Quartercircle);
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Config("n must list at least one size".into()));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("every n must be at least 2, got {n}")));
        }
        if self.replicas == 0 {
            return Err(Error::Config("replicas must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        let law = &self.law;
        let usable = match self.experiment {
            ExperimentKind::Extremes => law.has_finite_fourth_moment(),
            ExperimentKind::Quartercircle | ExperimentKind::Circular | ExperimentKind::Resolvent => {
                law.variance().is_finite()
            }
            ExperimentKind::Perturbation => law.mean().is_finite(),
            ExperimentKind::Moments => true,
        };
        if !usable {
            return Err(Error::Config(format!(
                "law {law} lacks the finite moments the {} experiment needs (mean {}, variance {})",
                self.experiment,
                law.mean(),
                law.variance()
            )));
        }
        if self.experiment == ExperimentKind::Resolvent && self.z_grid.is_empty() {
            return Err(Error::Config("the resolvent experiment needs a nonempty z grid".into()));
        }
        Ok(())
    }

    /// `sigma / m`, the radius of the limiting disc.
    pub fn radius(&self) -> f64 {
        self.law.effective_radius()
    }

    /// The config as `key=value` lines that [`ExperimentConfig::from_text`] reads back.
    pub fn to_text(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut s = format!(
            "experiment={}\nn={}\nlaw={}\nreplicas={}\nseed={}\nz={}\nremove_top={}\n",
            self.experiment,
            join(self.n_values.iter().map(|n| n.to_string()).collect()),
            self.law,
            self.replicas,
            self.master_seed,
            join(self.z_grid.iter().map(|z| format_complex(*z)).collect()),
            self.remove_top
        );
        if let Some(dir) = &self.output_dir {
            s.push_str(&format!("out={}\n", dir.display()));
        }
        s
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split([',', ' ', ';']).map(str::trim).filter(|t| !t.is_empty())
}

/// `a+bi` with shortest round-trip components.
pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let text = "# comment\nexperiment=resolvent\nn=100, 200\nlaw=bernoulli:p=0.5\nreplicas=3\nseed=7\nz=0,1+1i,-2\nremove_top=2\n";
        let cfg = ExperimentConfig::from_text(text).unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::Resolvent);
        assert_eq!(cfg.n_values, vec![100, 200]);
        assert_eq!(cfg.z_grid[1], Complex64::new(1.0, 1.0));
        assert_eq!(ExperimentConfig::from_text(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(ExperimentConfig::from_text("n=1").is_err());
        assert!(ExperimentConfig::from_text("replicas=0").is_err());
        assert!(ExperimentConfig::from_text("color=blue").is_err());
        assert!(ExperimentConfig::from_text("n=abc").is_err());
        assert!(ExperimentConfig::from_text("just words").is_err());
        assert!(ExperimentConfig::from_text("experiment=resolvent\nz=").is_err());
        assert!("nope".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn laws_need_the_moments_each_experiment_uses() {
        let with = |kind: &str, beta: f64| {
            ExperimentConfig::from_text(&format!("experiment={kind}\nlaw=heavytail:beta={beta}"))
        };
        assert!(with("quartercircle", 0.4).is_ok());
        assert!(with("quartercircle", 0.75).is_err());
        assert!(with("extremes", 0.4).is_err());
        assert!(with("extremes", 0.2).is_ok());
        assert!(with("perturbation", 0.75).is_ok());
        assert!(with("perturbation", 1.5).is_err());
        assert!(with("moments", 1.5).is_ok());
    }
}
