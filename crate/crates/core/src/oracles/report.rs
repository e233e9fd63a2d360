use std::fmt;

/// Outcome of one lemma check, or of a merged campaign of checks.
///
/// Margins are signed slacks in units where the check tolerates
/// `-tolerance`: `passed` is exactly `worst_margin >= -tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub lemma_id: String,
    pub passed: bool,
    pub worst_margin: f64,
    pub tolerance: f64,
    /// Where the worst margin occurred.
    pub witness: String,
    /// Notable conditions (skipped branches, degenerate inputs), sorted and deduplicated.
    pub flags: Vec<String>,
    pub instances: usize,
}

impl CheckReport {
    /// Combines two reports on the same lemma. Associative; on equal margins
    /// the left witness is kept.
    pub fn merge(self, other: Self) -> Self {
        let (worst_margin, witness) = if other.worst_margin < self.worst_margin {
            (other.worst_margin, other.witness)
        } else {
            (self.worst_margin, self.witness)
        };
        let tolerance = self.tolerance.max(other.tolerance);
        let mut flags = self.flags;
        flags.extend(other.flags);
        flags.sort();
        flags.dedup();
        Self {
            lemma_id: self.lemma_id,
            passed: self.passed && other.passed,
            worst_margin,
            tolerance,
            witness,
            flags,
            instances: self.instances + other.instances,
        }
    }

    /// Prefixes the witness, e.g. with the fuzz instance that produced it.
    pub fn with_context(mut self, context: &str) -> Self {
        self.witness = format!("{context}: {}", self.witness);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {} instances={} worst_margin={:.3e} tolerance={:.1e} witness=[{}]",
            self.lemma_id,
            if self.passed { "PASS" } else { "FAIL" },
            self.instances,
            self.worst_margin,
            self.tolerance,
            self.witness
        )?;
        if !self.flags.is_empty() {
            write!(f, " flags={}", self.flags.join(","))?;
        }
        Ok(())
    }
}

/// Accumulates margins while a check runs.
pub(crate) struct Tracker {
    lemma_id: &'static str,
    tolerance: f64,
    worst: f64,
    witness: String,
    flags: Vec<String>,
}

impl Tracker {
    pub fn new(lemma_id: &'static str, tolerance: f64) -> Self {
        Self { lemma_id, tolerance, worst: f64::INFINITY, witness: "no constraints".into(), flags: Vec::new() }
    }

    /// Records a raw margin.
    pub fn margin(&mut self, margin: f64, witness: impl FnOnce() -> String) {
        // NaN margins count as failures.
        if margin < self.worst || margin.is_nan() && !self.worst.is_nan() {
            self.worst = margin;
            self.witness = witness();
        }
    }

    /// `lhs <= rhs`, slack measured relative to `scale`.
    pub fn le(&mut self, lhs: f64, rhs: f64, scale: f64, witness: impl FnOnce() -> String) {
        let margin = if lhs == rhs { 0.0 } else { (rhs - lhs) / scale.max(f64::MIN_POSITIVE) };
        self.margin(margin, || format!("{}: {lhs:.6e} <= {rhs:.6e}", witness()));
    }

    /// `|lhs - rhs| <= tolerance * scale`.
    pub fn eq(&mut self, lhs: f64, rhs: f64, scale: f64, witness: impl FnOnce() -> String) {
        let margin = if lhs == rhs { 0.0 } else { -(lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE) };
        self.margin(margin, || format!("{}: {lhs:.6e} == {rhs:.6e}", witness()));
    }

    /// `error <= allowed`, mapped so that the boundary lands on `-tolerance`.
    pub fn within(&mut self, error: f64, allowed: f64, witness: impl FnOnce() -> String) {
        let margin = -self.tolerance * error / allowed;
        self.margin(margin, || format!("{}: error {error:.3e} (allowed {allowed:.1e})", witness()));
    }

    pub fn flag(&mut self, flag: &str) {
        if !self.flags.iter().any(|f| f == flag) {
            self.flags.push(flag.to_string());
        }
    }

    pub fn finish(mut self) -> CheckReport {
        self.flags.sort();
        CheckReport {
            lemma_id: self.lemma_id.to_string(),
            passed: self.worst >= -self.tolerance,
            worst_margin: self.worst,
            tolerance: self.tolerance,
            witness: self.witness,
            flags: self.flags,
            instances: 1,
        }
    }
}
