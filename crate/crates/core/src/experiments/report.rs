use std::fmt::Write as _;
use std::path::PathBuf;

/// How a summary row is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Criterion {
    /// `|value - reference| <= tolerance`.
    Within,
    /// `value <= reference + tolerance`.
    AtMost,
    /// `value >= reference - tolerance`.
    AtLeast,
    /// `value > reference`.
    Above,
    /// Reported only.
    Exploratory,
}

/// One line of `summary.csv`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    /// `None` for rows that aggregate across the n grid.
    pub n: Option<usize>,
    pub statistic: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub criterion: Criterion,
    /// Name of the limit statement or identity the row measures.
    pub source: &'static str,
}

impl SummaryRow {
    pub fn pass(&self) -> Option<bool> {
        let (v, r, t) = (self.value, self.reference, self.tolerance);
        match self.criterion {
            Criterion::Within => Some((v - r).abs() <= t),
            Criterion::AtMost => Some(v <= r + t),
            Criterion::AtLeast => Some(v >= r - t),
            Criterion::Above => Some(v > r),
            Criterion::Exploratory => None,
        }
    }
}

/// Rows plus the files written for one experiment run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub experiment_id: String,
    pub rows: Vec<SummaryRow>,
    pub artifacts: Vec<PathBuf>,
    pub notes: Vec<String>,
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "na".into()
    } else {
        format!("{x:.16e}")
    }
}

impl ExperimentReport {
    pub fn new(experiment_id: &str) -> Self {
        Self { experiment_id: experiment_id.into(), ..Self::default() }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        n: Option<usize>,
        statistic: impl Into<String>,
        value: f64,
        reference: f64,
        tolerance: f64,
        criterion: Criterion,
        source: &'static str,
    ) {
        self.rows.push(SummaryRow { n, statistic: statistic.into(), value, reference, tolerance, criterion, source });
    }

    /// Adds a row that is reported but never judged.
    pub fn info(&mut self, n: Option<usize>, statistic: impl Into<String>, value: f64, source: &'static str) {
        self.push(n, statistic, value, f64::NAN, f64::NAN, Criterion::Exploratory, source);
    }

    /// True when every judged row passes.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass() != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &SummaryRow> {
        self.rows.iter().filter(|r| r.pass() == Some(false))
    }

    pub fn find(&self, n: Option<usize>, statistic: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.n == n && r.statistic == statistic)
    }

    /// Columns `n,statistic,value,reference,tolerance,pass,source`; missing
    /// numbers are written as `na`, cross-grid rows use `n = all`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("n,statistic,value,reference,tolerance,pass,source\n");
        for r in &self.rows {
            let n = r.n.map_or("all".to_string(), |n| n.to_string());
            let pass = match r.pass() {
                Some(true) => "true",
                Some(false) => "false",
                None => "na",
            };
            let _ = writeln!(
                out,
                "{n},{},{},{},{},{pass},{}",
                r.statistic,
                num(r.value),
                num(r.reference),
                num(r.tolerance),
                r.source
            );
        }
        out
    }

    /// Human-readable table.
    pub fn text(&self) -> String {
        let mut out = format!("experiment: {}\n", self.experiment_id);
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let w = self.rows.iter().map(|r| r.statistic.len()).max().unwrap_or(0).max(9);
        let _ = writeln!(
            out,
            "{:>6}  {:<w$}  {:>12}  {:>12}  {:>10}  {:<5} source",
            "n", "statistic", "value", "reference", "tolerance", "pass"
        );
        for r in &self.rows {
            let n = r.n.map_or("all".to_string(), |n| n.to_string());
            let pass = match r.pass() {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "-",
            };
            let _ = writeln!(
                out,
                "{n:>6}  {:<w$}  {:>12}  {:>12}  {:>10}  {pass:<5} {}",
                r.statistic,
                short(r.value),
                short(r.reference),
                short(r.tolerance),
                r.source
            );
        }
        let _ = writeln!(out, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Six significant digits, switching to exponent form outside `[1e-3, 1e6)`.
fn short(x: f64) -> String {
    if x.is_nan() {
        "-".into()
    } else if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.5e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria() {
        let mut r = ExperimentReport::new("x");
        r.push(Some(10), "a", 1.05, 1.0, 0.1, Criterion::Within, "s");
        r.push(Some(10), "b", 2.5, 2.0, 0.3, Criterion::AtMost, "s");
        r.push(None, "c", 0.0, 0.0, 0.0, Criterion::Above, "s");
        r.info(Some(10), "d", 3.0, "s");
        assert_eq!(
            r.rows.iter().map(|x| x.pass()).collect::<Vec<_>>(),
            vec![Some(true), Some(false), Some(false), None]
        );
        assert!(!r.passed());
        let csv = r.summary_csv();
        assert!(csv.starts_with("n,statistic,value,reference,tolerance,pass,source\n10,a,1.0500000000000000e0,"));
        assert!(csv.contains("\nall,c,"));
        assert!(csv.contains(",na,na,na,s\n"));
    }
}
