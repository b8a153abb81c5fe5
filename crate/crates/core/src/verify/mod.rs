//! Independent oracles and audits of the character-theoretic steps.

pub mod charsum;
pub mod choice;
pub mod genseries;
pub mod ideal_count;
pub mod ramification;
pub mod scaling;
pub mod splitting;

use std::fmt;

pub use charsum::{char_sum, char_sum_grid, char_sum_grid_with, char_sum_probe, char_sum_literal, fitted_exponent, log_grid, CharSumRow};
pub use choice::{choice_invariance_probe, paper_literal_scan, standard_pairs};
pub use genseries::{genseries_compare, genseries_sides, genseries_sides_at, GenSeriesSides};
pub use ideal_count::{ideal_count_crosscheck, ideal_counts_from_lambda, ideal_counts_from_splitting};
pub use ramification::{calibrate_k_star, calibration_corpus, cube_mod_lambda_power, ramification_audit_at_3, ramification_corpus_probe, three_adic_verdict, ThreeAdicVerdict};
pub use scaling::family_count_scaling;
pub use splitting::{polynomial_splitting_oracle, splitting_oracle_probe, OracleVerdict};

/// Least-squares slope of `y` against `x`; `None` with fewer than two
/// distinct abscissae.
pub(crate) fn slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (points.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbeStatus {
    Pass,
    Finding,
    Fail,
}

impl fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeStatus::Pass => "PASS",
            ProbeStatus::Finding => "FINDING",
            ProbeStatus::Fail => "FAIL",
        })
    }
}

/// Outcome of one probe: status, headline numbers and a per-case table.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub subject: String,
    pub status: ProbeStatus,
    /// `(key, value)` pairs for the summary line.
    pub summary: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ProbeReport {
    pub fn new(subject: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            subject: subject.into(),
            status: ProbeStatus::Pass,
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn key(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// Raise the status; it never goes down.
    pub fn raise(&mut self, status: ProbeStatus) {
        self.status = self.status.max(status);
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `probe=<subject> status=<STATUS> key=value ...`
    pub fn summary_line(&self) -> String {
        let mut s = format!("probe={} status={}", self.subject, self.status);
        for (k, v) in &self.summary {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }

    /// Human-readable block: summary line, then the table.
    pub fn render(&self) -> String {
        let mut out = format!("== {} [{}]\n", self.subject, self.status);
        for (k, v) in &self.summary {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if !self.rows.is_empty() {
            out.push_str(&format!("  {}\n", self.columns.join("\t")));
            for r in &self.rows {
                out.push_str(&format!("  {}\n", r.join("\t")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_only_rises() {
        let mut r = ProbeReport::new("x", &["a"]);
        r.raise(ProbeStatus::Finding);
        r.raise(ProbeStatus::Pass);
        assert_eq!(r.status, ProbeStatus::Finding);
        r.raise(ProbeStatus::Fail);
        r.raise(ProbeStatus::Finding);
        assert_eq!(r.status, ProbeStatus::Fail);
        r.key("n", 3).key("gap", 0.5);
        assert_eq!(r.summary_line(), "probe=x status=FAIL n=3 gap=0.5");
        assert_eq!(r.value("gap"), Some("0.5"));
        r.row(vec!["1".into()]);
        assert!(r.render().contains("  a\n  1\n"));
    }
}
