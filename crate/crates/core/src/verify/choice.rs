//! Does the value of `lambda_D(p)` depend on which prime above `p`, or which
//! of `D1`, `D2`, is used?

use super::splitting::{polynomial_splitting_oracle, OracleVerdict};
use super::{ProbeReport, ProbeStatus};
use crate::arith::primes_up_to;
use crate::classify::{family_labels_by_conductor, FieldLabel};
use crate::eisenstein::Registry;
use crate::lfunc::{lambda_coefficient_with, splitting_type, Choice, LambdaMode};

/// The fixed audit sample: the 50 canonical labels of smallest conductor
/// times the 20 smallest primes other than 3 (1000 pairs).
pub fn standard_pairs() -> Vec<(FieldLabel, u64)> {
    let labels: Vec<FieldLabel> = family_labels_by_conductor(2, 2000).into_iter().take(50).collect();
    let primes: Vec<u64> = primes_up_to(100).into_iter().filter(|&p| p != 3).take(20).collect();
    labels
        .iter()
        .flat_map(|&l| primes.iter().map(move |&p| (l, p)))
        .collect()
}

fn lambdas(p: u64, label: &FieldLabel, mode: LambdaMode, registry: &Registry) -> Vec<Result<i64, String>> {
    Choice::ALL
        .iter()
        .map(|&c| lambda_coefficient_with(p, 1, label, mode, registry, c).map_err(|e| e.to_string()))
        .collect()
}

fn fmt_lambdas(v: &[Result<i64, String>]) -> String {
    v.iter()
        .map(|r| match r {
            Ok(x) => x.to_string(),
            Err(e) => format!("err({e})"),
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn oracle_cell(p: u64, label: &FieldLabel) -> String {
    match polynomial_splitting_oracle(p, label) {
        Ok(OracleVerdict::Type(t)) => t.lambda(1).to_string(),
        Ok(OracleVerdict::Inapplicable) => "gated".into(),
        Ok(OracleVerdict::Anomalous(n)) => format!("{n} roots"),
        Err(e) => format!("err({e})"),
    }
}

/// Kummer mode must agree across all four choices (asserted); the literal
/// character must agree when `p = 2 (mod 3)` (asserted) and is recorded
/// otherwise.
pub fn choice_invariance_probe(pairs: &[(FieldLabel, u64)], registry: &Registry) -> ProbeReport {
    let mut report = ProbeReport::new(
        "choice_invariance",
        &["label", "p", "mode", "lambda[P,D1]/[sP,D1]/[P,D2]/[sP,D2]", "oracle"],
    );
    let (mut kummer_fail, mut inert_fail, mut findings) = (0usize, 0usize, 0usize);
    for (label, p) in pairs {
        let k = lambdas(*p, label, LambdaMode::Kummer, registry);
        if k.iter().any(|r| r.is_err() || *r != k[0]) {
            kummer_fail += 1;
            report.row(vec![label.to_string(), p.to_string(), "kummer".into(), fmt_lambdas(&k), oracle_cell(*p, label)]);
        }
        let lit = lambdas(*p, label, LambdaMode::PaperLiteral, registry);
        if lit.iter().any(|r| r.is_err() || *r != lit[0]) {
            if p % 3 == 1 && lit.iter().all(|r| r.is_ok()) {
                findings += 1;
            } else {
                inert_fail += 1;
            }
            report.row(vec![label.to_string(), p.to_string(), "paper".into(), fmt_lambdas(&lit), oracle_cell(*p, label)]);
        }
    }
    report
        .key("pairs", pairs.len())
        .key("kummer_failures", kummer_fail)
        .key("paper_inert_failures", inert_fail)
        .key("paper_split_findings", findings);
    if kummer_fail + inert_fail > 0 {
        report.raise(ProbeStatus::Fail);
    } else if findings > 0 {
        report.raise(ProbeStatus::Finding);
    }
    report
}

/// Scan `p <= p_max` comparing literal-character and Kummer `lambda_D(p)`,
/// adjudicated by the polynomial oracle.
pub fn paper_literal_scan(label: &FieldLabel, p_max: u64) -> ProbeReport {
    let mut report = ProbeReport::new(
        format!("paper_literal_scan{label}"),
        &["p", "p mod 3", "lambda_paper", "lambda_kummer", "oracle"],
    );
    let mut witnesses = Vec::new();
    let mut oracle_disagreements = 0usize;
    for p in primes_up_to(p_max).into_iter().filter(|&p| p != 3) {
        let (Ok(paper), Ok(kummer)) = (
            splitting_type(p, label, LambdaMode::PaperLiteral),
            splitting_type(p, label, LambdaMode::Kummer),
        ) else {
            report.row(vec![p.to_string(), (p % 3).to_string(), "err".into(), "err".into(), oracle_cell(p, label)]);
            oracle_disagreements += 1;
            continue;
        };
        let oracle = oracle_cell(p, label);
        if oracle != "gated" && oracle != kummer.lambda(1).to_string() {
            oracle_disagreements += 1;
        }
        if paper != kummer {
            witnesses.push(p);
            report.row(vec![
                p.to_string(),
                (p % 3).to_string(),
                paper.lambda(1).to_string(),
                kummer.lambda(1).to_string(),
                oracle,
            ]);
        }
    }
    report
        .key("p_max", p_max)
        .key("discrepancies", witnesses.len())
        .key("witnesses", if witnesses.is_empty() { "none".to_string() } else { witnesses.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",") })
        .key("kummer_oracle_disagreements", oracle_disagreements);
    if oracle_disagreements > 0 {
        report.raise(ProbeStatus::Fail);
    } else if !witnesses.is_empty() {
        report.raise(ProbeStatus::Finding);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_sample_is_fixed() {
        let pairs = standard_pairs();
        assert_eq!(pairs.len(), 1000);
        assert_eq!(pairs, standard_pairs());
        assert_eq!(pairs[0].1, 2);
    }

    #[test]
    fn kummer_is_choice_free_on_the_standard_sample() {
        let r = choice_invariance_probe(&standard_pairs(), Registry::global());
        assert_eq!(r.value("kummer_failures"), Some("0"));
        assert_eq!(r.value("paper_inert_failures"), Some("0"));
        assert_ne!(r.status, ProbeStatus::Fail, "{}", r.render());
    }

    #[test]
    fn inert_subset_has_no_findings() {
        let pairs: Vec<_> = standard_pairs().into_iter().filter(|(_, p)| p % 3 == 2).collect();
        let r = choice_invariance_probe(&pairs, Registry::global());
        assert_eq!(r.status, ProbeStatus::Pass);
    }

    #[test]
    fn literal_scan_for_seven() {
        let l = FieldLabel::new(0, 7, 1).unwrap();
        let r = paper_literal_scan(&l, 100);
        assert_eq!(r.status, ProbeStatus::Finding, "{}", r.render());
        let w = r.value("witnesses").unwrap();
        assert!(w.split(',').any(|p| p == "13"), "{w}");
        assert!(w.split(',').all(|p| p.parse::<u64>().unwrap() % 3 == 1));
    }
}
