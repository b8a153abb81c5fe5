//! Splitting read off the defining cubic modulo `p`.

use super::{ProbeReport, ProbeStatus};
use crate::arith::reduce;
use crate::classify::{defining_polynomial, polynomial_discriminant_core, FieldLabel};
use crate::eisenstein::Registry;
use crate::error::Result;
use crate::lfunc::{splitting_type_with, Choice, LambdaMode, SplittingType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Type(SplittingType),
    /// `p` divides `3 (4A^3 - B^2)`.
    Inapplicable,
    /// A root count impossible for a cyclic cubic with `p` outside the gate.
    Anomalous(usize),
}

/// Roots of `x^3 - 3Ax - B` in `F_p` by exhaustive scan.
pub fn count_roots(a: i128, b: i128, p: u64) -> usize {
    let a3 = reduce(3 * a, p) as u128;
    let b = reduce(b, p) as u128;
    let p128 = p as u128;
    (0..p as u128)
        .filter(|&x| {
            let v = (x * x % p128 * x + 2 * p128 * p128 - a3 * x % p128 - b) % p128;
            v == 0
        })
        .count()
}

pub fn polynomial_splitting_oracle(p: u64, label: &FieldLabel) -> Result<OracleVerdict> {
    let (a, b) = defining_polynomial(label)?;
    let core = polynomial_discriminant_core(a, b)?;
    if p == 3 || reduce(core, p) == 0 {
        return Ok(OracleVerdict::Inapplicable);
    }
    Ok(match count_roots(a, b, p) {
        3 => OracleVerdict::Type(SplittingType::SPLIT),
        0 => OracleVerdict::Type(SplittingType::INERT),
        n => OracleVerdict::Anomalous(n),
    })
}

/// Compare the Kummer-mode splitting computed with `registry` against the
/// polynomial oracle on every applicable `(label, p)`.
pub fn splitting_oracle_probe(labels: &[FieldLabel], primes: &[u64], registry: &Registry) -> ProbeReport {
    let mut report = ProbeReport::new("splitting_oracle", &["label", "p", "kummer", "oracle"]);
    let (mut applicable, mut skipped, mut mismatches, mut errors) = (0usize, 0usize, 0usize, 0usize);
    for label in labels {
        for &p in primes {
            let oracle = match polynomial_splitting_oracle(p, label) {
                Ok(v) => v,
                Err(e) => {
                    errors += 1;
                    report.row(vec![label.to_string(), p.to_string(), "-".into(), format!("error: {e}")]);
                    continue;
                }
            };
            let expected = match oracle {
                OracleVerdict::Inapplicable => {
                    skipped += 1;
                    continue;
                }
                OracleVerdict::Anomalous(n) => {
                    mismatches += 1;
                    report.row(vec![label.to_string(), p.to_string(), "-".into(), format!("{n} roots")]);
                    continue;
                }
                OracleVerdict::Type(t) => t,
            };
            applicable += 1;
            match splitting_type_with(p, label, LambdaMode::Kummer, registry, Choice::default()) {
                Ok(t) if t == expected => {}
                Ok(t) => {
                    mismatches += 1;
                    report.row(vec![label.to_string(), p.to_string(), t.to_string(), expected.to_string()]);
                }
                Err(e) => {
                    errors += 1;
                    report.row(vec![label.to_string(), p.to_string(), format!("error: {e}"), expected.to_string()]);
                }
            }
        }
    }
    report
        .key("labels", labels.len())
        .key("applicable", applicable)
        .key("gated", skipped)
        .key("mismatches", mismatches)
        .key("errors", errors);
    if mismatches + errors > 0 || applicable == 0 {
        report.raise(ProbeStatus::Fail);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::classify::{canonicalize, labels_by_conductor};
    use crate::eisenstein::{EisensteinInteger, PrimeAbove};

    fn lab(e3: u8, d1: u64, d2: u64) -> FieldLabel {
        FieldLabel::new(e3, d1, d2).unwrap()
    }

    #[test]
    fn oracle_examples() {
        // x^3 - 21x - 7 mod 13 splits; x^3 - 21x - 35 (the other generator of 7) does not.
        assert_eq!(polynomial_splitting_oracle(13, &lab(0, 7, 1)).unwrap(), OracleVerdict::Type(SplittingType::SPLIT));
        assert_eq!(count_roots(7, 35, 13), 0);
        assert_eq!(count_roots(7, 7, 13), 3);
        assert_eq!(polynomial_splitting_oracle(17, &lab(1, 1, 1)).unwrap(), OracleVerdict::Type(SplittingType::SPLIT));
        assert_eq!(count_roots(3, 9, 17), 3);
        assert_eq!(polynomial_splitting_oracle(7, &lab(0, 7, 1)).unwrap(), OracleVerdict::Inapplicable);
        assert_eq!(polynomial_splitting_oracle(3, &lab(0, 7, 1)).unwrap(), OracleVerdict::Inapplicable);
    }

    #[test]
    fn kummer_matches_oracle_small() {
        let labels: Vec<FieldLabel> = labels_by_conductor(2, 120).into_iter().filter(|l| canonicalize(l).1).collect();
        let r = splitting_oracle_probe(&labels, &primes_up_to(200), Registry::global());
        assert_eq!(r.status, ProbeStatus::Pass, "{}", r.render());
        assert_eq!(r.value("mismatches"), Some("0"));
    }

    #[test]
    fn corrupted_registry_is_caught() {
        let labels = vec![lab(0, 7, 1), lab(0, 13, 1)];
        let bad = Registry::new().with_prime(PrimeAbove::from_generator_unchecked(13, EisensteinInteger::new(5, 1)));
        let r = splitting_oracle_probe(&labels, &primes_up_to(100), &bad);
        assert_eq!(r.status, ProbeStatus::Fail);
    }
}
