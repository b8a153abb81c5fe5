//! The character sums `S_p(Y)` over pairs `(d1, d2)` of squarefree, coprime
//! 3-split integers prime to 3 with `d1 d2 <= Y`, weighted by the literal
//! character of the label `(0, d1, d2)`.

use crate::arith::SpfTable;
use crate::classify::FieldLabel;
use super::{ProbeReport, ProbeStatus};
use crate::eisenstein::{cubic_residue_symbol, EisensteinInteger, Registry};
use crate::error::{Error, Result};
use crate::lfunc::{symbol_with, Choice, LambdaMode};

pub const MAX_Y: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CharSumRow {
    pub p: u64,
    pub y: u64,
    pub value: EisensteinInteger,
    pub magnitude: f64,
}

impl CharSumRow {
    fn new(p: u64, y: u64, value: EisensteinInteger) -> Self {
        Self { p, y, value, magnitude: (value.norm() as f64).sqrt() }
    }
}

fn check_args(p: u64, y: u64) -> Result<()> {
    if p == 3 {
        return Err(Error::RamifiedPrime);
    }
    if y == 0 || y > MAX_Y {
        return Err(Error::InvalidArgument(format!("Y = {y} must lie in [1, {MAX_Y}]")));
    }
    Ok(())
}

/// `S_p(Y)` at every point of `ys` (any order), from one sieve pass.
///
/// A prime `q` contributes `chi(pi_q)` when it divides `d1` and `chi(pi_q)^2`
/// when it divides `d2`, so the summand over pairs with `d1 d2 = n` factors
/// as `prod_{q | n} (chi(pi_q) + chi(pi_q)^2)`.
pub fn char_sum_grid_with(p: u64, ys: &[u64], registry: &Registry) -> Result<Vec<CharSumRow>> {
    let y_max = ys.iter().copied().max().unwrap_or(0);
    for &y in ys {
        check_args(p, y)?;
    }
    let prime_p = registry.get(p)?;
    let spf = SpfTable::new(y_max);
    let mut weight = vec![EisensteinInteger::ZERO; y_max as usize + 1];
    if y_max >= 1 {
        weight[1] = EisensteinInteger::ONE;
    }
    for n in 2..=y_max {
        let q = spf.factor(n)[0].0;
        let m = n / q;
        if q % 3 != 1 || m % q == 0 {
            continue;
        }
        if m == 1 {
            let chi = cubic_residue_symbol(&registry.get(q)?.generator, &prime_p)?;
            weight[n as usize] = chi.to_eisenstein() + chi.square().to_eisenstein();
        } else {
            weight[n as usize] = weight[q as usize] * weight[m as usize];
        }
    }
    let mut sorted: Vec<u64> = ys.to_vec();
    sorted.sort_unstable();
    let mut acc = EisensteinInteger::ZERO;
    let mut next = 1usize;
    let mut at = std::collections::HashMap::new();
    for &y in &sorted {
        while next as u64 <= y {
            acc = acc + weight[next];
            next += 1;
        }
        at.insert(y, acc);
    }
    Ok(ys.iter().map(|&y| CharSumRow::new(p, y, at[&y])).collect())
}

pub fn char_sum_grid(p: u64, ys: &[u64]) -> Result<Vec<CharSumRow>> {
    char_sum_grid_with(p, ys, Registry::global())
}

pub fn char_sum(p: u64, y: u64) -> Result<CharSumRow> {
    Ok(char_sum_grid(p, &[y])?.remove(0))
}

/// Direct enumeration of the pairs, evaluating the literal character of each
/// label. Slow; used as a cross-check for small `Y`.
pub fn char_sum_literal(p: u64, y: u64, registry: &Registry) -> Result<EisensteinInteger> {
    check_args(p, y)?;
    let spf = SpfTable::new(y);
    let mut total = EisensteinInteger::ONE; // the pair (1, 1)
    for n in 2..=y {
        let primes: Vec<u64> = match spf.factor(n) {
            f if f.iter().all(|&(q, e)| e == 1 && q % 3 == 1) => f.into_iter().map(|(q, _)| q).collect(),
            _ => continue,
        };
        for mask in 0u32..(1 << primes.len()) {
            let (mut d1, mut d2) = (1u64, 1u64);
            for (i, &q) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    d1 *= q;
                } else {
                    d2 *= q;
                }
            }
            let label = FieldLabel::new(0, d1, d2)?;
            let chi = symbol_with(p, &label, LambdaMode::PaperLiteral, registry, Choice::default())?;
            total = total + chi.to_eisenstein();
        }
    }
    Ok(total)
}

/// About `per_decade` log-spaced integers in `[lo, hi]`, both ends included.
pub fn log_grid(lo: u64, hi: u64, per_decade: u32) -> Vec<u64> {
    assert!(lo >= 1 && lo <= hi && per_decade >= 1);
    let (a, b) = ((lo as f64).log10(), (hi as f64).log10());
    let steps = ((b - a) * per_decade as f64).round().max(1.0) as u32;
    let mut grid: Vec<u64> = (0..=steps)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / steps as f64).round() as u64)
        .map(|y| y.clamp(lo, hi))
        .collect();
    grid.dedup();
    grid
}

/// Least-squares slope of `log |S_p(Y)|` against `log Y` (zero sums skipped).
pub fn fitted_exponent(rows: &[CharSumRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.magnitude > 0.0)
        .map(|r| ((r.y as f64).ln(), r.magnitude.ln()))
        .collect();
    super::slope(&pts)
}

/// `S_p(Y)` over a log grid up to `y_max`: the fitted exponent must stay at
/// most 1.1 (asserted); a registry conjugation at `p` that changes the sum
/// by more than conjugation is recorded as a finding.
pub fn char_sum_probe(p: u64, y_max: u64) -> Result<ProbeReport> {
    let grid = log_grid(10.min(y_max), y_max, 4);
    let rows = char_sum_grid(p, &grid)?;
    let conj = char_sum_grid_with(p, &grid, &Registry::global().conjugated_at(p)?)?;
    let mut report = ProbeReport::new(format!("char_sum_p{p}"), &["Y", "S", "|S|", "S (conjugated prime)"]);
    let mut moved = 0usize;
    for (r, c) in rows.iter().zip(&conj) {
        moved += (c.value != r.value.conj()) as usize;
        report.row(vec![r.y.to_string(), r.value.to_string(), format!("{:.1}", r.magnitude), c.value.to_string()]);
    }
    let exponent = fitted_exponent(&rows);
    report
        .key("y_max", y_max)
        .key("exponent", exponent.map_or("n/a".to_string(), |e| format!("{e:.4}")))
        .key("conjugation_changes", moved);
    if exponent.is_some_and(|e| e > 1.1) {
        report.raise(ProbeStatus::Fail);
    } else if moved > 0 {
        report.raise(ProbeStatus::Finding);
    }
    Ok(report)
}
