//! Two constructions of the number of ideals of norm `n` in `K_D`.

use super::{ProbeReport, ProbeStatus};
use crate::arith::{primes_up_to, SpfTable};
use crate::classify::FieldLabel;
use crate::error::{Error, Result};
use crate::lfunc::{lambda_coefficient, splitting_type, LambdaMode, SplittingType};

pub const MAX_N: u64 = 100_000;

fn check_n(n: u64) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidArgument(format!("N = {n} must lie in [1, {MAX_N}]")));
    }
    Ok(())
}

fn ideals_above_power(st: SplittingType, k: u32) -> i64 {
    let k = k as i64;
    match st {
        SplittingType::SPLIT => (k + 1) * (k + 2) / 2,
        SplittingType::INERT => (k % 3 == 0) as i64,
        _ => 1,
    }
}

/// `a(n)` for `n <= N` (index 0 unused), multiplicatively from the splitting
/// type of each prime.
pub fn ideal_counts_from_splitting(label: &FieldLabel, n: u64) -> Result<Vec<i64>> {
    check_n(n)?;
    let spf = SpfTable::new(n);
    let mut types = std::collections::HashMap::new();
    for p in primes_up_to(n) {
        types.insert(p, splitting_type(p, label, LambdaMode::Kummer)?);
    }
    let mut a = vec![0i64; n as usize + 1];
    for m in 1..=n {
        a[m as usize] = spf.factor(m).iter().map(|&(p, k)| ideals_above_power(types[&p], k)).product();
    }
    Ok(a)
}

/// `a = 1 * b`, where `b` are the coefficients of `L_D`, recovered from
/// `lambda` through `k b(p^k) = sum_{j=1}^k lambda(p^j) b(p^(k-j))`.
pub fn ideal_counts_from_lambda(label: &FieldLabel, n: u64) -> Result<Vec<i64>> {
    check_n(n)?;
    let mut b = vec![0i64; n as usize + 1];
    b[1] = 1;
    // Prime-power values first.
    for p in primes_up_to(n) {
        let mut powers = vec![1i64];
        let mut pk = p;
        let mut k = 1u32;
        loop {
            let mut s = 0i64;
            for j in 1..=k {
                s += lambda_coefficient(p, j, label, LambdaMode::Kummer)? * powers[(k - j) as usize];
            }
            if s % k as i64 != 0 {
                return Err(Error::InvalidArgument(format!("non-integral coefficient at {p}^{k}")));
            }
            powers.push(s / k as i64);
            b[pk as usize] = s / k as i64;
            match pk.checked_mul(p) {
                Some(next) if next <= n => {
                    pk = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    // Extend multiplicatively over coprime factorizations m = p^k * r.
    let spf = SpfTable::new(n);
    for m in 2..=n {
        let f = spf.factor(m);
        if f.len() > 1 {
            let (p, k) = f[0];
            let pk = p.pow(k);
            b[m as usize] = b[pk as usize] * b[(m / pk) as usize];
        }
    }
    let mut a = vec![0i64; n as usize + 1];
    for d in 1..=n as usize {
        if b[d] != 0 {
            for m in (d..=n as usize).step_by(d) {
                a[m] += b[d];
            }
        }
    }
    Ok(a)
}

/// Exact comparison of both constructions for `n <= N`.
pub fn ideal_count_crosscheck(label: &FieldLabel, n: u64) -> ProbeReport {
    let mut report = ProbeReport::new(format!("ideal_count{label}"), &["n", "from_splitting", "from_lambda"]);
    report.key("n_max", n);
    match (ideal_counts_from_splitting(label, n), ideal_counts_from_lambda(label, n)) {
        (Ok(x), Ok(y)) => {
            let bad: Vec<usize> = (1..x.len()).filter(|&i| x[i] != y[i]).collect();
            for &i in bad.iter().take(20) {
                report.row(vec![i.to_string(), x[i].to_string(), y[i].to_string()]);
            }
            report.key("mismatches", bad.len());
            if !bad.is_empty() {
                report.raise(ProbeStatus::Fail);
            }
        }
        (Err(e), _) | (_, Err(e)) => {
            report.key("error", e);
            report.raise(ProbeStatus::Fail);
        }
    }
    report
}
