//! Growth of `|F3(X)|` in `X`.

use super::{ProbeReport, ProbeStatus};
use crate::classify::family_count;
use crate::error::{Error, Result};

/// Fits `log |F3(X)|` against `log X`; a slope in `[0.45, 0.55]` passes.
pub fn family_count_scaling(xs: &[u64]) -> Result<ProbeReport> {
    if xs.len() < 3 || xs.iter().any(|&x| !(2..=10_000_000_000).contains(&x)) {
        return Err(Error::InvalidArgument("need at least 3 values of X in [2, 1e10]".into()));
    }
    let mut report = ProbeReport::new("family_count_scaling", &["X", "count", "count/sqrt(X)"]);
    let mut pts = Vec::new();
    let mut rescaled = Vec::new();
    for &x in xs {
        let c = family_count(x);
        let r = c as f64 / (x as f64).sqrt();
        report.row(vec![x.to_string(), c.to_string(), format!("{r:.6}")]);
        if c == 0 {
            return Err(Error::EmptyFamily(x));
        }
        pts.push(((x as f64).ln(), (c as f64).ln()));
        rescaled.push(r);
    }
    let slope = super::slope(&pts).expect("at least two distinct X");
    let lo = rescaled.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = rescaled.iter().copied().fold(0.0, f64::max);
    report.key("slope", format!("{slope:.4}")).key("rescaled_spread", format!("{:.4}", hi / lo));
    if !(0.45..=0.55).contains(&slope) {
        report.raise(ProbeStatus::Fail);
    }
    Ok(report)
}
