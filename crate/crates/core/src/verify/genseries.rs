//! Numerical comparison of the Euler product of the generating series
//! `G_p(s) = sum' chi_p(d1 d2^2) (d1 d2)^-s` with
//! `sqrt(L_K(chi, s) L_K(chi^2, s) H_p(s))` over `K = Q(w)`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ProbeReport, ProbeStatus};
use crate::arith::primes_up_to;
use crate::eisenstein::{cubic_residue_symbol, CubicSymbolValue, EisensteinInteger, PrimeAbove, Registry};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Successive truncations must agree to this relative tolerance.
pub const CAUCHY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSeriesSides {
    pub p0: u64,
    pub lhs: f64,
    pub rhs: f64,
    /// Imaginary part of `log L_K(chi) + log L_K(chi^2)`; zero up to rounding.
    pub rhs_imag: f64,
}

impl GenSeriesSides {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs()
    }
}

fn as_complex(v: CubicSymbolValue) -> Complex64 {
    match v {
        CubicSymbolValue::Zero => Complex64::new(0.0, 0.0),
        CubicSymbolValue::OmegaPow(k) => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0),
    }
}

/// Contributions of one prime of `K` (or one rational `l = 1 mod 3` on the
/// left): `(norm, log lhs, log L(chi) + log L(chi^2), log H)`.
#[derive(Default, Clone, Copy)]
struct Piece {
    norm: u64,
    lhs: f64,
    l_fn: Complex64,
    h: f64,
}

fn prime_of_k(g: &EisensteinInteger, norm: u64, s: f64, base: &PrimeAbove, split: bool) -> Result<Piece> {
    let chi = cubic_residue_symbol(g, base)?;
    let c = chi.trace() as f64;
    let nz = if chi == CubicSymbolValue::Zero { 0.0 } else { 1.0 };
    let x = (norm as f64).powf(-s);
    let z = as_complex(chi) * x;
    let z2 = as_complex(chi.square()) * x;
    let one = Complex64::new(1.0, 0.0);
    let l_fn = -(one - z).ln() - (one - z2).ln();
    let h = if split {
        // (1 + c x)(1 - chi x)(1 - chi^2 x)
        (nz - c * c) * x * x + nz * c * x * x * x
    } else {
        // (1 - chi x)(1 - chi^2 x): cancels the L-factors
        -c * x + nz * x * x
    };
    Ok(Piece { norm, lhs: 0.0, l_fn, h: h.ln_1p() })
}

fn pieces_for(l: u64, s: f64, base: &PrimeAbove, registry: &Registry, p0: u64) -> Result<Vec<Piece>> {
    match l % 3 {
        0 => Ok(vec![prime_of_k(&EisensteinInteger::LAMBDA, 3, s, base, false)?]),
        1 => {
            let g = registry.get(l)?.generator;
            let chi = cubic_residue_symbol(&g, base)?;
            let x = (l as f64).powf(-s);
            let mut a = prime_of_k(&g, l, s, base, true)?;
            a.lhs = (chi.trace() as f64 * x).ln_1p();
            let b = prime_of_k(&g.conj(), l, s, base, true)?;
            Ok(vec![a, b])
        }
        _ => match l.checked_mul(l) {
            Some(n) if n <= p0 => Ok(vec![prime_of_k(&EisensteinInteger::from_int(l as i64), n, s, base, false)?]),
            _ => Ok(vec![]),
        },
    }
}

/// Both sides truncated at every cutoff in `cutoffs` (primes of `K` with
/// norm at most the cutoff; on the left, `l <= cutoff`).
pub fn genseries_sides_at(p: u64, s: f64, cutoffs: &[u64], registry: &Registry) -> Result<Vec<GenSeriesSides>> {
    if p == 3 {
        return Err(Error::RamifiedPrime);
    }
    if !(s >= 1.5) {
        return Err(Error::InvalidArgument(format!("s = {s} must be at least 1.5")));
    }
    let p_max = cutoffs.iter().copied().max().unwrap_or(0);
    if p_max > 1_000_000 || cutoffs.contains(&0) {
        return Err(Error::InvalidArgument(format!("cutoffs must lie in [1, 1e6], got {cutoffs:?}")));
    }
    let base = registry.get(p)?;
    let per_prime: Vec<Result<Vec<Piece>>> = primes_up_to(p_max)
        .into_par_iter()
        .map(|l| pieces_for(l, s, &base, registry, p_max))
        .collect();
    let mut pieces = Vec::new();
    for r in per_prime {
        pieces.extend(r?);
    }
    pieces.sort_by_key(|q| q.norm);

    let mut order: Vec<u64> = cutoffs.to_vec();
    order.sort_unstable();
    let (mut lhs, mut lre, mut lim, mut h) = (NeumaierSum::new(), NeumaierSum::new(), NeumaierSum::new(), NeumaierSum::new());
    let mut it = pieces.iter().peekable();
    let mut out = Vec::new();
    for &cut in &order {
        while let Some(q) = it.next_if(|q| q.norm <= cut) {
            lhs += q.lhs;
            lre += q.l_fn.re;
            lim += q.l_fn.im;
            h += q.h;
        }
        out.push(GenSeriesSides {
            p0: cut,
            lhs: lhs.value().exp(),
            rhs: (0.5 * (lre.value() + h.value())).exp(),
            rhs_imag: lim.value(),
        });
    }
    Ok(cutoffs.iter().map(|c| *out.iter().find(|o| o.p0 == *c).unwrap()).collect())
}

pub fn genseries_sides(p: u64, s: f64, p0: u64) -> Result<GenSeriesSides> {
    Ok(genseries_sides_at(p, s, &[p0], Registry::global())?[0])
}

/// Sides at `P0 / 10` and `P0`: each must be Cauchy to [`CAUCHY_TOL`]
/// (asserted); the gap between them is a finding unless below `1e-6`.
pub fn genseries_compare(p: u64, s: f64, p0: u64, registry: &Registry) -> Result<ProbeReport> {
    let lo = (p0 / 10).max(1);
    let v = genseries_sides_at(p, s, &[lo, p0], registry)?;
    let (a, b) = (v[0], v[1]);
    let cauchy_lhs = (a.lhs - b.lhs).abs() / b.lhs.abs();
    let cauchy_rhs = (a.rhs - b.rhs).abs() / b.rhs.abs();
    let mut report = ProbeReport::new(format!("genseries_p{p}"), &["P0", "lhs", "rhs", "relative_gap"]);
    for x in [a, b] {
        report.row(vec![x.p0.to_string(), format!("{:.12}", x.lhs), format!("{:.12}", x.rhs), format!("{:.3e}", x.relative_gap())]);
    }
    report
        .key("s", s)
        .key("p0", p0)
        .key("lhs", format!("{:.12}", b.lhs))
        .key("rhs", format!("{:.12}", b.rhs))
        .key("cauchy_lhs", format!("{cauchy_lhs:.3e}"))
        .key("cauchy_rhs", format!("{cauchy_rhs:.3e}"))
        .key("gap", format!("{:.3e}", b.relative_gap()));
    if !(cauchy_lhs <= CAUCHY_TOL && cauchy_rhs <= CAUCHY_TOL) || b.rhs_imag.abs() > 1e-9 {
        report.raise(ProbeStatus::Fail);
    } else if b.relative_gap() >= 1e-6 {
        report.raise(ProbeStatus::Finding);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force partial Dirichlet series of the Euler product on the left:
    /// `sum_{n <= N} g(n) n^-s` for the multiplicative `g` it defines.
    fn dirichlet_partial(p: u64, s: f64, n: u64) -> f64 {
        let base = Registry::global().get(p).unwrap();
        let spf = crate::arith::SpfTable::new(n);
        (1..=n)
            .map(|m| {
                let mut g = 1.0;
                for (q, e) in spf.factor(m) {
                    if e > 1 || q % 3 != 1 {
                        return 0.0;
                    }
                    let gen = Registry::global().get(q).unwrap().generator;
                    g *= cubic_residue_symbol(&gen, &base).unwrap().trace() as f64;
                }
                g * (m as f64).powf(-s)
            })
            .sum()
    }

    #[test]
    fn lhs_matches_dirichlet_series() {
        for p in [5u64, 13] {
            let prod = genseries_sides(p, 3.0, 20_000).unwrap().lhs;
            let series = dirichlet_partial(p, 3.0, 20_000);
            assert!((prod - series).abs() < 1e-6, "p={p} {prod} {series}");
        }
    }

    #[test]
    fn inert_base_prime_has_no_gap() {
        for p in [2u64, 5, 11] {
            let v = genseries_sides(p, 2.0, 100_000).unwrap();
            assert!(v.relative_gap() < 1e-12, "p={p} {v:?}");
            assert!(v.rhs_imag.abs() < 1e-12);
        }
    }

    #[test]
    fn argument_checks() {
        assert!(genseries_sides(3, 2.0, 100).is_err());
        assert!(genseries_sides(5, 1.2, 100).is_err());
        assert!(genseries_sides(5, 2.0, 2_000_000).is_err());
    }
}
