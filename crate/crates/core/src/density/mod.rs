//! One-level density of zeros of `L_D` through the explicit formula
//! `D(K_D, f) = fhat(0) - P_D(f) + C_f(D)`, family averages, and the
//! symmetry-type statistics derived from them.

pub mod digamma;
pub mod kernel;
pub mod quad;
pub mod testfn;

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;

pub use digamma::{digamma, digamma_complex};
pub use kernel::{kernel_integral, kernel_integral_direct, kernel_value, KernelType};
pub use testfn::{fejer_pair, TestFunctionPair};

use crate::arith::primes_up_to;
use crate::classify::{conductor_discriminant, enumerate_family, FieldLabel};
use crate::error::{Error, Result};
use crate::lfunc::{splitting_type, LambdaMode};
use crate::sum::{compensated_sum, NeumaierSum};

/// Explicit-formula terms for one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityBreakdown {
    pub label: FieldLabel,
    pub conductor: u64,
    pub archimedean: f64,
    pub gamma_term: f64,
    pub prime_sum: f64,
    pub total: f64,
}

/// Quadrature window `|y| <= WINDOW / beta` for the gamma term.
const WINDOW: f64 = 50.0;
const GAMMA_TOL: f64 = 1e-8;

/// `B(x) = 2 psi_R(1/2 + ix) + 2 psi_R(1/2 - ix) + psi_R(3/2 + ix) + psi_R(3/2 - ix)`
/// with `psi_R = Gamma_R'/Gamma_R`, `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`:
/// `B(x) = -3 log pi + 2 Re psi(1/4 + ix/2) + Re psi(3/4 + ix/2)`.
pub fn gamma_kernel(x: f64) -> Result<f64> {
    let a = digamma_complex(Complex64::new(0.25, 0.5 * x))?;
    let b = digamma_complex(Complex64::new(0.75, 0.5 * x))?;
    Ok(-3.0 * PI.ln() + 2.0 * a.re + b.re)
}

/// `(1 / log Delta) int F_beta(y) B(2 pi y / log Delta) dy` for a single
/// Fejer component.
///
/// Quadrature covers `|y| <= 50/beta` (an integer number of periods). Beyond
/// it `F_beta(y) = (1 - cos 2 pi beta y) / (2 pi^2 beta^2 y^2)` and
/// `B(x) = 3 log(x / 2 pi) + O(x^-2)`: the mean part integrates in closed
/// form, the cosine part contributes `-g'(W) / k^2` with `g = B / y^2`.
fn fejer_gamma_integral(beta: f64, discriminant: u64) -> Result<f64> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (beta.to_bits(), discriminant);
    if let Some(&v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let log_delta = (discriminant as f64).ln();
    let l = log_delta / (2.0 * PI);
    let w = WINDOW / beta;
    // Scale the absolute tolerance so the final value meets GAMMA_TOL.
    let body = quad::integrate_pieces(
        |y| match gamma_kernel(y / l) {
            Ok(b) => testfn::fejer(beta, y) * b,
            Err(_) => f64::NAN,
        },
        0.0,
        w,
        0.5 / beta,
        0.25 * GAMMA_TOL * log_delta,
    )?;
    if !body.is_finite() {
        return Err(Error::QuadratureNonConvergence { a: 0.0, b: w, error: f64::NAN });
    }
    let c = 1.0 / (2.0 * PI * PI * beta * beta);
    let mean_tail = c * ((-3.0 * PI.ln() - 3.0 * (2.0 * l).ln()) / w + 3.0 * (w.ln() + 1.0) / w);
    let k = 2.0 * PI * beta;
    let bw = gamma_kernel(w / l)?;
    let osc_tail = c * (3.0 - 2.0 * bw) / (k * k * w.powi(3));
    let v = 2.0 * (body + mean_tail + osc_tail) / log_delta;
    cache.lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// `C~_f(D)`, which depends on the field only through `Delta_D`.
pub fn gamma_term_for_discriminant(discriminant: u64, tf: &TestFunctionPair) -> Result<f64> {
    if discriminant < 2 {
        return Err(Error::InvalidArgument(format!("discriminant {discriminant} < 2")));
    }
    let mut acc = NeumaierSum::new();
    for &(c, b) in &tf.components {
        acc += c * fejer_gamma_integral(b, discriminant)?;
    }
    Ok(acc.value())
}

pub fn gamma_term(label: &FieldLabel, tf: &TestFunctionPair) -> Result<f64> {
    gamma_term_for_discriminant(conductor_discriminant(label).1, tf)
}

/// Prime powers `p^m` with `log p^m < beta log Delta`, increasing:
/// `(p^m, p, m)`.
pub fn prime_powers_in_support(discriminant: u64, beta: f64) -> Vec<(u64, u64, u32)> {
    let log_bound = beta * (discriminant as f64).ln();
    let bound = log_bound.exp().ceil() as u64 + 1;
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let mut pm = p;
        let mut m = 1;
        while (pm as f64).ln() < log_bound {
            out.push((pm, p, m));
            match pm.checked_mul(p) {
                Some(next) => pm = next,
                None => break,
            }
            m += 1;
        }
    }
    out.sort_unstable();
    out
}

/// `(2 / log Delta) sum lambda(p^m) log p / sqrt(p^m) fhat(log p^m / log Delta)`,
/// summed in increasing `p^m` with compensation.
pub fn prime_sum(label: &FieldLabel, tf: &TestFunctionPair, mode: LambdaMode) -> Result<f64> {
    let (_, discriminant) = conductor_discriminant(label);
    let log_delta = (discriminant as f64).ln();
    let mut types = HashMap::new();
    let mut acc = NeumaierSum::new();
    for (pm, p, m) in prime_powers_in_support(discriminant, tf.beta) {
        let st = match types.get(&p) {
            Some(&st) => st,
            None => {
                let st = splitting_type(p, label, mode)?;
                types.insert(p, st);
                st
            }
        };
        let lambda = st.lambda(m);
        if lambda == 0 {
            continue;
        }
        let lpm = (pm as f64).ln();
        acc += lambda as f64 * (p as f64).ln() / (pm as f64).sqrt() * tf.fhat(lpm / log_delta);
    }
    Ok(2.0 * acc.value() / log_delta)
}

pub fn one_level_density(label: &FieldLabel, tf: &TestFunctionPair, mode: LambdaMode) -> Result<DensityBreakdown> {
    let archimedean = tf.fhat_at_0;
    let gamma = gamma_term(label, tf)?;
    let primes = prime_sum(label, tf, mode)?;
    Ok(DensityBreakdown {
        label: *label,
        conductor: conductor_discriminant(label).0,
        archimedean,
        gamma_term: gamma,
        prime_sum: primes,
        total: archimedean - primes + gamma,
    })
}

/// Family statistics over `F_3(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyAverage {
    pub x: u64,
    pub count: usize,
    /// Mean of the per-field totals.
    pub average: f64,
    /// Mean prime sum.
    pub t: f64,
    pub mean_gamma: f64,
    pub rows: Vec<DensityBreakdown>,
}

/// Average over the given labels; rows are reduced in the given order.
pub fn family_average_over(x: u64, labels: &[FieldLabel], tf: &TestFunctionPair, mode: LambdaMode) -> Result<FamilyAverage> {
    if labels.is_empty() {
        return Err(Error::EmptyFamily(x));
    }
    let rows: Vec<DensityBreakdown> = labels
        .par_iter()
        .map(|l| one_level_density(l, tf, mode))
        .collect::<Result<_>>()?;
    let n = rows.len() as f64;
    Ok(FamilyAverage {
        x,
        count: rows.len(),
        average: compensated_sum(rows.iter().map(|r| r.total)) / n,
        t: compensated_sum(rows.iter().map(|r| r.prime_sum)) / n,
        mean_gamma: compensated_sum(rows.iter().map(|r| r.gamma_term)) / n,
        rows,
    })
}

pub fn family_average(x: u64, tf: &TestFunctionPair, mode: LambdaMode) -> Result<FamilyAverage> {
    let labels: Vec<FieldLabel> = enumerate_family(x)?.iter().map(|r| r.label).collect();
    family_average_over(x, &labels, tf, mode)
}

/// `sum_{p^{2k} in support} (2 / log Delta) log p / p^k fhat(2k log p / log Delta)`:
/// the prime sum when every even power has `lambda = 1` and odd powers average 0.
pub fn even_power_sum(discriminant: u64, tf: &TestFunctionPair) -> f64 {
    let log_delta = (discriminant as f64).ln();
    let terms = prime_powers_in_support(discriminant, tf.beta)
        .into_iter()
        .filter(|&(_, _, m)| m % 2 == 0)
        .map(|(pm, p, _)| (p as f64).ln() / (pm as f64).sqrt() * tf.fhat((pm as f64).ln() / log_delta));
    2.0 * compensated_sum(terms) / log_delta
}

/// Predicted `T` per symmetry type, averaged over the family's discriminants.
pub fn reference_statistics_over(discriminants: &[u64], tf: &TestFunctionPair) -> BTreeMap<KernelType, f64> {
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut acc = NeumaierSum::new();
    for &d in discriminants {
        acc += *cache.entry(d).or_insert_with(|| even_power_sum(d, tf));
    }
    let s = if discriminants.is_empty() { 0.0 } else { acc.value() / discriminants.len() as f64 };
    BTreeMap::from([
        (KernelType::U, 0.0),
        (KernelType::Sp, s),
        (KernelType::O, -s),
        (KernelType::SOeven, -s),
        (KernelType::SOodd, -s),
    ])
}

pub fn reference_statistics(x: u64, tf: &TestFunctionPair) -> Result<BTreeMap<KernelType, f64>> {
    let discriminants: Vec<u64> = crate::classify::family_labels(x)
        .iter()
        .map(|l| conductor_discriminant(l).1)
        .collect();
    if discriminants.is_empty() {
        return Err(Error::EmptyFamily(x));
    }
    Ok(reference_statistics_over(&discriminants, tf))
}

/// Outcome of the nearest-reference rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub kernel: KernelType,
    pub runner_up: KernelType,
    /// `|T - best| - |T - runner-up|`, never positive.
    pub margin: f64,
    pub ambiguous: bool,
}

const TIE: f64 = 1e-12;

/// Nearest reference to `t`. The runner-up is the nearest kernel whose
/// reference differs from the winner's; when the two are within `1e-12` of
/// each other the result is flagged ambiguous and `U` is preferred if tied.
pub fn classify_symmetry(t: f64, refs: &BTreeMap<KernelType, f64>) -> Classification {
    let mut ranked: Vec<(f64, KernelType)> = refs.iter().map(|(&k, &v)| ((t - v).abs(), k)).collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let (best_d, mut best) = ranked[0];
    let tied: Vec<KernelType> = ranked.iter().filter(|(d, _)| d - best_d < TIE).map(|&(_, k)| k).collect();
    if tied.contains(&KernelType::U) {
        best = KernelType::U;
    }
    let (second_d, second) = ranked
        .iter()
        .copied()
        .find(|&(_, k)| (refs[&k] - refs[&best]).abs() >= TIE)
        .unwrap_or((best_d, best));
    let margin = best_d - second_d;
    Classification {
        kernel: best,
        runner_up: second,
        margin,
        ambiguous: margin.abs() < TIE || tied.len() > 1,
    }
}
