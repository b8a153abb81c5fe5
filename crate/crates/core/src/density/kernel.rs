//! Symmetry-type densities `W(G)` and their integrals against test functions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::quad::integrate_pieces;
use super::testfn::TestFunctionPair;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelType {
    U,
    Sp,
    O,
    SOeven,
    SOodd,
}

impl KernelType {
    pub const ALL: [KernelType; 5] = [KernelType::U, KernelType::Sp, KernelType::O, KernelType::SOeven, KernelType::SOodd];
}

impl fmt::Display for KernelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelType::U => "U",
            KernelType::Sp => "Sp",
            KernelType::O => "O",
            KernelType::SOeven => "SOeven",
            KernelType::SOodd => "SOodd",
        })
    }
}

impl FromStr for KernelType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KernelType::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown kernel `{s}`")))
    }
}

/// `sin(2 pi t) / (2 pi t)`, equal to 1 at 0.
fn sinc2pi(t: f64) -> f64 {
    let x = 2.0 * PI * t;
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Smooth part of `W(G)(t)` and the coefficient of `delta_0`.
pub fn kernel_value(g: KernelType, t: f64) -> (f64, f64) {
    match g {
        KernelType::U => (1.0, 0.0),
        KernelType::Sp => (1.0 - sinc2pi(t), 0.0),
        KernelType::O => (1.0, 0.5),
        KernelType::SOeven => (1.0 + sinc2pi(t), 0.0),
        KernelType::SOodd => (1.0 - sinc2pi(t), 1.0),
    }
}

/// `int f W(G)` on the Fourier side, using `int sinc2pi * f = 1/2 int_{-1}^{1} fhat`.
pub fn kernel_integral(g: KernelType, tf: &TestFunctionPair) -> f64 {
    let half_mass = 0.5 * tf.fhat_mass();
    match g {
        KernelType::U => tf.fhat_at_0,
        KernelType::Sp => tf.fhat_at_0 - half_mass,
        KernelType::O => tf.fhat_at_0 + 0.5 * tf.f_at_0,
        KernelType::SOeven => tf.fhat_at_0 + half_mass,
        KernelType::SOodd => tf.fhat_at_0 + tf.f_at_0 - half_mass,
    }
}

/// `int f W(G)` by direct quadrature on `|t| <= K / beta` plus the tail of the
/// non-oscillating part of `f`, `sum_i c_i / (2 pi^2 beta_i^2 T)` per side.
pub fn kernel_integral_direct(g: KernelType, tf: &TestFunctionPair) -> Result<f64> {
    let t_max = 400.0 / tf.components.iter().map(|&(_, b)| b).fold(f64::INFINITY, f64::min);
    let period = 0.5;
    let smooth = integrate_pieces(|t| tf.f(t) * kernel_value(g, t).0, 0.0, t_max, period, 1e-11)?;
    let tail: f64 = tf
        .components
        .iter()
        .map(|&(c, b)| c / (2.0 * PI * PI * b * b * t_max))
        .sum();
    Ok(2.0 * (smooth + tail) + kernel_value(g, 0.0).1 * tf.f_at_0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::testfn::fejer_pair;

    #[test]
    fn values() {
        for t in [-3.0, 0.0, 0.7] {
            assert_eq!(kernel_value(KernelType::U, t), (1.0, 0.0));
        }
        assert_eq!(kernel_value(KernelType::Sp, 0.0), (0.0, 0.0));
        assert_eq!(kernel_value(KernelType::SOodd, 0.0), (0.0, 1.0));
        assert_eq!(kernel_value(KernelType::O, 0.0), (1.0, 0.5));
        assert_eq!(kernel_value(KernelType::SOeven, 0.0), (2.0, 0.0));
        assert!((kernel_value(KernelType::Sp, 0.25).0 - (1.0 - 2.0 / PI)).abs() < 1e-15);
        assert!((sinc2pi(0.99e-4 / (2.0 * PI)) - (0.99e-4f64).sin() / 0.99e-4).abs() < 1e-15);
        assert_eq!("SOeven".parse::<KernelType>().unwrap(), KernelType::SOeven);
    }

    #[test]
    fn integrals_at_beta_0_2() {
        let tf = fejer_pair(0.2).unwrap();
        let got: Vec<f64> = KernelType::ALL.iter().map(|&g| kernel_integral(g, &tf)).collect();
        assert_eq!(got, vec![5.0, 4.5, 5.5, 5.5, 5.5]);
    }

    #[test]
    fn fourier_side_matches_direct_quadrature() {
        for beta in [0.2, 0.5, 0.9] {
            let tf = fejer_pair(beta).unwrap();
            for g in KernelType::ALL {
                let a = kernel_integral(g, &tf);
                let b = kernel_integral_direct(g, &tf).unwrap();
                assert!((a - b).abs() < 1e-6, "beta={beta} {g}: {a} vs {b}");
            }
        }
    }
}
