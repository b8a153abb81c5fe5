//! Digamma on the real line and in the right half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k} / (2k)` for k = 1..7.
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

const SHIFT: f64 = 10.0;

/// `psi(x)` for real `x` other than `0, -1, -2, ...`.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("digamma of {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::DigammaPole(x));
    }
    if x < 0.0 {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        return Ok(digamma(1.0 - x)? - PI / (PI * x).tan());
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < SHIFT {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut series = 0.0;
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// `psi(z)` for `Re z > 0`.
pub fn digamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::InvalidArgument(format!("complex digamma needs Re z > 0, got {z}")));
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < SHIFT {
        acc -= z.inv();
        z += 1.0;
    }
    let inv2 = (z * z).inv();
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for c in ASYMPTOTIC {
        series += pow * c;
        pow *= inv2;
    }
    Ok(acc + z.ln() - z.inv() * 0.5 - series)
}
