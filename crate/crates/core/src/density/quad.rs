//! Adaptive Gauss-Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 40;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32, whole: (f64, f64)) -> Result<f64> {
    let (value, err) = whole;
    if err <= tol || (b - a).abs() < 1e-12 * (a.abs() + b.abs()).max(1e-300) {
        return Ok(value);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureNonConvergence { a, b, error: err });
    }
    let m = 0.5 * (a + b);
    let left = gk15(f, a, m);
    let right = gk15(f, m, b);
    Ok(adapt(f, a, m, 0.5 * tol, depth + 1, left)? + adapt(f, m, b, 0.5 * tol, depth + 1, right)?)
}

/// `int_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let whole = gk15(&f, a, b);
    adapt(&f, a, b, tol, 0, whole)
}

/// Split `[a, b]` into pieces of length `step` and integrate each adaptively;
/// suited to oscillatory integrands with known period.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64, tol: f64) -> Result<f64> {
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    let piece_tol = tol / n as f64;
    let mut acc = crate::sum::NeumaierSum::new();
    for i in 0..n {
        let lo = a + i as f64 * step;
        let hi = if i + 1 == n { b } else { a + (i + 1) as f64 * step };
        acc += integrate(&f, lo, hi, piece_tol)?;
    }
    Ok(acc.value())
}
