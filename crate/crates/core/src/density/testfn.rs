//! Even test functions with compactly supported Fourier transforms,
//! `fhat(u) = int f(x) e^{-2 pi i x u} dx`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A finite linear combination `sum c_i F_{beta_i}` of Fejer pairs
/// `F_b(x) = (sin(pi b x) / (pi b x))^2`, `Fhat_b(u) = max(0, 1 - |u|/b) / b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunctionPair {
    /// Support radius of `fhat` (largest component).
    pub beta: f64,
    /// `(coefficient, beta_i)` pairs.
    pub components: Vec<(f64, f64)>,
    pub f_at_0: f64,
    pub fhat_at_0: f64,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

/// `(sin(pi b x) / (pi b x))^2`.
pub fn fejer(beta: f64, x: f64) -> f64 {
    let t = PI * beta * x;
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0
    } else {
        let s = t.sin() / t;
        s * s
    }
}

pub fn fejer_hat(beta: f64, u: f64) -> f64 {
    (1.0 - u.abs() / beta).max(0.0) / beta
}

pub fn fejer_pair(beta: f64) -> Result<TestFunctionPair> {
    check_beta(beta)?;
    Ok(TestFunctionPair {
        beta,
        components: vec![(1.0, beta)],
        f_at_0: 1.0,
        fhat_at_0: 1.0 / beta,
    })
}

impl TestFunctionPair {
    pub fn f(&self, x: f64) -> f64 {
        self.components.iter().map(|&(c, b)| c * fejer(b, x)).sum()
    }

    pub fn fhat(&self, u: f64) -> f64 {
        self.components.iter().map(|&(c, b)| c * fejer_hat(b, u)).sum()
    }

    /// `int_{-1}^{1} fhat`, which equals `f(0)` because `beta < 1`.
    pub fn fhat_mass(&self) -> f64 {
        self.components.iter().map(|&(c, _)| c).sum()
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mut components: Vec<(f64, f64)> = self.components.iter().map(|&(c, bt)| (a * c, bt)).collect();
        components.extend(other.components.iter().map(|&(c, bt)| (b * c, bt)));
        Self {
            beta: self.beta.max(other.beta),
            components,
            f_at_0: a * self.f_at_0 + b * other.f_at_0,
            fhat_at_0: a * self.fhat_at_0 + b * other.fhat_at_0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::quad::{integrate, integrate_pieces};

    /// `int_T^inf cos(w x) / x^2 dx` to `O(T^-4)`.
    fn cos_tail(w: f64, t: f64) -> f64 {
        if w == 0.0 {
            1.0 / t
        } else {
            -(w * t).sin() / (w * t * t) - 2.0 * (w * t).cos() / (w * w * t * t * t)
        }
    }

    /// `int f(x) cos(2 pi x u) dx` by quadrature over `|x| <= T`; beyond `T`,
    /// `f(x) cos(2 pi u x) = (1 - cos 2 pi b x) cos(2 pi u x) / (2 pi^2 b^2 x^2)`
    /// is integrated term by term.
    fn transform_by_quadrature(beta: f64, u: f64) -> f64 {
        let t = 400.0 / beta;
        let body = integrate_pieces(|x| fejer(beta, x) * (2.0 * PI * x * u).cos(), 0.0, t, 0.5 / beta, 1e-11).unwrap();
        let w = |v: f64| 2.0 * PI * v.abs();
        let tail = (cos_tail(w(u), t) - 0.5 * cos_tail(w(beta - u), t) - 0.5 * cos_tail(w(beta + u), t))
            / (2.0 * PI * PI * beta * beta);
        2.0 * (body + tail)
    }

    #[test]
    fn closed_forms() {
        let tf = fejer_pair(0.2).unwrap();
        assert_eq!(tf.fhat_at_0, 5.0);
        assert_eq!(tf.f_at_0, 1.0);
        assert_eq!(tf.fhat(0.0), 5.0);
        assert_eq!(tf.f(0.0), 1.0);
        assert_eq!(tf.fhat(0.2), 0.0);
        assert_eq!(tf.fhat(-0.5), 0.0);
        assert!((tf.fhat(0.1) - 2.5).abs() < 1e-15);
        assert!(fejer_pair(0.0).is_err());
        assert!(fejer_pair(1.0).is_err());
        assert!(fejer_pair(f64::NAN).is_err());
        // Taylor branch joins the direct formula smoothly.
        let x = 0.99e-4 / (PI * 0.2);
        let direct = ((PI * 0.2 * x).sin() / (PI * 0.2 * x)).powi(2);
        assert!((fejer(0.2, x) - direct).abs() < 1e-15);
    }

    #[test]
    fn fhat_integrates_to_f0() {
        for beta in [0.05, 0.2, 0.5, 0.9] {
            let tf = fejer_pair(beta).unwrap();
            let piece = |a: f64, b: f64| integrate(|u| tf.fhat(u), a, b, 1e-13).unwrap();
            let m = piece(-1.0, -beta) + piece(-beta, 0.0) + piece(0.0, beta) + piece(beta, 1.0);
            assert!((m - 1.0).abs() < 1e-12);
            assert_eq!(tf.fhat_mass(), 1.0);
        }
    }

    #[test]
    fn transform_convention() {
        assert!((transform_by_quadrature(0.2, 0.1) - 2.5).abs() < 1e-4);
        for beta in [0.2, 0.5, 0.9] {
            let tf = fejer_pair(beta).unwrap();
            for k in 0..8 {
                let u = k as f64 * beta / 7.0 + 0.013;
                assert!((transform_by_quadrature(beta, u) - tf.fhat(u)).abs() < 1e-6, "beta={beta} u={u}");
            }
            assert!((transform_by_quadrature(beta, 0.0) - tf.fhat(0.0)).abs() < 1e-6);
        }
    }

    #[test]
    fn combination_is_linear() {
        let a = fejer_pair(0.2).unwrap();
        let b = fejer_pair(0.35).unwrap();
        let c = a.combine(2.0, &b, -0.5);
        assert_eq!(c.beta, 0.35);
        for x in [0.0, 0.3, 2.0, 17.0] {
            assert!((c.f(x) - (2.0 * a.f(x) - 0.5 * b.f(x))).abs() < 1e-15);
            assert!((c.fhat(x / 20.0) - (2.0 * a.fhat(x / 20.0) - 0.5 * b.fhat(x / 20.0))).abs() < 1e-14);
        }
        assert!((c.f_at_0 - c.f(0.0)).abs() < 1e-15);
        assert!((c.fhat_at_0 - c.fhat(0.0)).abs() < 1e-15);
    }
}
