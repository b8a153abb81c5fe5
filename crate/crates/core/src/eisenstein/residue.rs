//! Residue fields `Z[w]/P` and the cubic residue symbol.

use std::fmt;
use std::ops::Mul;

use super::{EisensteinInteger, PrimeAbove, PrimeKind};
use crate::arith::{mul_mod, reduce};
use crate::error::{Error, Result};

/// `Z[w]/P`: either `F_p` with `w` sent to a root of `x^2 + x + 1`, or
/// `F_{p^2} = F_p[w]/(w^2 + w + 1)` for inert `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueField {
    Prime { p: u64, omega: u64 },
    Quadratic { p: u64 },
}

/// An element `c0 + c1 w` of a residue field (`c1 = 0` in the prime case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub c0: u64,
    pub c1: u64,
}

/// Reduction map `Z[w] -> Z[w]/P` determined by the registry generator.
pub fn residue_map(prime: &PrimeAbove) -> Result<ResidueField> {
    match prime.kind {
        PrimeKind::Inert => Ok(ResidueField::Quadratic { p: prime.p }),
        _ => {
            let omega = prime.omega_image().ok_or_else(|| Error::BadResidueMap {
                p: prime.p,
                value: format!("generator {}", prime.generator),
            })?;
            Ok(ResidueField::Prime { p: prime.p, omega })
        }
    }
}

impl ResidueField {
    pub fn characteristic(&self) -> u64 {
        match *self {
            ResidueField::Prime { p, .. } | ResidueField::Quadratic { p } => p,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            ResidueField::Prime { p, .. } => p,
            ResidueField::Quadratic { p } => p * p,
        }
    }

    pub fn reduce(&self, z: &EisensteinInteger) -> Residue {
        match *self {
            ResidueField::Prime { p, omega } => {
                let a = reduce(z.a as i128, p);
                let b = reduce(z.b as i128, p);
                Residue {
                    c0: (a + mul_mod(b, omega, p)) % p,
                    c1: 0,
                }
            }
            ResidueField::Quadratic { p } => Residue {
                c0: reduce(z.a as i128, p),
                c1: reduce(z.b as i128, p),
            },
        }
    }

    pub fn one(&self) -> Residue {
        Residue { c0: 1, c1: 0 }
    }

    /// Image of `w^k`.
    pub fn omega_pow(&self, k: u8) -> Residue {
        let w = self.reduce(&EisensteinInteger::OMEGA);
        (0..k % 3).fold(self.one(), |acc, _| self.mul(&acc, &w))
    }

    pub fn mul(&self, x: &Residue, y: &Residue) -> Residue {
        match *self {
            ResidueField::Prime { p, .. } => Residue {
                c0: mul_mod(x.c0, y.c0, p),
                c1: 0,
            },
            ResidueField::Quadratic { p } => {
                // (x0 + x1 w)(y0 + y1 w) = (x0 y0 - x1 y1) + (x0 y1 + x1 y0 - x1 y1) w
                let x1y1 = mul_mod(x.c1, y.c1, p);
                let c0 = (mul_mod(x.c0, y.c0, p) + p - x1y1) % p;
                let c1 = (mul_mod(x.c0, y.c1, p) + mul_mod(x.c1, y.c0, p) + p - x1y1) % p;
                Residue { c0, c1 }
            }
        }
    }

    pub fn add(&self, x: &Residue, y: &Residue) -> Residue {
        let p = self.characteristic();
        Residue {
            c0: (x.c0 + y.c0) % p,
            c1: (x.c1 + y.c1) % p,
        }
    }

    pub fn pow(&self, x: &Residue, mut e: u64) -> Residue {
        let mut acc = self.one();
        let mut base = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Cubic character of a residue: `x^((q-1)/3)` identified with `w^k`.
    pub fn cubic_character(&self, x: &Residue) -> Result<CubicSymbolValue> {
        if x.is_zero() {
            return Ok(CubicSymbolValue::Zero);
        }
        let q = self.order();
        let v = self.pow(x, (q - 1) / 3);
        (0..3u8)
            .find(|&k| self.omega_pow(k) == v)
            .map(CubicSymbolValue::OmegaPow)
            .ok_or_else(|| Error::BadResidueMap {
                p: self.characteristic(),
                value: format!("{}+{}w", v.c0, v.c1),
            })
    }
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

/// Value of a cubic residue symbol: `0` or a cube root of unity `w^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicSymbolValue {
    Zero,
    OmegaPow(u8),
}

impl CubicSymbolValue {
    pub const ONE: Self = CubicSymbolValue::OmegaPow(0);

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn conjugate(&self) -> Self {
        match *self {
            CubicSymbolValue::Zero => CubicSymbolValue::Zero,
            CubicSymbolValue::OmegaPow(k) => CubicSymbolValue::OmegaPow((3 - k % 3) % 3),
        }
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    /// `chi + conj(chi)` as an integer: 2 for `w^0`, -1 for `w`, `w^2`, 0 for zero.
    pub fn trace(&self) -> i64 {
        match *self {
            CubicSymbolValue::Zero => 0,
            CubicSymbolValue::OmegaPow(0) => 2,
            CubicSymbolValue::OmegaPow(_) => -1,
        }
    }

    pub fn to_eisenstein(&self) -> EisensteinInteger {
        match *self {
            CubicSymbolValue::Zero => EisensteinInteger::ZERO,
            CubicSymbolValue::OmegaPow(k) => match k % 3 {
                0 => EisensteinInteger::ONE,
                1 => EisensteinInteger::OMEGA,
                _ => EisensteinInteger::OMEGA_SQ,
            },
        }
    }
}

impl Mul for CubicSymbolValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (CubicSymbolValue::OmegaPow(j), CubicSymbolValue::OmegaPow(k)) => {
                CubicSymbolValue::OmegaPow((j + k) % 3)
            }
            _ => CubicSymbolValue::Zero,
        }
    }
}

impl fmt::Display for CubicSymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicSymbolValue::Zero => write!(f, "0"),
            CubicSymbolValue::OmegaPow(k) => write!(f, "w^{k}"),
        }
    }
}

/// `(a / P)_3`: zero when `P | a`, otherwise the cube root of unity congruent
/// to `a^((N P - 1)/3)` modulo `P`. Undefined at the prime above 3.
pub fn cubic_residue_symbol(a: &EisensteinInteger, prime: &PrimeAbove) -> Result<CubicSymbolValue> {
    if prime.kind == PrimeKind::Ramified {
        return Err(Error::RamifiedPrime);
    }
    let field = residue_map(prime)?;
    field.cubic_character(&field.reduce(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pow_mod, primes_up_to};
    use crate::eisenstein::prime_above;
    use proptest::prelude::*;

    type E = EisensteinInteger;

    #[test]
    fn residue_map_examples() {
        let f13 = residue_map(&PrimeAbove::from_generator_unchecked(13, E::new(4, 3))).unwrap();
        assert_eq!(f13, ResidueField::Prime { p: 13, omega: 3 });
        let f7 = residue_map(&PrimeAbove::from_generator_unchecked(7, E::new(3, 1))).unwrap();
        assert_eq!(f7, ResidueField::Prime { p: 7, omega: 4 });
        for p in [7u64, 13, 5, 11] {
            let field = residue_map(&prime_above(p).unwrap()).unwrap();
            let three = field.reduce(&(E::LAMBDA * E::LAMBDA.conj()));
            assert_eq!(three, field.reduce(&E::from_int(3)));
            // the generator itself maps to zero
            if p % 3 == 1 {
                assert!(field.reduce(&prime_above(p).unwrap().generator).is_zero());
            }
        }
    }

    #[test]
    fn symbol_examples() {
        let p7 = prime_above(7).unwrap();
        // Oracle: 2^((7-1)/3) = 4 = image of w.
        assert_eq!(pow_mod(2, 2, 7), p7.omega_image().unwrap());
        assert_eq!(cubic_residue_symbol(&E::from_int(2), &p7).unwrap(), CubicSymbolValue::OmegaPow(1));
        assert_eq!(cubic_residue_symbol(&E::new(3, 1), &p7).unwrap(), CubicSymbolValue::Zero);
        for p in primes_up_to(200).into_iter().filter(|&p| p != 2 && p != 3) {
            let prime = prime_above(p).unwrap();
            assert!(cubic_residue_symbol(&E::from_int(8), &prime).unwrap().is_one());
        }
        assert_eq!(
            cubic_residue_symbol(&E::from_int(2), &prime_above(3).unwrap()),
            Err(Error::RamifiedPrime)
        );
    }

    #[test]
    fn corrupt_generator_is_detected() {
        // 5 + w has norm 21, so w is sent to a non-root of x^2 + x + 1 mod 13.
        let bad = PrimeAbove::from_generator_unchecked(13, E::new(5, 1));
        let mut errors = 0;
        for a in 2..40 {
            if cubic_residue_symbol(&E::new(a, 1), &bad).is_err() {
                errors += 1;
            }
        }
        assert!(errors > 0);
    }

    #[test]
    fn symbol_values_algebra() {
        use CubicSymbolValue::*;
        assert_eq!(OmegaPow(1) * OmegaPow(2), OmegaPow(0));
        assert_eq!(OmegaPow(2) * OmegaPow(2), OmegaPow(1));
        assert_eq!(Zero * OmegaPow(1), Zero);
        assert_eq!(OmegaPow(1).conjugate(), OmegaPow(2));
        assert_eq!([OmegaPow(0), OmegaPow(1), OmegaPow(2), Zero].map(|v| v.trace()), [2, -1, -1, 0]);
        for v in [OmegaPow(0), OmegaPow(1), OmegaPow(2), Zero] {
            let s = v.to_eisenstein() + v.conjugate().to_eisenstein();
            assert_eq!(s, E::from_int(v.trace()));
        }
    }

    fn elem() -> impl Strategy<Value = E> {
        (-100_000i64..100_000, -100_000i64..100_000).prop_map(|(a, b)| E::new(a, b))
    }

    fn test_prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 5, 7, 11, 13, 17, 19, 23, 31, 37, 43, 61, 97, 101, 103, 9973, 99991])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn reduction_is_a_ring_homomorphism(x in elem(), y in elem(), p in test_prime()) {
            let field = residue_map(&prime_above(p).unwrap()).unwrap();
            prop_assert_eq!(field.reduce(&(x * y)), field.mul(&field.reduce(&x), &field.reduce(&y)));
            prop_assert_eq!(field.reduce(&(x + y)), field.add(&field.reduce(&x), &field.reduce(&y)));
        }

        #[test]
        fn symbol_is_multiplicative(x in elem(), y in elem(), p in test_prime()) {
            let prime = prime_above(p).unwrap();
            let lhs = cubic_residue_symbol(&(x * y), &prime).unwrap();
            let rhs = cubic_residue_symbol(&x, &prime).unwrap() * cubic_residue_symbol(&y, &prime).unwrap();
            prop_assert_eq!(lhs, rhs);
            // cubes map to w^0 (or zero)
            let cube = cubic_residue_symbol(&(x * x * x), &prime).unwrap();
            prop_assert!(cube.is_one() || cube == CubicSymbolValue::Zero);
        }

        #[test]
        fn conjugation_law(x in elem(), p in test_prime()) {
            let prime = prime_above(p).unwrap();
            let direct = cubic_residue_symbol(&x, &prime).unwrap();
            let conj = cubic_residue_symbol(&x.conj(), &prime.conjugate()).unwrap();
            prop_assert_eq!(conj, direct.square());
            if p % 3 == 2 {
                prop_assert_eq!(cubic_residue_symbol(&x.conj(), &prime).unwrap(), direct.square());
            }
        }
    }
}
