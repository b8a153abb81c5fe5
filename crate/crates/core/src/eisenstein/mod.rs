//! Exact arithmetic in the Eisenstein integers `Z[w]`, `w^2 + w + 1 = 0`.
//!
//! Elements are stored in the basis `{1, w}` with 64-bit coefficients. Every
//! product is formed in 128-bit intermediates and any result that does not fit
//! back into 64 bits is reported as [`Error::Overflow`].

mod prime;
mod residue;

pub use prime::{prime_above, PrimeAbove, PrimeKind, Registry};
pub use residue::{cubic_residue_symbol, residue_map, CubicSymbolValue, Residue, ResidueField};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// `a + b w` with `w` a fixed primitive cube root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInteger {
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

impl EisensteinInteger {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const OMEGA: Self = Self::new(0, 1);
    pub const OMEGA_SQ: Self = Self::new(-1, -1);
    /// `1 - w`, the prime above 3.
    pub const LAMBDA: Self = Self::new(1, -1);

    /// The six units `1, w, w^2, -1, -w, -w^2`.
    pub const UNITS: [Self; 6] = [
        Self::new(1, 0),
        Self::new(0, 1),
        Self::new(-1, -1),
        Self::new(-1, 0),
        Self::new(0, -1),
        Self::new(1, 1),
    ];

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(n: i64) -> Self {
        Self::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `a^2 - ab + b^2`.
    pub fn norm(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - a * b + b * b
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// `2a - b`, the trace down to `Q`.
    pub fn trace(&self) -> i128 {
        2 * self.a as i128 - self.b as i128
    }

    /// Galois conjugate: `w -> w^2`, so `a + b w -> (a - b) - b w`.
    pub fn checked_conj(&self) -> Result<Self> {
        Ok(Self::new(
            narrow(self.a as i128 - self.b as i128, "conjugate")?,
            narrow(-(self.b as i128), "conjugate")?,
        ))
    }

    pub fn conj(&self) -> Self {
        self.checked_conj().expect("conjugate overflow")
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(
            self.a.checked_add(rhs.a).ok_or(Error::Overflow("add"))?,
            self.b.checked_add(rhs.b).ok_or(Error::Overflow("add"))?,
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(
            self.a.checked_sub(rhs.a).ok_or(Error::Overflow("sub"))?,
            self.b.checked_sub(rhs.b).ok_or(Error::Overflow("sub"))?,
        ))
    }

    /// `(a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (rhs.a as i128, rhs.b as i128);
        let bd = b * d;
        Ok(Self::new(
            narrow(a * c - bd, "mul")?,
            narrow(a * d + b * c - bd, "mul")?,
        ))
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<Self> {
        let mut acc = Self::ONE;
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Euclidean division with the quotient rounded coordinate-wise in the
    /// `{1, w}` basis; the remainder norm is at most `3/4` of `norm(y)`.
    pub fn div_rem(&self, y: &Self) -> Result<(Self, Self)> {
        if y.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let n = y.norm();
        // x * conj(y), in 128 bits.
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (y.a as i128 - y.b as i128, -(y.b as i128));
        let bd = b.checked_mul(d).ok_or(Error::Overflow("div_rem"))?;
        let u = a
            .checked_mul(c)
            .and_then(|x| x.checked_sub(bd))
            .ok_or(Error::Overflow("div_rem"))?;
        let v = a
            .checked_mul(d)
            .and_then(|x| x.checked_add(b.checked_mul(c)?))
            .and_then(|x| x.checked_sub(bd))
            .ok_or(Error::Overflow("div_rem"))?;
        let q = Self::new(
            narrow(round_div(u, n), "div_rem")?,
            narrow(round_div(v, n), "div_rem")?,
        );
        let r = self.checked_sub(&q.checked_mul(y)?)?;
        Ok((q, r))
    }

    /// Exact quotient if `y` divides `self`.
    pub fn exact_div(&self, y: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(y)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, x: &Self) -> Result<bool> {
        if self.is_zero() {
            return Ok(x.is_zero());
        }
        Ok(x.exact_div(self)?.is_some())
    }

    /// `1 - w` divides `self` iff `a + b = 0 mod 3`.
    pub fn divisible_by_lambda(&self) -> bool {
        (self.a as i128 + self.b as i128).rem_euclid(3) == 0
    }

    /// Exponent of `1 - w` in `self`, capped at `cap` (zero gets `cap`).
    pub fn lambda_valuation(&self, cap: u32) -> u32 {
        let mut z = *self;
        let mut v = 0;
        while v < cap && !z.is_zero() && z.divisible_by_lambda() {
            // z / (1 - w) = z (1 - w^2) / 3 = z (2 + w) / 3
            let (a, b) = (z.a as i128, z.b as i128);
            z = Self::new(((2 * a - b) / 3) as i64, ((a + b) / 3) as i64);
            v += 1;
        }
        if z.is_zero() {
            cap
        } else {
            v
        }
    }

    pub fn associates(&self) -> [Self; 6] {
        Self::UNITS.map(|u| self.checked_mul(&u).expect("unit multiple overflow"))
    }

    /// `a = 2, b = 0 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        self.a.rem_euclid(3) == 2 && self.b.rem_euclid(3) == 0
    }

    /// The associate lying in the sector `0 <= b < a` (unique for nonzero `z`).
    fn sector_associate(&self) -> Self {
        *self
            .associates()
            .iter()
            .find(|z| 0 <= z.b && z.b < z.a)
            .expect("every nonzero element has an associate in the sector")
    }

    /// Canonical representative of the associate class: `1` for units, the
    /// primary associate when coprime to `1 - w`, otherwise the associate with
    /// `0 <= b < a`.
    pub fn canonical_associate(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        if self.is_unit() {
            return Self::ONE;
        }
        match primary_associate(self) {
            Ok((_, primary)) => primary,
            Err(_) => self.sector_associate(),
        }
    }
}

fn round_div(u: i128, n: i128) -> i128 {
    debug_assert!(n > 0);
    (2 * u + n).div_euclid(2 * n)
}

/// Greatest common divisor, normalized by [`EisensteinInteger::canonical_associate`].
pub fn euclidean_gcd(x: &EisensteinInteger, y: &EisensteinInteger) -> Result<EisensteinInteger> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut u, mut v) = (*x, *y);
    while !v.is_zero() {
        let (_, r) = u.div_rem(&v)?;
        u = v;
        v = r;
    }
    Ok(u.canonical_associate())
}

/// Split `z` as `unit * primary` with `primary = 2 (mod 3)`.
pub fn primary_associate(z: &EisensteinInteger) -> Result<(EisensteinInteger, EisensteinInteger)> {
    if z.is_zero() || z.divisible_by_lambda() {
        return Err(Error::DivisibleByLambda(z.to_string()));
    }
    for (i, u) in EisensteinInteger::UNITS.iter().enumerate() {
        let candidate = z.checked_mul(u)?;
        if candidate.is_primary() {
            // z = candidate * u^{-1}; inverses of 1, w, w^2 are 1, w^2, w.
            let inv = EisensteinInteger::UNITS[[0, 2, 1, 3, 5, 4][i]];
            return Ok((inv, candidate));
        }
    }
    unreachable!("units surject onto (Z[w]/3)^*")
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -(b as i128)),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

impl Add for EisensteinInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("Eisenstein addition overflow")
    }
}

impl Sub for EisensteinInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("Eisenstein subtraction overflow")
    }
}

impl Mul for EisensteinInteger {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("Eisenstein multiplication overflow")
    }
}

impl Neg for EisensteinInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(
            self.a.checked_neg().expect("negation overflow"),
            self.b.checked_neg().expect("negation overflow"),
        )
    }
}
