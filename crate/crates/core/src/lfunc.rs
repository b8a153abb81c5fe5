//! Splitting of rational primes in `K_D` and the coefficients `lambda_D(p^m)`
//! of `-L_D'/L_D`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, primes_up_to};
use crate::classify::{three_split_factorization_with, FieldLabel};
use crate::eisenstein::{residue_map, CubicSymbolValue, Registry};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Which character decides splitting at `p != 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LambdaMode {
    /// `(D1 D2^2 / P)_3`
    #[default]
    Kummer,
    /// `(D1 / P)_3`
    PaperLiteral,
}

impl fmt::Display for LambdaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaMode::Kummer => "kummer",
            LambdaMode::PaperLiteral => "paper",
        })
    }
}

impl FromStr for LambdaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kummer" => Ok(LambdaMode::Kummer),
            "paper" => Ok(LambdaMode::PaperLiteral),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (expected kummer|paper)"))),
        }
    }
}

/// `(e, f, g)` with `efg = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplittingType {
    pub e: u8,
    pub f: u8,
    pub g: u8,
}

impl SplittingType {
    pub const RAMIFIED: Self = Self { e: 3, f: 1, g: 1 };
    pub const SPLIT: Self = Self { e: 1, f: 1, g: 3 };
    pub const INERT: Self = Self { e: 1, f: 3, g: 1 };

    fn from_symbol(v: CubicSymbolValue) -> Self {
        match v {
            CubicSymbolValue::Zero => Self::RAMIFIED,
            CubicSymbolValue::OmegaPow(0) => Self::SPLIT,
            CubicSymbolValue::OmegaPow(_) => Self::INERT,
        }
    }

    /// `lambda(p^m)` read off the local factor of `L_D`.
    pub fn lambda(&self, m: u32) -> i64 {
        match *self {
            Self::RAMIFIED => 0,
            Self::SPLIT => 2,
            _ if m % 3 == 0 => 2,
            _ => -1,
        }
    }

    /// `L_{D,p}(s)`: `(1 - x)^-2`, `(1 + x + x^2)^-1` or `1`, with `x = p^-s`.
    pub fn local_factor(&self, p: u64, s: f64) -> f64 {
        let x = (p as f64).powf(-s);
        match *self {
            Self::RAMIFIED => 1.0,
            Self::SPLIT => 1.0 / ((1.0 - x) * (1.0 - x)),
            _ => 1.0 / (1.0 + x + x * x),
        }
    }

    /// `log L_{D,p}(s)`, accurate for small `x`.
    pub fn log_local_factor(&self, p: u64, s: f64) -> f64 {
        let x = (p as f64).powf(-s);
        match *self {
            Self::RAMIFIED => 0.0,
            Self::SPLIT => -2.0 * (-x).ln_1p(),
            _ => -(x + x * x).ln_1p(),
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.e, self.f, self.g)
    }
}

/// Alternative choices for the audit of choice independence: evaluate at the
/// conjugate prime above `p`, and/or exchange the roles of `D1` and `D2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Choice {
    pub conjugate_prime: bool,
    pub swap_roles: bool,
}

impl Choice {
    pub const ALL: [Choice; 4] = [
        Choice { conjugate_prime: false, swap_roles: false },
        Choice { conjugate_prime: true, swap_roles: false },
        Choice { conjugate_prime: false, swap_roles: true },
        Choice { conjugate_prime: true, swap_roles: true },
    ];
}

/// The character value deciding splitting at `p != 3` under `mode`.
pub fn symbol_with(
    p: u64,
    label: &FieldLabel,
    mode: LambdaMode,
    registry: &Registry,
    choice: Choice,
) -> Result<CubicSymbolValue> {
    if p == 3 {
        return Err(Error::RamifiedPrime);
    }
    let fact = three_split_factorization_with(label, registry)?;
    let (d1, d2) = if choice.swap_roles {
        (fact.d2, fact.d1)
    } else {
        (fact.d1, fact.d2)
    };
    let mut prime = registry.get(p)?;
    if choice.conjugate_prime {
        prime = prime.conjugate();
    }
    let field = residue_map(&prime)?;
    let r1 = field.reduce(&d1);
    let r = match mode {
        LambdaMode::PaperLiteral => r1,
        LambdaMode::Kummer => {
            // Reduce before multiplying so D1 D2^2 never materializes.
            let r2 = field.reduce(&d2);
            field.mul(&r1, &field.mul(&r2, &r2))
        }
    };
    field.cubic_character(&r)
}

/// `(D1 D2^2 / P)_3` with the registry prime above `p`.
pub fn kummer_symbol(p: u64, label: &FieldLabel) -> Result<CubicSymbolValue> {
    symbol_with(p, label, LambdaMode::Kummer, Registry::global(), Choice::default())
}

/// `chi_p(D) = (D1 / P)_3` with the registry prime above `p`.
pub fn paper_chi(p: u64, label: &FieldLabel) -> Result<CubicSymbolValue> {
    symbol_with(p, label, LambdaMode::PaperLiteral, Registry::global(), Choice::default())
}

pub fn splitting_type_with(
    p: u64,
    label: &FieldLabel,
    mode: LambdaMode,
    registry: &Registry,
    choice: Choice,
) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 3 {
        // Everything is taken to be a cube modulo the prime above 3.
        return Ok(if label.delta() {
            SplittingType::RAMIFIED
        } else {
            SplittingType::SPLIT
        });
    }
    if label.d() % p == 0 {
        return Ok(SplittingType::RAMIFIED);
    }
    symbol_with(p, label, mode, registry, choice).map(SplittingType::from_symbol)
}

pub fn splitting_type(p: u64, label: &FieldLabel, mode: LambdaMode) -> Result<SplittingType> {
    splitting_type_with(p, label, mode, Registry::global(), Choice::default())
}

pub fn lambda_coefficient(p: u64, m: u32, label: &FieldLabel, mode: LambdaMode) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    Ok(splitting_type(p, label, mode)?.lambda(m))
}

pub fn lambda_coefficient_with(
    p: u64,
    m: u32,
    label: &FieldLabel,
    mode: LambdaMode,
    registry: &Registry,
    choice: Choice,
) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    Ok(splitting_type_with(p, label, mode, registry, choice)?.lambda(m))
}

/// `prod_{p <= P0} L_{D,p}(s)`, accumulated as a compensated sum of logs.
pub fn euler_value(s: f64, label: &FieldLabel, p0: u64, mode: LambdaMode) -> Result<f64> {
    if !(s >= 1.2) {
        return Err(Error::InvalidArgument(format!("s = {s} must be at least 1.2")));
    }
    if p0 > 10_000_000 {
        return Err(Error::InvalidArgument(format!("P0 = {p0} exceeds 10^7")));
    }
    let mut acc = NeumaierSum::new();
    for p in primes_up_to(p0) {
        acc += splitting_type(p, label, mode)?.log_local_factor(p, s);
    }
    Ok(acc.value().exp())
}
