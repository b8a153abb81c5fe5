//! Canonical primes of `Z[w]` above rational primes, and the registry that
//! pins one of them for every rational prime.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{euclidean_gcd, primary_associate, EisensteinInteger};
use crate::arith::{inv_mod, is_prime, pow_mod, primes_up_to, reduce};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// A prime of `Z[w]` lying above the rational prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeAbove {
    pub p: u64,
    pub generator: EisensteinInteger,
    pub residue_degree: u8,
    pub kind: PrimeKind,
}

impl PrimeAbove {
    /// `N(P) = p^f`.
    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree as u32)
    }

    /// The conjugate prime `sigma(P)`, with the conjugated generator (still
    /// primary when the original was).
    pub fn conjugate(&self) -> Self {
        Self {
            generator: self.generator.conj(),
            ..*self
        }
    }

    /// A prime with an arbitrary generator and no validation. Used to build
    /// registry variants and to inject faults into the verification harness.
    pub fn from_generator_unchecked(p: u64, generator: EisensteinInteger) -> Self {
        let (kind, residue_degree) = match p % 3 {
            0 => (PrimeKind::Ramified, 1),
            1 => (PrimeKind::Split, 1),
            _ => (PrimeKind::Inert, 2),
        };
        Self {
            p,
            generator,
            residue_degree,
            kind,
        }
    }

    /// Image of `w` in `Z/p` for primes of residue degree 1.
    pub fn omega_image(&self) -> Option<u64> {
        match self.kind {
            PrimeKind::Ramified => Some(1 % self.p),
            PrimeKind::Inert => None,
            PrimeKind::Split => {
                // a + b r = 0 (mod p)  =>  r = -a / b
                let b = reduce(self.generator.b as i128, self.p);
                let inv = inv_mod(b, self.p)?;
                let a = reduce(self.generator.a as i128, self.p);
                Some(reduce(-((a as i128) * inv as i128), self.p))
            }
        }
    }
}

/// Deterministic choice of prime above `p`:
/// `3 -> 1 - w`; `p = 2 (mod 3) -> p`; `p = 1 (mod 3) ->` the primary
/// generator of norm `p` whose `w`-coefficient is positive.
pub fn prime_above(p: u64) -> Result<PrimeAbove> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 3 {
        return Ok(PrimeAbove {
            p,
            generator: EisensteinInteger::LAMBDA,
            residue_degree: 1,
            kind: PrimeKind::Ramified,
        });
    }
    if p % 3 == 2 {
        let g = EisensteinInteger::from_int(i64::try_from(p).map_err(|_| Error::Overflow("prime_above"))?);
        return Ok(PrimeAbove {
            p,
            generator: g,
            residue_degree: 2,
            kind: PrimeKind::Inert,
        });
    }
    // A nontrivial cube root of unity r mod p; then (p, r - w) is a prime above p.
    let r = (2..p)
        .map(|g| pow_mod(g, (p - 1) / 3, p))
        .find(|&c| c != 1)
        .expect("(Z/p)^* has elements that are not cubes when p = 1 mod 3");
    let pi = euclidean_gcd(
        &EisensteinInteger::from_int(p as i64),
        &EisensteinInteger::new(r as i64, -1),
    )?;
    debug_assert_eq!(pi.norm(), p as i128);
    let (_, mut primary) = primary_associate(&pi)?;
    if primary.b < 0 {
        primary = primary.checked_conj()?;
    }
    Ok(PrimeAbove {
        p,
        generator: primary,
        residue_degree: 1,
        kind: PrimeKind::Split,
    })
}

/// The fixed choice of prime above every rational prime.
///
/// Entries up to the construction limit are computed once; larger primes are
/// computed on demand with the same deterministic rule. Overrides replace the
/// canonical choice at individual primes and produce an independent registry.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    entries: HashMap<u64, PrimeAbove>,
    overrides: HashMap<u64, PrimeAbove>,
}

impl Registry {
    /// An empty registry: every lookup is computed on demand.
    pub fn new() -> Self {
        Self::default()
    }

    /// Precompute the canonical primes above every `p <= limit`.
    pub fn with_limit(limit: u64) -> Self {
        let entries = primes_up_to(limit)
            .into_iter()
            .map(|p| (p, prime_above(p).expect("sieved primes are prime")))
            .collect();
        Self {
            entries,
            overrides: HashMap::new(),
        }
    }

    /// Process-wide canonical registry (primes up to 10^5 precomputed).
    pub fn global() -> &'static Registry {
        static GLOBAL: OnceLock<Registry> = OnceLock::new();
        GLOBAL.get_or_init(|| Registry::with_limit(100_000))
    }

    pub fn get(&self, p: u64) -> Result<PrimeAbove> {
        if let Some(prime) = self.overrides.get(&p).or_else(|| self.entries.get(&p)) {
            return Ok(*prime);
        }
        prime_above(p)
    }

    pub fn is_overridden(&self, p: u64) -> bool {
        self.overrides.contains_key(&p)
    }

    /// Replace the prime used at `prime.p`.
    pub fn with_prime(mut self, prime: PrimeAbove) -> Self {
        self.overrides.insert(prime.p, prime);
        self
    }

    /// Swap the chosen prime at `p` for its conjugate.
    pub fn conjugated_at(&self, p: u64) -> Result<Self> {
        let prime = self.get(p)?;
        Ok(self.clone().with_prime(prime.conjugate()))
    }
}
