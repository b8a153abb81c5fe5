//! Cyclic cubic fields labeled by cube-free 3-split integers
//! `D = 3^e3 d1 d2^2`: factorization in `Z[w]`, conductors, defining
//! polynomials, and enumeration of the family by discriminant.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{factor, isqrt, isqrt_ceil, SpfTable};
use crate::eisenstein::{EisensteinInteger, Registry};
use crate::error::{Error, Result};

/// `D = 3^e3 * d1 * d2^2` with `d1`, `d2` squarefree, coprime, built from
/// primes `= 1 (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldLabel {
    pub e3: u8,
    pub d1: u64,
    pub d2: u64,
}

impl FieldLabel {
    /// Validated constructor.
    pub fn new(e3: u8, d1: u64, d2: u64) -> Result<Self> {
        let bad = || Error::InvalidLabel { e3, d1, d2 };
        if e3 > 2 || d1 == 0 || d2 == 0 {
            return Err(bad());
        }
        for d in [d1, d2] {
            for (q, e) in factor(d) {
                if e > 1 || q % 3 != 1 {
                    return Err(bad());
                }
            }
        }
        if gcd(d1, d2) != 1 {
            return Err(bad());
        }
        if e3 == 0 && d1 == 1 && d2 == 1 {
            return Err(Error::TrivialField);
        }
        let label = Self { e3, d1, d2 };
        label.checked_d().ok_or(Error::Overflow("FieldLabel::d"))?;
        Ok(label)
    }

    fn checked_d(&self) -> Option<u64> {
        3u64.pow(self.e3 as u32)
            .checked_mul(self.d1)?
            .checked_mul(self.d2.checked_mul(self.d2)?)
    }

    /// The integer `D`.
    pub fn d(&self) -> u64 {
        self.checked_d().expect("validated labels fit in u64")
    }

    /// `delta_D = 1` iff `3 | D`.
    pub fn delta(&self) -> bool {
        self.e3 > 0
    }

    /// Primes dividing `d1 d2` (increasing), each tagged with its exponent in `D`.
    pub fn prime_exponents(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = factor(self.d1)
            .into_iter()
            .map(|(q, _)| (q, 1))
            .chain(factor(self.d2).into_iter().map(|(q, _)| (q, 2)))
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.e3, self.d1, self.d2)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Split a cube-free 3-split `D > 1` into its label.
pub fn parse_label(d: u64) -> Result<FieldLabel> {
    if d <= 1 {
        return Err(if d == 1 {
            Error::TrivialField
        } else {
            Error::InvalidArgument("D must be positive".into())
        });
    }
    let (mut e3, mut d1, mut d2) = (0u8, 1u64, 1u64);
    for (q, e) in factor(d) {
        if q % 3 == 2 {
            return Err(Error::Not3Split(d));
        }
        if e >= 3 {
            return Err(Error::NotCubeFree(d));
        }
        if q == 3 {
            e3 = e as u8;
        } else if e == 1 {
            d1 *= q;
        } else {
            d2 *= q;
        }
    }
    // 3-split and cube-free were checked first; `new` only re-validates.
    FieldLabel::new(e3, d1, d2)
}

/// `D = sign * D1 * D2` in `Z[w]` with `D2 = conj(D1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeSplitFactorization {
    pub sign: i8,
    pub d1: EisensteinInteger,
    pub d2: EisensteinInteger,
}

pub fn three_split_factorization(label: &FieldLabel) -> Result<ThreeSplitFactorization> {
    three_split_factorization_with(label, Registry::global())
}

/// `D1 = (1 - w)^e3 * prod_{q | d1} pi_q * prod_{q | d2} pi_q^2` with the
/// registry primes `pi_q`.
pub fn three_split_factorization_with(label: &FieldLabel, registry: &Registry) -> Result<ThreeSplitFactorization> {
    let mut d1 = EisensteinInteger::LAMBDA.checked_pow(label.e3 as u32)?;
    for (q, e) in label.prime_exponents() {
        let pi = registry.get(q)?.generator;
        d1 = d1.checked_mul(&pi.checked_pow(e)?)?;
    }
    let d2 = d1.checked_conj()?;
    let prod = d1.checked_mul(&d2)?;
    let d = label.d() as i128;
    let sign = if prod.b != 0 {
        return Err(Error::InvalidArgument(format!("{label}: D1*D2 = {prod} is not rational")));
    } else if prod.a as i128 == d {
        1
    } else if prod.a as i128 == -d {
        -1
    } else {
        return Err(Error::InvalidArgument(format!("{label}: N(D1) = {} differs from D", prod.a)));
    };
    Ok(ThreeSplitFactorization { sign, d1, d2 })
}

/// The other label of the same field: exponents doubled modulo 3.
pub fn partner(label: &FieldLabel) -> FieldLabel {
    FieldLabel {
        e3: (2 * label.e3) % 3,
        d1: label.d2,
        d2: label.d1,
    }
}

/// The representative with the smaller `D`, and whether `label` is it.
pub fn canonicalize(label: &FieldLabel) -> (FieldLabel, bool) {
    let other = partner(label);
    if label.d() <= other.d() {
        (*label, true)
    } else {
        (other, false)
    }
}

/// `(f_D, Delta_D) = (9^delta d1 d2, f_D^2)`.
pub fn conductor_discriminant(label: &FieldLabel) -> (u64, u64) {
    let f = if label.delta() { 9 } else { 1 } * label.d1 * label.d2;
    (f, f * f)
}

/// `(A, B)` with `x^3 - 3 A x - B` the minimal polynomial of
/// `cbrt(D1 D2^2) + cbrt(D1^2 D2)`: `A = D`, `B = D * trace(D1)`.
pub fn defining_polynomial(label: &FieldLabel) -> Result<(i128, i128)> {
    defining_polynomial_with(label, Registry::global())
}

pub fn defining_polynomial_with(label: &FieldLabel, registry: &Registry) -> Result<(i128, i128)> {
    let fact = three_split_factorization_with(label, registry)?;
    let a = label.d() as i128;
    let b = a
        .checked_mul(fact.d1.trace())
        .ok_or(Error::Overflow("defining_polynomial"))?;
    Ok((a, b))
}

/// `4 A^3 - B^2`; the polynomial discriminant is `27` times this.
pub fn polynomial_discriminant_core(a: i128, b: i128) -> Result<i128> {
    a.checked_pow(3)
        .and_then(|c| c.checked_mul(4))
        .and_then(|c| c.checked_sub(b.checked_mul(b)?))
        .ok_or(Error::Overflow("polynomial discriminant"))
}

/// One member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldRecord {
    pub label: FieldLabel,
    pub d: u64,
    pub conductor: u64,
    pub discriminant: u64,
    pub poly_a: i128,
    pub poly_b: i128,
    pub canonical: bool,
}

impl FieldRecord {
    pub fn from_label(label: FieldLabel) -> Result<Self> {
        let (conductor, discriminant) = conductor_discriminant(&label);
        let (poly_a, poly_b) = defining_polynomial(&label)?;
        Ok(Self {
            label,
            d: label.d(),
            conductor,
            discriminant,
            poly_a,
            poly_b,
            canonical: canonicalize(&label).1,
        })
    }
}

/// Catalog line: `D=.. e3=.. d1=.. d2=.. conductor=.. discriminant=.. polyA=.. polyB=..`.
impl fmt::Display for FieldRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D={} e3={} d1={} d2={} conductor={} discriminant={} polyA={} polyB={}",
            self.d,
            self.label.e3,
            self.label.d1,
            self.label.d2,
            self.conductor,
            self.discriminant,
            self.poly_a,
            self.poly_b
        )
    }
}

impl FromStr for FieldRecord {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        const KEYS: [&str; 8] = ["D", "e3", "d1", "d2", "conductor", "discriminant", "polyA", "polyB"];
        let mut values: [Option<&str>; 8] = [None; 8];
        for token in line.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| format!("token `{token}` is not key=value"))?;
            let idx = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| format!("unknown key `{key}`"))?;
            if values[idx].replace(value).is_some() {
                return Err(format!("duplicate key `{key}`"));
            }
        }
        let get = |i: usize| values[i].ok_or_else(|| format!("missing key `{}`", KEYS[i]));
        let int = |i: usize| -> std::result::Result<i128, String> {
            get(i)?
                .parse::<i128>()
                .map_err(|e| format!("{}: {e}", KEYS[i]))
        };
        let uint = |i: usize| -> std::result::Result<u64, String> {
            u64::try_from(int(i)?).map_err(|e| format!("{}: {e}", KEYS[i]))
        };
        let e3 = u8::try_from(uint(1)?).map_err(|e| format!("e3: {e}"))?;
        let label = FieldLabel::new(e3, uint(2)?, uint(3)?).map_err(|e| e.to_string())?;
        let record = FieldRecord::from_label(label).map_err(|e| e.to_string())?;
        let stated = (uint(0)?, uint(4)?, uint(5)?, int(6)?, int(7)?);
        let derived = (record.d, record.conductor, record.discriminant, record.poly_a, record.poly_b);
        if stated != derived {
            return Err(format!("fields {stated:?} inconsistent with label {label} (expected {derived:?})"));
        }
        Ok(record)
    }
}

/// Write a catalog (one record per line, trailing newline).
pub fn write_catalog(records: &[FieldRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

/// Parse a catalog; blank lines and `#` comments are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<FieldRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse().map_err(|message| Error::Parse {
                line: i + 1,
                message,
            })
        })
        .collect()
}

/// All labels with conductor exactly `f` (empty if `f` is not a conductor).
fn labels_with_conductor(f: u64, spf: &SpfTable) -> Vec<FieldLabel> {
    let (m, e3s): (u64, &[u8]) = if f % 9 == 0 {
        (f / 9, &[1, 2])
    } else if f % 3 == 0 {
        return Vec::new();
    } else {
        (f, &[0])
    };
    if m % 3 == 0 {
        return Vec::new();
    }
    let fac = spf.factor(m);
    if fac.iter().any(|&(q, e)| e > 1 || q % 3 != 1) {
        return Vec::new();
    }
    let primes: Vec<u64> = fac.iter().map(|&(q, _)| q).collect();
    let mut out = Vec::new();
    for &e3 in e3s {
        for mask in 0u32..(1 << primes.len()) {
            let d1: u64 = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, q)| q)
                .product();
            let d2 = m / d1;
            if e3 == 0 && m == 1 {
                continue;
            }
            out.push(FieldLabel { e3, d1, d2 });
        }
    }
    out
}

/// Every label (both members of each pair) with conductor in `[lo, hi]`,
/// sorted by `(conductor, D)`.
pub fn labels_by_conductor(lo: u64, hi: u64) -> Vec<FieldLabel> {
    if hi < lo.max(2) {
        return Vec::new();
    }
    let spf = SpfTable::new(hi);
    let mut out: Vec<FieldLabel> = (lo.max(2)..=hi)
        .into_par_iter()
        .flat_map_iter(|f| {
            let mut v = labels_with_conductor(f, &spf);
            v.sort_by_key(|l| l.d());
            v
        })
        .collect();
    // par_iter over a range preserves order on collect; the sort is a guard.
    out.sort_by_key(|l| (conductor_discriminant(l).0, l.d()));
    out
}

/// Canonical labels with conductor in `[lo, hi]`, sorted by `(conductor, D)`.
pub fn family_labels_by_conductor(lo: u64, hi: u64) -> Vec<FieldLabel> {
    labels_by_conductor(lo, hi)
        .into_iter()
        .filter(|l| canonicalize(l).1)
        .collect()
}

/// Canonical labels with `X <= Delta_D <= 2X`, sorted by `(conductor, D)`.
pub fn family_labels(x: u64) -> Vec<FieldLabel> {
    let lo = isqrt_ceil(x);
    let hi = isqrt(x.saturating_mul(2));
    family_labels_by_conductor(lo, hi)
}

/// Number of fields with `X <= Delta_D <= 2X`, without building records.
pub fn family_count(x: u64) -> usize {
    family_labels(x).len()
}

/// Canonical fields with `X <= Delta_D <= 2X`, sorted by `(conductor, D)`.
pub fn enumerate_family(x: u64) -> Result<Vec<FieldRecord>> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!("X = {x} must be at least 2")));
    }
    family_labels(x)
        .into_par_iter()
        .map(FieldRecord::from_label)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::euclidean_gcd;
    use num_complex::Complex64;
    use proptest::prelude::*;

    type E = EisensteinInteger;

    fn lab(e3: u8, d1: u64, d2: u64) -> FieldLabel {
        FieldLabel::new(e3, d1, d2).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_label(7).unwrap(), lab(0, 7, 1));
        assert_eq!(parse_label(441).unwrap(), lab(2, 1, 7));
        assert_eq!(parse_label(10), Err(Error::Not3Split(10)));
        assert_eq!(parse_label(27 * 7), Err(Error::NotCubeFree(189)));
        assert_eq!(parse_label(343), Err(Error::NotCubeFree(343)));
        assert_eq!(parse_label(1), Err(Error::TrivialField));
        assert_eq!(parse_label(3).unwrap(), lab(1, 1, 1));
        assert!(FieldLabel::new(0, 7, 7).is_err());
        assert!(FieldLabel::new(0, 49, 1).is_err());
        assert!(FieldLabel::new(0, 5, 1).is_err());
        assert!(FieldLabel::new(3, 7, 1).is_err());
        assert_eq!(FieldLabel::new(0, 1, 1), Err(Error::TrivialField));
    }

    #[test]
    fn factorization_examples() {
        let f = three_split_factorization(&lab(0, 7, 1)).unwrap();
        assert_eq!(f.sign, 1);
        assert!(E::new(3, 1).associates().contains(&f.d1));
        assert!(E::new(3, 1).conj().associates().contains(&f.d2));

        let f = three_split_factorization(&lab(1, 1, 1)).unwrap();
        assert_eq!((f.sign, f.d1, f.d2), (1, E::LAMBDA, E::new(1, 0) - E::OMEGA_SQ));

        let f = three_split_factorization(&lab(0, 7, 13)).unwrap();
        assert_eq!(f.d1.norm(), 1183);
    }

    #[test]
    fn partner_and_canonical_examples() {
        assert_eq!(partner(&lab(0, 7, 1)), lab(0, 1, 7));
        assert_eq!(partner(&lab(1, 7, 1)), lab(2, 1, 7));
        assert_eq!(canonicalize(&parse_label(49).unwrap()), (lab(0, 7, 1), false));
        assert_eq!(canonicalize(&parse_label(21).unwrap()), (lab(1, 7, 1), true));
        assert_eq!(partner(&parse_label(63).unwrap()).d(), 147);
        assert_eq!(canonicalize(&parse_label(63).unwrap()), (lab(2, 7, 1), true));
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(conductor_discriminant(&lab(0, 7, 1)), (7, 49));
        assert_eq!(conductor_discriminant(&lab(1, 1, 1)), (9, 81));
        assert_eq!(conductor_discriminant(&lab(0, 7, 13)), (91, 8281));
    }

    #[test]
    fn polynomial_examples() {
        // D1 = 2 + 3w for the registry prime above 7, trace 1.
        assert_eq!(defining_polynomial(&lab(0, 7, 1)).unwrap(), (7, 7));
        assert_eq!(defining_polynomial(&lab(1, 1, 1)).unwrap(), (3, 9));
        // With D1 = 3 + w instead, the same construction gives x^3 - 21x - 35.
        let alt = Registry::new().with_prime(crate::eisenstein::PrimeAbove::from_generator_unchecked(7, E::new(3, 1)));
        assert_eq!(defining_polynomial_with(&lab(0, 7, 1), &alt).unwrap(), (7, 35));
    }

    fn generator_residual(label: &FieldLabel) -> f64 {
        let f = three_split_factorization(label).unwrap();
        let to_c = |z: E| {
            let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
            Complex64::new(z.a as f64, 0.0) + w * z.b as f64
        };
        let u3 = to_c(f.d1) * to_c(f.d2) * to_c(f.d2);
        let u = u3.powf(1.0 / 3.0);
        let d = label.d() as f64;
        let v = Complex64::new(d, 0.0) / u;
        let x = u + v;
        let (a, b) = defining_polynomial(label).unwrap();
        let p = x * x * x - x * (3.0 * a as f64) - b as f64;
        assert!(x.im.abs() < 1e-9 * x.norm().max(1.0));
        p.norm() / (x.norm().powi(3) + 3.0 * a as f64 * x.norm() + (b as f64).abs())
    }

    #[test]
    fn generator_satisfies_polynomial() {
        for label in labels_by_conductor(2, 400) {
            assert!(generator_residual(&label) < 1e-10, "{label}");
        }
    }

    #[test]
    fn discriminant_sanity() {
        for label in labels_by_conductor(2, 1000) {
            let (a, b) = defining_polynomial(&label).unwrap();
            let core = polynomial_discriminant_core(a, b).unwrap();
            // 4 N(D1) - trace(D1)^2 = 3 (w-coefficient)^2
            let w = three_split_factorization(&label).unwrap().d1.b as i128;
            assert_eq!(core, 3 * a * a * w * w, "{label}");
            assert!(b * b <= 4 * a * a * a);
        }
    }

    #[test]
    fn enumeration_example() {
        let family = enumerate_family(2000).unwrap();
        let got: Vec<(u64, u64)> = family.iter().map(|r| (r.d, r.discriminant)).collect();
        assert_eq!(got, vec![(61, 3721), (21, 3969), (63, 3969)]);
        assert!(family.iter().all(|r| r.canonical && (2000..=4000).contains(&r.discriminant)));
    }

    /// Brute-force oracle: scan every `D` up to a bound, keep cube-free 3-split
    /// ones with conductor in range, and dedupe pairs by the min rule.
    fn brute_force_family(x: u64) -> Vec<(u64, u64)> {
        let hi = isqrt(2 * x);
        let dmax = 9 * hi * hi;
        let mut out = Vec::new();
        for d in 2..=dmax {
            let Ok(label) = parse_label(d) else { continue };
            let (f, disc) = conductor_discriminant(&label);
            if f > hi || disc < x || disc > 2 * x {
                continue;
            }
            if partner(&label).d() < d {
                continue;
            }
            out.push((f, d));
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for x in [2000u64, 5000, 20_000] {
            let fam: Vec<(u64, u64)> = enumerate_family(x).unwrap().iter().map(|r| (r.conductor, r.d)).collect();
            assert_eq!(fam, brute_force_family(x), "X = {x}");
        }
    }

    #[test]
    fn two_to_one_and_conductor_invariance() {
        let labels = labels_by_conductor(2, 1000);
        let canon: Vec<_> = labels.iter().filter(|l| canonicalize(l).1).collect();
        assert_eq!(labels.len(), 2 * canon.len());
        for l in &labels {
            let p = partner(l);
            assert_ne!(p, *l);
            assert_eq!(partner(&p), *l);
            assert_eq!(conductor_discriminant(l), conductor_discriminant(&p));
            assert!(labels.contains(&p));
            assert_eq!(canonicalize(l).0, canonicalize(&p).0);
        }
    }

    #[test]
    fn factorization_invariants_on_labels() {
        for l in labels_by_conductor(2, 1000) {
            let f = three_split_factorization(&l).unwrap();
            assert_eq!(f.sign, 1);
            assert_eq!(f.d1.norm(), l.d() as i128);
            assert_eq!(f.d1.conj(), f.d2);
            let g = euclidean_gcd(&f.d1, &f.d2).unwrap();
            let expected = E::LAMBDA.checked_pow(l.e3 as u32).unwrap();
            assert!(g.associates().contains(&expected), "{l}: gcd {g}");
        }
    }

    #[test]
    fn partner_involution_small() {
        for d1 in 1..=1000u64 {
            for d2 in 1..=(1000 / d1) {
                for e3 in 0..3 {
                    if let Ok(l) = FieldLabel::new(e3, d1, d2) {
                        assert_eq!(partner(&partner(&l)), l);
                    }
                }
            }
        }
    }

    #[test]
    fn catalog_round_trip_and_errors() {
        let family = enumerate_family(200_000).unwrap();
        let text = write_catalog(&family);
        assert_eq!(parse_catalog(&text).unwrap(), family);
        assert_eq!(write_catalog(&enumerate_family(200_000).unwrap()), text);
        assert_eq!(
            family[0].to_string(),
            format!(
                "D={} e3={} d1={} d2={} conductor={} discriminant={} polyA={} polyB={}",
                family[0].d, family[0].label.e3, family[0].label.d1, family[0].label.d2,
                family[0].conductor, family[0].discriminant, family[0].poly_a, family[0].poly_b
            )
        );
        assert!(parse_catalog("# header\n\nD=7 e3=0 d1=7 d2=1 conductor=7 discriminant=49 polyA=7 polyB=7\n").is_ok());
        let bad = "D=7 e3=0 d1=7 d2=1 conductor=7 discriminant=50 polyA=7 polyB=7";
        assert!(matches!(parse_catalog(bad), Err(Error::Parse { line: 1, .. })));
        assert!(parse_catalog("D=7 e3=0").is_err());
        assert!(parse_catalog("D=7 e3=0 d1=7 d2=1 conductor=7 discriminant=49 polyA=7 polyB=7 x=1").is_err());
    }

    #[test]
    fn count_grows_like_sqrt() {
        let a = family_count(1_000_000) as f64;
        let b = family_count(4_000_000) as f64;
        assert!((b / a - 2.0).abs() < 0.2, "{a} {b}");
    }

    proptest! {
        #[test]
        fn parse_label_round_trips(d in 2u64..2_000_000) {
            if let Ok(l) = parse_label(d) {
                prop_assert_eq!(l.d(), d);
                prop_assert_eq!(parse_label(partner(&l).d()).unwrap(), partner(&l));
            }
        }
    }
}
