use thiserror::Error;

/// Errors raised by the arithmetic, classification and density routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("gcd of (0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} is divisible by 1 - w and has no primary associate")]
    DivisibleByLambda(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the cubic residue symbol is not defined modulo the prime above 3")]
    RamifiedPrime,
    #[error("residue {value} mod {p} is not a cube root of unity under the registry's residue map")]
    BadResidueMap { p: u64, value: String },
    #[error("{0} has a prime factor congruent to 2 mod 3")]
    Not3Split(u64),
    #[error("{0} is not cube-free")]
    NotCubeFree(u64),
    #[error("D = 1 does not define a cubic field")]
    TrivialField,
    #[error("invalid field label (e3 = {e3}, d1 = {d1}, d2 = {d2})")]
    InvalidLabel { e3: u8, d1: u64, d2: u64 },
    #[error("support radius beta = {0} must lie in (0, 1)")]
    InvalidBeta(f64),
    #[error("digamma has a pole at {0}")]
    DigammaPole(f64),
    #[error("adaptive quadrature did not converge on [{a}, {b}] (estimated error {error:e})")]
    QuadratureNonConvergence { a: f64, b: f64, error: f64 },
    #[error("the family F3(X) is empty for X = {0}")]
    EmptyFamily(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
