//! Outcome streams: simulated uniform trials and last digits of primes.

mod benford;
mod primes;
mod rng;

use thiserror::Error;

pub use benford::benford_expected;
pub use primes::{
    coprime_residues, digit_to_outcome, prime_last_digits, sieve_primes, PrimeDigitStream,
};
pub use rng::{simulate_uniform, RngAlgorithm, RngSpec, UniformStream};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SourceError {
    #[error("no primes below {limit}; the smallest prime is 2")]
    EmptyDomain { limit: u64 },
    #[error("base must be >= 2, got {base}")]
    InvalidBase { base: u64 },
    #[error("digit {digit} is not a coprime residue of base {base}")]
    InvalidDigit { digit: u64, base: u64 },
    #[error("leading digit must be in 1..=9, got {digit}")]
    InvalidLeadingDigit { digit: u32 },
    #[error("need at least 2 outcomes, got {0}")]
    InvalidArity(usize),
    #[error("sequence length must be >= 1, got {0}")]
    InvalidLength(u64),
}
