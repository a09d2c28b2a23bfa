//! Prime generation and the last-digit outcome stream.

use serde::{Deserialize, Serialize};

use super::SourceError;

/// Sieve of Eratosthenes over a bit array (one bit per integer, so memory is
/// roughly `limit / 8` bytes). Returns all primes in `[2, limit]` in order.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>, SourceError> {
    if limit < 2 {
        return Err(SourceError::EmptyDomain { limit });
    }
    let n = limit as usize;
    // composite[i] bit set => i is composite; 0 and 1 handled by loop start
    let mut composite = vec![0u64; n / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;

    let mut p = 2usize;
    while p * p <= n {
        if !is_set(&composite, p) {
            let mut multiple = p * p;
            while multiple <= n {
                composite[multiple / 64] |= 1 << (multiple % 64);
                multiple += p;
            }
        }
        p += 1;
    }

    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_set(&composite, i) {
            primes.push(i as u64);
        }
    }
    Ok(primes)
}

/// Last digits (residues mod `base`) of the primes up to `limit`, restricted
/// to digits coprime to the base.
///
/// Primes that divide the base (2 and 5 for base 10) are excluded rather than
/// mapped to extra outcomes; every remaining prime contributes `p % base`, in
/// increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDigitStream {
    pub limit: u64,
    pub base: u64,
    pub excluded_primes: Vec<u64>,
    pub digits: Vec<u64>,
}

impl PrimeDigitStream {
    /// Number of distinct digits a prime can end in: the residues coprime to
    /// the base (4 for base 10).
    pub fn num_outcomes(&self) -> usize {
        coprime_residues(self.base).len()
    }
}

/// Sorted residues in `[1, base)` coprime to `base`; these are the possible
/// last digits of primes not dividing the base.
pub fn coprime_residues(base: u64) -> Vec<u64> {
    (1..base).filter(|&d| gcd(d, base) == 1).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn prime_last_digits(limit: u64, base: u64) -> Result<PrimeDigitStream, SourceError> {
    if base < 2 {
        return Err(SourceError::InvalidBase { base });
    }
    let primes = sieve_primes(limit)?;
    let mut excluded = Vec::new();
    let mut digits = Vec::new();
    for p in primes {
        if base.is_multiple_of(p) {
            excluded.push(p);
        } else {
            digits.push(p % base);
        }
    }
    Ok(PrimeDigitStream {
        limit,
        base,
        excluded_primes: excluded,
        digits,
    })
}

/// Rank of `digit` among the sorted coprime residues of `base`, used as the
/// tally outcome index. For base 10 the residues 1, 3, 7, 9 map to 0..4.
pub fn digit_to_outcome(digit: u64, base: u64) -> Result<usize, SourceError> {
    coprime_residues(base)
        .binary_search(&digit)
        .map_err(|_| SourceError::InvalidDigit { digit, base })
}
