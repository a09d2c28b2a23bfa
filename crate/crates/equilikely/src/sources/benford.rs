//! Expected leading-digit probabilities under Benford's law.

use super::SourceError;

/// `P(d) = log10(1 + 1/d)` for a leading digit `d` in 1..=9.
pub fn benford_expected(d: u32) -> Result<f64, SourceError> {
    if !(1..=9).contains(&d) {
        return Err(SourceError::InvalidLeadingDigit { digit: d });
    }
    Ok((1.0 + 1.0 / d as f64).log10())
}
