//! Streaming per-outcome counts and the frequency-range statistics built on them.
//!
//! An [`OutcomeTally`] accumulates exact integer counts for a fixed number of
//! outcomes. Derived quantities (relative frequencies, range, relative range)
//! are always computed from the integer counts at snapshot time, so no
//! floating-point drift accumulates while streaming.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TallyError {
    #[error("tally needs at least 2 outcomes, got {0}")]
    InvalidArity(usize),
    #[error("outcome {outcome} out of range for {num_outcomes} outcomes")]
    InvalidOutcome { outcome: usize, num_outcomes: usize },
    #[error("tally is empty; record at least one trial first")]
    Empty,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("invalid checkpoint range: n_max {n_max} < n_min {n_min}")]
    InvalidRange { n_max: u64, n_min: u64 },
    #[error("n_min must be >= 1")]
    ZeroMin,
    #[error("points_per_decade must be >= 1")]
    ZeroDensity,
}

/// Cumulative per-outcome counts for one experiment stream.
///
/// Invariant: `counts.iter().sum() == total` after every mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTally {
    counts: Vec<u64>,
    total: u64,
}

impl OutcomeTally {
    /// Create an empty tally over `num_outcomes` outcomes (at least 2).
    pub fn new(num_outcomes: usize) -> Result<Self, TallyError> {
        if num_outcomes < 2 {
            return Err(TallyError::InvalidArity(num_outcomes));
        }
        Ok(Self {
            counts: vec![0; num_outcomes],
            total: 0,
        })
    }

    pub fn num_outcomes(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Record one trial with the given outcome index.
    pub fn record(&mut self, outcome: usize) -> Result<(), TallyError> {
        match self.counts.get_mut(outcome) {
            Some(c) => {
                *c += 1;
                self.total += 1;
                Ok(())
            }
            None => Err(TallyError::InvalidOutcome {
                outcome,
                num_outcomes: self.counts.len(),
            }),
        }
    }

    /// Frequency range `R = max(counts) - min(counts)`.
    ///
    /// For two outcomes this is `|n_0 - n_1|`.
    pub fn range(&self) -> Result<u64, TallyError> {
        if self.total == 0 {
            return Err(TallyError::Empty);
        }
        let max = *self.counts.iter().max().expect("k >= 2");
        let min = *self.counts.iter().min().expect("k >= 2");
        Ok(max - min)
    }

    /// Relative range `R / N`, always in `[0, 1]`.
    pub fn rel_range(&self) -> Result<f64, TallyError> {
        Ok(self.range()? as f64 / self.total as f64)
    }

    /// Immutable snapshot of the current state with all derived statistics.
    pub fn snapshot(&self) -> Result<CheckpointRecord, TallyError> {
        let range = self.range()?;
        let n = self.total;
        Ok(CheckpointRecord {
            n,
            counts: self.counts.clone(),
            rel_freqs: self.counts.iter().map(|&c| c as f64 / n as f64).collect(),
            range,
            rel_range: range as f64 / n as f64,
        })
    }
}

/// Snapshot of a tally at trial count `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub n: u64,
    pub counts: Vec<u64>,
    pub rel_freqs: Vec<f64>,
    pub range: u64,
    pub rel_range: f64,
}

/// Which stream produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceTag {
    Coin,
    Categorical,
    PrimeLastDigit,
}

impl std::fmt::Display for SourceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SourceTag::Coin => write!(f, "coin"),
            SourceTag::Categorical => write!(f, "categorical"),
            SourceTag::PrimeLastDigit => write!(f, "prime-last-digit"),
        }
    }
}

/// Ordered checkpoint records for one experiment run.
///
/// Checkpoint `n` values are strictly increasing and all checkpoints share
/// the same number of outcomes. `truncated` is set when the source ran out
/// before the configured trial count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub run_id: u32,
    pub source_tag: SourceTag,
    pub checkpoints: Vec<CheckpointRecord>,
    pub truncated: bool,
}

impl Trajectory {
    pub fn num_outcomes(&self) -> Option<usize> {
        self.checkpoints.first().map(|c| c.counts.len())
    }

    pub fn final_checkpoint(&self) -> Option<&CheckpointRecord> {
        self.checkpoints.last()
    }
}

/// Log-uniformly spaced checkpoint trial counts between `n_min` and `n_max`.
///
/// Candidates are `round(10^(log10(n_min) + m / points_per_decade))` for
/// `m = 0, 1, 2, ...`; duplicates from integer rounding are dropped and
/// `n_max` itself is always the last entry.
pub fn checkpoint_schedule(
    n_max: u64,
    points_per_decade: u32,
    n_min: u64,
) -> Result<Vec<u64>, ScheduleError> {
    if n_min == 0 {
        return Err(ScheduleError::ZeroMin);
    }
    if points_per_decade == 0 {
        return Err(ScheduleError::ZeroDensity);
    }
    if n_max < n_min {
        return Err(ScheduleError::InvalidRange { n_max, n_min });
    }

    let start = (n_min as f64).log10();
    let step = 1.0 / points_per_decade as f64;
    let mut schedule: Vec<u64> = Vec::new();
    for m in 0.. {
        let candidate = 10f64.powf(start + m as f64 * step).round();
        if !candidate.is_finite() || candidate > n_max as f64 {
            break;
        }
        let candidate = candidate as u64;
        if schedule.last() != Some(&candidate) {
            schedule.push(candidate);
        }
    }
    if schedule.last() != Some(&n_max) {
        schedule.push(n_max);
    }
    Ok(schedule)
}
