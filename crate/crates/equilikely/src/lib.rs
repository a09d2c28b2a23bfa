//! Statistics of equally likely outcomes.
//!
//! Simulates fair k-outcome trials, extracts the last digits of primes, and
//! tracks how the frequency range `R = max(n_i) - min(n_i)` and the relative
//! range `R/N` evolve with the trial count `N`. Both follow power laws
//! `R ~ N^alpha` and `R/N ~ N^beta` with `beta = alpha - 1`, and `R/N -> 0`
//! is the convergence to equidistribution predicted by the law of large
//! numbers.
//!
//! The crate exposes the building blocks (tally, sources, fitting) plus an
//! experiment layer that reproduces whole runs deterministically from a
//! single seed, and an io layer for CSV/JSON export and gnuplot scripts.

pub mod experiment;
pub mod fit;
pub mod io;
pub mod plot;
pub mod sources;
pub mod tally;

pub use experiment::{
    run_ensemble, run_single, theoretical_coin_range, EnsembleSummary, ExperimentConfig,
    ExperimentError, ReproductionReport, ScheduleConfig, SourceSpec, SummaryPoint,
};
pub use fit::{beta_from_alpha, fit_power_law, fit_power_law_windowed, FitError, PowerLawFit};
pub use sources::{
    benford_expected, coprime_residues, digit_to_outcome, prime_last_digits, sieve_primes,
    simulate_uniform, PrimeDigitStream, RngAlgorithm, RngSpec, SourceError, UniformStream,
};
pub use tally::{
    checkpoint_schedule, CheckpointRecord, OutcomeTally, ScheduleError, SourceTag, TallyError,
    Trajectory,
};
