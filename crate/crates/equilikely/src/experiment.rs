//! Full reproductions: ensembles of simulated runs or the prime digit
//! sequence, aggregated across runs and fitted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fit::{fit_power_law_windowed, FitError, PowerLawFit};
use crate::sources::{
    coprime_residues, prime_last_digits, RngSpec, SourceError, UniformStream,
};
use crate::tally::{
    checkpoint_schedule, OutcomeTally, ScheduleError, SourceTag, TallyError, Trajectory,
};

pub const DEFAULT_POINTS_PER_DECADE: u32 = 20;
pub const DEFAULT_SCHEDULE_MIN_N: u64 = 10;
pub const DEFAULT_FIT_MIN_N: u64 = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("run index {run_index} out of range for {num_runs} runs")]
    RunIndexOutOfRange { run_index: u32, num_runs: u32 },
    #[error("prime-last-digit experiments are single-run, got num_runs = {0}")]
    MultiRunPrimes(u32),
    #[error("num_runs must be >= 1")]
    NoRuns,
    #[error("n_max must be >= 1")]
    NoTrials,
    #[error("runs disagree on checkpoint schedule; cannot aggregate")]
    CheckpointMismatch,
    #[error(transparent)]
    Tally(#[from] TallyError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// Which outcome stream an experiment consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SourceSpec {
    /// Fair two-outcome trials.
    Coin,
    /// Fair `k`-outcome trials.
    Categorical { k: usize },
    /// Last digits of primes up to `limit` in the given base.
    PrimeLastDigit { limit: u64, base: u64 },
}

impl SourceSpec {
    pub fn tag(&self) -> SourceTag {
        match self {
            SourceSpec::Coin => SourceTag::Coin,
            SourceSpec::Categorical { .. } => SourceTag::Categorical,
            SourceSpec::PrimeLastDigit { .. } => SourceTag::PrimeLastDigit,
        }
    }
}

/// Checkpoint density parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleConfig {
    pub points_per_decade: u32,
    pub n_min: u64,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            points_per_decade: DEFAULT_POINTS_PER_DECADE,
            n_min: DEFAULT_SCHEDULE_MIN_N,
        }
    }
}

/// Everything needed to reproduce an experiment bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: SourceSpec,
    pub n_max: u64,
    pub num_runs: u32,
    pub rng: RngSpec,
    pub schedule: ScheduleConfig,
    pub fit_min_n: u64,
}

impl ExperimentConfig {
    pub fn coin(n_max: u64, num_runs: u32, seed: u64) -> Self {
        Self {
            source: SourceSpec::Coin,
            n_max,
            num_runs,
            rng: RngSpec::new(seed),
            schedule: ScheduleConfig::default(),
            fit_min_n: DEFAULT_FIT_MIN_N,
        }
    }

    pub fn categorical(k: usize, n_max: u64, num_runs: u32, seed: u64) -> Self {
        Self {
            source: SourceSpec::Categorical { k },
            ..Self::coin(n_max, num_runs, seed)
        }
    }

    /// Prime experiments are deterministic and single-run; `n_max` is the
    /// number of digits the limit actually yields.
    pub fn primes(limit: u64, base: u64) -> Result<Self, ExperimentError> {
        let digits = prime_last_digits(limit, base)?.digits.len() as u64;
        if digits == 0 {
            return Err(ExperimentError::NoTrials);
        }
        Ok(Self {
            source: SourceSpec::PrimeLastDigit { limit, base },
            n_max: digits,
            num_runs: 1,
            rng: RngSpec::new(0),
            schedule: ScheduleConfig::default(),
            fit_min_n: DEFAULT_FIT_MIN_N,
        })
    }

    pub fn num_outcomes(&self) -> usize {
        match self.source {
            SourceSpec::Coin => 2,
            SourceSpec::Categorical { k } => k,
            SourceSpec::PrimeLastDigit { base, .. } => coprime_residues(base).len(),
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.num_runs == 0 {
            return Err(ExperimentError::NoRuns);
        }
        if self.n_max == 0 {
            return Err(ExperimentError::NoTrials);
        }
        if let SourceSpec::Categorical { k } = self.source {
            if k < 2 {
                return Err(ExperimentError::Source(SourceError::InvalidArity(k)));
            }
        }
        if let SourceSpec::PrimeLastDigit { base, .. } = self.source {
            if base < 2 {
                return Err(ExperimentError::Source(SourceError::InvalidBase { base }));
            }
            if self.num_runs != 1 {
                return Err(ExperimentError::MultiRunPrimes(self.num_runs));
            }
        }
        Ok(())
    }
}

/// Per-checkpoint ensemble statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryPoint {
    pub n: u64,
    pub mean_range: f64,
    pub se_range: f64,
    pub mean_rel_range: f64,
    pub se_rel_range: f64,
}

/// Mean and standard error of the range statistics across runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub checkpoints: Vec<SummaryPoint>,
    pub num_runs: u32,
}

/// One complete reproduction: configuration, per-run trajectories, ensemble
/// summary, and both power-law fits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub config: ExperimentConfig,
    pub summary: EnsembleSummary,
    pub alpha_fit: PowerLawFit,
    pub beta_fit: PowerLawFit,
    /// Window lower bound actually applied to both fits (0 when the
    /// configured window left too few points and the full range was used).
    pub fit_window_min_n: u64,
    pub trajectories: Vec<Trajectory>,
}

/// Asymptotic expectation of `|n_heads - n_tails|` for a fair coin:
/// `sqrt(2n / pi)`. Used as an independent cross-check for coin ensembles.
pub fn theoretical_coin_range(n: u64) -> f64 {
    (2.0 * n as f64 / std::f64::consts::PI).sqrt()
}

/// Run one trajectory: feed the source stream into a tally and snapshot it
/// at every scheduled checkpoint.
pub fn run_single(config: &ExperimentConfig, run_index: u32) -> Result<Trajectory, ExperimentError> {
    config.validate()?;
    if run_index >= config.num_runs {
        return Err(ExperimentError::RunIndexOutOfRange {
            run_index,
            num_runs: config.num_runs,
        });
    }

    let k = config.num_outcomes();
    let mut truncated = false;
    let (outcomes, n_eff): (Box<dyn Iterator<Item = usize>>, u64) = match config.source {
        SourceSpec::Coin | SourceSpec::Categorical { .. } => {
            let spec = config
                .rng
                .with_stream(config.rng.stream_index + u64::from(run_index));
            (Box::new(UniformStream::new(&spec, k)?), config.n_max)
        }
        SourceSpec::PrimeLastDigit { limit, base } => {
            let stream = prime_last_digits(limit, base)?;
            // digit value -> outcome rank, precomputed over [0, base)
            let mut rank = vec![usize::MAX; base as usize];
            for (i, &r) in coprime_residues(base).iter().enumerate() {
                rank[r as usize] = i;
            }
            // prime streams end when the primes run out
            let available = stream.digits.len() as u64;
            truncated = available < config.n_max;
            let outcomes = stream.digits.into_iter().map(move |d| rank[d as usize]);
            (Box::new(outcomes), available.min(config.n_max))
        }
    };

    let schedule = checkpoint_schedule(
        n_eff,
        config.schedule.points_per_decade,
        config.schedule.n_min.min(n_eff),
    )?;
    let mut tally = OutcomeTally::new(k)?;
    let mut checkpoints = Vec::with_capacity(schedule.len());
    let mut next = schedule.iter().copied().peekable();
    for (i, outcome) in outcomes.take(n_eff as usize).enumerate() {
        tally.record(outcome)?;
        if next.peek() == Some(&(i as u64 + 1)) {
            checkpoints.push(tally.snapshot()?);
            next.next();
        }
    }

    Ok(Trajectory {
        run_id: run_index,
        source_tag: config.source.tag(),
        checkpoints,
        truncated,
    })
}

/// Run the whole ensemble, aggregate the range statistics per checkpoint,
/// and fit both power laws over the shared checkpoint grid.
pub fn run_ensemble(config: &ExperimentConfig) -> Result<ReproductionReport, ExperimentError> {
    config.validate()?;
    let trajectories: Vec<Trajectory> = (0..config.num_runs)
        .map(|i| run_single(config, i))
        .collect::<Result<_, _>>()?;

    let grid: Vec<u64> = trajectories[0].checkpoints.iter().map(|c| c.n).collect();
    for t in &trajectories[1..] {
        if t.checkpoints.len() != grid.len()
            || t.checkpoints.iter().zip(&grid).any(|(c, &n)| c.n != n)
        {
            return Err(ExperimentError::CheckpointMismatch);
        }
    }

    let num_runs = config.num_runs;
    let mut points = Vec::with_capacity(grid.len());
    for (j, &n) in grid.iter().enumerate() {
        let ranges: Vec<u64> = trajectories.iter().map(|t| t.checkpoints[j].range).collect();
        let mean_range = ranges.iter().sum::<u64>() as f64 / f64::from(num_runs);
        let se_range = if num_runs > 1 {
            let var = ranges
                .iter()
                .map(|&r| (r as f64 - mean_range).powi(2))
                .sum::<f64>()
                / f64::from(num_runs - 1);
            (var / f64::from(num_runs)).sqrt()
        } else {
            0.0
        };
        // rel statistics derived from the same integer ranges, so
        // mean_rel_range == mean_range / n holds exactly
        points.push(SummaryPoint {
            n,
            mean_range,
            se_range,
            mean_rel_range: mean_range / n as f64,
            se_rel_range: se_range / n as f64,
        });
    }

    let alpha_points: Vec<(u64, f64)> = points.iter().map(|p| (p.n, p.mean_range)).collect();
    let beta_points: Vec<(u64, f64)> = points.iter().map(|p| (p.n, p.mean_rel_range)).collect();
    let (alpha_fit, alpha_window) = fit_power_law_windowed(&alpha_points, config.fit_min_n)?;
    let (beta_fit, beta_window) = fit_power_law_windowed(&beta_points, config.fit_min_n)?;
    // mean_rel_range is zero exactly where mean_range is, so both fits see
    // the same abscissae and the same window
    debug_assert_eq!(alpha_window, beta_window);

    Ok(ReproductionReport {
        config: config.clone(),
        summary: EnsembleSummary {
            checkpoints: points,
            num_runs,
        },
        alpha_fit,
        beta_fit,
        fit_window_min_n: alpha_window,
        trajectories,
    })
}
