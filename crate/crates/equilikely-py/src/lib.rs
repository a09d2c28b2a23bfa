//! Python bindings for the equilikely library.
//!
//! Scalar helpers are exposed directly; full experiment reports cross the
//! boundary as JSON strings so Python sees the same structure the CLI writes
//! to disk.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use equilikely::experiment::{run_ensemble, ExperimentConfig};
use equilikely::fit::fit_power_law_windowed;
use equilikely::sources::{self, RngSpec};
use equilikely::tally::{self, OutcomeTally};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// Streaming tally of a k-outcome categorical source.
#[pyclass(name = "Tally")]
struct PyTally {
    inner: OutcomeTally,
}

#[pymethods]
impl PyTally {
    #[new]
    fn new(num_outcomes: usize) -> PyResult<Self> {
        let inner = OutcomeTally::new(num_outcomes).map_err(value_error)?;
        Ok(Self { inner })
    }

    fn record(&mut self, outcome: usize) -> PyResult<()> {
        self.inner.record(outcome).map_err(value_error)
    }

    fn counts(&self) -> Vec<u64> {
        self.inner.counts().to_vec()
    }

    fn total(&self) -> u64 {
        self.inner.total()
    }

    fn range(&self) -> PyResult<u64> {
        self.inner.range().map_err(value_error)
    }

    fn rel_range(&self) -> PyResult<f64> {
        self.inner.rel_range().map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.inner.total() as usize
    }

    fn __repr__(&self) -> String {
        format!(
            "Tally(num_outcomes={}, total={})",
            self.inner.num_outcomes(),
            self.inner.total()
        )
    }
}

/// Log-spaced snapshot schedule from n_min to n_max.
#[pyfunction]
#[pyo3(signature = (n_max, points_per_decade=20, n_min=10))]
fn checkpoint_schedule(n_max: u64, points_per_decade: u32, n_min: u64) -> PyResult<Vec<u64>> {
    tally::checkpoint_schedule(n_max, points_per_decade, n_min).map_err(value_error)
}

/// All primes up to and including `limit`.
#[pyfunction]
fn sieve_primes(limit: u64) -> PyResult<Vec<u64>> {
    sources::sieve_primes(limit).map_err(value_error)
}

/// Last digits (in `base`) of primes not dividing `base`, in prime order.
#[pyfunction]
#[pyo3(signature = (limit, base=10))]
fn prime_last_digits(limit: u64, base: u64) -> PyResult<Vec<u64>> {
    sources::prime_last_digits(limit, base)
        .map(|stream| stream.digits)
        .map_err(value_error)
}

/// Expected leading-digit probability log10(1 + 1/d).
#[pyfunction]
fn benford_expected(digit: u32) -> PyResult<f64> {
    sources::benford_expected(digit).map_err(value_error)
}

/// Draw `n` outcomes uniform on 0..k from the seeded generator.
#[pyfunction]
#[pyo3(signature = (seed, k, n, stream=0))]
fn simulate_uniform(seed: u64, k: usize, n: u64, stream: u64) -> PyResult<Vec<usize>> {
    sources::simulate_uniform(&RngSpec::new(seed).with_stream(stream), k, n)
        .map_err(value_error)
}

/// Expected range of a fair two-outcome tally after n trials, sqrt(2n/pi).
#[pyfunction]
fn theoretical_coin_range(n: u64) -> f64 {
    equilikely::experiment::theoretical_coin_range(n)
}

/// Fit y = c * n^p to (n, y) points with n >= fit_min_n; returns a dict with
/// the same keys as the CLI's fit JSON.
#[pyfunction]
#[pyo3(signature = (points, fit_min_n=0))]
fn fit_power_law(
    py: Python<'_>,
    points: Vec<(u64, f64)>,
    fit_min_n: u64,
) -> PyResult<Py<PyAny>> {
    let (fit, window) = fit_power_law_windowed(&points, fit_min_n).map_err(value_error)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("exponent", fit.exponent)?;
    dict.set_item("log_amplitude", fit.log_amplitude)?;
    dict.set_item("exponent_se", fit.exponent_se)?;
    dict.set_item("r_squared", fit.r_squared)?;
    dict.set_item("n_points", fit.n_points)?;
    dict.set_item("dropped_points", fit.dropped_points)?;
    dict.set_item("fit_window_min_n", window)?;
    Ok(dict.into())
}

fn report_json(config: &ExperimentConfig) -> PyResult<String> {
    let report = run_ensemble(config).map_err(value_error)?;
    serde_json::to_string(&report).map_err(value_error)
}

/// Full coin-ensemble report (config, summary, fits, trajectories) as JSON.
#[pyfunction]
#[pyo3(signature = (n_max, runs, seed))]
fn run_coin_json(n_max: u64, runs: u32, seed: u64) -> PyResult<String> {
    report_json(&ExperimentConfig::coin(n_max, runs, seed))
}

/// Full prime-digit report as JSON.
#[pyfunction]
#[pyo3(signature = (limit, base=10))]
fn run_primes_json(limit: u64, base: u64) -> PyResult<String> {
    let config = ExperimentConfig::primes(limit, base).map_err(value_error)?;
    report_json(&config)
}

#[pymodule]
fn equilikely_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTally>()?;
    m.add_function(wrap_pyfunction!(checkpoint_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(sieve_primes, m)?)?;
    m.add_function(wrap_pyfunction!(prime_last_digits, m)?)?;
    m.add_function(wrap_pyfunction!(benford_expected, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(theoretical_coin_range, m)?)?;
    m.add_function(wrap_pyfunction!(fit_power_law, m)?)?;
    m.add_function(wrap_pyfunction!(run_coin_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_primes_json, m)?)?;
    Ok(())
}
