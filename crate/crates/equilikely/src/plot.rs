//! Gnuplot script emission.
//!
//! The tool never renders images itself; it writes self-contained gnuplot
//! scripts that reference only the exported CSV files, so figures stay
//! reviewable as text and reproducible from the data.

use std::path::Path;

use crate::fit::PowerLawFit;

/// Which panel to render.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFigure {
    /// Relative-frequency trajectories with the 1/k reference line.
    Freqs,
    /// Frequency range R vs N on log-log axes with the fitted line.
    Range,
    /// Relative range R/N vs N on log-log axes with the fitted line.
    RelRange,
}

impl std::str::FromStr for PlotFigure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "freqs" => Ok(PlotFigure::Freqs),
            "range" => Ok(PlotFigure::Range),
            "relrange" => Ok(PlotFigure::RelRange),
            other => Err(format!(
                "unknown figure '{other}' (expected freqs, range, or relrange)"
            )),
        }
    }
}

fn quoted(path: &Path) -> String {
    format!("'{}'", path.display().to_string().replace('\'', "''"))
}

/// Script plotting the per-outcome relative frequencies of one or more
/// trajectory CSVs against N, with a dashed line at the equidistribution
/// value 1/k.
pub fn freqs_script(inputs: &[&Path], num_outcomes: usize) -> String {
    let reference = 1.0 / num_outcomes as f64;
    let mut script = String::new();
    script.push_str("# relative-frequency trajectories; render with: gnuplot -persist <file>\n");
    script.push_str("set datafile separator ','\n");
    script.push_str("set key autotitle columnhead\n");
    script.push_str("set logscale x\n");
    script.push_str("set xlabel 'N'\n");
    script.push_str("set ylabel 'relative frequency'\n");
    script.push_str("set yrange [0:1]\n");
    script.push_str(&format!("ref = {reference}\n"));
    script.push_str("plot \\\n");
    for (file_index, input) in inputs.iter().enumerate() {
        for outcome in 0..num_outcomes {
            // f_i columns sit after n and the k count columns
            let column = 2 + num_outcomes + outcome;
            script.push_str(&format!(
                "    {} using 1:{column} with lines lc {} title 'run {file_index} f_{outcome}', \\\n",
                quoted(input),
                outcome + 1,
            ));
        }
    }
    script.push_str(&format!(
        "    ref with lines dashtype 2 lc 'black' title '1/k = {reference}'\n"
    ));
    script
}

/// Log-log script for `range` or `relrange` panels: one error-bar series per
/// summary CSV plus the fitted power law. The `slope` variable in the script
/// is exactly the fit exponent.
pub fn loglog_script(inputs: &[&Path], figure: PlotFigure, fit: &PowerLawFit) -> String {
    let (value_column, error_column, ylabel) = match figure {
        PlotFigure::Range => (2, 3, "R"),
        PlotFigure::RelRange => (4, 5, "R/N"),
        PlotFigure::Freqs => unreachable!("freqs uses freqs_script"),
    };
    let mut script = String::new();
    script.push_str(&format!(
        "# {ylabel} vs N on log-log axes; render with: gnuplot -persist <file>\n"
    ));
    script.push_str("set datafile separator ','\n");
    script.push_str("set key autotitle columnhead\n");
    script.push_str("set logscale xy\n");
    script.push_str("set xlabel 'N'\n");
    script.push_str(&format!("set ylabel '{ylabel}'\n"));
    script.push_str(&format!("slope = {}\n", fit.exponent));
    script.push_str(&format!("log_amplitude = {}\n", fit.log_amplitude));
    script.push_str("fitted(x) = 10**log_amplitude * x**slope\n");
    script.push_str(
        "set label 1 sprintf('slope = %.4f', slope) at graph 0.05, graph 0.92\n",
    );
    script.push_str("plot \\\n");
    for input in inputs {
        script.push_str(&format!(
            "    {} using 1:{value_column}:{error_column} with yerrorbars title '{ylabel}', \\\n",
            quoted(input),
        ));
    }
    script.push_str("    fitted(x) with lines dashtype 2 title sprintf('fit ~ N^{%.4f}', slope)\n");
    script
}
