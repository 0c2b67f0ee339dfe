//! Cycle detection and regular/aperiodic labelling of metric series.
//!
//! "Aperiodic" means only that no period up to `max_period` fits the analysed
//! tail; it is a window-relative verdict, not a Lyapunov statement.

use thiserror::Error;

use crate::dynamics::DEFAULT_WINDOW_LEN;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("series of length {len} is shorter than max_period × min_repeats = {needed}")]
    SeriesTooShort { len: usize, needed: usize },
    #[error("series is empty")]
    Empty,
    #[error("invalid period search options: {0}")]
    BadOptions(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodOptions {
    /// Two samples match when they differ by less than this.
    pub tol: f64,
    pub max_period: usize,
    /// Each candidate period is checked over at least this many repeats.
    pub min_repeats: usize,
    /// Minimum number of trailing samples every candidate is checked over.
    pub tail: usize,
    /// Threshold for counting distinct values in the tail.
    pub cluster_tol: f64,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_period: 32, min_repeats: 3, tail: DEFAULT_WINDOW_LEN, cluster_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesLabel {
    Periodic(usize),
    Aperiodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesVerdict {
    pub period: Option<usize>,
    /// Distinct values in the analysed tail.
    pub n_distinct: usize,
    pub label: SeriesLabel,
}

impl SeriesVerdict {
    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }
}

/// Smallest `k ≤ max_period` with `|x[n+k] − x[n]| < tol` throughout the
/// trailing `max(tail, k·min_repeats)` samples.
pub fn detect_period(series: &[f64], opts: &PeriodOptions) -> Result<SeriesVerdict, AnalysisError> {
    if opts.max_period == 0 || opts.min_repeats < 2 {
        return Err(AnalysisError::BadOptions("need max_period ≥ 1 and min_repeats ≥ 2"));
    }
    let needed = opts.max_period * opts.min_repeats;
    if series.len() < needed {
        return Err(AnalysisError::SeriesTooShort { len: series.len(), needed });
    }
    let period = (1..=opts.max_period).find(|&k| {
        let span = opts.tail.max(k * opts.min_repeats).min(series.len());
        let tail = &series[series.len() - span..];
        tail.iter().zip(&tail[k..]).all(|(a, b)| (b - a).abs() < opts.tol)
    });
    let tail = &series[series.len() - opts.tail.min(series.len())..];
    let n_distinct = distinct_values(tail, opts.cluster_tol)?;
    let label = match period {
        Some(k) => SeriesLabel::Periodic(k),
        None => SeriesLabel::Aperiodic,
    };
    Ok(SeriesVerdict { period, n_distinct, label })
}

/// Number of clusters under single-linkage with threshold `cluster_tol`.
pub fn distinct_values(series: &[f64], cluster_tol: f64) -> Result<usize, AnalysisError> {
    if series.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let mut sorted = series.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(1 + sorted.windows(2).filter(|w| w[1] - w[0] > cluster_tol).count())
}

/// Representative value (cluster minimum) of each cluster, ascending.
pub fn cluster_values(series: &[f64], cluster_tol: f64) -> Vec<f64> {
    let mut sorted = series.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for x in sorted {
        if x - last > cluster_tol {
            out.push(x);
        }
        last = x;
    }
    out
}
