//! Coherence, entanglement and distinguishability measures.

use thiserror::Error;

use crate::model::DensityMatrix;
use crate::qmat::{hermitian_eigenvalues, partial_transpose, trace_norm_hermitian, ComplexMatrix, QmatError};

/// Default threshold separating a genuine trace-distance revival from
/// eigensolver noise.
pub const DEFAULT_BACKFLOW_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("states have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("bipartition {d_a}x{d_b} does not match a state of dimension {dim}")]
    BadBipartition { d_a: usize, d_b: usize, dim: usize },
    #[error("series needs at least 2 points, got {0}")]
    SeriesTooShort(usize),
    #[error("tolerance must be non-negative, got {0}")]
    NegativeTolerance(f64),
    #[error(transparent)]
    Qmat(#[from] QmatError),
}

/// l1-norm of coherence in the computational (energy) basis.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    l1_coherence_of(rho.matrix())
}

pub fn l1_coherence_of(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    total
}

/// Negativity across the first cut of a `d_a × d_b` bipartition: the summed
/// magnitude of the negative eigenvalues of `ρ^{T_A}`.
pub fn negativity(rho: &DensityMatrix, dims: [usize; 2]) -> Result<f64, MetricsError> {
    let [d_a, d_b] = dims;
    if d_a * d_b != rho.dim() {
        return Err(MetricsError::BadBipartition { d_a, d_b, dim: rho.dim() });
    }
    let pt = partial_transpose(rho.matrix(), &dims, 0)?;
    let eig = hermitian_eigenvalues(&pt)?;
    Ok(eig.iter().filter(|&&l| l < 0.0).map(|l| -l).sum())
}

/// Negativity of a register across the system | environment cut.
pub fn system_negativity(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    negativity(rho, [2, rho.dim() / 2])
}

/// `½‖ρ₁ − ρ₂‖₁`.
pub fn trace_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64, MetricsError> {
    if r1.dim() != r2.dim() {
        return Err(MetricsError::DimensionMismatch(r1.dim(), r2.dim()));
    }
    let diff = r1.matrix() - r2.matrix();
    Ok(0.5 * trace_norm_hermitian(&diff)?)
}

/// A step `n → n+1` where the distance grew.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackflowEvent {
    pub step: usize,
    pub increase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackflowReport {
    pub events: Vec<BackflowEvent>,
    pub total_backflow: f64,
    pub max_distance: f64,
}

impl BackflowReport {
    /// No revival above tolerance: the monotone (Markovian) verdict.
    pub fn is_markovian(&self) -> bool {
        self.events.is_empty()
    }
}

/// Finds every `n` with `D(n+1) − D(n) > tol`.
pub fn backflow_events(series: &[f64], tol: f64) -> Result<BackflowReport, MetricsError> {
    if series.len() < 2 {
        return Err(MetricsError::SeriesTooShort(series.len()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(MetricsError::NegativeTolerance(tol));
    }
    let events: Vec<BackflowEvent> = series
        .windows(2)
        .enumerate()
        .filter_map(|(n, w)| {
            let increase = w[1] - w[0];
            (increase > tol).then_some(BackflowEvent { step: n, increase })
        })
        .collect();
    let total_backflow = events.iter().map(|e| e.increase).sum();
    let max_distance = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(BackflowReport { events, total_backflow, max_distance })
}
