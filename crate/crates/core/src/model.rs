//! States, registers and the pairwise collision unitary.
//!
//! Qubit 0 is the system `A`; qubits 1.. are the ancillas `B`, `C`, `D`.
//! Basis states are enumerated big-endian with `|g⟩ = 0`, `|e⟩ = 1`, so for
//! two qubits the order is `gg, ge, eg, ee`.

use num_complex::Complex64;
use thiserror::Error;

use crate::qmat::{hermitian_eigenvalues, kron, partial_trace, ComplexMatrix, QmatError, HERMITIAN_TOL};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 4;
pub const QUBIT_LABELS: [char; MAX_QUBITS] = ['A', 'B', 'C', 'D'];

const NORMALIZATION_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const POSITIVITY_TOL: f64 = 1e-9;
const BETA_CAP: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("pure qubit amplitudes are not normalized: |a|²+|b|² = {norm}")]
    NotNormalized { norm: f64 },
    #[error("invalid thermal weights w_g = {w_g}, w_e = {w_e}")]
    InvalidWeights { w_g: f64, w_e: f64 },
    #[error("beta·gap must be a non-negative number, got {0}")]
    InvalidBeta(f64),
    #[error("register must have {MIN_QUBITS}..={MAX_QUBITS} qubits, got {0}")]
    QubitCount(usize),
    #[error("invalid qubit pair ({i}, {j}) for a {n_qubits}-qubit register")]
    InvalidPair { i: usize, j: usize, n_qubits: usize },
    #[error("interaction probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("need 1..=3 ancillas, got {0}")]
    AncillaCount(usize),
    #[error("not a valid density matrix: {0}")]
    InvalidState(String),
    #[error(transparent)]
    Qmat(#[from] QmatError),
}

/// `a|g⟩ + b|e⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    pub a: Complex64,
    pub b: Complex64,
}

impl PureQubit {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self, ModelError> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(ModelError::NotNormalized { norm });
        }
        Ok(Self { a, b })
    }

    pub fn real(a: f64, b: f64) -> Result<Self, ModelError> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    pub fn ground() -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0) }
    }

    /// `(|g⟩ + |e⟩)/√2`, maximally coherent.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: Complex64::new(h, 0.0), b: Complex64::new(h, 0.0) }
    }

    /// `(|g⟩ − |e⟩)/√2`, orthogonal to [`PureQubit::plus`].
    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: Complex64::new(h, 0.0), b: Complex64::new(-h, 0.0) }
    }
}

/// Diagonal thermal qubit `w_g|g⟩⟨g| + w_e|e⟩⟨e|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAncilla {
    pub w_g: f64,
    pub w_e: f64,
}

impl ThermalAncilla {
    pub fn new(w_g: f64, w_e: f64) -> Result<Self, ModelError> {
        let in_unit = |w: f64| (0.0..=1.0).contains(&w);
        if !in_unit(w_g) || !in_unit(w_e) || (w_g + w_e - 1.0).abs() > NORMALIZATION_TOL {
            return Err(ModelError::InvalidWeights { w_g, w_e });
        }
        if w_e > w_g {
            log::warn!("ancilla population is inverted (w_e = {w_e} > w_g = {w_g}): negative temperature");
        }
        Ok(Self { w_g, w_e })
    }

    pub fn from_ground_weight(w_g: f64) -> Result<Self, ModelError> {
        Self::new(w_g, 1.0 - w_g)
    }
}

/// Thermal weights for a dimensionless `β·(E_e − E_g)`; values above 1e6 are
/// capped (the ground-state limit).
pub fn thermal_from_beta(beta_gap: f64) -> Result<ThermalAncilla, ModelError> {
    if beta_gap.is_nan() || beta_gap < 0.0 {
        return Err(ModelError::InvalidBeta(beta_gap));
    }
    let x = beta_gap.min(BETA_CAP);
    let w_e = 1.0 / (1.0 + x.exp());
    Ok(ThermalAncilla { w_g: 1.0 - w_e, w_e })
}

/// Result of checking a matrix against the density-matrix bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn of(m: &ComplexMatrix) -> Result<Self, ModelError> {
        let hermiticity = m.hermiticity_deviation();
        let trace_error = (m.trace() - Complex64::new(1.0, 0.0)).norm();
        if hermiticity >= HERMITIAN_TOL {
            return Ok(Self { trace_error, hermiticity, min_eigenvalue: f64::NAN });
        }
        let min_eigenvalue = hermitian_eigenvalues(m)?[0];
        Ok(Self { trace_error, hermiticity, min_eigenvalue })
    }

    pub fn is_valid(&self) -> bool {
        self.trace_error < TRACE_TOL && self.hermiticity < HERMITIAN_TOL && self.min_eigenvalue >= -POSITIVITY_TOL
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix over a product of
/// subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self, ModelError> {
        let total: usize = dims.iter().product();
        if total != matrix.dim() {
            return Err(QmatError::DimensionMismatch { expected: total, actual: matrix.dim() }.into());
        }
        let diag = StateDiagnostics::of(&matrix)?;
        if !diag.is_valid() {
            return Err(ModelError::InvalidState(format!(
                "trace error {:e}, hermiticity {:e}, min eigenvalue {:e}",
                diag.trace_error, diag.hermiticity, diag.min_eigenvalue
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Wraps a matrix already known to be a state (e.g. a unitary image of one).
    pub fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self { matrix, dims }
    }

    /// Single-qubit state from a 2×2 matrix.
    pub fn qubit(matrix: ComplexMatrix) -> Result<Self, ModelError> {
        Self::new(matrix, vec![2])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn diagnostics(&self) -> Result<StateDiagnostics, ModelError> {
        StateDiagnostics::of(&self.matrix)
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix, ModelError> {
        let matrix = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dims = kept.iter().map(|&k| self.dims[k]).collect();
        Ok(Self { matrix, dims })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { matrix: kron(&self.matrix, &other.matrix), dims }
    }

    pub fn evolve(&self, u: &ComplexMatrix) -> DensityMatrix {
        Self { matrix: self.matrix.conjugate_by(u), dims: self.dims.clone() }
    }
}

pub fn pure_qubit_density(q: &PureQubit) -> DensityMatrix {
    DensityMatrix::new_unchecked(ComplexMatrix::outer(&[q.a, q.b]), vec![2])
}

pub fn thermal_density(t: &ThermalAncilla) -> DensityMatrix {
    DensityMatrix::new_unchecked(ComplexMatrix::diag(&[t.w_g, t.w_e]), vec![2])
}

/// Unitary for one collision between qubits `pair.0 < pair.1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionUnitary {
    pub matrix: ComplexMatrix,
    pub pair: (usize, usize),
    pub p: f64,
    pub n_qubits: usize,
}

pub(crate) fn validate_pair(n_qubits: usize, (i, j): (usize, usize)) -> Result<(), ModelError> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n_qubits) {
        return Err(ModelError::QubitCount(n_qubits));
    }
    if i >= j || j >= n_qubits {
        return Err(ModelError::InvalidPair { i, j, n_qubits });
    }
    Ok(())
}

/// Builds the collision unitary for `pair` in an `n_qubits` register.
///
/// Only the single-excitation sector of the pair mixes:
///
/// * `|…g_i…e_j…⟩ → √(1−p)|…g_i…e_j…⟩ − √p|…e_i…g_j…⟩`
/// * `|…e_i…g_j…⟩ → √(1−p)|…e_i…g_j…⟩ + √p|…g_i…e_j…⟩`
///
/// Both-ground and both-excited states of the pair are fixed, and the other
/// qubits are spectators.
pub fn pair_collision_unitary(n_qubits: usize, pair: (usize, usize), p: f64) -> Result<CollisionUnitary, ModelError> {
    validate_pair(n_qubits, pair)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::ProbabilityOutOfRange(p));
    }
    let (i, j) = pair;
    let dim = 1usize << n_qubits;
    let bit_i = 1usize << (n_qubits - 1 - i);
    let bit_j = 1usize << (n_qubits - 1 - j);
    let (stay, hop) = ((1.0 - p).sqrt(), p.sqrt());

    let mut matrix = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let exc_i = col & bit_i != 0;
        let exc_j = col & bit_j != 0;
        if exc_i == exc_j {
            matrix[(col, col)] = Complex64::new(1.0, 0.0);
            continue;
        }
        let swapped = col ^ bit_i ^ bit_j;
        let sign = if exc_j { -1.0 } else { 1.0 };
        matrix[(col, col)] = Complex64::new(stay, 0.0);
        matrix[(swapped, col)] = Complex64::new(sign * hop, 0.0);
    }
    Ok(CollisionUnitary { matrix, pair, p, n_qubits })
}

/// Density matrix of the system plus its ancillas.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    rho: DensityMatrix,
    labels: Vec<char>,
}

impl Register {
    pub fn from_density(rho: DensityMatrix) -> Result<Self, ModelError> {
        let n = rho.dims().len();
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) || rho.dims().iter().any(|&d| d != 2) {
            return Err(ModelError::QubitCount(n));
        }
        Ok(Self { labels: QUBIT_LABELS[..n].to_vec(), rho })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    /// Reduced state of the system qubit `A`.
    pub fn system(&self) -> DensityMatrix {
        self.rho.reduced(&[0]).expect("qubit 0 always exists")
    }

    /// Reduced state of all ancillas.
    pub fn environment(&self) -> DensityMatrix {
        let rest: Vec<usize> = (1..self.n_qubits()).collect();
        self.rho.reduced(&rest).expect("ancilla indices are in range")
    }

    pub fn apply(&self, u: &CollisionUnitary) -> Result<Register, ModelError> {
        if u.n_qubits != self.n_qubits() {
            return Err(ModelError::QubitCount(u.n_qubits));
        }
        Ok(Self { rho: self.rho.evolve(&u.matrix), labels: self.labels.clone() })
    }
}

/// `ρ_A ⊗ ρ_B ⊗ …` for a pure system and 1..=3 thermal ancillas.
pub fn composite_initial(system: &PureQubit, ancillas: &[ThermalAncilla]) -> Result<Register, ModelError> {
    composite_from_system(&pure_qubit_density(system), ancillas)
}

/// Same as [`composite_initial`] for an arbitrary (possibly mixed) system state.
pub fn composite_from_system(system: &DensityMatrix, ancillas: &[ThermalAncilla]) -> Result<Register, ModelError> {
    if ancillas.is_empty() || ancillas.len() > MAX_QUBITS - 1 {
        return Err(ModelError::AncillaCount(ancillas.len()));
    }
    let rho = ancillas.iter().fold(system.clone(), |acc, anc| acc.tensor(&thermal_density(anc)));
    Register::from_density(rho)
}
