//! Python bindings. Matrices cross the boundary as lists of rows of
//! `complex`; errors surface as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qcollide::dynamics::{self, OrbitMetric, OrbitScenario, PairSet, Schedule, Window, DEFAULT_WINDOW_LEN};
use qcollide::metrics::{self, DEFAULT_BACKFLOW_TOL};
use qcollide::model::{DensityMatrix, PureQubit, ThermalAncilla};
use qcollide::{analysis, model, qmat, ComplexMatrix};

type Rows = Vec<Vec<Complex64>>;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(PyValueError::new_err(format!("expected a square matrix with {dim} columns per row")));
    }
    ComplexMatrix::from_vec(dim, rows.into_iter().flatten().collect()).map_err(value_err)
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    m.rows()
}

fn to_state(rows: Rows) -> PyResult<DensityMatrix> {
    let m = to_matrix(rows)?;
    let dim = m.dim();
    DensityMatrix::new(m, vec![dim]).map_err(value_err)
}

fn ancilla(w_g: f64) -> PyResult<ThermalAncilla> {
    ThermalAncilla::from_ground_weight(w_g).map_err(value_err)
}

fn metric(name: &str) -> PyResult<OrbitMetric> {
    match name {
        "coherence_A" | "coherence" => Ok(OrbitMetric::CoherenceA),
        "coherence_env" => Ok(OrbitMetric::CoherenceEnv),
        "negativity" => Ok(OrbitMetric::Negativity),
        "trace_distance" => Ok(OrbitMetric::TraceDistance),
        other => Err(PyValueError::new_err(format!(
            "unknown metric '{other}'; expected coherence_A, coherence_env, negativity or trace_distance"
        ))),
    }
}

/// Per-step metric series of a run.
#[pyclass(module = "qcollide", name = "Trajectory", frozen)]
pub struct PyTrajectory {
    inner: dynamics::Trajectory,
}

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn n(&self) -> Vec<usize> {
        self.inner.steps.iter().map(|s| s.n).collect()
    }

    #[getter]
    fn coherence_a(&self) -> Vec<f64> {
        self.inner.coherence_series()
    }

    #[getter]
    fn coherence_env(&self) -> Vec<Option<f64>> {
        self.inner.steps.iter().map(|s| s.coherence_env).collect()
    }

    #[getter]
    fn negativity(&self) -> Vec<Option<f64>> {
        self.inner.steps.iter().map(|s| s.negativity).collect()
    }

    #[getter]
    fn trace_distance(&self) -> Vec<Option<f64>> {
        self.inner.steps.iter().map(|s| s.trace_distance).collect()
    }

    #[getter]
    fn populations_a(&self) -> Vec<(f64, f64)> {
        self.inner.steps.iter().map(|s| (s.populations_a[0], s.populations_a[1])).collect()
    }

    #[getter]
    fn schedule(&self) -> Option<Vec<(usize, usize)>> {
        self.inner.schedule.as_ref().map(|s| s.events.clone())
    }

    #[getter]
    fn seed(&self) -> Option<u64> {
        self.inner.schedule.as_ref().and_then(|s| s.seed)
    }

    /// Final state of the `index`-th evolved system (full register, or the
    /// qubit alone for fresh-ancilla runs).
    #[pyo3(signature = (index = 0))]
    fn final_state(&self, index: usize) -> PyResult<Rows> {
        self.inner
            .final_states
            .get(index)
            .map(|s| to_rows(s.matrix()))
            .ok_or_else(|| PyValueError::new_err(format!("no final state {index}")))
    }

    fn __len__(&self) -> usize {
        self.inner.steps.len()
    }

    fn __repr__(&self) -> String {
        format!("Trajectory(p={}, steps={})", self.inner.p, self.inner.steps.len())
    }
}

/// Collision unitary on qubits `pair` of an `n_qubits` register.
#[pyfunction]
fn collision_unitary(n_qubits: usize, pair: (usize, usize), p: f64) -> PyResult<Rows> {
    let u = model::pair_collision_unitary(n_qubits, pair, p).map_err(value_err)?;
    Ok(to_rows(&u.matrix))
}

#[pyfunction]
fn kron(a: Rows, b: Rows) -> PyResult<Rows> {
    Ok(to_rows(&qmat::kron(&to_matrix(a)?, &to_matrix(b)?)))
}

#[pyfunction]
fn partial_trace(rho: Rows, dims: Vec<usize>, keep: Vec<usize>) -> PyResult<Rows> {
    let out = qmat::partial_trace(&to_matrix(rho)?, &dims, &keep).map_err(value_err)?;
    Ok(to_rows(&out))
}

#[pyfunction]
fn partial_transpose(rho: Rows, dims: Vec<usize>, subsystem: usize) -> PyResult<Rows> {
    let out = qmat::partial_transpose(&to_matrix(rho)?, &dims, subsystem).map_err(value_err)?;
    Ok(to_rows(&out))
}

/// Ascending eigenvalues of a Hermitian matrix.
#[pyfunction]
fn hermitian_eigenvalues(m: Rows) -> PyResult<Vec<f64>> {
    qmat::hermitian_eigenvalues(&to_matrix(m)?).map_err(value_err)
}

#[pyfunction]
fn l1_coherence(rho: Rows) -> PyResult<f64> {
    Ok(metrics::l1_coherence_of(&to_matrix(rho)?))
}

#[pyfunction]
fn negativity(rho: Rows, dims: (usize, usize)) -> PyResult<f64> {
    let m = to_matrix(rho)?;
    let dim = m.dim();
    let state = DensityMatrix::new(m, vec![dim]).map_err(value_err)?;
    metrics::negativity(&state, [dims.0, dims.1]).map_err(value_err)
}

#[pyfunction]
fn trace_distance(rho1: Rows, rho2: Rows) -> PyResult<f64> {
    metrics::trace_distance(&to_state(rho1)?, &to_state(rho2)?).map_err(value_err)
}

/// `(events, total_backflow)` where each event is `(n, D(n+1) - D(n))`.
#[pyfunction]
#[pyo3(signature = (series, tol = DEFAULT_BACKFLOW_TOL))]
fn backflow_events(series: Vec<f64>, tol: f64) -> PyResult<(Vec<(usize, f64)>, f64)> {
    let r = metrics::backflow_events(&series, tol).map_err(value_err)?;
    Ok((r.events.iter().map(|e| (e.step, e.increase)).collect(), r.total_backflow))
}

#[pyfunction]
#[pyo3(signature = (n_qubits, n_events, seed, restrict_system_ancilla = false))]
fn random_schedule(
    n_qubits: usize,
    n_events: usize,
    seed: u64,
    restrict_system_ancilla: bool,
) -> PyResult<Vec<(usize, usize)>> {
    let set = if restrict_system_ancilla { PairSet::SystemAncilla } else { PairSet::All };
    let s = dynamics::random_schedule_from(n_qubits, n_events, seed, set).map_err(value_err)?;
    Ok(s.events)
}

/// Evolves `|+⟩` (and `|−⟩` when `paired`) with `n_ancillas` thermal
/// ancillas under `schedule`, a list of qubit pairs.
#[pyfunction]
#[pyo3(signature = (p, n_ancillas, schedule, w_g = 0.8, paired = true))]
fn run_trajectory(
    py: Python<'_>,
    p: f64,
    n_ancillas: usize,
    schedule: Vec<(usize, usize)>,
    w_g: f64,
    paired: bool,
) -> PyResult<PyTrajectory> {
    let schedule = Schedule::new(n_ancillas + 1, schedule).map_err(value_err)?;
    let ancillas = vec![ancilla(w_g)?; n_ancillas];
    let systems: &[PureQubit] = if paired { &[PureQubit::plus(), PureQubit::minus()] } else { &[PureQubit::plus()] };
    let inner = py.detach(|| dynamics::run_trajectory(systems, &ancillas, p, &schedule)).map_err(value_err)?;
    Ok(PyTrajectory { inner })
}

/// One collision with a fresh thermal ancilla that is then discarded.
#[pyfunction]
#[pyo3(signature = (rho, p, w_g = 0.8))]
fn markovian_step(rho: Rows, p: f64, w_g: f64) -> PyResult<Rows> {
    let out = dynamics::markovian_step(&to_state(rho)?, p, &ancilla(w_g)?).map_err(value_err)?;
    Ok(to_rows(out.matrix()))
}

#[pyfunction]
#[pyo3(signature = (p, n_steps, w_g = 0.8))]
fn markovian_trajectory(p: f64, n_steps: usize, w_g: f64) -> PyResult<PyTrajectory> {
    let inner = dynamics::markovian_trajectory([PureQubit::plus(), PureQubit::minus()], p, &ancilla(w_g)?, n_steps)
        .map_err(value_err)?;
    Ok(PyTrajectory { inner })
}

/// Windowed metric values for every `p`; `window` is a half-open
/// `(start, end)` step range, by default the last 60 steps.
#[pyfunction]
#[pyo3(signature = (p_grid, n_collisions = 100, window = None, w_g = 0.8, metric_name = "coherence_A"))]
fn orbit_sweep(
    py: Python<'_>,
    p_grid: Vec<f64>,
    n_collisions: usize,
    window: Option<(usize, usize)>,
    w_g: f64,
    metric_name: &str,
) -> PyResult<Vec<Vec<f64>>> {
    let window = match window {
        Some((start, end)) => Window { start, end },
        None => Window::last(DEFAULT_WINDOW_LEN, n_collisions),
    };
    let scenario = OrbitScenario { ancilla: ancilla(w_g)?, metric: metric(metric_name)?, ..OrbitScenario::default() };
    let diagram = py.detach(|| dynamics::orbit_sweep(&p_grid, n_collisions, window, &scenario)).map_err(value_err)?;
    Ok(diagram.values)
}

/// `(period or None, distinct values in the tail)`.
#[pyfunction]
#[pyo3(signature = (series, tol = 1e-8, max_period = 32, min_repeats = 3, tail = 60, cluster_tol = 1e-6))]
fn detect_period(
    series: Vec<f64>,
    tol: f64,
    max_period: usize,
    min_repeats: usize,
    tail: usize,
    cluster_tol: f64,
) -> PyResult<(Option<usize>, usize)> {
    let opts = analysis::PeriodOptions { tol, max_period, min_repeats, tail, cluster_tol };
    let v = analysis::detect_period(&series, &opts).map_err(value_err)?;
    Ok((v.period, v.n_distinct))
}

#[pyfunction]
#[pyo3(signature = (series, cluster_tol = 1e-6))]
fn distinct_values(series: Vec<f64>, cluster_tol: f64) -> PyResult<usize> {
    analysis::distinct_values(&series, cluster_tol).map_err(value_err)
}

/// Thermal weights `(w_g, w_e)` for `β·(E_e − E_g)`.
#[pyfunction]
fn thermal_from_beta(beta_gap: f64) -> PyResult<(f64, f64)> {
    let t = model::thermal_from_beta(beta_gap).map_err(value_err)?;
    Ok((t.w_g, t.w_e))
}

#[pymodule]
#[pyo3(name = "qcollide")]
pub fn qcollide_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(collision_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(kron, m)?)?;
    m.add_function(wrap_pyfunction!(partial_trace, m)?)?;
    m.add_function(wrap_pyfunction!(partial_transpose, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(l1_coherence, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(trace_distance, m)?)?;
    m.add_function(wrap_pyfunction!(backflow_events, m)?)?;
    m.add_function(wrap_pyfunction!(random_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(run_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(markovian_step, m)?)?;
    m.add_function(wrap_pyfunction!(markovian_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(detect_period, m)?)?;
    m.add_function(wrap_pyfunction!(distinct_values, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_from_beta, m)?)?;
    Ok(())
}
