//! Collision schedules, trajectory evolution, the fresh-ancilla (Markovian)
//! map and orbit sweeps over the interaction probability.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::metrics::{l1_coherence, system_negativity, trace_distance, MetricsError};
use crate::model::{
    composite_initial, pair_collision_unitary, pure_qubit_density, validate_pair, CollisionUnitary, DensityMatrix,
    ModelError, PureQubit, Register, StateDiagnostics, ThermalAncilla, MAX_QUBITS, MIN_QUBITS,
};
use crate::qmat::{ComplexMatrix, QmatError};

/// Default number of trailing steps kept by orbit sweeps and verdicts.
pub const DEFAULT_WINDOW_LEN: usize = 60;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(
        "state left the density-matrix bounds at step {step}: trace error {:e}, hermiticity {:e}, min eigenvalue {:e}",
        .diagnostics.trace_error, .diagnostics.hermiticity, .diagnostics.min_eigenvalue
    )]
    InvariantViolation { step: usize, diagnostics: StateDiagnostics },
    #[error("schedule is for {schedule} qubits but the register has {register}")]
    ScheduleMismatch { schedule: usize, register: usize },
    #[error("expected one or two system states, got {0}")]
    SystemCount(usize),
    #[error("schedule needs at least one event")]
    EmptySchedule,
    #[error("p grid is empty")]
    EmptyGrid,
    #[error("window {start}..{end} does not fit in steps 0..={n_collisions}")]
    BadWindow { start: usize, end: usize, n_collisions: usize },
}

/// Which pairs a random schedule may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairSet {
    /// Every unordered pair, ancilla–ancilla collisions included.
    #[default]
    All,
    /// Only pairs `(0, j)`.
    SystemAncilla,
}

impl PairSet {
    pub fn pairs(self, n_qubits: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n_qubits {
            for j in (i + 1)..n_qubits {
                if self == PairSet::All || i == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub n_qubits: usize,
    pub events: Vec<(usize, usize)>,
    /// Present iff the schedule was drawn at random.
    pub seed: Option<u64>,
}

impl Schedule {
    pub fn new(n_qubits: usize, events: Vec<(usize, usize)>) -> Result<Self, DynamicsError> {
        for &pair in &events {
            validate_pair(n_qubits, pair)?;
        }
        Ok(Self { n_qubits, events, seed: None })
    }

    /// The same pair `count` times.
    pub fn repeated(n_qubits: usize, pair: (usize, usize), count: usize) -> Result<Self, DynamicsError> {
        Self::new(n_qubits, vec![pair; count])
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Events as letter pairs, e.g. `AC BC AB`.
    pub fn labelled(&self) -> Vec<String> {
        const L: [char; MAX_QUBITS] = crate::model::QUBIT_LABELS;
        self.events.iter().map(|&(i, j)| format!("{}{}", L[i], L[j])).collect()
    }
}

/// Uniform, independent draws over all unordered pairs.
pub fn random_schedule(n_qubits: usize, n_events: usize, seed: u64) -> Result<Schedule, DynamicsError> {
    random_schedule_from(n_qubits, n_events, seed, PairSet::All)
}

pub fn random_schedule_from(
    n_qubits: usize,
    n_events: usize,
    seed: u64,
    set: PairSet,
) -> Result<Schedule, DynamicsError> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n_qubits) {
        return Err(ModelError::QubitCount(n_qubits).into());
    }
    if n_events == 0 {
        return Err(DynamicsError::EmptySchedule);
    }
    let pairs = set.pairs(n_qubits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let events = (0..n_events).map(|_| pairs[rng.random_range(0..pairs.len())]).collect();
    Ok(Schedule { n_qubits, events, seed: Some(seed) })
}

/// One collision: `ρ ← U ρ U†`.
pub fn collide(reg: &Register, pair: (usize, usize), p: f64) -> Result<Register, DynamicsError> {
    let u = pair_collision_unitary(reg.n_qubits(), pair, p)?;
    Ok(reg.apply(&u)?)
}

/// Metric values after `n` collisions.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub n: usize,
    pub coherence_a: f64,
    /// l1 coherence of the reduced environment state.
    pub coherence_env: Option<f64>,
    /// Negativity across the system | environment cut.
    pub negativity: Option<f64>,
    /// Distance between the two system states of a paired run.
    pub trace_distance: Option<f64>,
    /// Diagonal of ρ_A: (ground, excited) populations.
    pub populations_a: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub steps: Vec<StepRecord>,
    pub p: f64,
    pub ancillas: Vec<ThermalAncilla>,
    /// `None` for the fresh-ancilla map.
    pub schedule: Option<Schedule>,
    /// Final register of each run (or final ρ_A for the fresh-ancilla map).
    pub final_states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn coherence_series(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.coherence_a).collect()
    }

    /// Trace-distance series; empty for unpaired runs.
    pub fn distance_series(&self) -> Vec<f64> {
        self.steps.iter().filter_map(|s| s.trace_distance).collect()
    }

    pub fn negativity_series(&self) -> Vec<f64> {
        self.steps.iter().filter_map(|s| s.negativity).collect()
    }

    pub fn env_coherence_series(&self) -> Vec<f64> {
        self.steps.iter().filter_map(|s| s.coherence_env).collect()
    }
}

fn checked(reg: &Register, step: usize) -> Result<(), DynamicsError> {
    let diagnostics = reg.rho().diagnostics()?;
    if !diagnostics.is_valid() {
        return Err(DynamicsError::InvariantViolation { step, diagnostics });
    }
    Ok(())
}

fn record(n: usize, regs: &[Register]) -> Result<StepRecord, DynamicsError> {
    let sys = regs[0].system();
    let populations = sys.populations();
    let trace_distance = match regs.get(1) {
        Some(other) => Some(trace_distance(&sys, &other.system())?),
        None => None,
    };
    Ok(StepRecord {
        n,
        coherence_a: l1_coherence(&sys),
        coherence_env: Some(l1_coherence(&regs[0].environment())),
        negativity: Some(system_negativity(regs[0].rho())?),
        trace_distance,
        populations_a: [populations[0], populations[1]],
    })
}

/// Evolves one system state, or two under the identical schedule, recording
/// metrics after every collision. Each register state is checked against
/// the density-matrix bounds; a violation is an error.
pub fn run_trajectory(
    systems: &[PureQubit],
    ancillas: &[ThermalAncilla],
    p: f64,
    schedule: &Schedule,
) -> Result<Trajectory, DynamicsError> {
    if systems.is_empty() || systems.len() > 2 {
        return Err(DynamicsError::SystemCount(systems.len()));
    }
    let n_qubits = 1 + ancillas.len();
    if schedule.n_qubits != n_qubits {
        return Err(DynamicsError::ScheduleMismatch { schedule: schedule.n_qubits, register: n_qubits });
    }

    let mut unitaries: HashMap<(usize, usize), CollisionUnitary> = HashMap::new();
    for &pair in &schedule.events {
        if let std::collections::hash_map::Entry::Vacant(slot) = unitaries.entry(pair) {
            slot.insert(pair_collision_unitary(n_qubits, pair, p)?);
        }
    }
    if unitaries.is_empty() && !(0.0..=1.0).contains(&p) {
        return Err(ModelError::ProbabilityOutOfRange(p).into());
    }

    let mut regs = systems.iter().map(|s| composite_initial(s, ancillas)).collect::<Result<Vec<_>, _>>()?;
    let mut steps = Vec::with_capacity(schedule.len() + 1);
    for reg in &regs {
        checked(reg, 0)?;
    }
    steps.push(record(0, &regs)?);

    for (k, pair) in schedule.events.iter().enumerate() {
        let u = &unitaries[pair];
        for reg in regs.iter_mut() {
            *reg = reg.apply(u)?;
            checked(reg, k + 1)?;
        }
        steps.push(record(k + 1, &regs)?);
    }

    Ok(Trajectory {
        steps,
        p,
        ancillas: ancillas.to_vec(),
        schedule: Some(schedule.clone()),
        final_states: regs.into_iter().map(|r| r.rho().clone()).collect(),
    })
}

/// One application of the fresh-ancilla map: a collision with a new thermal
/// ancilla, which is then discarded. Implemented with the four Kraus
/// operators of generalized amplitude damping.
pub fn markovian_step(rho_a: &DensityMatrix, p: f64, ancilla: &ThermalAncilla) -> Result<DensityMatrix, DynamicsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::ProbabilityOutOfRange(p).into());
    }
    if rho_a.dim() != 2 {
        let err = QmatError::DimensionMismatch { expected: 2, actual: rho_a.dim() };
        return Err(ModelError::Qmat(err).into());
    }
    let (stay, hop) = ((1.0 - p).sqrt(), p.sqrt());
    let (sg, se) = (ancilla.w_g.sqrt(), ancilla.w_e.sqrt());
    #[rustfmt::skip]
    let kraus = [
        [sg, 0.0, 0.0, sg * stay],      // ancilla g → g
        [0.0, sg * hop, 0.0, 0.0],      // ancilla g → e, system e → g
        [se * stay, 0.0, 0.0, se],      // ancilla e → e
        [0.0, 0.0, -se * hop, 0.0],     // ancilla e → g, system g → e
    ];
    let mut out = ComplexMatrix::zeros(2);
    for k in &kraus {
        let km = ComplexMatrix::from_real(2, k).expect("2x2");
        out = &out + &rho_a.matrix().conjugate_by(&km);
    }
    Ok(DensityMatrix::new_unchecked(out, vec![2]))
}

/// Iterates the fresh-ancilla map on the paired states, recording coherence
/// of the first state and the distance between the two.
pub fn markovian_trajectory(
    pair: [PureQubit; 2],
    p: f64,
    ancilla: &ThermalAncilla,
    n_steps: usize,
) -> Result<Trajectory, DynamicsError> {
    let mut states = pair.map(|q| pure_qubit_density(&q));
    let mut steps = Vec::with_capacity(n_steps + 1);
    let rec = |n: usize, s: &[DensityMatrix; 2]| -> Result<StepRecord, DynamicsError> {
        let pops = s[0].populations();
        Ok(StepRecord {
            n,
            coherence_a: l1_coherence(&s[0]),
            coherence_env: None,
            negativity: None,
            trace_distance: Some(trace_distance(&s[0], &s[1])?),
            populations_a: [pops[0], pops[1]],
        })
    };
    steps.push(rec(0, &states)?);
    for n in 1..=n_steps {
        for s in states.iter_mut() {
            *s = markovian_step(s, p, ancilla)?;
            let diagnostics = s.diagnostics()?;
            if !diagnostics.is_valid() {
                return Err(DynamicsError::InvariantViolation { step: n, diagnostics });
            }
        }
        steps.push(rec(n, &states)?);
    }
    Ok(Trajectory { steps, p, ancillas: vec![*ancilla], schedule: None, final_states: states.to_vec() })
}

/// Half-open range of step indices `start..end` within `0..=n_collisions`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    /// The last `len` steps of a run with `n_collisions` collisions.
    pub fn last(len: usize, n_collisions: usize) -> Self {
        let end = n_collisions + 1;
        Self { start: end.saturating_sub(len), end }
    }

    pub fn validate(&self, n_collisions: usize) -> Result<(), DynamicsError> {
        if self.start >= self.end || self.end > n_collisions + 1 {
            return Err(DynamicsError::BadWindow { start: self.start, end: self.end, n_collisions });
        }
        Ok(())
    }
}

/// Metric recorded by an orbit sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitMetric {
    #[default]
    CoherenceA,
    CoherenceEnv,
    Negativity,
    TraceDistance,
}

impl OrbitMetric {
    pub fn name(self) -> &'static str {
        match self {
            OrbitMetric::CoherenceA => "coherence_A",
            OrbitMetric::CoherenceEnv => "coherence_env",
            OrbitMetric::Negativity => "negativity",
            OrbitMetric::TraceDistance => "trace_distance",
        }
    }
}

/// Single-ancilla, repeated (A, B) collisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitScenario {
    pub system: PureQubit,
    pub ancilla: ThermalAncilla,
    pub metric: OrbitMetric,
}

impl Default for OrbitScenario {
    fn default() -> Self {
        Self {
            system: PureQubit::plus(),
            ancilla: ThermalAncilla { w_g: 0.8, w_e: 0.2 },
            metric: OrbitMetric::CoherenceA,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDiagram {
    pub p_grid: Vec<f64>,
    pub window: Window,
    pub metric: OrbitMetric,
    /// `values[k]` holds the windowed metric values for `p_grid[k]`.
    pub values: Vec<Vec<f64>>,
}

/// Long-term metric values for every `p` in the grid. Grid points run in
/// parallel; results keep grid order.
pub fn orbit_sweep(
    p_grid: &[f64],
    n_collisions: usize,
    window: Window,
    scenario: &OrbitScenario,
) -> Result<OrbitDiagram, DynamicsError> {
    if p_grid.is_empty() {
        return Err(DynamicsError::EmptyGrid);
    }
    window.validate(n_collisions)?;
    let schedule = Schedule::repeated(2, (0, 1), n_collisions)?;
    let systems: Vec<PureQubit> = match scenario.metric {
        OrbitMetric::TraceDistance => vec![scenario.system, orthogonal(&scenario.system)],
        _ => vec![scenario.system],
    };
    let values = p_grid
        .par_iter()
        .map(|&p| {
            let traj = run_trajectory(&systems, &[scenario.ancilla], p, &schedule)?;
            let series = match scenario.metric {
                OrbitMetric::CoherenceA => traj.coherence_series(),
                OrbitMetric::CoherenceEnv => traj.env_coherence_series(),
                OrbitMetric::Negativity => traj.negativity_series(),
                OrbitMetric::TraceDistance => traj.distance_series(),
            };
            Ok(series[window.start..window.end].to_vec())
        })
        .collect::<Result<Vec<_>, DynamicsError>>()?;
    Ok(OrbitDiagram { p_grid: p_grid.to_vec(), window, metric: scenario.metric, values })
}

/// `b*|g⟩ − a*|e⟩`, orthogonal to `a|g⟩ + b|e⟩`.
pub fn orthogonal(q: &PureQubit) -> PureQubit {
    PureQubit { a: q.b.conj(), b: -q.a.conj() }
}

/// Per-seed mean of the trace distance over steps `1..=n_collisions`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub n_ancillas: usize,
    pub seeds: Vec<u64>,
    pub per_seed_mean: Vec<f64>,
    pub mean: f64,
}

/// Averages the paired-state trace distance over random schedules, one per
/// seed. Seeds run in parallel and are merged in seed order.
pub fn distance_ensemble(
    ancillas: &[ThermalAncilla],
    p: f64,
    n_collisions: usize,
    seeds: &[u64],
    set: PairSet,
) -> Result<EnsembleSummary, DynamicsError> {
    let n_qubits = ancillas.len() + 1;
    let pair = [PureQubit::plus(), PureQubit::minus()];
    let per_seed_mean = seeds
        .par_iter()
        .map(|&seed| {
            let schedule = random_schedule_from(n_qubits, n_collisions, seed, set)?;
            let traj = run_trajectory(&pair, ancillas, p, &schedule)?;
            let d = traj.distance_series();
            Ok(d[1..].iter().sum::<f64>() / (d.len() - 1) as f64)
        })
        .collect::<Result<Vec<f64>, DynamicsError>>()?;
    let mean = per_seed_mean.iter().sum::<f64>() / per_seed_mean.len().max(1) as f64;
    Ok(EnsembleSummary { n_ancillas: ancillas.len(), seeds: seeds.to_vec(), per_seed_mean, mean })
}
