//! Qubit collision models of open quantum systems.
//!
//! A system qubit `A` collides pairwise with up to three thermal ancillas
//! (`B`, `C`, `D`), and ancillas may collide with each other. The crate
//! builds the collision unitaries, evolves the joint density matrix along a
//! schedule and tracks the coherence of `A`, system–environment negativity
//! and the trace distance between two evolved system states, whose revivals
//! witness information backflow.
//!
//! * [`qmat`]: dense complex matrices, partial trace/transpose, Jacobi eigensolver
//! * [`model`]: states, registers and the pairwise collision unitary
//! * [`metrics`]: l1 coherence, negativity, trace distance, backflow events
//! * [`dynamics`]: schedules, trajectories, the fresh-ancilla map, orbit sweeps
//! * [`analysis`]: period detection and value clustering
//! * [`cli`]: experiment configuration and data-file emission

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod metrics;
pub mod model;
pub mod qmat;

pub use analysis::{detect_period, distinct_values, PeriodOptions, SeriesLabel, SeriesVerdict};
pub use dynamics::{
    collide, markovian_step, markovian_trajectory, orbit_sweep, random_schedule, run_trajectory, OrbitDiagram,
    OrbitMetric, OrbitScenario, Schedule, StepRecord, Trajectory, Window,
};
pub use metrics::{backflow_events, l1_coherence, negativity, trace_distance, BackflowReport};
pub use model::{
    composite_initial, pair_collision_unitary, pure_qubit_density, thermal_density, thermal_from_beta,
    CollisionUnitary, DensityMatrix, PureQubit, Register, ThermalAncilla,
};
pub use qmat::{hermitian_eigenvalues, kron, partial_trace, partial_transpose, trace_norm_hermitian, ComplexMatrix};
