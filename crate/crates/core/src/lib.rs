//! Ontological models for finite quantum preparation/measurement families.
//!
//! The crate answers one question from several directions: how much of the
//! overlap between non-orthogonal quantum states can an underlying
//! statistical (psi-epistemic) model explain?
//!
//! - [`quantum`]: pure states, projective measurements, Born probabilities,
//!   and the explicit d-dimensional family the bounds are built on.
//! - [`ontic`]: the ontological-models formalism — epistemic states,
//!   response functions, reproduction checks, supports, overlap measures,
//!   trace-norm distances, and a JSON model file format.
//! - [`vertexlp`]: reduction to deterministic outcome assignments, the
//!   certainty-set combinatorics, and linear programs (solved by an
//!   in-crate dense simplex with Bland's rule) that certify overlap bounds.
//! - [`bounds`]: every closed-form bound, including the noise-threshold
//!   reconstruction.

pub mod bounds;
pub mod ontic;
pub mod quantum;
pub mod vertexlp;

pub use bounds::{
    max_epistemic_target, noise_crossover_scan, omega_bound, ratio_report,
    symmetric_full_overlap_cost, tradeoff_slack, BoundsError, NoiseScan, NoiseScanRow,
    OmegaProfile,
};
pub use ontic::{
    classical_trace_distance, guess_probability, min_overlap, psi_ontic_model, support_overlap,
    EpistemicState, OnticError, OnticSpace, OntologicalModel, ResponseSchema, SupportViolation,
    ValidityReport, ViolationKind,
};
pub use quantum::{
    born, build_family, overlap, quantum_trace_distance, table1, ProbabilityTable,
    ProjectiveMeasurement, PureState, QuantumError, StateFamily,
};
pub use vertexlp::programs::{
    max_pairwise_min_overlap, max_pairwise_min_overlap_for, max_uniform_omega,
    max_uniform_omega_for, non_orthogonal_pairs, reproduction_constraints, uniform_omega_program,
    witness_model, MinOverlapSolution, OmegaSolution, ReproductionSystem,
};
pub use vertexlp::simplex::{
    solve_lp, ConstraintSense, LinearProgram, LpSolution, LpStatus, DEFAULT_MAX_PIVOTS,
};
pub use vertexlp::{
    certainty_set, enumerate_assignments, triple_intersection_report, Assignment, CertaintySet,
    TripleIntersectionReport, VertexLpError, DEFAULT_ASSIGNMENT_CAP,
};
