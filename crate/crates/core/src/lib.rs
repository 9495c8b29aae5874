//! Scalable state-independent contextuality witnesses on graph states.
//!
//! This crate builds, for every n ≥ 3, a noncontextuality expression over
//! n single-slot observables A_i and n companion observables B_j, computes
//! its exact classical and quantum bounds, verifies that multiqubit graph
//! states reach the quantum bound using exact stabilizer algebra, and turns
//! noisy experimental statistics into certified fidelity lower bounds for
//! the prepared state and measured observables.
//!
//! The layers, bottom up:
//!
//! - [`pauli`]: bit-packed Pauli strings with exact quarter-phase tracking;
//! - [`dense`]: small dense complex linear-algebra helpers;
//! - [`graph`] and [`stabilizer`]: graphs, their stabilizer generators and
//!   state vectors, and exact Pauli expectations on stabilizer states;
//! - [`inequality`]: the witness expressions, exact classical/quantum
//!   bounds, liftings, and the compatibility hypergraph;
//! - [`realization`]: states plus observables under two engines (symbolic
//!   stabilizer and dense matrix), correlators, witness values, and the
//!   commutation-structure report;
//! - [`robustness`]: ε extraction from noisy statistics, certified
//!   fidelity lower bounds, Jordan-block noise models with closed-form
//!   true fidelities, self-testing predicates, and randomized validation
//!   of the certification theorems.

pub mod dense;
pub mod error;
pub mod graph;
pub mod inequality;
pub mod pauli;
pub mod realization;
pub mod robustness;
pub mod stabilizer;

pub use dense::{CMatrix, CVector};
pub use error::{Error, Result};
pub use graph::Graph;
pub use inequality::{
    classical_bound_fast, lifting_decomposition, quantum_bound, CorrelatorTerm, Hyperedge,
    Hypergraph, Inequality, LabelKind, Lifting, ObservableLabel,
};
pub use pauli::{PauliLetter, PauliString, Phase};
pub use realization::{Backend, CompatibilityReport, PairResidual, Realization};
pub use robustness::{
    actual_fidelities, anticommutator_residual, canonical_form_check, certify_jordan,
    certify_realization, certify_statistics, epsilon_from_statistics, fidelity_bounds,
    ideal_block_amplitudes, invariant_subspace, jordan_realization, validate_robustness,
    ActualFidelities, CanonicalFormReport, InvariantSubspace, JordanBlock, JordanBlockSpec,
    RobustnessReport, Statistics, ValidationConfig, ValidationOutcome, ValidationViolation,
};
pub use stabilizer::StabilizerGroup;

/// Largest site count for which dense 2^n-dimensional objects are built.
pub const DENSE_QUBIT_CAP: usize = 12;
