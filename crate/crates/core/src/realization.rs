//! Quantum realizations of the witness observables and their evaluation.
//!
//! A realization assigns operators to the 2n labels A_1..A_n, B_1..B_n and
//! fixes a state, through one of two backends:
//!
//! - **symbolic**: Pauli strings plus a stabilizer group — scalable to
//!   hundreds of sites, every correlator exactly −1, 0, or +1;
//! - **dense**: explicit Hermitian matrices plus an amplitude vector — the
//!   independent numerical oracle, capped at small dimensions.
//!
//! The canonical maximally violating realization puts A_i = X_i, B_j = Z_j
//! on the complete-graph state; an inequivalent three-slot realization
//! (A_2 = X⊗Z on sites 2,3 and so on) reaches the same maximum on the
//! star-graph state. `compatibility_report` surfaces how far a realization
//! is from the required commutation structure instead of assuming it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dense::{spectral_norm, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inequality::{CorrelatorTerm, Inequality, LabelKind, ObservableLabel};
use crate::pauli::{PauliLetter, PauliString};
use crate::stabilizer::StabilizerGroup;
use crate::DENSE_QUBIT_CAP;

/// Tolerance for dense-backend structural checks (Hermiticity, involution,
/// commutation residuals).
pub const DENSE_STRUCTURE_TOL: f64 = 1e-9;
/// Tolerance on the norm of a dense state vector.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Which engine a realization uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Pauli strings and a stabilizer group; exact integer correlators.
    Symbolic,
    /// Explicit matrices and an amplitude vector; floating-point oracle.
    Dense,
}

#[derive(Debug, Clone)]
enum Engine {
    Symbolic {
        a: Vec<PauliString>,
        b: Vec<PauliString>,
        state: StabilizerGroup,
    },
    Dense {
        a: Vec<CMatrix>,
        b: Vec<CMatrix>,
        state: CVector,
    },
}

/// A state together with operators for every observable label.
///
/// Serializes as a tagged object: symbolic realizations list one Pauli
/// literal per label plus the stabilizer generators; dense realizations
/// list row-major complex matrices (entries as `[re, im]` pairs) and an
/// amplitude vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RealizationRepr", into = "RealizationRepr")]
pub struct Realization {
    n: usize,
    engine: Engine,
}

impl Realization {
    /// Builds a symbolic realization after validating its invariants: all
    /// strings act on the stabilizer's n qubits and are Hermitian (hence
    /// square to the identity exactly).
    pub fn symbolic(
        a: Vec<PauliString>,
        b: Vec<PauliString>,
        state: StabilizerGroup,
    ) -> Result<Self> {
        let n = state.n();
        if a.len() != n || b.len() != n {
            return Err(Error::InvalidRealization(format!(
                "expected {n} A and {n} B observables, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        for (name, obs) in label_names(&a, &b) {
            if obs.n() != n {
                return Err(Error::InvalidRealization(format!(
                    "{name} acts on {} qubits, expected {n}",
                    obs.n()
                )));
            }
            if !obs.is_hermitian() {
                return Err(Error::InvalidRealization(format!(
                    "{name} = {obs} is not Hermitian"
                )));
            }
        }
        Ok(Self {
            n,
            engine: Engine::Symbolic { a, b, state },
        })
    }

    /// Builds a dense realization from raw matrices, validating every
    /// invariant numerically: one square matrix of the common dimension
    /// 2^m (n ≤ m ≤ cap) per label, each Hermitian and an involution to
    /// within 1e−9 (Frobenius norm, which dominates the operator norm),
    /// and a unit-norm state.
    pub fn dense(a: Vec<CMatrix>, b: Vec<CMatrix>, state: CVector) -> Result<Self> {
        let n = a.len();
        if b.len() != n || n == 0 {
            return Err(Error::InvalidRealization(format!(
                "expected matching A and B observable counts, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        let dim = state.len();
        if !dim.is_power_of_two() || dim < (1 << n) {
            return Err(Error::InvalidRealization(format!(
                "state dimension {dim} is not a power of two covering {n} slots"
            )));
        }
        if dim.trailing_zeros() as usize > DENSE_QUBIT_CAP {
            return Err(Error::CapacityExceeded {
                n: dim.trailing_zeros() as usize,
                cap: DENSE_QUBIT_CAP,
            });
        }
        if (state.norm() - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidRealization(format!(
                "state norm {} is not 1 within {STATE_NORM_TOL:e}",
                state.norm()
            )));
        }
        let eye = CMatrix::identity(dim, dim);
        for (name, obs) in label_names(&a, &b) {
            if obs.nrows() != dim || obs.ncols() != dim {
                return Err(Error::InvalidRealization(format!(
                    "{name} is {}×{}, expected {dim}×{dim}",
                    obs.nrows(),
                    obs.ncols()
                )));
            }
            let herm = (obs - obs.adjoint()).norm();
            if herm > DENSE_STRUCTURE_TOL {
                return Err(Error::InvalidRealization(format!(
                    "{name} is not Hermitian (residual {herm:.3e})"
                )));
            }
            let invol = (obs * obs - &eye).norm();
            if invol > DENSE_STRUCTURE_TOL {
                return Err(Error::InvalidRealization(format!(
                    "{name} does not square to the identity (residual {invol:.3e})"
                )));
            }
        }
        Ok(Self {
            n,
            engine: Engine::Dense { a, b, state },
        })
    }

    /// Builds a dense realization from Pauli strings and a state vector.
    ///
    /// Hermiticity and involution hold exactly for Hermitian Pauli strings,
    /// so only cheap checks are needed — this avoids the O(dim³) numeric
    /// validation of [`Realization::dense`] and is the preferred path when
    /// the observables are algebraically known.
    pub fn dense_from_paulis(a: &[PauliString], b: &[PauliString], state: CVector) -> Result<Self> {
        let n = a.len();
        if b.len() != n || n == 0 {
            return Err(Error::InvalidRealization(format!(
                "expected matching A and B observable counts, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if state.len() != 1 << n {
            return Err(Error::InvalidRealization(format!(
                "state dimension {} does not match 2^{n}",
                state.len()
            )));
        }
        if (state.norm() - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidRealization(format!(
                "state norm {} is not 1 within {STATE_NORM_TOL:e}",
                state.norm()
            )));
        }
        let mut am = Vec::with_capacity(n);
        let mut bm = Vec::with_capacity(n);
        for (name, obs) in label_names(a, b) {
            if obs.n() != n {
                return Err(Error::InvalidRealization(format!(
                    "{name} acts on {} qubits, expected {n}",
                    obs.n()
                )));
            }
            if !obs.is_hermitian() {
                return Err(Error::InvalidRealization(format!(
                    "{name} = {obs} is not Hermitian"
                )));
            }
        }
        for obs in a {
            am.push(obs.to_dense()?);
        }
        for obs in b {
            bm.push(obs.to_dense()?);
        }
        Ok(Self {
            n,
            engine: Engine::Dense {
                a: am,
                b: bm,
                state,
            },
        })
    }

    /// The canonical maximally violating realization: A_i = X_i, B_j = Z_j
    /// on the complete-graph state of n qubits.
    pub fn ideal(n: usize, backend: Backend) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!(
                "the witness family starts at n = 3, got n = {n}"
            )));
        }
        let a: Vec<PauliString> = (1..=n)
            .map(|i| PauliString::embed(PauliLetter::X, i, n))
            .collect::<Result<_>>()?;
        let b: Vec<PauliString> = (1..=n)
            .map(|j| PauliString::embed(PauliLetter::Z, j, n))
            .collect::<Result<_>>()?;
        let graph = Graph::complete(n)?;
        match backend {
            Backend::Symbolic => Self::symbolic(a, b, graph.stabilizer_generators()),
            Backend::Dense => Self::dense_from_paulis(&a, &b, graph.state_vector()?),
        }
    }

    /// A three-slot realization inequivalent to the canonical one under
    /// local unitaries, yet reaching the same maximal witness value: the
    /// products behind its positive terms are exactly the star-graph
    /// stabilizer generators {XZZ, ZXI, ZIX}, so its state is the
    /// star-graph state. Runs on the exact symbolic engine.
    pub fn alternative_3() -> Result<Self> {
        let a: Vec<PauliString> = ["XII", "IXZ", "IZX"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?;
        let b: Vec<PauliString> = ["ZII", "IZI", "IIZ"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?;
        Self::symbolic(a, b, Graph::star(3)?.stabilizer_generators())
    }

    /// The witness index n (number of slot pairs, not the log-dimension).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Which engine this realization runs on.
    pub fn backend(&self) -> Backend {
        match &self.engine {
            Engine::Symbolic { .. } => Backend::Symbolic,
            Engine::Dense { .. } => Backend::Dense,
        }
    }

    /// Symbolic parts (A observables, B observables, stabilizer state), if
    /// this is a symbolic realization.
    pub fn symbolic_parts(&self) -> Option<(&[PauliString], &[PauliString], &StabilizerGroup)> {
        match &self.engine {
            Engine::Symbolic { a, b, state } => Some((a, b, state)),
            Engine::Dense { .. } => None,
        }
    }

    /// Dense parts (A matrices, B matrices, state vector), if this is a
    /// dense realization.
    pub fn dense_parts(&self) -> Option<(&[CMatrix], &[CMatrix], &CVector)> {
        match &self.engine {
            Engine::Dense { a, b, state } => Some((a, b, state)),
            Engine::Symbolic { .. } => None,
        }
    }

    /// A single correlator ⟨Π_slot O_slot⟩, factors in slot order.
    ///
    /// Symbolic: exactly −1, 0, or +1. Dense: the real part of
    /// ⟨ψ|Π O|ψ⟩, with the imaginary part required below 1e−9 — a
    /// non-Hermitian product signals that the factors do not commute as the
    /// term requires.
    pub fn correlator(&self, term: &CorrelatorTerm) -> Result<f64> {
        self.check_term(term)?;
        match &self.engine {
            Engine::Symbolic { a, b, state } => {
                let mut product: Option<PauliString> = None;
                for label in term.labels(self.n) {
                    let obs = pick(a, b, label);
                    product = Some(match product {
                        None => obs.clone(),
                        Some(p) => p.multiply(obs)?,
                    });
                }
                let product = product.expect("n ≥ 1 slots");
                Ok(state.expectation(&product)? as f64)
            }
            Engine::Dense { a, b, state } => {
                let mut v = state.clone();
                for label in term.labels(self.n).collect::<Vec<_>>().into_iter().rev() {
                    v = pick(a, b, label) * v;
                }
                let value = state.dotc(&v);
                if value.im.abs() > DENSE_STRUCTURE_TOL {
                    return Err(Error::NonRealCorrelator {
                        imag: value.im,
                        tol: DENSE_STRUCTURE_TOL,
                    });
                }
                Ok(value.re)
            }
        }
    }

    /// The witness value Σ coeff·correlator over all terms.
    ///
    /// Exact for the symbolic backend (integer arithmetic throughout);
    /// floating-point for the dense backend. Terms are evaluated in
    /// parallel.
    pub fn evaluate(&self, ineq: &Inequality) -> Result<f64> {
        match &self.engine {
            Engine::Symbolic { .. } => Ok(self.evaluate_exact(ineq)? as f64),
            Engine::Dense { .. } => {
                if ineq.n() != self.n {
                    return Err(Error::DimensionMismatch(format!(
                        "witness has n = {}, realization n = {}",
                        ineq.n(),
                        self.n
                    )));
                }
                // Collect per-term values first and sum sequentially:
                // float addition is not associative, and the result must
                // not depend on how the parallel reduction splits.
                let values: Vec<f64> = ineq
                    .terms()
                    .par_iter()
                    .map(|t| Ok(t.coefficient() as f64 * self.correlator(t)?))
                    .collect::<Result<_>>()?;
                Ok(values.iter().sum())
            }
        }
    }

    /// The exact integer witness value on the symbolic backend.
    ///
    /// When all required-commuting pairs do commute, each term's product is
    /// assembled from a precomputed all-B product in O(1) multiplications;
    /// otherwise the factors are multiplied literally in slot order.
    pub fn evaluate_exact(&self, ineq: &Inequality) -> Result<i64> {
        let Engine::Symbolic { a, b, state } = &self.engine else {
            return Err(Error::BackendMismatch(
                "exact evaluation needs the symbolic backend".into(),
            ));
        };
        if ineq.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "witness has n = {}, realization n = {}",
                ineq.n(),
                self.n
            )));
        }
        if self.symbolic_commutation_holds()? {
            // All factors in a term commute, so the slot-order product
            // equals A-part times B-part; the B-part is the all-B product
            // with the term's B factors cancelled (each B squares to +1).
            let mut all_b = b[0].clone();
            for obs in &b[1..] {
                all_b = all_b.multiply(obs)?;
            }
            ineq.terms()
                .par_iter()
                .map(|t| {
                    let mut product = all_b.clone();
                    for &site in t.a_sites() {
                        product = product.multiply(&b[site as usize - 1])?;
                    }
                    for &site in t.a_sites().iter().rev() {
                        product = a[site as usize - 1].multiply(&product)?;
                    }
                    Ok(t.coefficient() * state.expectation(&product)? as i64)
                })
                .try_reduce(|| 0, |x, y| Ok(x + y))
        } else {
            ineq.terms()
                .par_iter()
                .map(|t| {
                    let mut product: Option<PauliString> = None;
                    for label in t.labels(self.n) {
                        let obs = pick(a, b, label);
                        product = Some(match product {
                            None => obs.clone(),
                            Some(p) => p.multiply(obs)?,
                        });
                    }
                    let product = product.expect("n ≥ 1 slots");
                    Ok(t.coefficient() * state.expectation(&product)? as i64)
                })
                .try_reduce(|| 0, |x, y| Ok(x + y))
        }
    }

    fn check_term(&self, term: &CorrelatorTerm) -> Result<()> {
        if let Some(&site) = term.a_sites().iter().find(|&&s| s as usize > self.n) {
            return Err(Error::DimensionMismatch(format!(
                "term touches slot {site}, realization has n = {}",
                self.n
            )));
        }
        Ok(())
    }

    fn symbolic_commutation_holds(&self) -> Result<bool> {
        let Engine::Symbolic { a, b, .. } = &self.engine else {
            return Ok(false);
        };
        for i in 0..self.n {
            for j in 0..self.n {
                if i < j && !(a[i].commutes(&a[j])? && b[i].commutes(&b[j])?) {
                    return Ok(false);
                }
                if i != j && !a[i].commutes(&b[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Residuals of the required commutation structure, plus the
    /// same-index anticommutator diagnostics.
    ///
    /// Required-commuting pairs are [A_i,A_j], [B_i,B_j] (i < j) and
    /// [A_i,B_j] (i ≠ j) — 4·C(n,2) pairs. The realization is admissible
    /// when all their residuals vanish within 1e−9. Same-index pairs
    /// report ‖{A_i,B_i}|ψ⟩‖ (dense) or the operator-norm anticommutator
    /// (symbolic, where it is exactly 0 or 2); these do not gate
    /// admissibility but witness how far the pair is from anticommuting.
    pub fn compatibility_report(&self) -> Result<CompatibilityReport> {
        let mut commuting_pairs = Vec::with_capacity(2 * self.n * (self.n - 1));
        let mut same_index = Vec::with_capacity(self.n);
        match &self.engine {
            Engine::Symbolic { a, b, .. } => {
                for i in 0..self.n {
                    for j in 0..self.n {
                        if i < j {
                            commuting_pairs.push(pair_residual_symbolic(
                                LabelKind::A,
                                i,
                                LabelKind::A,
                                j,
                                &a[i],
                                &a[j],
                            )?);
                            commuting_pairs.push(pair_residual_symbolic(
                                LabelKind::B,
                                i,
                                LabelKind::B,
                                j,
                                &b[i],
                                &b[j],
                            )?);
                        }
                        if i != j {
                            commuting_pairs.push(pair_residual_symbolic(
                                LabelKind::A,
                                i,
                                LabelKind::B,
                                j,
                                &a[i],
                                &b[j],
                            )?);
                        }
                    }
                }
                for i in 0..self.n {
                    // ‖{P,Q}‖ for unit-norm Pauli products: 0 if they
                    // anticommute, 2 otherwise.
                    let residual = if a[i].commutes(&b[i])? { 2.0 } else { 0.0 };
                    same_index.push(PairResidual {
                        left: label(LabelKind::A, i),
                        right: label(LabelKind::B, i),
                        residual,
                    });
                }
            }
            Engine::Dense { a, b, state } => {
                for i in 0..self.n {
                    for j in 0..self.n {
                        if i < j {
                            commuting_pairs.push(pair_residual_dense(
                                LabelKind::A,
                                i,
                                LabelKind::A,
                                j,
                                &a[i],
                                &a[j],
                            ));
                            commuting_pairs.push(pair_residual_dense(
                                LabelKind::B,
                                i,
                                LabelKind::B,
                                j,
                                &b[i],
                                &b[j],
                            ));
                        }
                        if i != j {
                            commuting_pairs.push(pair_residual_dense(
                                LabelKind::A,
                                i,
                                LabelKind::B,
                                j,
                                &a[i],
                                &b[j],
                            ));
                        }
                    }
                }
                for i in 0..self.n {
                    let anti = (&a[i] * &b[i] + &b[i] * &a[i]) * state;
                    same_index.push(PairResidual {
                        left: label(LabelKind::A, i),
                        right: label(LabelKind::B, i),
                        residual: anti.norm(),
                    });
                }
            }
        }
        let max_commutation_residual = commuting_pairs
            .iter()
            .fold(0.0f64, |acc, p| acc.max(p.residual));
        Ok(CompatibilityReport {
            admissible: max_commutation_residual <= DENSE_STRUCTURE_TOL,
            max_commutation_residual,
            commuting_pairs,
            same_index,
        })
    }
}

fn label(kind: LabelKind, index0: usize) -> ObservableLabel {
    ObservableLabel {
        kind,
        index: index0 as u32 + 1,
    }
}

fn pick<'a, T>(a: &'a [T], b: &'a [T], l: ObservableLabel) -> &'a T {
    match l.kind {
        LabelKind::A => &a[l.index as usize - 1],
        LabelKind::B => &b[l.index as usize - 1],
    }
}

fn label_names<'a, T>(a: &'a [T], b: &'a [T]) -> impl Iterator<Item = (String, &'a T)> {
    a.iter()
        .enumerate()
        .map(|(i, o)| (format!("A{}", i + 1), o))
        .chain(
            b.iter()
                .enumerate()
                .map(|(j, o)| (format!("B{}", j + 1), o)),
        )
}

fn pair_residual_symbolic(
    lk: LabelKind,
    li: usize,
    rk: LabelKind,
    ri: usize,
    p: &PauliString,
    q: &PauliString,
) -> Result<PairResidual> {
    // ‖[P,Q]‖ for unit-norm Pauli products: 0 if commuting, 2 otherwise.
    let residual = if p.commutes(q)? { 0.0 } else { 2.0 };
    Ok(PairResidual {
        left: label(lk, li),
        right: label(rk, ri),
        residual,
    })
}

fn pair_residual_dense(
    lk: LabelKind,
    li: usize,
    rk: LabelKind,
    ri: usize,
    p: &CMatrix,
    q: &CMatrix,
) -> PairResidual {
    PairResidual {
        left: label(lk, li),
        right: label(rk, ri),
        residual: spectral_norm(&(p * q - q * p)),
    }
}

/// One pair of observables and its residual (commutator norm for required
/// pairs, anticommutator norm for same-index pairs).
#[derive(Debug, Clone, Serialize)]
pub struct PairResidual {
    /// First observable.
    pub left: ObservableLabel,
    /// Second observable.
    pub right: ObservableLabel,
    /// Operator-norm (or on-state) residual; 0 means the requirement holds
    /// exactly.
    pub residual: f64,
}

/// The commutation-structure report of [`Realization::compatibility_report`].
#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityReport {
    /// Whether all required-commuting residuals vanish within 1e−9.
    pub admissible: bool,
    /// The largest required-commuting residual.
    pub max_commutation_residual: f64,
    /// All 4·C(n,2) required-commuting pairs with their residuals.
    pub commuting_pairs: Vec<PairResidual>,
    /// Same-index anticommutator diagnostics ‖{A_i,B_i}|ψ⟩‖ (or the exact
    /// symbolic anticommutator norm).
    pub same_index: Vec<PairResidual>,
}

// --- serialization ---

#[derive(Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
enum RealizationRepr {
    Symbolic {
        n: usize,
        observables: BTreeMap<String, String>,
        stabilizer_generators: Vec<String>,
    },
    Dense {
        n: usize,
        observables: BTreeMap<String, Vec<Vec<(f64, f64)>>>,
        state: Vec<(f64, f64)>,
    },
}

impl From<Realization> for RealizationRepr {
    fn from(r: Realization) -> Self {
        match r.engine {
            Engine::Symbolic { a, b, state } => RealizationRepr::Symbolic {
                n: r.n,
                observables: label_names(&a, &b)
                    .map(|(name, obs)| (name, obs.to_string()))
                    .collect(),
                stabilizer_generators: state.generators().iter().map(|g| g.to_string()).collect(),
            },
            Engine::Dense { a, b, state } => RealizationRepr::Dense {
                n: r.n,
                observables: label_names(&a, &b)
                    .map(|(name, obs)| {
                        let rows = (0..obs.nrows())
                            .map(|r| {
                                (0..obs.ncols())
                                    .map(|c| (obs[(r, c)].re, obs[(r, c)].im))
                                    .collect()
                            })
                            .collect();
                        (name, rows)
                    })
                    .collect(),
                state: state.iter().map(|z| (z.re, z.im)).collect(),
            },
        }
    }
}

impl TryFrom<RealizationRepr> for Realization {
    type Error = Error;

    fn try_from(repr: RealizationRepr) -> Result<Self> {
        match repr {
            RealizationRepr::Symbolic {
                n,
                observables,
                stabilizer_generators,
            } => {
                let (a, b) = take_labeled(n, observables, |name, s: String| {
                    s.parse::<PauliString>()
                        .map_err(|e| Error::SchemaViolation(format!("{name}: {e}")))
                })?;
                let gens = stabilizer_generators
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<PauliString>>>()?;
                Realization::symbolic(a, b, StabilizerGroup::new(gens)?)
            }
            RealizationRepr::Dense {
                n,
                observables,
                state,
            } => {
                let (a, b) = take_labeled(n, observables, |name, rows: Vec<Vec<(f64, f64)>>| {
                    matrix_from_rows(name, rows)
                })?;
                let state = CVector::from_iterator(
                    state.len(),
                    state
                        .iter()
                        .map(|&(re, im)| num_complex::Complex64::new(re, im)),
                );
                Realization::dense(a, b, state)
            }
        }
    }
}

/// Pulls exactly the labels A1..An, B1..Bn out of a keyed map, converting
/// each value.
fn take_labeled<V, T>(
    n: usize,
    mut map: BTreeMap<String, V>,
    mut convert: impl FnMut(&str, V) -> Result<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let mut take = |name: String| -> Result<T> {
        let v = map
            .remove(&name)
            .ok_or_else(|| Error::SchemaViolation(format!("missing observable {name}")))?;
        convert(&name, v)
    };
    let a = (1..=n)
        .map(|i| take(format!("A{i}")))
        .collect::<Result<Vec<_>>>()?;
    let b = (1..=n)
        .map(|j| take(format!("B{j}")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = map.into_keys().next() {
        return Err(Error::SchemaViolation(format!(
            "unexpected observable {extra}"
        )));
    }
    Ok((a, b))
}

fn matrix_from_rows(name: &str, rows: Vec<Vec<(f64, f64)>>) -> Result<CMatrix> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::SchemaViolation(format!(
            "{name}: matrix rows are not all of length {dim}"
        )));
    }
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        let (re, im) = rows[r][c];
        num_complex::Complex64::new(re, im)
    }))
}
