//! Noise-robust certification: from noisy correlator statistics to
//! fidelity lower bounds, with analytic noise models to validate them.
//!
//! The pipeline has three layers:
//!
//! 1. **ε extraction** — the smallest ε for which every measured correlator
//!    satisfies its ideal constraint to within ε (positive terms ≥ 1 − ε,
//!    negative terms ≤ −1 + ε).
//! 2. **Fidelity bounds** — closed-form constants: a witness value within ε
//!    of the maximum certifies state fidelity ≥ 1 − ε₀ with
//!    ε₀ = [8(2^{n−1}−1)+1]·ε, A-observable fidelity 1 (ε₁ = 0), and
//!    B-observable fidelity ≥ 1 − ε₂ with ε₂ = 2^{5−n}·ε (so 25ε and 4ε at
//!    n = 3).
//! 3. **Jordan-block noise models** — realizations assembled from blocks
//!    where A_i = X_i exactly and B_i = cos(θ_{i,l})·Y_i + sin(θ_{i,l})·X_i,
//!    whose true fidelities have closed forms; Monte-Carlo sweeps verify
//!    the bounds never exceed the actuals.
//!
//! Reference frame: in this module the ideal pair is (X, Y) with per-block
//! ideal state (|0…0⟩ + i^{n−1}|1…1⟩)/√2 — unitarily equivalent to the
//! (X, Z) complete-graph picture used elsewhere; the angles live where the
//! fidelity formulas are simplest. One deliberate regularization: the
//! per-pair angle always perturbs the B observable, for every i, so that
//! A-fidelities are identically 1 (a literal per-index role swap for
//! i ≥ 4 would contradict that normalization).
//!
//! Self-testing predicates (`invariant_subspace`, `canonical_form_check`)
//! verify on any dense realization that the span of {B_S|ψ⟩} has dimension
//! 2^n, is invariant under all observables, and carries the canonical
//! algebra — the checkable consequences of maximal violation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dense::{columns_matrix, orthonormal_range, spectral_norm, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::inequality::Inequality;
use crate::realization::Realization;
use crate::DENSE_QUBIT_CAP;

/// Singular values above this count toward the invariant-subspace rank.
pub const RANK_TOL: f64 = 1e-8;
/// Residual tolerance for the self-testing predicates.
pub const PREDICATE_TOL: f64 = 1e-9;
/// Slack allowed when comparing floating-point actuals against bounds in
/// the Monte-Carlo validation (double-precision noise, far below any real
/// violation).
pub const VALIDATION_SLACK: f64 = 1e-9;

// --- statistics and ε ---

/// Measured expectation values, one per witness term, in the frozen term
/// order of [`Inequality::build`].
///
/// Serializes as `{"n": int, "values": [{"labels": [...], "value": x},
/// ...]}`; deserialization accepts the terms in any order but requires each
/// term exactly once.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "StatisticsRepr", into = "StatisticsRepr")]
pub struct Statistics {
    n: usize,
    values: Vec<f64>,
}

impl Statistics {
    /// Validates and stores per-term values aligned with the term order of
    /// `Inequality::build(n)`.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        let ineq = Inequality::build(n)?;
        if values.len() != ineq.terms().len() {
            return Err(Error::InvalidStatistics(format!(
                "{} values for {} terms",
                values.len(),
                ineq.terms().len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || v.abs() > 1.0) {
            return Err(Error::InvalidStatistics(format!(
                "expectation value {v} is outside [−1, 1]"
            )));
        }
        Ok(Self { n, values })
    }

    /// The noiseless statistics: +1 on positive terms, −1 on negative ones.
    pub fn ideal(n: usize) -> Result<Self> {
        let ineq = Inequality::build(n)?;
        let values = ineq
            .terms()
            .iter()
            .map(|t| if t.coefficient() > 0 { 1.0 } else { -1.0 })
            .collect();
        Self::new(n, values)
    }

    /// Measures every witness term on a realization.
    pub fn from_realization(r: &Realization) -> Result<Self> {
        let ineq = Inequality::build(r.n())?;
        let values = ineq
            .terms()
            .iter()
            .map(|t| r.correlator(t))
            .collect::<Result<Vec<_>>>()?;
        // Clamp double-precision overshoot (e.g. 1 + 1e−16) so downstream
        // range checks stay meaningful.
        let values = values.iter().map(|v| v.clamp(-1.0, 1.0)).collect();
        Self::new(r.n(), values)
    }

    /// Witness index n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-term values in the frozen term order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Serialize, Deserialize)]
struct StatisticsRepr {
    n: usize,
    values: Vec<StatValueRepr>,
}

#[derive(Serialize, Deserialize)]
struct StatValueRepr {
    labels: Vec<String>,
    value: f64,
}

impl From<Statistics> for StatisticsRepr {
    fn from(s: Statistics) -> Self {
        let ineq = Inequality::build(s.n).expect("validated n");
        StatisticsRepr {
            n: s.n,
            values: ineq
                .terms()
                .iter()
                .zip(&s.values)
                .map(|(t, v)| StatValueRepr {
                    labels: t.labels(s.n).map(|l| l.to_string()).collect(),
                    value: *v,
                })
                .collect(),
        }
    }
}

impl TryFrom<StatisticsRepr> for Statistics {
    type Error = Error;

    fn try_from(repr: StatisticsRepr) -> Result<Self> {
        let ineq = Inequality::build(repr.n)?;
        let mut values = vec![None; ineq.terms().len()];
        for entry in &repr.values {
            let a_sites: Vec<u32> = entry
                .labels
                .iter()
                .enumerate()
                .filter_map(|(slot0, raw)| raw.starts_with('A').then_some(slot0 as u32 + 1))
                .collect();
            let pos = ineq
                .terms()
                .iter()
                .position(|t| t.a_sites() == a_sites.as_slice())
                .ok_or_else(|| {
                    Error::InvalidStatistics(format!(
                        "labels {:?} do not name a witness term",
                        entry.labels
                    ))
                })?;
            if values[pos].replace(entry.value).is_some() {
                return Err(Error::InvalidStatistics(format!(
                    "duplicate entry for term {:?}",
                    entry.labels
                )));
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidStatistics("missing terms".into()))?;
        Statistics::new(repr.n, values)
    }
}

/// The smallest ε for which all per-term constraints hold: positive terms
/// at least 1 − ε, negative terms at most −1 + ε. Equivalently the largest
/// per-term deficit 1 − sign(coeff)·value, clamped below at 0.
pub fn epsilon_from_statistics(stats: &Statistics) -> Result<f64> {
    let ineq = Inequality::build(stats.n)?;
    let eps = ineq
        .terms()
        .iter()
        .zip(stats.values())
        .map(|(t, v)| 1.0 - (t.coefficient().signum() as f64) * v)
        .fold(0.0f64, f64::max);
    Ok(eps.max(0.0))
}

/// The certification constants (ε₀, ε₁, ε₂) for a given n and ε:
/// ε₀ = [8(2^{n−1}−1)+1]·ε, ε₁ = 0, ε₂ = 2^{5−n}·ε.
///
/// At n = 3 these are (25ε, 0, 4ε).
pub fn fidelity_bounds(n: usize, epsilon: f64) -> Result<(f64, f64, f64)> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "the witness family starts at n = 3, got n = {n}"
        )));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidStatistics(format!(
            "ε must be nonnegative, got {epsilon}"
        )));
    }
    if n > 63 {
        return Err(Error::Overflow(format!(
            "2^{{n−1}} exceeds the exact integer range at n = {n}"
        )));
    }
    let factor = 8.0 * ((1u64 << (n - 1)) - 1) as f64 + 1.0;
    let eps0 = factor * epsilon;
    let eps1 = 0.0;
    let eps2 = 2f64.powi(5 - n as i32) * epsilon;
    Ok((eps0, eps1, eps2))
}

// --- Jordan-block noise models ---

/// One Jordan block: a weight, one angle per observable pair, and a local
/// state on 2^n amplitudes.
#[derive(Debug, Clone)]
pub struct JordanBlock {
    /// The block weight p_l ≥ 0.
    pub weight: f64,
    /// θ_{i,l} ∈ [−π/2, π/2] for each pair i = 1..n; the block's B_i is
    /// cos(θ)·Y_i + sin(θ)·X_i while A_i stays X_i.
    pub angles: Vec<f64>,
    /// Unit-norm local amplitudes over the block's 2^n basis states.
    pub amplitudes: Vec<Complex64>,
}

/// A validated list of Jordan blocks with weights summing to one.
///
/// Serializes as `{"n": int, "blocks": [{"weight": p, "angles": [...],
/// "amplitudes": [[re, im], ...]}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "JordanSpecRepr", into = "JordanSpecRepr")]
pub struct JordanBlockSpec {
    n: usize,
    blocks: Vec<JordanBlock>,
}

impl JordanBlockSpec {
    /// Validates weights (nonnegative, summing to 1 within 1e−12), angle
    /// ranges, and amplitude normalization.
    pub fn new(n: usize, blocks: Vec<JordanBlock>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidBlockSpec(format!(
                "the witness family starts at n = 3, got n = {n}"
            )));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidBlockSpec("no blocks given".into()));
        }
        let total: f64 = blocks.iter().map(|b| b.weight).sum();
        if blocks.iter().any(|b| b.weight < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidBlockSpec(format!(
                "block weights must be nonnegative and sum to 1, got sum {total}"
            )));
        }
        for (l, block) in blocks.iter().enumerate() {
            if block.angles.len() != n {
                return Err(Error::InvalidBlockSpec(format!(
                    "block {l} has {} angles, expected {n}",
                    block.angles.len()
                )));
            }
            if block
                .angles
                .iter()
                .any(|t| !t.is_finite() || t.abs() > std::f64::consts::FRAC_PI_2)
            {
                return Err(Error::InvalidBlockSpec(format!(
                    "block {l} has an angle outside [−π/2, π/2]"
                )));
            }
            if block.amplitudes.len() != 1 << n {
                return Err(Error::InvalidBlockSpec(format!(
                    "block {l} has {} amplitudes, expected 2^{n}",
                    block.amplitudes.len()
                )));
            }
            let norm: f64 = block
                .amplitudes
                .iter()
                .map(|c| c.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidBlockSpec(format!(
                    "block {l} amplitudes have norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { n, blocks })
    }

    /// Witness index n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The validated blocks.
    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }
}

#[derive(Serialize, Deserialize)]
struct JordanSpecRepr {
    n: usize,
    blocks: Vec<JordanBlockRepr>,
}

#[derive(Serialize, Deserialize)]
struct JordanBlockRepr {
    weight: f64,
    angles: Vec<f64>,
    amplitudes: Vec<(f64, f64)>,
}

impl From<JordanBlockSpec> for JordanSpecRepr {
    fn from(spec: JordanBlockSpec) -> Self {
        JordanSpecRepr {
            n: spec.n,
            blocks: spec
                .blocks
                .into_iter()
                .map(|b| JordanBlockRepr {
                    weight: b.weight,
                    angles: b.angles,
                    amplitudes: b.amplitudes.iter().map(|c| (c.re, c.im)).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<JordanSpecRepr> for JordanBlockSpec {
    type Error = Error;

    fn try_from(repr: JordanSpecRepr) -> Result<Self> {
        let blocks = repr
            .blocks
            .into_iter()
            .map(|b| JordanBlock {
                weight: b.weight,
                angles: b.angles,
                amplitudes: b
                    .amplitudes
                    .iter()
                    .map(|&(re, im)| Complex64::new(re, im))
                    .collect(),
            })
            .collect();
        JordanBlockSpec::new(repr.n, blocks)
    }
}

/// The per-block ideal amplitudes (|0…0⟩ + i^{n−1}|1…1⟩)/√2 in this
/// module's (X, Y) frame — the unique form fixed by demanding all positive
/// terms +1 and all negative terms −1 with A_i = X_i, B_i = Y_i.
pub fn ideal_block_amplitudes(n: usize) -> Vec<Complex64> {
    let dim = 1 << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let inv = 1.0 / 2f64.sqrt();
    amps[0] = Complex64::new(inv, 0.0);
    amps[dim - 1] = Complex64::i().powu((n as u32 - 1) % 4) * inv;
    amps
}

/// Assembles the dense block-diagonal realization of a Jordan spec:
/// A_i = ⊕_l X_i, B_i = ⊕_l (cos θ_{i,l}·Y_i + sin θ_{i,l}·X_i), state
/// Σ_l √p_l |ψ_l⟩.
///
/// The block count is padded to a power of two (padding blocks carry angle
/// 0 and weight 0) so the total dimension stays a power of two.
pub fn jordan_realization(spec: &JordanBlockSpec) -> Result<Realization> {
    let n = spec.n;
    let block_dim = 1usize << n;
    let padded = spec.blocks.len().next_power_of_two();
    let dim = block_dim * padded;
    if dim.trailing_zeros() as usize > DENSE_QUBIT_CAP {
        return Err(Error::CapacityExceeded {
            n: dim.trailing_zeros() as usize,
            cap: DENSE_QUBIT_CAP,
        });
    }

    let x_i: Vec<CMatrix> = (1..=n)
        .map(|i| {
            crate::pauli::PauliString::embed(crate::pauli::PauliLetter::X, i, n)
                .and_then(|p| p.to_dense())
        })
        .collect::<Result<_>>()?;
    let y_i: Vec<CMatrix> = (1..=n)
        .map(|i| {
            crate::pauli::PauliString::embed(crate::pauli::PauliLetter::Y, i, n)
                .and_then(|p| p.to_dense())
        })
        .collect::<Result<_>>()?;

    let mut a = vec![CMatrix::zeros(dim, dim); n];
    let mut b = vec![CMatrix::zeros(dim, dim); n];
    let mut state = CVector::zeros(dim);
    for l in 0..padded {
        let offset = l * block_dim;
        let block = spec.blocks.get(l);
        for i in 0..n {
            let theta = block.map_or(0.0, |bl| bl.angles[i]);
            let b_block = &y_i[i] * Complex64::new(theta.cos(), 0.0)
                + &x_i[i] * Complex64::new(theta.sin(), 0.0);
            for r in 0..block_dim {
                for c in 0..block_dim {
                    a[i][(offset + r, offset + c)] = x_i[i][(r, c)];
                    b[i][(offset + r, offset + c)] = b_block[(r, c)];
                }
            }
        }
        if let Some(bl) = block {
            let root = bl.weight.sqrt();
            for (k, amp) in bl.amplitudes.iter().enumerate() {
                state[offset + k] = amp * root;
            }
        }
    }
    Realization::dense(a, b, state)
}

/// The true fidelities of a Jordan spec against the ideal realization in
/// the same block geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActualFidelities {
    /// |⟨ψ̂|ψ⟩|² with per-block phases aligned so each overlap is ≥ 0:
    /// (Σ_l p_l |⟨ψ̂_l|ψ_l⟩|)².
    pub state: f64,
    /// F(Â_i, A_i), identically 1 in this parametrization.
    pub a: Vec<f64>,
    /// F(B̂_i, B_i) = Σ_l p_l cos θ_{i,l}.
    pub b: Vec<f64>,
}

/// Closed-form fidelities of the Jordan noise model.
pub fn actual_fidelities(spec: &JordanBlockSpec) -> ActualFidelities {
    let n = spec.n;
    let ideal = ideal_block_amplitudes(n);
    let dim = 1 << n;
    let overlap_sum: f64 = spec
        .blocks
        .iter()
        .map(|bl| {
            let inner: Complex64 = (0..dim).map(|k| ideal[k].conj() * bl.amplitudes[k]).sum();
            bl.weight * inner.norm()
        })
        .sum();
    let b = (0..n)
        .map(|i| {
            spec.blocks
                .iter()
                .map(|bl| bl.weight * bl.angles[i].cos())
                .sum()
        })
        .collect();
    ActualFidelities {
        state: overlap_sum * overlap_sum,
        a: vec![1.0; n],
        b,
    }
}

/// The exact on-state anticommutator norm ‖{A_i, B_i}|ψ⟩‖ of a dense
/// realization, 1-based i.
pub fn anticommutator_residual(r: &Realization, i: usize) -> Result<f64> {
    let Some((a, b, state)) = r.dense_parts() else {
        return Err(Error::BackendMismatch(
            "anticommutator residual needs the dense backend".into(),
        ));
    };
    if i == 0 || i > r.n() {
        return Err(Error::InvalidSize(format!(
            "index {i} is outside 1..={}",
            r.n()
        )));
    }
    let (ai, bi) = (&a[i - 1], &b[i - 1]);
    Ok(((ai * (bi * state)) + (bi * (ai * state))).norm())
}

// --- self-testing predicates ---

/// The span of {B_S|ψ⟩ : S ⊆ {1..n}} with its numerical rank and how far
/// it is from being invariant under all observables.
#[derive(Debug, Clone)]
pub struct InvariantSubspace {
    /// Orthonormal basis of the span, one column per basis vector.
    pub basis: CMatrix,
    /// Numerical rank (singular values above 1e−8).
    pub dimension: usize,
    /// max over observables O of ‖(1 − P)·O·P‖ for the projector P onto
    /// the span.
    pub invariance_residual: f64,
}

/// Builds the candidate subspace B_S|ψ⟩ (subset bitmask order, factors by
/// ascending index), orthonormalizes it, and measures invariance under all
/// 2n observables.
pub fn invariant_subspace(r: &Realization) -> Result<InvariantSubspace> {
    let Some((a, b, state)) = r.dense_parts() else {
        return Err(Error::BackendMismatch(
            "the invariant-subspace check needs the dense backend".into(),
        ));
    };
    let n = r.n();
    let mut columns = Vec::with_capacity(1 << n);
    for subset in 0..(1usize << n) {
        let mut v = state.clone();
        // Apply highest index first so the written product is ascending.
        for i in (1..=n).rev() {
            if (subset >> (i - 1)) & 1 == 1 {
                v = &b[i - 1] * v;
            }
        }
        columns.push(v);
    }
    let m = columns_matrix(&columns)?;
    let (dimension, basis) = orthonormal_range(&m, RANK_TOL);
    let dim_full = state.len();
    let projector = crate::dense::projector_onto(&basis);
    let complement = CMatrix::identity(dim_full, dim_full) - &projector;
    let invariance_residual = a
        .iter()
        .chain(b.iter())
        .map(|o| spectral_norm(&(&complement * o * &projector)))
        .fold(0.0f64, f64::max);
    Ok(InvariantSubspace {
        basis,
        dimension,
        invariance_residual,
    })
}

/// Residuals and verdicts for the canonical-algebra predicates on the
/// invariant subspace V: restricted observables are involutions, commute
/// across indices, anticommute at equal indices, dim V = 2^n, and all are
/// traceless. All true certifies unitary equivalence to the canonical
/// realization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CanonicalFormReport {
    /// Numerical dimension of V.
    pub dimension: usize,
    /// 2^n.
    pub expected_dimension: usize,
    /// dim V == 2^n.
    pub dimension_ok: bool,
    /// max ‖(1−P)·O·P‖ over observables (how invariant V is).
    pub invariance_residual: f64,
    /// max ‖O_V² − 1_V‖ over observables restricted to V.
    pub involution_residual: f64,
    /// Involutions within tolerance.
    pub involution_ok: bool,
    /// max ‖[O_i, O'_j]‖ on V over required-commuting pairs (i ≠ j and
    /// A–A/B–B pairs).
    pub commutation_residual: f64,
    /// Cross-index commutation within tolerance.
    pub commutation_ok: bool,
    /// max ‖{A_i, B_i}‖ on V over same-index pairs.
    pub anticommutation_residual: f64,
    /// Same-index anticommutation within tolerance.
    pub anticommutation_ok: bool,
    /// max |tr O_V| over observables.
    pub trace_residual: f64,
    /// Traceless within tolerance.
    pub traceless_ok: bool,
    /// All predicates hold.
    pub certified: bool,
}

/// Runs the canonical-form predicates on a dense realization.
pub fn canonical_form_check(r: &Realization) -> Result<CanonicalFormReport> {
    let Some((a, b, _)) = r.dense_parts() else {
        return Err(Error::BackendMismatch(
            "the canonical-form check needs the dense backend".into(),
        ));
    };
    let n = r.n();
    let subspace = invariant_subspace(r)?;
    let u = &subspace.basis;
    let restrict = |o: &CMatrix| u.adjoint() * o * u;
    let a_v: Vec<CMatrix> = a.iter().map(restrict).collect();
    let b_v: Vec<CMatrix> = b.iter().map(restrict).collect();
    let eye = CMatrix::identity(subspace.dimension, subspace.dimension);

    let involution_residual = a_v
        .iter()
        .chain(b_v.iter())
        .map(|o| spectral_norm(&(o * o - &eye)))
        .fold(0.0f64, f64::max);

    let mut commutation_residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i < j {
                commutation_residual = commutation_residual
                    .max(spectral_norm(&(&a_v[i] * &a_v[j] - &a_v[j] * &a_v[i])))
                    .max(spectral_norm(&(&b_v[i] * &b_v[j] - &b_v[j] * &b_v[i])));
            }
            if i != j {
                commutation_residual = commutation_residual
                    .max(spectral_norm(&(&a_v[i] * &b_v[j] - &b_v[j] * &a_v[i])));
            }
        }
    }

    let anticommutation_residual = (0..n)
        .map(|i| spectral_norm(&(&a_v[i] * &b_v[i] + &b_v[i] * &a_v[i])))
        .fold(0.0f64, f64::max);

    let trace_residual = a_v
        .iter()
        .chain(b_v.iter())
        .map(|o| o.trace().norm())
        .fold(0.0f64, f64::max);

    let dimension_ok = subspace.dimension == 1 << n;
    let involution_ok = involution_residual <= PREDICATE_TOL;
    let commutation_ok = commutation_residual <= PREDICATE_TOL;
    let anticommutation_ok = anticommutation_residual <= PREDICATE_TOL;
    let traceless_ok = trace_residual <= PREDICATE_TOL;
    Ok(CanonicalFormReport {
        dimension: subspace.dimension,
        expected_dimension: 1 << n,
        dimension_ok,
        invariance_residual: subspace.invariance_residual,
        involution_residual,
        involution_ok,
        commutation_residual,
        commutation_ok,
        anticommutation_residual,
        anticommutation_ok,
        trace_residual,
        traceless_ok,
        certified: dimension_ok
            && involution_ok
            && commutation_ok
            && anticommutation_ok
            && traceless_ok
            && subspace.invariance_residual <= PREDICATE_TOL,
    })
}

// --- certification reports ---

/// The certification output: ε, the bound constants, fidelity lower
/// bounds, and (for Jordan inputs) the true fidelities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobustnessReport {
    /// Witness index n.
    pub n: usize,
    /// Extracted error parameter.
    pub epsilon: f64,
    /// State-fidelity constant [8(2^{n−1}−1)+1]·ε.
    pub eps0: f64,
    /// A-fidelity constant, identically 0.
    pub eps1: f64,
    /// B-fidelity constant 2^{5−n}·ε.
    pub eps2: f64,
    /// 1 − ε₀.
    pub fid_state_bound: f64,
    /// 1 − ε₁ = 1.
    pub fid_a_bound: f64,
    /// 1 − ε₂.
    pub fid_b_bound: f64,
    /// Whether any reported lower bound is ≤ 0 (the statement holds but
    /// certifies nothing).
    pub vacuous: bool,
    /// True state fidelity, present for Jordan-generated inputs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub actual_fid_state: Option<f64>,
    /// True per-pair B fidelities, present for Jordan-generated inputs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub actual_fid_b: Option<Vec<f64>>,
    /// Any "actual < bound" observations — nonempty would falsify the
    /// certification theorem on this input.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub bound_violations: Vec<String>,
}

fn report_from_epsilon(n: usize, epsilon: f64) -> Result<RobustnessReport> {
    let (eps0, eps1, eps2) = fidelity_bounds(n, epsilon)?;
    let fid_state_bound = 1.0 - eps0;
    let fid_a_bound = 1.0 - eps1;
    let fid_b_bound = 1.0 - eps2;
    Ok(RobustnessReport {
        n,
        epsilon,
        eps0,
        eps1,
        eps2,
        fid_state_bound,
        fid_a_bound,
        fid_b_bound,
        vacuous: fid_state_bound <= 0.0 || fid_b_bound <= 0.0,
        actual_fid_state: None,
        actual_fid_b: None,
        bound_violations: Vec::new(),
    })
}

/// Certifies measured statistics: ε extraction plus fidelity bounds.
pub fn certify_statistics(stats: &Statistics) -> Result<RobustnessReport> {
    report_from_epsilon(stats.n(), epsilon_from_statistics(stats)?)
}

/// Certifies a realization by measuring its own statistics first.
pub fn certify_realization(r: &Realization) -> Result<RobustnessReport> {
    certify_statistics(&Statistics::from_realization(r)?)
}

/// Certifies a Jordan noise model: bounds from its own correlators plus
/// closed-form true fidelities, cross-checked against the bounds.
pub fn certify_jordan(spec: &JordanBlockSpec) -> Result<RobustnessReport> {
    let realization = jordan_realization(spec)?;
    let mut report = certify_realization(&realization)?;
    let actual = actual_fidelities(spec);
    if actual.state < report.fid_state_bound - VALIDATION_SLACK {
        report.bound_violations.push(format!(
            "state fidelity {} below bound {}",
            actual.state, report.fid_state_bound
        ));
    }
    for (i, fb) in actual.b.iter().enumerate() {
        if *fb < report.fid_b_bound - VALIDATION_SLACK {
            report.bound_violations.push(format!(
                "B{} fidelity {} below bound {}",
                i + 1,
                fb,
                report.fid_b_bound
            ));
        }
    }
    report.actual_fid_state = Some(actual.state);
    report.actual_fid_b = Some(actual.b);
    Ok(report)
}

// --- Monte-Carlo validation ---

/// Parameters of the randomized bound-validation sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationConfig {
    /// Witness index n ≥ 3.
    pub n: usize,
    /// Number of random Jordan specs to draw.
    pub trials: usize,
    /// Angles are drawn uniformly from [−max_angle, max_angle].
    pub max_angle: f64,
    /// Block counts are drawn uniformly from 1..=max_blocks.
    pub max_blocks: usize,
    /// Seed for the deterministic per-trial streams.
    pub seed: u64,
}

/// One observed bound violation in the validation sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationViolation {
    /// Which trial produced it.
    pub trial: usize,
    /// Human-readable description.
    pub what: String,
}

/// Aggregate outcome of the validation sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationOutcome {
    /// Trials run.
    pub trials: usize,
    /// All bound violations (empty = the theorems held on every draw).
    pub violations: Vec<ValidationViolation>,
    /// Smallest observed actual-minus-bound margin for the state fidelity.
    pub min_state_margin: f64,
    /// Smallest observed actual-minus-bound margin over all B fidelities.
    pub min_b_margin: f64,
    /// Largest observed ‖{A_i,B_i}|ψ⟩‖ / 4√(2ε) ratio (≤ 1 when the
    /// anticommutator lemma holds; ∞-avoiding: trials with ε = 0 and zero
    /// residual contribute 0).
    pub max_anticommutator_ratio: f64,
    /// Largest ε drawn.
    pub max_epsilon: f64,
}

/// Draws one random Jordan spec. Trials cycle through three amplitude
/// flavors: exact ideal, ideal with Gaussian perturbation (σ = 0.05), and
/// fully random unit vectors.
fn random_spec(n: usize, trial: usize, cfg: &ValidationConfig) -> Result<JordanBlockSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // Stream 0 is left for any future global draws; trials get their own
    // streams so the sweep parallelizes without coordination.
    rng.set_stream(trial as u64 + 1);
    let normal = Normal::new(0.0, 1.0).expect("valid sigma");
    let perturb = Normal::new(0.0, 0.05).expect("valid sigma");

    let blocks_count = rng.gen_range(1..=cfg.max_blocks.max(1));
    let mut raw_weights: Vec<f64> = (0..blocks_count)
        .map(|_| rng.gen_range(0.05..1.0))
        .collect();
    let total: f64 = raw_weights.iter().sum();
    for w in &mut raw_weights {
        *w /= total;
    }
    // Remove any rounding drift so the weights sum to 1 exactly enough for
    // validation.
    let drift: f64 = 1.0 - raw_weights.iter().sum::<f64>();
    raw_weights[0] += drift;

    let dim = 1usize << n;
    let ideal = ideal_block_amplitudes(n);
    let blocks = raw_weights
        .into_iter()
        .map(|weight| {
            let angles = (0..n)
                .map(|_| rng.gen_range(-cfg.max_angle..=cfg.max_angle))
                .collect();
            let mut amplitudes: Vec<Complex64> = match trial % 3 {
                0 => ideal.clone(),
                1 => ideal
                    .iter()
                    .map(|c| c + Complex64::new(perturb.sample(&mut rng), perturb.sample(&mut rng)))
                    .collect(),
                _ => (0..dim)
                    .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                    .collect(),
            };
            let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in &mut amplitudes {
                *c /= norm;
            }
            JordanBlock {
                weight,
                angles,
                amplitudes,
            }
        })
        .collect();
    JordanBlockSpec::new(n, blocks)
}

/// Randomized validation of the certification bounds: draws Jordan specs,
/// extracts ε from each spec's own correlators, and checks that the true
/// fidelities respect the bounds and the anticommutator lemma holds.
///
/// Deterministic for a fixed seed: each trial uses its own counter-mode
/// RNG stream, so results are independent of thread scheduling.
pub fn validate_robustness(cfg: &ValidationConfig) -> Result<ValidationOutcome> {
    if cfg.trials == 0 {
        return Err(Error::InvalidSize("at least one trial required".into()));
    }
    let per_trial: Vec<(Vec<ValidationViolation>, f64, f64, f64, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<_> {
            let spec = random_spec(cfg.n, trial, cfg)?;
            let realization = jordan_realization(&spec)?;
            let report = certify_jordan(&spec)?;
            let mut violations: Vec<ValidationViolation> = report
                .bound_violations
                .iter()
                .map(|what| ValidationViolation {
                    trial,
                    what: what.clone(),
                })
                .collect();

            let actual_state = report.actual_fid_state.expect("jordan report");
            let actual_b = report.actual_fid_b.clone().expect("jordan report");
            let state_margin = actual_state - report.fid_state_bound;
            let b_margin = actual_b
                .iter()
                .map(|f| f - report.fid_b_bound)
                .fold(f64::INFINITY, f64::min);

            let lemma_cap = 4.0 * (2.0 * report.epsilon).sqrt();
            let mut ratio = 0.0f64;
            for i in 1..=cfg.n {
                let residual = anticommutator_residual(&realization, i)?;
                if residual > lemma_cap + VALIDATION_SLACK {
                    violations.push(ValidationViolation {
                        trial,
                        what: format!(
                            "anticommutator residual {residual} exceeds 4√(2ε) = {lemma_cap}"
                        ),
                    });
                }
                if lemma_cap > 0.0 {
                    ratio = ratio.max(residual / lemma_cap);
                } else if residual > VALIDATION_SLACK {
                    ratio = f64::INFINITY;
                }
            }
            Ok((violations, state_margin, b_margin, ratio, report.epsilon))
        })
        .collect::<Result<_>>()?;

    let mut outcome = ValidationOutcome {
        trials: cfg.trials,
        violations: Vec::new(),
        min_state_margin: f64::INFINITY,
        min_b_margin: f64::INFINITY,
        max_anticommutator_ratio: 0.0,
        max_epsilon: 0.0,
    };
    for (violations, state_margin, b_margin, ratio, epsilon) in per_trial {
        outcome.violations.extend(violations);
        outcome.min_state_margin = outcome.min_state_margin.min(state_margin);
        outcome.min_b_margin = outcome.min_b_margin.min(b_margin);
        outcome.max_anticommutator_ratio = outcome.max_anticommutator_ratio.max(ratio);
        outcome.max_epsilon = outcome.max_epsilon.max(epsilon);
    }
    Ok(outcome)
}
