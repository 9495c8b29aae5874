//! Witness-expression construction, exact bounds, liftings, and the
//! compatibility hypergraph.
//!
//! For every n ≥ 3 the witness is a linear combination of full-length
//! correlators over 2n dichotomic observables A_1..A_n, B_1..B_n, where
//! slot j of a correlator holds either A_j or B_j:
//!
//! ```text
//!   I_n = α_n Σ_i ⟨B_1 … A_i … B_n⟩  −  Σ_{i<j<k} ⟨… A_i … A_j … A_k …⟩,
//! ```
//!
//! with weight α_n = C(n−1,2), n positive terms (one A each), and C(n,3)
//! negative terms (A on a 3-subset, B elsewhere). Deterministic ±1
//! assignments cannot exceed 2·C(n,3), while quantum realizations reach
//! α_n·n + C(n,3) = 4·C(n,3) — exactly twice the classical value.
//!
//! All bounds are exact integers. The classical bound is computed by two
//! deliberately independent routes: an O(n) scan over a symmetric-function
//! reduction, and (within capacity) exhaustive enumeration over all 2^(2n)
//! assignments, parallelized by assignment prefix.

use itertools::Itertools;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest bit count 2n for which the exhaustive classical-bound scan is
/// attempted.
pub const BRUTE_FORCE_BIT_CAP: usize = 30;

/// C(n, 2) in checked integer arithmetic.
fn binom2(n: u64) -> Result<i64> {
    let v = (n as u128) * (n.saturating_sub(1) as u128) / 2;
    i64::try_from(v).map_err(|_| Error::Overflow(format!("C({n},2) exceeds i64")))
}

/// C(n, 3) in checked integer arithmetic.
fn binom3(n: u64) -> Result<i64> {
    let v = (n as u128) * (n.saturating_sub(1) as u128) * (n.saturating_sub(2) as u128) / 6;
    i64::try_from(v).map_err(|_| Error::Overflow(format!("C({n},3) exceeds i64")))
}

/// Which of the two observables a correlator slot holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelKind {
    /// The distinguished observable of slot i.
    A,
    /// The companion observable of slot i.
    B,
}

/// One observable label, e.g. `A1` or `B7`; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObservableLabel {
    /// A or B.
    pub kind: LabelKind,
    /// 1-based slot index.
    pub index: u32,
}

impl fmt::Display for ObservableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LabelKind::A => 'A',
            LabelKind::B => 'B',
        };
        write!(f, "{k}{}", self.index)
    }
}

impl FromStr for ObservableLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.chars().next() {
            Some('A') => LabelKind::A,
            Some('B') => LabelKind::B,
            _ => {
                return Err(Error::SchemaViolation(format!(
                    "observable label {s:?} must start with A or B"
                )))
            }
        };
        let index: u32 = s[1..]
            .parse()
            .map_err(|_| Error::SchemaViolation(format!("bad index in label {s:?}")))?;
        if index == 0 {
            return Err(Error::SchemaViolation("label indices are 1-based".into()));
        }
        Ok(Self { kind, index })
    }
}

impl Serialize for ObservableLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Where the A observables sit in a term. Kept compact (no per-slot label
/// vector) because term counts grow as C(n,3) — n = 256 already has 2.7
/// million terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum TermShape {
    /// A at one slot, B everywhere else (a positive term).
    Single(u32),
    /// A at three slots, ascending, B everywhere else (a negative term).
    Triple([u32; 3]),
}

/// One signed full-length correlator: a coefficient together with the slots
/// that hold A rather than B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorrelatorTerm {
    coefficient: i64,
    shape: TermShape,
}

impl CorrelatorTerm {
    fn single(site: u32, coefficient: i64) -> Self {
        Self {
            coefficient,
            shape: TermShape::Single(site),
        }
    }

    fn triple(sites: [u32; 3], coefficient: i64) -> Self {
        debug_assert!(sites[0] < sites[1] && sites[1] < sites[2]);
        Self {
            coefficient,
            shape: TermShape::Triple(sites),
        }
    }

    /// The signed integer coefficient.
    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    /// The 1-based slots holding an A observable (one or three, ascending).
    pub fn a_sites(&self) -> &[u32] {
        match &self.shape {
            TermShape::Single(site) => std::slice::from_ref(site),
            TermShape::Triple(sites) => sites,
        }
    }

    /// The label at a 1-based slot.
    pub fn label_at(&self, slot: usize) -> ObservableLabel {
        let kind = if self.a_sites().contains(&(slot as u32)) {
            LabelKind::A
        } else {
            LabelKind::B
        };
        ObservableLabel {
            kind,
            index: slot as u32,
        }
    }

    /// All n slot labels in order.
    pub fn labels(&self, n: usize) -> impl Iterator<Item = ObservableLabel> + '_ {
        (1..=n).map(|slot| self.label_at(slot))
    }

    /// Human-readable form, e.g. `+3·A1B2B3B4`.
    pub fn text(&self, n: usize) -> String {
        let mut s = format!("{:+}·", self.coefficient);
        for label in self.labels(n) {
            s.push_str(&label.to_string());
        }
        s
    }
}

struct TermWithN<'a> {
    n: usize,
    term: &'a CorrelatorTerm,
}

impl Serialize for TermWithN<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CorrelatorTerm", 2)?;
        st.serialize_field("coeff", &self.term.coefficient)?;
        st.serialize_field(
            "labels",
            &LabelsOf {
                n: self.n,
                term: self.term,
            },
        )?;
        st.end()
    }
}

struct LabelsOf<'a> {
    n: usize,
    term: &'a CorrelatorTerm,
}

impl Serialize for LabelsOf<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for label in self.term.labels(self.n) {
            seq.serialize_element(&label)?;
        }
        seq.end()
    }
}

/// The full witness expression for a given n, with both exact bounds.
///
/// Serializes as
/// `{"n", "alpha", "terms": [{"coeff", "labels": ["A1","B2",...]}, ...],
/// "classical_bound", "quantum_bound"}`; term order is frozen (positive
/// terms by A-slot ascending, then negative terms by 3-subset in
/// lexicographic order) so the output is byte-stable. Deserialization
/// accepts exactly that canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "InequalityRepr")]
pub struct Inequality {
    n: usize,
    alpha: i64,
    terms: Vec<CorrelatorTerm>,
    classical_bound: i64,
    quantum_bound: i64,
}

impl Inequality {
    /// Builds the witness for n ≥ 3 with its frozen term order and exact
    /// bounds.
    pub fn build(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!(
                "the witness family starts at n = 3, got n = {n}"
            )));
        }
        let alpha = binom2((n - 1) as u64)?;
        let negative_count = binom3(n as u64)?;
        let mut terms = Vec::with_capacity(n + negative_count as usize);
        for i in 1..=n {
            terms.push(CorrelatorTerm::single(i as u32, alpha));
        }
        for (i, j, k) in (1..=n as u32).tuple_combinations() {
            terms.push(CorrelatorTerm::triple([i, j, k], -1));
        }
        Ok(Self {
            n,
            alpha,
            terms,
            classical_bound: classical_bound_fast(n)?,
            quantum_bound: quantum_bound(n)?,
        })
    }

    /// Slot count n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The positive-term weight α_n = C(n−1, 2).
    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    /// All terms in the frozen order.
    pub fn terms(&self) -> &[CorrelatorTerm] {
        &self.terms
    }

    /// The exact classical bound (computed by the O(n) scan at build time).
    pub fn classical_bound(&self) -> i64 {
        self.classical_bound
    }

    /// The exact quantum bound α_n·n + C(n,3) = 4·C(n,3).
    pub fn quantum_bound(&self) -> i64 {
        self.quantum_bound
    }

    /// Exhaustive classical maximum over all 2^(2n) deterministic ±1
    /// assignments — the independent oracle for the fast bound.
    ///
    /// Each assignment is a bitmask (bit i−1 for A_i, bit n+j−1 for B_j,
    /// set bit meaning −1); a term evaluates to its coefficient times the
    /// parity of the masked bits. The scan partitions across threads by
    /// assignment prefix.
    pub fn classical_bound_bruteforce(&self) -> Result<i64> {
        let bits = 2 * self.n;
        if bits > BRUTE_FORCE_BIT_CAP {
            return Err(Error::BruteForceTooLarge {
                bits,
                cap: BRUTE_FORCE_BIT_CAP,
            });
        }
        let masks: Vec<(i64, u32)> = self
            .terms
            .iter()
            .map(|t| {
                let mut mask = 0u32;
                let a: &[u32] = t.a_sites();
                for slot in 1..=self.n {
                    if a.contains(&(slot as u32)) {
                        mask |= 1 << (slot - 1);
                    } else {
                        mask |= 1 << (self.n + slot - 1);
                    }
                }
                (t.coefficient, mask)
            })
            .collect();
        let max = (0u32..1u32 << bits)
            .into_par_iter()
            .map(|m| {
                masks
                    .iter()
                    .map(|(c, mask)| {
                        if (m & mask).count_ones() % 2 == 0 {
                            *c
                        } else {
                            -*c
                        }
                    })
                    .sum::<i64>()
            })
            .max()
            .expect("nonempty assignment range");
        Ok(max)
    }

    /// The compatibility hypergraph: 2n observable vertices, one signed
    /// hyperedge per term.
    pub fn hypergraph(&self) -> Hypergraph {
        let mut vertices = Vec::with_capacity(2 * self.n);
        for i in 1..=self.n {
            vertices.push(format!("A{i}"));
        }
        for j in 1..=self.n {
            vertices.push(format!("B{j}"));
        }
        let hyperedges = self
            .terms
            .iter()
            .map(|t| Hyperedge {
                sign: t.coefficient.signum() as i8,
                labels: t.labels(self.n).map(|l| l.to_string()).collect(),
            })
            .collect();
        Hypergraph {
            vertices,
            hyperedges,
        }
    }
}

impl Serialize for Inequality {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a Inequality);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.terms.len()))?;
                for term in &self.0.terms {
                    seq.serialize_element(&TermWithN { n: self.0.n, term })?;
                }
                seq.end()
            }
        }

        let mut st = serializer.serialize_struct("Inequality", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("terms", &Terms(self))?;
        st.serialize_field("classical_bound", &self.classical_bound)?;
        st.serialize_field("quantum_bound", &self.quantum_bound)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct InequalityRepr {
    n: usize,
    alpha: i64,
    terms: Vec<TermRepr>,
    classical_bound: i64,
    quantum_bound: i64,
}

#[derive(Deserialize)]
struct TermRepr {
    coeff: i64,
    labels: Vec<String>,
}

impl TryFrom<InequalityRepr> for Inequality {
    type Error = Error;

    /// Validates an incoming witness against the canonical build: labels
    /// must parse, slot j must hold index j, and the whole structure
    /// (term order, coefficients, bounds) must equal `build(n)`.
    fn try_from(repr: InequalityRepr) -> Result<Self> {
        let canonical = Inequality::build(repr.n)?;
        if repr.alpha != canonical.alpha {
            return Err(Error::SchemaViolation(format!(
                "alpha = {} but C(n−1,2) = {}",
                repr.alpha, canonical.alpha
            )));
        }
        if repr.terms.len() != canonical.terms.len() {
            return Err(Error::SchemaViolation(format!(
                "{} terms but n + C(n,3) = {}",
                repr.terms.len(),
                canonical.terms.len()
            )));
        }
        for (pos, (given, expect)) in repr.terms.iter().zip(&canonical.terms).enumerate() {
            if given.labels.len() != repr.n {
                return Err(Error::SchemaViolation(format!(
                    "term {pos} has {} labels, expected n = {}",
                    given.labels.len(),
                    repr.n
                )));
            }
            for (slot0, raw) in given.labels.iter().enumerate() {
                let label: ObservableLabel = raw.parse()?;
                if label.index as usize != slot0 + 1 {
                    return Err(Error::SchemaViolation(format!(
                        "term {pos}: slot {} holds {raw}, whose index is not the slot",
                        slot0 + 1
                    )));
                }
                let expect_kind = expect.label_at(slot0 + 1).kind;
                if label.kind != expect_kind {
                    return Err(Error::SchemaViolation(format!(
                        "term {pos} departs from the canonical term order at slot {}",
                        slot0 + 1
                    )));
                }
            }
            if given.coeff != expect.coefficient {
                return Err(Error::SchemaViolation(format!(
                    "term {pos} has coefficient {}, expected {}",
                    given.coeff, expect.coefficient
                )));
            }
        }
        if repr.classical_bound != canonical.classical_bound
            || repr.quantum_bound != canonical.quantum_bound
        {
            return Err(Error::SchemaViolation(format!(
                "bounds ({}, {}) do not match the exact values ({}, {})",
                repr.classical_bound,
                repr.quantum_bound,
                canonical.classical_bound,
                canonical.quantum_bound
            )));
        }
        Ok(canonical)
    }
}

/// The closed-form quantum bound α_n·n + C(n,3) = 4·C(n,3).
pub fn quantum_bound(n: usize) -> Result<i64> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "the witness family starts at n = 3, got n = {n}"
        )));
    }
    let alpha = binom2((n - 1) as u64)?;
    let c3 = binom3(n as u64)?;
    let bound = alpha
        .checked_mul(n as i64)
        .and_then(|v| v.checked_add(c3))
        .ok_or_else(|| Error::Overflow(format!("quantum bound overflows i64 at n = {n}")))?;
    debug_assert_eq!(bound, 4 * c3, "α_n·n + C(n,3) must equal 4·C(n,3)");
    Ok(bound)
}

/// The exact classical bound via the symmetric-function reduction, in O(n).
///
/// Writing s_i = a_i·b_i and pulling out the product of all b_j, the
/// witness value becomes ±(α_n·Σ s_i − e₃(s)) with e₃ the third elementary
/// symmetric polynomial of the s_i ∈ {±1}. Both factors depend only on the
/// number k of +1 entries, so the maximum is a scan over k = 0..n.
pub fn classical_bound_fast(n: usize) -> Result<i64> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "the witness family starts at n = 3, got n = {n}"
        )));
    }
    let alpha = binom2((n - 1) as u64)? as i128;
    let mut best: i128 = 0;
    for k in 0..=(n as u64) {
        let m = n as u64 - k;
        let e3 = binom3(k)? as i128 - (binom2(k)? as i128) * m as i128
            + (k as i128) * binom2(m)? as i128
            - binom3(m)? as i128;
        let v = alpha * (2 * k as i128 - n as i128) - e3;
        best = best.max(v.abs());
    }
    i64::try_from(best).map_err(|_| Error::Overflow(format!("classical bound at n = {n}")))
}

/// One I₃-shaped lifting over a 3-subset: three positive unit-weight terms
/// (A at one subset slot, B elsewhere) and one negative term (A at all
/// three).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifting {
    /// The 3-subset {i, j, k}, ascending.
    pub subset: [u32; 3],
    /// The four terms, positives first, in the frozen order.
    pub terms: Vec<CorrelatorTerm>,
}

/// Decomposes the witness into C(n,3) liftings of the n = 3 expression.
///
/// Summing the returned terms as a multiset reproduces `build(n)` exactly:
/// each positive term appears in α_n liftings (once per 3-subset through
/// its A-slot), each negative term in exactly one.
pub fn lifting_decomposition(n: usize) -> Result<Vec<Lifting>> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "the witness family starts at n = 3, got n = {n}"
        )));
    }
    let mut out = Vec::with_capacity(binom3(n as u64)? as usize);
    for (i, j, k) in (1..=n as u32).tuple_combinations() {
        let terms = vec![
            CorrelatorTerm::single(i, 1),
            CorrelatorTerm::single(j, 1),
            CorrelatorTerm::single(k, 1),
            CorrelatorTerm::triple([i, j, k], -1),
        ];
        out.push(Lifting {
            subset: [i, j, k],
            terms,
        });
    }
    Ok(out)
}

/// The compatibility hypergraph of a witness: observables as vertices, one
/// signed hyperedge (context) per correlator term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    /// 2n labels: A1..An then B1..Bn.
    pub vertices: Vec<String>,
    /// One entry per term, in term order.
    pub hyperedges: Vec<Hyperedge>,
}

/// A signed hyperedge: the labels of one correlator term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperedge {
    /// +1 for positive terms, −1 for negative terms.
    pub sign: i8,
    /// The n participating observable labels.
    pub labels: Vec<String>,
}

impl Hypergraph {
    /// Renders Graphviz DOT with a star expansion: each hyperedge becomes a
    /// small point node joined to its member observables, red for positive
    /// terms and blue for negative ones.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph contexts {\n  overlap=false;\n");
        out.push_str("  node [shape=ellipse];\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        out.push_str("  node [shape=point, width=0.12];\n");
        for (idx, edge) in self.hyperedges.iter().enumerate() {
            let color = if edge.sign >= 0 { "red" } else { "blue" };
            let name = format!("c{}", idx + 1);
            out.push_str(&format!("  \"{name}\" [color={color}];\n"));
            for label in &edge.labels {
                out.push_str(&format!("  \"{name}\" -- \"{label}\" [color={color}];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn the_three_slot_witness_has_the_displayed_form() {
        let ineq = Inequality::build(3).unwrap();
        assert_eq!(ineq.alpha(), 1);
        assert_eq!(ineq.classical_bound(), 2);
        assert_eq!(ineq.quantum_bound(), 4);
        let texts: Vec<String> = ineq.terms().iter().map(|t| t.text(3)).collect();
        assert_eq!(texts, ["+1·A1B2B3", "+1·B1A2B3", "+1·B1B2A3", "-1·A1A2A3"]);
    }

    #[test]
    fn the_four_slot_witness_has_eight_terms_with_weight_three() {
        let ineq = Inequality::build(4).unwrap();
        assert_eq!(ineq.alpha(), 3);
        assert_eq!(ineq.terms().len(), 8);
        assert_eq!(ineq.terms()[0].text(4), "+3·A1B2B3B4");
        assert_eq!(ineq.terms()[4].text(4), "-1·A1A2A3B4");
        assert_eq!(ineq.terms()[7].text(4), "-1·B1A2A3A4");
        assert_eq!(ineq.quantum_bound(), 16);
        assert_eq!(ineq.classical_bound(), 8);
    }

    #[test]
    fn term_count_is_n_plus_triples() {
        assert_eq!(Inequality::build(5).unwrap().terms().len(), 15);
        assert_eq!(Inequality::build(7).unwrap().terms().len(), 7 + 35);
    }

    #[test]
    fn small_n_is_rejected() {
        assert!(Inequality::build(2).is_err());
        assert!(quantum_bound(2).is_err());
        assert!(classical_bound_fast(1).is_err());
    }

    #[test]
    fn quantum_bound_matches_frozen_values_and_closed_form() {
        assert_eq!(quantum_bound(3).unwrap(), 4);
        assert_eq!(quantum_bound(4).unwrap(), 16);
        assert_eq!(quantum_bound(6).unwrap(), 80);
        for n in 3..=64 {
            let c3 = binom3(n as u64).unwrap();
            assert_eq!(quantum_bound(n).unwrap(), 4 * c3);
            assert_eq!(
                quantum_bound(n).unwrap(),
                2 * classical_bound_fast(n).unwrap()
            );
        }
    }

    #[test]
    fn fast_classical_bound_matches_frozen_values() {
        assert_eq!(classical_bound_fast(3).unwrap(), 2);
        assert_eq!(classical_bound_fast(4).unwrap(), 8);
        assert_eq!(classical_bound_fast(12).unwrap(), 440);
        assert_eq!(classical_bound_fast(256).unwrap(), 5_527_040);
    }

    #[test]
    fn brute_force_agrees_with_fast_scan_on_small_n() {
        for n in 3..=8 {
            let ineq = Inequality::build(n).unwrap();
            assert_eq!(
                ineq.classical_bound_bruteforce().unwrap(),
                classical_bound_fast(n).unwrap(),
                "disagreement at n = {n}"
            );
        }
    }

    #[test]
    fn brute_force_respects_its_capacity() {
        let ineq = Inequality::build(16).unwrap();
        assert!(matches!(
            ineq.classical_bound_bruteforce(),
            Err(Error::BruteForceTooLarge { bits: 32, cap: 30 })
        ));
    }

    #[test]
    fn liftings_sum_back_to_the_witness() {
        for n in [3usize, 4, 5, 7, 10] {
            let ineq = Inequality::build(n).unwrap();
            let mut sums: HashMap<Vec<u32>, i64> = HashMap::new();
            for lifting in lifting_decomposition(n).unwrap() {
                for term in &lifting.terms {
                    *sums.entry(term.a_sites().to_vec()).or_insert(0) += term.coefficient();
                }
            }
            assert_eq!(sums.len(), ineq.terms().len(), "n = {n}");
            for term in ineq.terms() {
                assert_eq!(
                    sums.get(term.a_sites()).copied(),
                    Some(term.coefficient()),
                    "n = {n}, term {:?}",
                    term.a_sites()
                );
            }
        }
    }

    #[test]
    fn lifting_count_and_shape() {
        let liftings = lifting_decomposition(4).unwrap();
        assert_eq!(liftings.len(), 4);
        assert_eq!(liftings[0].subset, [1, 2, 3]);
        let texts: Vec<String> = liftings[0].terms.iter().map(|t| t.text(4)).collect();
        assert_eq!(
            texts,
            ["+1·A1B2B3B4", "+1·B1A2B3B4", "+1·B1B2A3B4", "-1·A1A2A3B4"]
        );
        assert_eq!(lifting_decomposition(3).unwrap().len(), 1);
    }

    #[test]
    fn hypergraph_shape_matches_the_witness() {
        let hg = Inequality::build(3).unwrap().hypergraph();
        assert_eq!(hg.vertices.len(), 6);
        assert_eq!(hg.hyperedges.len(), 4);
        assert!(hg.hyperedges.iter().all(|e| e.labels.len() == 3));
        let signs: Vec<i8> = hg.hyperedges.iter().map(|e| e.sign).collect();
        assert_eq!(signs, [1, 1, 1, -1]);
        assert_eq!(
            Inequality::build(7).unwrap().hypergraph().vertices.len(),
            14
        );
    }

    #[test]
    fn dot_export_colors_signs() {
        let dot = Inequality::build(3).unwrap().hypergraph().to_dot();
        assert!(dot.starts_with("graph contexts {"));
        assert!(dot.contains("\"c1\" [color=red]"));
        assert!(dot.contains("\"c4\" [color=blue]"));
        assert!(dot.contains("\"c4\" -- \"A3\" [color=blue]"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let ineq = Inequality::build(3).unwrap();
        let json = serde_json::to_string(&ineq).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"alpha":1,"terms":[{"coeff":1,"labels":["A1","B2","B3"]},{"coeff":1,"labels":["B1","A2","B3"]},{"coeff":1,"labels":["B1","B2","A3"]},{"coeff":-1,"labels":["A1","A2","A3"]}],"classical_bound":2,"quantum_bound":4}"#
        );
        let back: Inequality = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ineq);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn deserialization_rejects_tampered_witnesses() {
        let good = serde_json::to_string(&Inequality::build(3).unwrap()).unwrap();
        for (from, to) in [
            (r#""classical_bound":2"#, r#""classical_bound":3"#),
            (r#""alpha":1"#, r#""alpha":2"#),
            (
                r#"{"coeff":-1,"labels":["A1","A2","A3"]}"#,
                r#"{"coeff":1,"labels":["A1","A2","A3"]}"#,
            ),
            (r#"["A1","B2","B3"]"#, r#"["B1","A2","B3"]"#),
            (r#""B3"]}"#, r#""B2"]}"#),
        ] {
            let bad = good.replacen(from, to, 1);
            assert_ne!(bad, good, "tamper {from:?} did not apply");
            assert!(
                serde_json::from_str::<Inequality>(&bad).is_err(),
                "tamper {from:?} was accepted"
            );
        }
    }
}
