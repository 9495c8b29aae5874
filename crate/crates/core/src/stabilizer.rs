//! Stabilizer groups and exact Pauli expectations on stabilizer states.
//!
//! A stabilizer group on n qubits is generated by n independent, pairwise
//! commuting, Hermitian Pauli strings. It fixes a unique state |ψ⟩, and the
//! expectation ⟨ψ|P|ψ⟩ of any Hermitian Pauli string P is +1, −1, or 0
//! according to whether +P, −P, or neither lies in the group. Membership is
//! decided by GF(2) Gaussian elimination on the (x|z) bit rows, with the
//! i^k prefactors tracked exactly through every row operation — no floating
//! point is involved, so expectations are exact at any n.

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// A stabilizer group given by n independent commuting Hermitian
/// generators, with a precomputed reduced echelon form for fast membership
/// queries.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliString>,
    /// Reduced echelon rows as true group elements (phases included),
    /// each paired with its pivot column and sorted by that column.
    /// Columns 0..n are the x bits, columns n..2n the z bits.
    echelon: Vec<(usize, PauliString)>,
    /// Column → echelon row index, for O(1) pivot lookup during reduction.
    pivot_of: Vec<Option<u32>>,
}

fn column_bit(p: &PauliString, col: usize) -> bool {
    let n = p.n();
    let (x, z) = p.bit_words();
    let (words, bit) = if col < n { (x, col) } else { (z, col - n) };
    (words[bit / 64] >> (bit % 64)) & 1 == 1
}

fn leading_column(p: &PauliString) -> Option<usize> {
    let n = p.n();
    let (x, z) = p.bit_words();
    for (part, offset) in [(x, 0), (z, n)] {
        for (w, word) in part.iter().enumerate() {
            if *word != 0 {
                return Some(offset + w * 64 + word.trailing_zeros() as usize);
            }
        }
    }
    None
}

impl StabilizerGroup {
    /// Validates and builds a stabilizer group from its generators.
    ///
    /// Requires exactly n generators on n qubits, each Hermitian, pairwise
    /// commuting, and jointly independent over GF(2). Independence also
    /// guarantees the group does not contain −1, so it stabilizes a unique
    /// state.
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidGenerators("no generators given".into()));
        };
        let n = first.n();
        if generators.len() != n {
            return Err(Error::InvalidGenerators(format!(
                "{} generators for {n} qubits; a stabilizer state needs exactly n",
                generators.len()
            )));
        }
        for (idx, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::InvalidGenerators(format!(
                    "generator {} acts on {} qubits, expected {n}",
                    idx + 1,
                    g.n()
                )));
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidGenerators(format!(
                    "generator {} ({g}) is not Hermitian",
                    idx + 1
                )));
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !generators[i].commutes(&generators[j])? {
                    return Err(Error::InvalidGenerators(format!(
                        "generators {} ({}) and {} ({}) do not commute",
                        i + 1,
                        generators[i],
                        j + 1,
                        generators[j]
                    )));
                }
            }
        }

        let mut echelon: Vec<(usize, PauliString)> = Vec::with_capacity(n);
        for (idx, g) in generators.iter().enumerate() {
            let mut row = g.clone();
            for (col, pivot) in &echelon {
                if column_bit(&row, *col) {
                    row = pivot.multiply(&row)?;
                }
            }
            let Some(col) = leading_column(&row) else {
                return Err(Error::InvalidGenerators(format!(
                    "generator {} ({g}) is a product of the earlier ones",
                    idx + 1
                )));
            };
            // Keep the form fully reduced: clear the new pivot column from
            // every existing row so later reductions are single-pass.
            for (_, existing) in echelon.iter_mut() {
                if column_bit(existing, col) {
                    *existing = row.multiply(existing)?;
                }
            }
            let at = echelon.partition_point(|(c, _)| *c < col);
            echelon.insert(at, (col, row));
        }

        let mut pivot_of = vec![None; 2 * n];
        for (idx, (col, _)) in echelon.iter().enumerate() {
            pivot_of[*col] = Some(idx as u32);
        }

        Ok(Self {
            n,
            generators,
            echelon,
            pivot_of,
        })
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The generators in the order given at construction.
    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// The exact expectation ⟨ψ|p|ψ⟩ in the stabilized state: +1 or −1 when
    /// ±p lies in the group, 0 otherwise.
    pub fn expectation(&self, p: &PauliString) -> Result<i8> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "operator acts on {} qubits, group on {}",
                p.n(),
                self.n
            )));
        }
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(format!(
                "{p} has no real expectation value"
            )));
        }
        // Clear the leading column repeatedly. Every echelon row has its
        // leading bit at its own pivot column, so each step strictly
        // advances the leading column; if that column has no pivot, no
        // group element can match (pivot columns survive any XOR of rows)
        // and the expectation is 0.
        let mut r = p.clone();
        while let Some(col) = leading_column(&r) {
            let Some(idx) = self.pivot_of[col] else {
                return Ok(0);
            };
            r = self.echelon[idx as usize].1.multiply(&r)?;
        }
        // r is now a scalar: (group element)·(±group element) = ±1. The ±i
        // cases cannot occur for Hermitian input over an independent group.
        match r.phase_exp() {
            0 => Ok(1),
            2 => Ok(-1),
            k => unreachable!("scalar residue i^{k} from Hermitian reduction"),
        }
    }
}
