//! Bit-packed Pauli strings with quarter-phase tracking.
//!
//! An n-qubit Pauli operator is stored as two bit masks (the X and Z
//! components, one bit per site) together with a scalar prefactor i^k with
//! k ∈ {0,1,2,3}. The represented operator is
//!
//! ```text
//!     i^k · Π_j X_j^{x_j} · Π_j Z_j^{z_j}
//! ```
//!
//! so a site with both bits set carries X·Z, and the letter Y enters through
//! the convention Y = i·X·Z. Products, commutation checks, and Hermiticity
//! tests are O(n/64) word operations; a string is Hermitian exactly when
//! `phase_exp + popcount(x ∧ z)` is even.
//!
//! Sites are 1-based in the public API. Site 1 is the leftmost letter of the
//! text form and the least significant bit of dense basis indices.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dense::{CMatrix, CVector};
use crate::error::{Error, Result};
use crate::DENSE_QUBIT_CAP;

/// A single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    /// Identity.
    I,
    /// Bit flip.
    X,
    /// Bit and phase flip, Y = i·X·Z.
    Y,
    /// Phase flip.
    Z,
}

impl PauliLetter {
    /// Parses one letter character.
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Self::I),
            'X' => Ok(Self::X),
            'Y' => Ok(Self::Y),
            'Z' => Ok(Self::Z),
            other => Err(Error::SchemaViolation(format!(
                "invalid Pauli letter {other:?}; expected one of I, X, Y, Z"
            ))),
        }
    }

    /// The character used in text form.
    pub fn to_char(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }

    fn xz_bits(self) -> (bool, bool) {
        match self {
            Self::I => (false, false),
            Self::X => (true, false),
            Self::Y => (true, true),
            Self::Z => (false, true),
        }
    }
}

/// A fourth root of unity, the scalar prefactor of a Pauli string in text
/// form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// +1.
    One,
    /// +i.
    I,
    /// −1.
    MinusOne,
    /// −i.
    MinusI,
}

impl Phase {
    /// The exponent k with this phase equal to i^k.
    pub fn exponent(self) -> u8 {
        match self {
            Self::One => 0,
            Self::I => 1,
            Self::MinusOne => 2,
            Self::MinusI => 3,
        }
    }

    /// The phase i^k for k taken modulo 4.
    pub fn from_exponent(k: u8) -> Self {
        match k % 4 {
            0 => Self::One,
            1 => Self::I,
            2 => Self::MinusOne,
            _ => Self::MinusI,
        }
    }

    /// The phase as a complex number.
    pub fn to_complex(self) -> Complex64 {
        match self {
            Self::One => Complex64::new(1.0, 0.0),
            Self::I => Complex64::new(0.0, 1.0),
            Self::MinusOne => Complex64::new(-1.0, 0.0),
            Self::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    /// The text prefix: empty for +1, `-` for −1, `+i`/`-i` otherwise.
    pub fn prefix(self) -> &'static str {
        match self {
            Self::One => "",
            Self::I => "+i",
            Self::MinusOne => "-",
            Self::MinusI => "-i",
        }
    }
}

/// An n-site Pauli string with a tracked i^k prefactor.
///
/// Equality is exact: two strings are equal when their site letters and
/// phase exponents coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    phase_exp: u8,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(l, r)| (l & r).count_ones()).sum()
}

impl PauliString {
    /// The identity string on `n` sites.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(
                "a Pauli string needs at least one site".into(),
            ));
        }
        Ok(Self {
            n,
            phase_exp: 0,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
        })
    }

    /// A single Pauli letter placed at 1-based `site` on an otherwise
    /// trivial n-site string (with +1 prefactor, so `Y` stores phase i over
    /// the X·Z bit pattern).
    pub fn embed(letter: PauliLetter, site: usize, n: usize) -> Result<Self> {
        let mut out = Self::identity(n)?;
        out.set_letter(site, letter)?;
        Ok(out)
    }

    /// Builds a string from per-site letters (site 1 first) and a prefactor.
    pub fn from_letters(letters: &[PauliLetter], phase: Phase) -> Result<Self> {
        let mut out = Self::identity(letters.len())?;
        for (idx, &letter) in letters.iter().enumerate() {
            out.set_letter(idx + 1, letter)?;
        }
        out.phase_exp = (out.phase_exp + phase.exponent()) % 4;
        Ok(out)
    }

    fn set_letter(&mut self, site: usize, letter: PauliLetter) -> Result<()> {
        if site == 0 || site > self.n {
            return Err(Error::InvalidSize(format!(
                "site {site} is outside 1..={}",
                self.n
            )));
        }
        let (word, bit) = ((site - 1) / 64, (site - 1) % 64);
        let (xb, zb) = letter.xz_bits();
        // Clear, then set; adjust the tracked phase for any Y added or
        // removed so the represented operator keeps a +1 letter prefactor.
        let had_y = (self.x[word] >> bit) & (self.z[word] >> bit) & 1 == 1;
        self.x[word] &= !(1 << bit);
        self.z[word] &= !(1 << bit);
        if had_y {
            self.phase_exp = (self.phase_exp + 3) % 4;
        }
        if xb {
            self.x[word] |= 1 << bit;
        }
        if zb {
            self.z[word] |= 1 << bit;
        }
        if xb && zb {
            self.phase_exp = (self.phase_exp + 1) % 4;
        }
        Ok(())
    }

    /// Number of sites.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The exponent k of the stored i^k prefactor over the X·Z bit pattern.
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// The scalar in front of the letter form (I/X/Y/Z per site).
    ///
    /// Each site with both bits set contributes X·Z = −i·Y, so the letter
    /// form carries i^(k − popcount(x ∧ z)).
    pub fn phase(&self) -> Phase {
        let y_count = popcount_and(&self.x, &self.z) % 4;
        Phase::from_exponent((self.phase_exp + 4 - y_count as u8 % 4) % 4)
    }

    /// The letter at 1-based `site`.
    pub fn letter_at(&self, site: usize) -> Result<PauliLetter> {
        if site == 0 || site > self.n {
            return Err(Error::InvalidSize(format!(
                "site {site} is outside 1..={}",
                self.n
            )));
        }
        let (word, bit) = ((site - 1) / 64, (site - 1) % 64);
        let xb = (self.x[word] >> bit) & 1 == 1;
        let zb = (self.z[word] >> bit) & 1 == 1;
        Ok(match (xb, zb) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        })
    }

    /// Number of sites with a non-identity letter.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Whether the bit pattern is the identity (the prefactor may still be
    /// any i^k).
    pub fn is_identity_pattern(&self) -> bool {
        self.x.iter().all(|w| *w == 0) && self.z.iter().all(|w| *w == 0)
    }

    /// Hermiticity test: i^k·X^x·Z^z is Hermitian exactly when
    /// k + popcount(x ∧ z) is even.
    pub fn is_hermitian(&self) -> bool {
        (self.phase_exp as u32 + popcount_and(&self.x, &self.z)) % 2 == 0
    }

    /// The string multiplied by −1.
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.phase_exp = (out.phase_exp + 2) % 4;
        out
    }

    fn check_same_n(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "{what} needs equal site counts, got {} and {}",
                self.n, rhs.n
            )));
        }
        Ok(())
    }

    /// The operator product `self · rhs`.
    ///
    /// Bit masks combine by XOR; commuting Z past X on shared sites
    /// contributes (−1)^popcount(z_lhs ∧ x_rhs) to the prefactor.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_same_n(rhs, "product")?;
        let anti = popcount_and(&self.z, &rhs.x) % 2;
        let phase_exp = ((self.phase_exp as u32 + rhs.phase_exp as u32 + 2 * anti) % 4) as u8;
        let x = self.x.iter().zip(&rhs.x).map(|(a, b)| a ^ b).collect();
        let z = self.z.iter().zip(&rhs.z).map(|(a, b)| a ^ b).collect();
        Ok(Self {
            n: self.n,
            phase_exp,
            x,
            z,
        })
    }

    /// Whether the two strings commute, via the symplectic inner product
    /// popcount(x₁ ∧ z₂) + popcount(z₁ ∧ x₂) mod 2.
    pub fn commutes(&self, rhs: &Self) -> Result<bool> {
        self.check_same_n(rhs, "commutation check")?;
        let s = (popcount_and(&self.x, &rhs.z) + popcount_and(&self.z, &rhs.x)) % 2;
        Ok(s == 0)
    }

    /// Raw (x, z) bit words, one bit per site, site 1 in bit 0.
    pub fn bit_words(&self) -> (&[u64], &[u64]) {
        (&self.x, &self.z)
    }

    /// Whether `self` and `rhs` act with the same bit pattern (ignoring the
    /// prefactor).
    pub fn same_pattern(&self, rhs: &Self) -> bool {
        self.n == rhs.n && self.x == rhs.x && self.z == rhs.z
    }

    fn dense_masks(&self) -> Result<(usize, usize)> {
        if self.n > DENSE_QUBIT_CAP {
            return Err(Error::CapacityExceeded {
                n: self.n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        Ok((self.x[0] as usize, self.z[0] as usize))
    }

    /// Dense 2^n × 2^n matrix of the operator, little-endian basis order
    /// (site 1 is the least significant index bit).
    ///
    /// The column for basis state |b⟩ has its single entry at row b ⊕ x with
    /// value i^k·(−1)^popcount(b ∧ z).
    pub fn to_dense(&self) -> Result<CMatrix> {
        let (xm, zm) = self.dense_masks()?;
        let dim = 1usize << self.n;
        let scalar = Phase::from_exponent(self.phase_exp).to_complex();
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let row = col ^ xm;
            let sign = if ((col & zm).count_ones()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            m[(row, col)] = scalar * sign;
        }
        Ok(m)
    }

    /// Applies the operator to a 2^n state vector without forming the dense
    /// matrix.
    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        let (xm, zm) = self.dense_masks()?;
        let dim = 1usize << self.n;
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match 2^{} = {dim}",
                v.len(),
                self.n
            )));
        }
        let scalar = Phase::from_exponent(self.phase_exp).to_complex();
        let mut out = CVector::zeros(dim);
        for b in 0..dim {
            let sign = if ((b & zm).count_ones()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            out[b ^ xm] = scalar * sign * v[b];
        }
        Ok(out)
    }

    /// The expectation ⟨v|P|v⟩ of the operator in state `v`.
    pub fn expectation_in(&self, v: &CVector) -> Result<Complex64> {
        Ok(v.dotc(&self.apply(v)?))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase().prefix())?;
        for site in 1..=self.n {
            let letter = self.letter_at(site).expect("site in range");
            write!(f, "{}", letter.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses the text form: an optional `+`, `-`, `+i`, or `-i` prefix
    /// followed by one letter from {I, X, Y, Z} per site.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, rest) = if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MinusI, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::One, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MinusOne, rest)
        } else {
            (Phase::One, s)
        };
        if rest.is_empty() {
            return Err(Error::SchemaViolation(
                "empty Pauli literal; expected at least one letter".into(),
            ));
        }
        let letters = rest
            .chars()
            .map(PauliLetter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(&letters, phase)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().expect("valid literal")
    }

    #[test]
    fn product_of_triangle_generators_is_minus_xxx() {
        let product = p("XZZ")
            .multiply(&p("ZXZ"))
            .unwrap()
            .multiply(&p("ZZX"))
            .unwrap();
        assert_eq!(product, p("-XXX"));
        assert_eq!(product.to_string(), "-XXX");
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let prod = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(prod.phase_exp(), 0, "X·Z is the bare bit pattern (1,1)");
        assert_eq!(prod.phase(), Phase::MinusI);
        assert_eq!(prod.to_string(), "-iY");
        assert!(!prod.is_hermitian());
    }

    #[test]
    fn y_letter_carries_phase_i_over_the_xz_pattern() {
        let y = PauliString::embed(PauliLetter::Y, 2, 3).unwrap();
        assert_eq!(y.phase_exp(), 1);
        assert_eq!(y.to_string(), "IYI");
        assert!(y.is_hermitian());
    }

    #[test]
    fn hermitian_squares_to_plus_identity() {
        for s in ["XYZ", "-ZZY", "YYYY", "IZXI"] {
            let q = p(s);
            assert!(q.is_hermitian(), "{s} should be Hermitian");
            let sq = q.multiply(&q).unwrap();
            assert!(sq.is_identity_pattern());
            assert_eq!(sq.phase(), Phase::One, "{s} squared should be +1");
        }
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in ["XZZ", "-XXX", "+iXZ", "-iY", "IYZX", "-IZZI"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "round trip failed for {s}");
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<PauliString>().is_err());
        assert!("-".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("xz".parse::<PauliString>().is_err());
    }

    #[test]
    fn commutation_matches_shared_site_structure() {
        // Same-site X and Z anticommute; disjoint supports always commute.
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(
            p("XX").commutes(&p("ZZ")).unwrap(),
            "two anticommuting sites cancel"
        );
        assert!(
            !p("XXX").commutes(&p("ZII")).unwrap(),
            "one anticommuting site remains"
        );
        assert!(
            p("XYZ").commutes(&p("XYZ")).unwrap(),
            "anything commutes with itself"
        );
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(p("XX").multiply(&p("X")).is_err());
        assert!(p("XX").commutes(&p("X")).is_err());
    }

    #[test]
    fn dense_matrix_of_y_matches_textbook_form() {
        let y = p("Y").to_dense().unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(y[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(y[(0, 1)], -i);
        assert_eq!(y[(1, 0)], i);
        assert_eq!(y[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn site_one_is_least_significant_index_bit() {
        // X on site 1 of a 2-site string swaps basis indices 0↔1 and 2↔3.
        let m = p("XI").to_dense().unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(3, 2)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(2, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dense_cap_is_enforced() {
        let big = PauliString::identity(13).unwrap();
        assert!(matches!(
            big.to_dense(),
            Err(Error::CapacityExceeded { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn apply_agrees_with_dense_matrix() {
        let q = p("-iYZX");
        let m = q.to_dense().unwrap();
        let v = CVector::from_fn(8, |k, _| Complex64::new(k as f64 + 0.25, 0.5 - k as f64));
        let direct = q.apply(&v).unwrap();
        let via_matrix = &m * &v;
        assert!((direct - via_matrix).norm() < 1e-12);
    }
}
