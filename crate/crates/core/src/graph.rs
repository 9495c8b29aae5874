//! Simple undirected graphs and their graph states.
//!
//! A graph on vertices 1..=n defines the n stabilizer generators
//! G_i = X_i ⊗ Z_{N(i)} (X on vertex i, Z on each neighbor), the
//! corresponding graph state being the unique common +1 eigenstate. For
//! small n the module also builds the explicit state vector through the
//! controlled-Z network picture: amplitude (−1)^{#edges inside b}/√2^n on
//! each computational basis state b.
//!
//! Basis convention: amplitude index b encodes vertex i in bit i−1, so
//! vertex 1 is the least significant bit and the leftmost letter of Pauli
//! literals.

use serde::{Deserialize, Serialize};

use crate::dense::CVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase};
use crate::stabilizer::StabilizerGroup;
use crate::DENSE_QUBIT_CAP;

/// An undirected simple graph on vertices 1..=n.
///
/// Serializes as `{"n": 3, "edges": [[1,2],[2,3]]}`; edges are stored
/// normalized (smaller endpoint first) and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        Graph::new(repr.n, &repr.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Validates and builds a graph: vertices must lie in 1..=n, self-loops
    /// and duplicate edges are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) has an endpoint outside 1..={n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(Self {
            n,
            edges: normalized,
        })
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.push((i, j));
            }
        }
        Self::new(n, &edges)
    }

    /// The path 1 – 2 – … – n.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges)
    }

    /// The star with center vertex 1 and leaves 2..=n.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (2..=n).map(|j| (1, j)).collect();
        Self::new(n, &edges)
    }

    /// Parses a named built-in of the form `complete:n`, `path:n`, or
    /// `star:n`.
    pub fn parse_named(name: &str) -> Result<Self> {
        let Some((family, count)) = name.split_once(':') else {
            return Err(Error::SchemaViolation(format!(
                "named graph {name:?} is not of the form family:n"
            )));
        };
        let n: usize = count.parse().map_err(|_| {
            Error::SchemaViolation(format!("invalid vertex count {count:?} in {name:?}"))
        })?;
        match family {
            "complete" => Self::complete(n),
            "path" => Self::path(n),
            "star" => Self::star(n),
            other => Err(Error::SchemaViolation(format!(
                "unknown graph family {other:?}; expected complete, path, or star"
            ))),
        }
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The normalized, sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The neighbors of a vertex, in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether the graph is connected. Single-vertex graphs count as
    /// connected; callers that care may warn on `false` (the construction
    /// below works either way).
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == self.n
    }

    /// The n stabilizer generators G_i = X_i ⊗ Z_{N(i)}, each with +1
    /// prefactor.
    pub fn stabilizer_generators(&self) -> StabilizerGroup {
        let gens: Vec<PauliString> = (1..=self.n)
            .map(|i| {
                let mut letters = vec![PauliLetter::I; self.n];
                letters[i - 1] = PauliLetter::X;
                for j in self.neighbors(i) {
                    letters[j - 1] = PauliLetter::Z;
                }
                PauliString::from_letters(&letters, Phase::One).expect("n ≥ 1")
            })
            .collect();
        StabilizerGroup::new(gens)
            .expect("graph generators are independent, commuting, and Hermitian by construction")
    }

    /// The explicit graph-state vector of length 2^n (little-endian basis,
    /// vertex 1 in bit 0), with the all-zeros amplitude real positive.
    ///
    /// Amplitude at basis state b is (−1)^(number of edges with both
    /// endpoints set in b) / √2^n.
    pub fn state_vector(&self) -> Result<CVector> {
        if self.n > DENSE_QUBIT_CAP {
            return Err(Error::CapacityExceeded {
                n: self.n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        let dim = 1usize << self.n;
        let norm = 1.0 / (dim as f64).sqrt();
        let mut v = CVector::zeros(dim);
        for b in 0..dim {
            let inside = self
                .edges
                .iter()
                .filter(|&&(i, j)| (b >> (i - 1)) & (b >> (j - 1)) & 1 == 1)
                .count();
            let sign = if inside % 2 == 0 { norm } else { -norm };
            v[b] = num_complex::Complex64::new(sign, 0.0);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amplitudes_signs(v: &CVector) -> Vec<i8> {
        v.iter().map(|a| if a.re > 0.0 { 1 } else { -1 }).collect()
    }

    #[test]
    fn triangle_generators_match_the_known_set() {
        let g = Graph::complete(3).unwrap();
        let gens: Vec<String> = g
            .stabilizer_generators()
            .generators()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(gens, ["XZZ", "ZXZ", "ZZX"]);
    }

    #[test]
    fn star_generators_put_z_only_on_the_center() {
        let g = Graph::star(3).unwrap();
        let gens: Vec<String> = g
            .stabilizer_generators()
            .generators()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(gens, ["XZZ", "ZXI", "ZIX"]);
    }

    #[test]
    fn complete_graph_generators_are_z_strings_with_one_x() {
        let g = Graph::complete(6).unwrap();
        for (i, gen) in g.stabilizer_generators().generators().iter().enumerate() {
            for site in 1..=6 {
                let expect = if site == i + 1 {
                    PauliLetter::X
                } else {
                    PauliLetter::Z
                };
                assert_eq!(gen.letter_at(site).unwrap(), expect);
            }
        }
    }

    #[test]
    fn triangle_state_has_the_frozen_sign_pattern() {
        let v = Graph::complete(3).unwrap().state_vector().unwrap();
        assert_eq!(amplitudes_signs(&v), [1, 1, 1, -1, 1, -1, -1, -1]);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn path_state_has_the_frozen_sign_pattern() {
        let v = Graph::path(3).unwrap().state_vector().unwrap();
        assert_eq!(amplitudes_signs(&v), [1, 1, 1, -1, 1, 1, -1, 1]);
    }

    #[test]
    fn center_one_star_state_differs_from_path_state_by_relabeling() {
        // The 3-vertex star and path are the same graph with centers at
        // vertices 1 and 2; swapping the first two index bits maps one
        // state onto the other.
        let star = Graph::star(3).unwrap().state_vector().unwrap();
        let path = Graph::path(3).unwrap().state_vector().unwrap();
        assert_eq!(amplitudes_signs(&star), [1, 1, 1, -1, 1, -1, 1, 1]);
        for b in 0..8usize {
            let swapped = (b & 0b100) | ((b & 1) << 1) | ((b >> 1) & 1);
            assert_eq!(star[b], path[swapped]);
        }
    }

    #[test]
    fn single_vertex_state_is_plus() {
        let v = Graph::new(1, &[]).unwrap().state_vector().unwrap();
        let amp = 1.0 / 2.0f64.sqrt();
        assert!((v[0].re - amp).abs() < 1e-15);
        assert!((v[1].re - amp).abs() < 1e-15);
    }

    #[test]
    fn every_generator_fixes_the_state_vector() {
        for g in [
            Graph::complete(3).unwrap(),
            Graph::path(3).unwrap(),
            Graph::star(5).unwrap(),
            Graph::complete(6).unwrap(),
            Graph::new(4, &[(1, 3), (2, 4)]).unwrap(), // disconnected pair
        ] {
            let v = g.state_vector().unwrap();
            for gen in g.stabilizer_generators().generators() {
                let gv = gen.apply(&v).unwrap();
                assert!(
                    (gv - &v).norm() < 1e-12,
                    "generator {gen} does not fix the state of {g:?}"
                );
            }
        }
    }

    #[test]
    fn connectivity_is_detected() {
        assert!(Graph::complete(4).unwrap().is_connected());
        assert!(Graph::path(5).unwrap().is_connected());
        assert!(!Graph::new(4, &[(1, 2)]).unwrap().is_connected());
        assert!(Graph::new(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        assert!(Graph::new(0, &[]).is_err());
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 4)]).is_err());
        assert!(Graph::new(3, &[(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn named_forms_parse() {
        assert_eq!(
            Graph::parse_named("complete:3").unwrap(),
            Graph::complete(3).unwrap()
        );
        assert_eq!(
            Graph::parse_named("path:4").unwrap(),
            Graph::path(4).unwrap()
        );
        assert_eq!(
            Graph::parse_named("star:5").unwrap(),
            Graph::star(5).unwrap()
        );
        assert!(Graph::parse_named("wheel:5").is_err());
        assert!(Graph::parse_named("complete").is_err());
        assert!(Graph::parse_named("complete:x").is_err());
    }

    #[test]
    fn json_round_trip_preserves_the_graph() {
        let g = Graph::new(4, &[(2, 1), (3, 4)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[1,2],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }
}
