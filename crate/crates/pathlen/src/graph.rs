//! Weighted simple digraphs stored as dense adjacency weights.
//!
//! A zero entry means "no edge"; the diagonal is identically zero (no
//! self-loops). Weights are strictly positive unless the graph was built
//! with `allow_negative`. Vertex indices are 0-based throughout the API;
//! the 1-based convention of the file formats is handled by [`crate::io`].

use crate::error::{Error, Result};
use crate::tropical::TropicalMatrix;

/// Immutable weighted simple graph on `n` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    /// Row-major n*n weights; `weights[i*n + j]` is the weight of e(v_i -> v_j).
    weights: Vec<f64>,
    directed: bool,
    allow_negative: bool,
}

impl Graph {
    /// Builds a graph from a dense weight matrix.
    ///
    /// `directed = None` auto-detects directedness from exact symmetry.
    /// Declaring `Some(false)` on an asymmetric matrix is rejected rather
    /// than symmetrized.
    pub fn from_weights(
        weights: Vec<f64>,
        n: usize,
        directed: Option<bool>,
        allow_negative: bool,
    ) -> Result<Graph> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} weights for n={}, got {}",
                n * n,
                n,
                weights.len()
            )));
        }
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(Error::SelfLoop { v: i + 1 });
            }
            for j in 0..n {
                let w = weights[i * n + j];
                if !w.is_finite() {
                    return Err(Error::NonFiniteWeight { i: i + 1, j: j + 1 });
                }
                if w < 0.0 && !allow_negative {
                    return Err(Error::NegativeWeight { i: i + 1, j: j + 1, w });
                }
            }
        }
        let symmetric = matrix_is_symmetric(&weights, n);
        let directed = match directed {
            Some(true) => true,
            Some(false) => {
                if !symmetric {
                    let (i, j) = first_asymmetry(&weights, n);
                    return Err(Error::AsymmetricUndirected { i: i + 1, j: j + 1 });
                }
                false
            }
            None => !symmetric,
        };
        Ok(Graph { n, weights, directed, allow_negative })
    }

    /// Builds a graph from 1-based edges `(i, j, weight)`; a missing weight
    /// defaults to 1. For undirected graphs each listed edge installs both
    /// directions, and a mirrored re-listing counts as a duplicate.
    pub fn from_edge_list(
        edges: &[(usize, usize, Option<f64>)],
        n: usize,
        directed: bool,
    ) -> Result<Graph> {
        Self::from_edge_list_with(edges, n, directed, false)
    }

    /// As [`Graph::from_edge_list`], optionally admitting negative weights.
    pub fn from_edge_list_with(
        edges: &[(usize, usize, Option<f64>)],
        n: usize,
        directed: bool,
        allow_negative: bool,
    ) -> Result<Graph> {
        let mut weights = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for &(i, j, w) in edges {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { v: i, n });
            }
            if j == 0 || j > n {
                return Err(Error::IndexOutOfRange { v: j, n });
            }
            if i == j {
                return Err(Error::SelfLoop { v: i });
            }
            let w = w.unwrap_or(1.0);
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { i, j });
            }
            if w == 0.0 {
                return Err(Error::ZeroWeight { i, j });
            }
            if w < 0.0 && !allow_negative {
                return Err(Error::NegativeWeight { i, j, w });
            }
            let (r, c) = (i - 1, j - 1);
            if seen[r * n + c] {
                return Err(Error::DuplicateEdge { i, j });
            }
            seen[r * n + c] = true;
            weights[r * n + c] = w;
            if !directed {
                if seen[c * n + r] {
                    return Err(Error::DuplicateEdge { i, j });
                }
                seen[c * n + r] = true;
                weights[c * n + r] = w;
            }
        }
        Ok(Graph { n, weights, directed, allow_negative })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn allows_negative(&self) -> bool {
        self.allow_negative
    }

    /// Weight of e(v_i -> v_j); 0 means no edge.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of nonzero weights (arcs). An undirected edge counts twice.
    pub fn arc_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w != 0.0).count()
    }

    /// Number of edges: arcs for directed graphs, unordered pairs otherwise.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.arc_count()
        } else {
            self.arc_count() / 2
        }
    }

    /// True iff the weight matrix equals its transpose exactly.
    pub fn is_symmetric(&self) -> bool {
        matrix_is_symmetric(&self.weights, self.n)
    }

    /// True iff every weight is exactly 0 or 1.
    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    /// Edges as 1-based `(i, j, w)` triples. Undirected graphs yield each
    /// edge once with i < j; directed graphs yield every arc.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.weight(i, j);
                if w != 0.0 && (self.directed || i < j) {
                    out.push((i + 1, j + 1, w));
                }
            }
        }
        out
    }

    /// The tropical first power: off-diagonal zeros become +inf, everything
    /// else is kept.
    pub fn to_one_star(&self) -> TropicalMatrix {
        let n = self.n;
        let mut entries = vec![f64::INFINITY; n * n];
        for i in 0..n {
            for j in 0..n {
                let w = self.weight(i, j);
                if i == j {
                    entries[i * n + j] = 0.0;
                } else if w != 0.0 {
                    entries[i * n + j] = w;
                }
            }
        }
        TropicalMatrix::from_parts(n, 1, None, entries, self.directed)
    }

    /// Scales the weight of the existing edge (h1, h2) by `factor`
    /// (0-based vertices, factor in (0, 1]); with `symmetric` the opposite
    /// direction is scaled as well. The zero/nonzero pattern and the zero
    /// diagonal are preserved.
    pub fn apply_perturbation(
        &self,
        h1: usize,
        h2: usize,
        factor: f64,
        symmetric: bool,
    ) -> Result<Graph> {
        if h1 >= self.n || h2 >= self.n || h1 == h2 {
            return Err(Error::NoSuchEdge { h1: h1 + 1, h2: h2 + 1 });
        }
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::InvalidFactor(factor));
        }
        if !self.directed && !symmetric {
            return Err(Error::AsymmetricPerturbation);
        }
        if self.weight(h1, h2) <= 0.0 {
            return Err(Error::NoSuchEdge { h1: h1 + 1, h2: h2 + 1 });
        }
        let mut g = self.clone();
        g.weights[h1 * self.n + h2] *= factor;
        if symmetric {
            g.weights[h2 * self.n + h1] *= factor;
        }
        Ok(g)
    }
}

fn matrix_is_symmetric(m: &[f64], n: usize) -> bool {
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i * n + j] != m[j * n + i] {
                return false;
            }
        }
    }
    true
}

fn first_asymmetry(m: &[f64], n: usize) -> (usize, usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i * n + j] != m[j * n + i] {
                return (i, j);
            }
        }
    }
    unreachable!("called on a symmetric matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn g2() -> Graph {
        Graph::from_edge_list(&[(1, 3, None), (2, 3, None)], 3, false).unwrap()
    }

    #[test]
    fn edge_list_builds_a2() {
        let g = g2();
        #[rustfmt::skip]
        let expected = vec![
            0.0, 0.0, 1.0,
            0.0, 0.0, 1.0,
            1.0, 1.0, 0.0,
        ];
        assert_eq!(g.weights(), expected.as_slice());
        assert!(!g.directed());
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::from_edge_list(&[], 2, false).unwrap();
        assert_eq!(g.weights(), &[0.0; 4]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn directed_single_edge() {
        let g = Graph::from_edge_list(&[(1, 2, Some(0.5))], 2, true).unwrap();
        assert_eq!(g.weight(0, 1), 0.5);
        assert_eq!(g.weight(1, 0), 0.0);
        assert!(g.directed());
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list(&[(1, 1, None)], 2, true),
            Err(Error::SelfLoop { v: 1 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(1, 3, None)], 2, true),
            Err(Error::IndexOutOfRange { v: 3, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(1, 2, None), (1, 2, Some(2.0))], 2, true),
            Err(Error::DuplicateEdge { i: 1, j: 2 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(1, 2, Some(0.0))], 2, true),
            Err(Error::ZeroWeight { i: 1, j: 2 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(1, 2, Some(-1.0))], 2, true),
            Err(Error::NegativeWeight { i: 1, j: 2, .. })
        ));
        // mirrored re-listing of an undirected edge is a duplicate
        assert!(matches!(
            Graph::from_edge_list(&[(1, 2, None), (2, 1, None)], 2, false),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn negative_weights_need_flag() {
        let g = Graph::from_edge_list_with(&[(1, 2, Some(-0.5))], 2, true, true).unwrap();
        assert_eq!(g.weight(0, 1), -0.5);
        assert!(g.allows_negative());
    }

    #[test]
    fn symmetry_detection() {
        assert!(g2().is_symmetric());
        let d = Graph::from_edge_list(&[(1, 2, None)], 2, true).unwrap();
        assert!(!d.is_symmetric());
        let trivial = Graph::from_weights(vec![0.0], 1, None, false).unwrap();
        assert!(trivial.is_symmetric());
        assert!(!trivial.directed());
    }

    #[test]
    fn declared_undirected_rejects_asymmetric_weights() {
        let w = vec![0.0, 1.0, 0.0, 0.0];
        assert!(matches!(
            Graph::from_weights(w, 2, Some(false), false),
            Err(Error::AsymmetricUndirected { i: 1, j: 2 })
        ));
    }

    #[test]
    fn from_weights_auto_detects_directedness() {
        let w = vec![0.0, 1.0, 0.0, 0.0];
        assert!(Graph::from_weights(w, 2, None, false).unwrap().directed());
        let s = vec![0.0, 1.0, 1.0, 0.0];
        assert!(!Graph::from_weights(s, 2, None, false).unwrap().directed());
    }

    #[test]
    fn from_weights_rejects_nonzero_diagonal() {
        let w = vec![1.0, 0.0, 0.0, 0.0];
        assert!(matches!(Graph::from_weights(w, 2, None, false), Err(Error::SelfLoop { v: 1 })));
    }

    #[test]
    fn one_star_of_a2() {
        let inf = f64::INFINITY;
        let t = g2().to_one_star();
        #[rustfmt::skip]
        let expected = vec![
            0.0, inf, 1.0,
            inf, 0.0, 1.0,
            1.0, 1.0, 0.0,
        ];
        assert_eq!(t.entries(), expected.as_slice());
        assert_eq!(t.k(), 1);
    }

    #[test]
    fn one_star_of_empty_graph() {
        let inf = f64::INFINITY;
        let g = Graph::from_edge_list(&[], 2, false).unwrap();
        assert_eq!(g.to_one_star().entries(), &[0.0, inf, inf, 0.0]);
    }

    #[test]
    fn one_star_pattern_is_invertible() {
        let g = Graph::from_edge_list(&[(1, 2, Some(0.25)), (3, 1, Some(2.0))], 3, true).unwrap();
        let t = g.to_one_star();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let recovered = if t.get(i, j).is_finite() { t.get(i, j) } else { 0.0 };
                    assert_eq!(recovered, g.weight(i, j));
                }
            }
        }
    }

    #[test]
    fn perturbation_halves_both_directions() {
        // Example: halving the (2,3) weight of A2 yields the printed matrix.
        let g = g2().apply_perturbation(1, 2, 0.5, true).unwrap();
        #[rustfmt::skip]
        let expected = vec![
            0.0, 0.0, 1.0,
            0.0, 0.0, 0.5,
            1.0, 0.5, 0.0,
        ];
        assert_eq!(g.weights(), expected.as_slice());
        assert!(!g.directed());
    }

    #[test]
    fn perturbation_factor_one_is_identity() {
        let g = g2();
        assert_eq!(g.apply_perturbation(0, 2, 1.0, true).unwrap(), g);
    }

    #[test]
    fn perturbation_of_two_group_graph() {
        let g = Graph::from_edge_list(
            &[(1, 3, None), (1, 4, None), (1, 5, None), (2, 3, None), (2, 4, None), (2, 5, None)],
            5,
            false,
        )
        .unwrap();
        let p = g.apply_perturbation(0, 2, 0.5, true).unwrap();
        #[rustfmt::skip]
        let expected = vec![
            0.0, 0.0, 0.5, 1.0, 1.0,
            0.0, 0.0, 1.0, 1.0, 1.0,
            0.5, 1.0, 0.0, 0.0, 0.0,
            1.0, 1.0, 0.0, 0.0, 0.0,
            1.0, 1.0, 0.0, 0.0, 0.0,
        ];
        assert_eq!(p.weights(), expected.as_slice());
    }

    #[test]
    fn perturbation_preserves_pattern() {
        let g = Graph::from_edge_list(&[(1, 2, Some(2.0)), (2, 3, Some(4.0))], 3, true).unwrap();
        let p = g.apply_perturbation(0, 1, 0.5, false).unwrap();
        for i in 0..3 {
            assert_eq!(p.weight(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(p.weight(i, j) == 0.0, g.weight(i, j) == 0.0);
            }
        }
        assert_eq!(p.weight(0, 1), 1.0);
        assert_eq!(p.weight(1, 2), 4.0);
    }

    #[test]
    fn perturbation_errors() {
        let g = g2();
        assert!(matches!(
            g.apply_perturbation(0, 1, 0.5, true),
            Err(Error::NoSuchEdge { h1: 1, h2: 2 })
        ));
        assert!(matches!(g.apply_perturbation(0, 2, 0.0, true), Err(Error::InvalidFactor(_))));
        assert!(matches!(g.apply_perturbation(0, 2, 1.5, true), Err(Error::InvalidFactor(_))));
        assert!(matches!(
            g.apply_perturbation(0, 2, 0.5, false),
            Err(Error::AsymmetricPerturbation)
        ));
    }

    #[test]
    fn edges_roundtrip_through_from_edge_list() {
        let g =
            Graph::from_edge_list(&[(1, 3, Some(0.5)), (2, 3, None), (1, 2, Some(2.5))], 3, false)
                .unwrap();
        let listed: Vec<_> = g.edges().into_iter().map(|(i, j, w)| (i, j, Some(w))).collect();
        let back = Graph::from_edge_list(&listed, 3, false).unwrap();
        assert_eq!(back, g);
    }
}
