//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles deliberately use different algorithms than the crate:
//! Floyd-Warshall and per-source Dijkstra instead of min-plus powers.
//! Random weights are multiples of 0.25 so every path sum is exact in
//! f64 and oracle comparisons can be bitwise.

#![allow(dead_code)]

use pathlen::Graph;
use rand::Rng;

pub const INF: f64 = f64::INFINITY;

/// Two vertex groups {1,2} and {3,4,5} fully interconnected, no edges
/// inside a group.
pub fn g1() -> Graph {
    Graph::from_edge_list(
        &[(1, 3, None), (1, 4, None), (1, 5, None), (2, 3, None), (2, 4, None), (2, 5, None)],
        5,
        false,
    )
    .unwrap()
}

/// The 3-vertex path through vertex 3.
pub fn g2() -> Graph {
    Graph::from_edge_list(&[(1, 3, None), (2, 3, None)], 3, false).unwrap()
}

pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

pub fn round2_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| round2(x)).collect()
}

/// Floyd-Warshall all-pairs shortest paths on the dense weight matrix;
/// returns row-major distances with +inf for unreachable pairs. Panics on
/// negative cycles, which callers screen out separately.
pub fn floyd_warshall(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut dist = vec![INF; n * n];
    for i in 0..n {
        dist[i * n + i] = 0.0;
        for j in 0..n {
            if i != j && g.weight(i, j) != 0.0 {
                dist[i * n + j] = g.weight(i, j);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + dist[k * n + j];
                if cand < dist[i * n + j] {
                    dist[i * n + j] = cand;
                }
            }
        }
    }
    for i in 0..n {
        assert!(dist[i * n + i] >= 0.0, "negative cycle fed to oracle");
        dist[i * n + i] = 0.0;
    }
    dist
}

/// True iff Floyd-Warshall relaxation can still improve some diagonal
/// entry below zero, i.e. the graph has a negative cycle.
pub fn has_negative_cycle(g: &Graph) -> bool {
    let n = g.n();
    let mut dist = vec![INF; n * n];
    for i in 0..n {
        dist[i * n + i] = 0.0;
        for j in 0..n {
            if i != j && g.weight(i, j) != 0.0 {
                dist[i * n + j] = g.weight(i, j);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + dist[k * n + j];
                if cand < dist[i * n + j] {
                    dist[i * n + j] = cand;
                }
            }
        }
    }
    (0..n).any(|i| dist[i * n + i] < 0.0)
}

/// Per-source Dijkstra over the dense weight matrix (nonnegative weights).
pub fn dijkstra_all_pairs(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut dist = vec![INF; n * n];
    for source in 0..n {
        let row = &mut dist[source * n..(source + 1) * n];
        row[source] = 0.0;
        let mut done = vec![false; n];
        loop {
            let mut best: Option<usize> = None;
            for v in 0..n {
                if !done[v] && row[v].is_finite() && best.is_none_or(|b| row[v] < row[b]) {
                    best = Some(v);
                }
            }
            let Some(u) = best else { break };
            done[u] = true;
            for v in 0..n {
                let w = g.weight(u, v);
                if v != u && w != 0.0 && row[u] + w < row[v] {
                    row[v] = row[u] + w;
                }
            }
        }
    }
    dist
}

/// A dyadic weight in {0.25, 0.5, ..., 4.0}; all path sums stay exact.
pub fn dyadic_weight(rng: &mut impl Rng) -> f64 {
    rng.random_range(1..=16) as f64 * 0.25
}

pub struct RandomGraphSpec {
    pub n: usize,
    pub directed: bool,
    pub weighted: bool,
    pub edge_probability: f64,
}

/// Random simple graph on `spec.n` vertices with dyadic weights.
pub fn random_graph(rng: &mut impl Rng, spec: &RandomGraphSpec) -> Graph {
    let n = spec.n;
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (!spec.directed && j < i) {
                continue;
            }
            if rng.random_bool(spec.edge_probability) {
                let w = if spec.weighted { dyadic_weight(rng) } else { 1.0 };
                weights[i * n + j] = w;
                if !spec.directed {
                    weights[j * n + i] = w;
                }
            }
        }
    }
    Graph::from_weights(weights, n, Some(spec.directed), false).unwrap()
}

/// As [`random_graph`] but with some negative dyadic weights mixed in;
/// may contain negative cycles.
pub fn random_negative_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(0.35) {
                let magnitude = dyadic_weight(rng);
                weights[i * n + j] =
                    if rng.random_bool(0.25) { -0.25 * magnitude.min(1.0) } else { magnitude };
            }
        }
    }
    Graph::from_weights(weights, n, Some(true), true).unwrap()
}
