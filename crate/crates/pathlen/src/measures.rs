//! Scalar and per-vertex measures derived from a tropical power matrix.
//!
//! Every function takes the matrix at whatever level K it was computed, so
//! the same code yields the plain measures (K = n-1) and their K-limited
//! variants: harmonic centrality becomes harmonic K-centrality, global
//! efficiency becomes global K-efficiency, and so on. In-variants apply the
//! identical formulas to the transpose.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tropical::TropicalMatrix;
use crate::util::{argmax_set, argmin_set};

/// Entrywise reciprocals of a tropical power matrix: 1/distance off the
/// diagonal with 1/inf = 0, zeros on the diagonal. Nonnegative; row sums
/// are the harmonic (K-)centralities.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalMatrix {
    n: usize,
    k: usize,
    entries: Vec<f64>,
    directed: bool,
}

impl ReciprocalMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.chunks(self.n).map(|row| row.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for row in self.entries.chunks(self.n) {
            for (s, &v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }

    pub fn total_sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}

/// Replaces every off-diagonal entry by its reciprocal, identifying 1/inf
/// with 0. A non-positive finite off-diagonal distance signals corrupt
/// input and is rejected.
pub fn reciprocal(t: &TropicalMatrix) -> Result<ReciprocalMatrix> {
    let n = t.n();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = t.get(i, j);
            if d.is_finite() {
                if d <= 0.0 {
                    return Err(Error::ZeroPathLength { i: i + 1, j: j + 1 });
                }
                entries[i * n + j] = 1.0 / d;
            }
        }
    }
    Ok(ReciprocalMatrix { n, k: t.k(), entries, directed: t.directed() })
}

/// Closeness (K-)centrality: reciprocal of the sum of distances from each
/// vertex. A row with an unreachable vertex sums to infinity and yields 0.
pub fn closeness(t: &TropicalMatrix) -> Vec<f64> {
    let n = t.n();
    (0..n)
        .map(|i| {
            let sum: f64 = (0..n).filter(|&j| j != i).map(|j| t.get(i, j)).sum();
            if sum > 0.0 {
                1.0 / sum
            } else {
                0.0 // single vertex
            }
        })
        .collect()
}

/// Eccentricity of each vertex: its greatest distance to any other vertex;
/// 0 for a single vertex.
pub fn eccentricity(t: &TropicalMatrix) -> Vec<f64> {
    let n = t.n();
    (0..n)
        .map(|i| {
            let max =
                (0..n).filter(|&j| j != i).map(|j| t.get(i, j)).fold(f64::NEG_INFINITY, f64::max);
            if max == f64::NEG_INFINITY {
                0.0
            } else {
                max
            }
        })
        .collect()
}

/// Minimum eccentricity.
pub fn radius(t: &TropicalMatrix) -> f64 {
    eccentricity(t).into_iter().fold(f64::INFINITY, f64::min)
}

/// Vertices whose eccentricity equals the radius (0-based).
pub fn center(t: &TropicalMatrix) -> Vec<usize> {
    argmin_set(&eccentricity(t))
}

/// Mean distance over ordered vertex pairs; +inf when some pair is
/// unreachable.
pub fn avg_shortest_path_length(t: &TropicalMatrix) -> f64 {
    let n = t.n();
    if n <= 1 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += t.get(i, j);
            }
        }
    }
    sum / (n * (n - 1)) as f64
}

/// Harmonic (K-)centrality: sum of reciprocal distances from each vertex;
/// unreachable vertices contribute nothing.
pub fn harmonic(t: &TropicalMatrix) -> Vec<f64> {
    let n = t.n();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = t.get(i, j);
                    if d.is_finite() {
                        1.0 / d
                    } else {
                        0.0
                    }
                })
                .sum()
        })
        .collect()
}

/// Vertices of maximal harmonic (K-)centrality (0-based).
pub fn h_center(t: &TropicalMatrix) -> Vec<usize> {
    argmax_set(&harmonic(t))
}

/// Global (K-)efficiency: mean reciprocal distance over ordered pairs.
pub fn global_efficiency(t: &TropicalMatrix) -> f64 {
    let n = t.n();
    if n <= 1 {
        return 0.0;
    }
    let harmonics = harmonic(t);
    let sum: f64 = harmonics.iter().sum();
    sum / (n * (n - 1)) as f64
}

/// Sum of reciprocal distances over unordered pairs; defined for
/// undirected graphs only.
pub fn harary_index(t: &TropicalMatrix) -> Result<f64> {
    if t.directed() {
        return Err(Error::DirectedHarary);
    }
    let sum: f64 = harmonic(t).iter().sum();
    Ok(sum / 2.0)
}

/// The in-variants of the per-vertex measures: the same formulas applied
/// to the transpose, ranking vertices by the paths that end at them.
#[derive(Debug, Clone, PartialEq)]
pub struct InMeasures {
    pub closeness: Vec<f64>,
    pub eccentricity: Vec<f64>,
    pub harmonic: Vec<f64>,
    pub radius: f64,
    /// In-central vertices (0-based).
    pub center: Vec<usize>,
    /// Vertices of maximal harmonic K_in-centrality (0-based).
    pub h_center: Vec<usize>,
}

pub fn in_measures(t: &TropicalMatrix) -> InMeasures {
    let tt = t.transposed();
    InMeasures {
        closeness: closeness(&tt),
        eccentricity: eccentricity(&tt),
        harmonic: harmonic(&tt),
        radius: radius(&tt),
        center: center(&tt),
        h_center: h_center(&tt),
    }
}

/// Per-vertex measure vectors, in vertex order.
#[derive(Debug, Clone, Serialize)]
pub struct PerVertexMeasures {
    pub closeness: Vec<f64>,
    #[serde(serialize_with = "crate::io::ser_len_vec")]
    pub eccentricity: Vec<f64>,
    pub harmonic: Vec<f64>,
}

/// Center vertex sets, 1-based for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct CenterSets {
    pub center: Vec<usize>,
    pub h_center: Vec<usize>,
}

/// In-variant block of the report, present for directed graphs.
#[derive(Debug, Clone, Serialize)]
pub struct InMeasureReport {
    pub per_vertex: PerVertexMeasures,
    #[serde(serialize_with = "crate::io::ser_len")]
    pub radius: f64,
    pub centers: CenterSets,
}

/// Everything the `analyze` command reports for one graph at one level.
/// Unreachable-pair values serialize as the JSON string "inf".
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub n: usize,
    pub directed: bool,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(serialize_with = "crate::io::ser_len")]
    pub diameter: f64,
    #[serde(serialize_with = "crate::io::ser_len")]
    pub radius: f64,
    #[serde(serialize_with = "crate::io::ser_len")]
    pub avg_path_length: f64,
    pub global_efficiency: f64,
    pub harary: Option<f64>,
    pub disconnected: bool,
    pub per_vertex: PerVertexMeasures,
    pub centers: CenterSets,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_measures: Option<InMeasureReport>,
}

fn one_based(v: Vec<usize>) -> Vec<usize> {
    v.into_iter().map(|i| i + 1).collect()
}

/// Assembles the full report from a tropical power matrix. The diameter and
/// radius columns describe distances restricted to at most K edges; at the
/// full level K = n-1 they are the usual diameter and radius.
pub fn report(t: &TropicalMatrix) -> Result<MeasureReport> {
    let r = reciprocal(t)?;
    let n = t.n();
    let pairs = (n * (n - 1)).max(1) as f64;
    let harmonic_v = r.row_sums();
    let global_efficiency = harmonic_v.iter().sum::<f64>() / pairs;
    let harary = if t.directed() { None } else { Some(harmonic_v.iter().sum::<f64>() / 2.0) };
    let in_block = if t.directed() {
        let m = in_measures(t);
        Some(InMeasureReport {
            per_vertex: PerVertexMeasures {
                closeness: m.closeness,
                eccentricity: m.eccentricity,
                harmonic: m.harmonic,
            },
            radius: m.radius,
            centers: CenterSets { center: one_based(m.center), h_center: one_based(m.h_center) },
        })
    } else {
        None
    };
    Ok(MeasureReport {
        n,
        directed: t.directed(),
        k: t.k(),
        diameter: t.max_off_diagonal(),
        radius: radius(t),
        avg_path_length: avg_shortest_path_length(t),
        global_efficiency,
        harary,
        disconnected: t.has_unreachable_pair(),
        per_vertex: PerVertexMeasures {
            closeness: closeness(t),
            eccentricity: eccentricity(t),
            harmonic: harmonic_v,
        },
        centers: CenterSets { center: one_based(center(t)), h_center: one_based(h_center(t)) },
        in_measures: in_block,
    })
}
