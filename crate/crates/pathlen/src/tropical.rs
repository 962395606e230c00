//! Min-plus (tropical) matrix algebra over extended lengths.
//!
//! Lengths are `f64` with `f64::INFINITY` standing for "unreachable";
//! additions involving infinity saturate, `min` ignores it. The k-th
//! min-plus power of the tropical first power holds, at entry (i, j), the
//! length of the shortest path from v_i to v_j using at most k edges. The
//! kernels are row-parallel: output rows are partitioned across workers
//! with no shared mutable state, so parallel and sequential runs produce
//! bit-identical results.

use crate::error::{Error, Result};
use crate::graph::Graph;
use num_bigint::BigUint;

/// Rows below this order are not worth handing to rayon.
#[cfg(feature = "parallel")]
const PAR_MIN_N: usize = 64;

/// An n-by-n matrix of extended lengths with zero diagonal, tagged with the
/// power level it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalMatrix {
    n: usize,
    /// Power level this matrix represents (K after resolution).
    k: usize,
    /// Level at which the power iteration stabilized, when it exited early.
    stabilized_at: Option<usize>,
    entries: Vec<f64>,
    directed: bool,
}

impl TropicalMatrix {
    pub(crate) fn from_parts(
        n: usize,
        k: usize,
        stabilized_at: Option<usize>,
        entries: Vec<f64>,
        directed: bool,
    ) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        TropicalMatrix { n, k, stabilized_at, entries, directed }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The power level K this matrix represents.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `Some(level)` when the min-plus iteration found A^(level+1,*) equal
    /// to A^(level,*) and exited early.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.stabilized_at
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Directedness of the source graph.
    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.entries[i * n + j] != self.entries[j * n + i] {
                    return false;
                }
            }
        }
        true
    }

    /// Largest off-diagonal entry; 0 for a single vertex.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut max = f64::NEG_INFINITY;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    max = max.max(self.entries[i * self.n + j]);
                }
            }
        }
        if max == f64::NEG_INFINITY {
            0.0
        } else {
            max
        }
    }

    /// True iff some off-diagonal entry is infinite.
    pub fn has_unreachable_pair(&self) -> bool {
        let n = self.n;
        self.entries.iter().enumerate().any(|(idx, &v)| idx / n != idx % n && v.is_infinite())
    }

    pub fn transposed(&self) -> TropicalMatrix {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        TropicalMatrix {
            n,
            k: self.k,
            stabilized_at: self.stabilized_at,
            entries,
            directed: self.directed,
        }
    }
}

/// The tropical identity: zero diagonal, +inf elsewhere.
pub fn tropical_identity(n: usize) -> Vec<f64> {
    let mut m = vec![f64::INFINITY; n * n];
    for i in 0..n {
        m[i * n + i] = 0.0;
    }
    m
}

/// Min-plus product `c_ij = min_h (a_ih + b_hj)` of two row-major n-by-n
/// matrices. The diagonal is whatever the product yields; callers building
/// powers reset it afterwards.
pub fn minplus_multiply(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n || b.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "min-plus product needs two {n}x{n} operands, got lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    #[cfg(feature = "parallel")]
    if n >= PAR_MIN_N {
        return Ok(kernel::minplus_dense_par(a, b, n));
    }
    Ok(kernel::minplus_dense_seq(a, b, n))
}

/// Low-level kernels with the execution mode pinned, mainly for benchmarks;
/// [`minplus_multiply`] and the power routines pick a mode automatically.
pub mod kernel {
    use super::*;

    fn dense_row(a_row: &[f64], b: &[f64], n: usize, out: &mut [f64]) {
        out.fill(f64::INFINITY);
        for (h, &aih) in a_row.iter().enumerate() {
            if aih.is_finite() {
                let b_row = &b[h * n..(h + 1) * n];
                for (o, &bhj) in out.iter_mut().zip(b_row) {
                    let cand = aih + bhj;
                    if cand < *o {
                        *o = cand;
                    }
                }
            }
        }
    }

    pub fn minplus_dense_seq(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; n * n];
        for (i, chunk) in out.chunks_mut(n).enumerate() {
            dense_row(&a[i * n..(i + 1) * n], b, n, chunk);
        }
        out
    }

    #[cfg(feature = "parallel")]
    pub fn minplus_dense_par(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
        use rayon::prelude::*;
        let mut out = vec![f64::INFINITY; n * n];
        out.par_chunks_mut(n).enumerate().for_each(|(i, chunk)| {
            dense_row(&a[i * n..(i + 1) * n], b, n, chunk);
        });
        out
    }

    /// K-path matrix with the execution mode pinned to sequential.
    pub fn kpath_seq(g: &Graph, k: usize) -> Result<TropicalMatrix> {
        kpath_impl(g, k, false)
    }

    /// K-path matrix with the execution mode pinned to parallel.
    #[cfg(feature = "parallel")]
    pub fn kpath_par(g: &Graph, k: usize) -> Result<TropicalMatrix> {
        kpath_impl(g, k, true)
    }

    /// One Bellman-Ford level for one output row: start from the previous
    /// row (the h = j term of the min, since the right factor has a zero
    /// diagonal) and relax every arc.
    pub(super) fn relax_row(prev_row: &[f64], arcs: &[Vec<(usize, f64)>], out: &mut [f64]) {
        out.copy_from_slice(prev_row);
        for (h, &d) in prev_row.iter().enumerate() {
            if d.is_finite() {
                for &(j, w) in &arcs[h] {
                    let cand = d + w;
                    if cand < out[j] {
                        out[j] = cand;
                    }
                }
            }
        }
    }

    pub(super) fn relax_level(
        prev: &[f64],
        arcs: &[Vec<(usize, f64)>],
        n: usize,
        parallel: bool,
        out: &mut [f64],
    ) {
        #[cfg(feature = "parallel")]
        if parallel {
            use rayon::prelude::*;
            out.par_chunks_mut(n).enumerate().for_each(|(i, chunk)| {
                relax_row(&prev[i * n..(i + 1) * n], arcs, chunk);
            });
            return;
        }
        let _ = parallel;
        for (i, chunk) in out.chunks_mut(n).enumerate() {
            relax_row(&prev[i * n..(i + 1) * n], arcs, chunk);
        }
    }
}

/// Outgoing arcs `(target, weight)` per vertex; the sparse right factor of
/// every power step.
fn arc_lists(g: &Graph) -> Vec<Vec<(usize, f64)>> {
    let n = g.n();
    let mut arcs = vec![Vec::new(); n];
    for (h, list) in arcs.iter_mut().enumerate() {
        for j in 0..n {
            let w = g.weight(h, j);
            if w != 0.0 && h != j {
                list.push((j, w));
            }
        }
    }
    arcs
}

fn kpath_impl(g: &Graph, k: usize, parallel: bool) -> Result<TropicalMatrix> {
    let n = g.n();
    let max_k = n.saturating_sub(1).max(1);
    if k == 0 || k > max_k {
        return Err(Error::InvalidK { k, max: max_k });
    }
    let mut cur = g.to_one_star().entries().to_vec();
    let mut next = vec![0.0; n * n];
    let arcs = arc_lists(g);
    let mut stabilized_at = None;
    for level in 2..=k {
        kernel::relax_level(&cur, &arcs, n, parallel, &mut next);
        finish_level(&mut next, n, level, !g.directed())?;
        if next == cur {
            stabilized_at = Some(level - 1);
            break;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(TropicalMatrix::from_parts(n, k, stabilized_at, cur, g.directed()))
}

/// Post-product bookkeeping: negative-cycle check, diagonal reset, and for
/// undirected graphs a mirror of the upper triangle so the matrix stays
/// exactly symmetric (the two halves can otherwise drift by rounding).
fn finish_level(entries: &mut [f64], n: usize, level: usize, mirror: bool) -> Result<()> {
    for i in 0..n {
        if entries[i * n + i] < 0.0 {
            return Err(Error::NegativeCycle { level });
        }
        entries[i * n + i] = 0.0;
    }
    if mirror {
        for i in 0..n {
            for j in (i + 1)..n {
                entries[j * n + i] = entries[i * n + j];
            }
        }
    }
    Ok(())
}

/// Shortest-path lengths using at most K edges, built by iterating
/// first-order min-plus products of the running power with the first power
/// and resetting the diagonal after each step. Exits early once the matrix
/// stabilizes.
pub fn kpath_matrix(g: &Graph, k: usize) -> Result<TropicalMatrix> {
    #[cfg(feature = "parallel")]
    let parallel = g.n() >= PAR_MIN_N;
    #[cfg(not(feature = "parallel"))]
    let parallel = false;
    kpath_impl(g, k, parallel)
}

/// The full path length matrix A^(n-1,*); a single vertex yields the 1x1
/// zero matrix.
pub fn path_length_matrix(g: &Graph) -> Result<TropicalMatrix> {
    if g.n() <= 1 {
        return Ok(g.to_one_star());
    }
    kpath_matrix(g, g.n() - 1)
}

/// Greatest distance between any two vertices; +inf iff the graph is not
/// (strongly) connected. Unweighted graphs use the cheaper exit: stop at
/// the first level with no infinite entry, which is the diameter itself.
pub fn diameter(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n <= 1 {
        return Ok(0.0);
    }
    if !g.is_unweighted() {
        return Ok(path_length_matrix(g)?.max_off_diagonal());
    }
    let mut cur = g.to_one_star().entries().to_vec();
    let all_finite = |m: &[f64]| m.iter().all(|v| v.is_finite());
    if all_finite(&cur) {
        return Ok(1.0);
    }
    let mut next = vec![0.0; n * n];
    let arcs = arc_lists(g);
    #[cfg(feature = "parallel")]
    let parallel = n >= PAR_MIN_N;
    #[cfg(not(feature = "parallel"))]
    let parallel = false;
    for level in 2..=(n - 1) {
        kernel::relax_level(&cur, &arcs, n, parallel, &mut next);
        finish_level(&mut next, n, level, !g.directed())?;
        if all_finite(&next) {
            return Ok(level as f64);
        }
        if next == cur {
            // stabilized with unreachable pairs left
            return Ok(f64::INFINITY);
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(f64::INFINITY)
}

/// For an unweighted graph, the smallest power k with (A^k)_ij > 0 together
/// with that entry: k is the shortest-path length from v_i to v_j and the
/// entry counts the shortest paths. `None` when no power up to n-1 connects
/// the pair. Does not hold for weighted graphs, which are rejected.
pub fn shortest_path_count(g: &Graph, i: usize, j: usize) -> Result<Option<(usize, BigUint)>> {
    let n = g.n();
    if !g.is_unweighted() {
        return Err(Error::WeightedCount);
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { v: i + 1, n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { v: j + 1, n });
    }
    if i == j {
        return Err(Error::SameVertex);
    }
    // in-neighbour lists: sources[t] = all h with an arc h -> t
    let mut sources = vec![Vec::new(); n];
    for (t, list) in sources.iter_mut().enumerate() {
        for h in 0..n {
            if g.weight(h, t) != 0.0 {
                list.push(h);
            }
        }
    }
    let zero = BigUint::from(0u32);
    // counts[t] = (A^k)_it, walk counts from v_i
    let mut counts = vec![zero.clone(); n];
    for (t, count) in counts.iter_mut().enumerate() {
        if g.weight(i, t) != 0.0 {
            *count = BigUint::from(1u32);
        }
    }
    for k in 1..n {
        if counts[j] > zero {
            return Ok(Some((k, counts[j].clone())));
        }
        let mut nxt = vec![zero.clone(); n];
        for (t, srcs) in sources.iter().enumerate() {
            for &h in srcs {
                nxt[t] += &counts[h];
            }
        }
        counts = nxt;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(usize, usize, Option<f64>)], n: usize, directed: bool) -> Graph {
        Graph::from_edge_list(edges, n, directed).unwrap()
    }

    fn g1() -> Graph {
        graph(
            &[(1, 3, None), (1, 4, None), (1, 5, None), (2, 3, None), (2, 4, None), (2, 5, None)],
            5,
            false,
        )
    }

    fn g2() -> Graph {
        graph(&[(1, 3, None), (2, 3, None)], 3, false)
    }

    const INF: f64 = f64::INFINITY;

    #[test]
    fn infinity_saturates_and_yields_to_min() {
        // the extended-length conventions every kernel relies on
        assert_eq!(INF + 1.0, INF);
        assert_eq!(INF + INF, INF);
        assert_eq!(1.5f64.min(INF), 1.5);
        assert_eq!(INF.min(2.0), 2.0);
    }

    #[test]
    fn identity_is_neutral() {
        let t = g2().to_one_star();
        let id = tropical_identity(3);
        assert_eq!(minplus_multiply(t.entries(), &id, 3).unwrap(), t.entries());
        assert_eq!(minplus_multiply(&id, t.entries(), 3).unwrap(), t.entries());
    }

    #[test]
    fn square_of_a2_first_power() {
        let t = g2().to_one_star();
        let mut sq = minplus_multiply(t.entries(), t.entries(), 3).unwrap();
        for i in 0..3 {
            sq[i * 3 + i] = 0.0;
        }
        assert_eq!(sq, vec![0.0, 2.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn dense_product_matches_triple_loop() {
        // fixed 4x4 instance with unreachable entries
        let a =
            vec![0.0, 1.5, INF, 0.25, 2.0, 0.0, 3.0, INF, INF, 0.5, 0.0, 1.0, 4.0, INF, 0.75, 0.0];
        let b =
            vec![0.0, INF, 2.25, 1.0, 0.5, 0.0, INF, 3.5, 1.25, 2.0, 0.0, INF, INF, 0.25, 4.0, 0.0];
        let got = minplus_multiply(&a, &b, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut best = INF;
                for h in 0..4 {
                    best = best.min(a[i * 4 + h] + b[h * 4 + j]);
                }
                assert_eq!(got[i * 4 + j], best, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn product_rejects_dimension_mismatch() {
        assert!(matches!(
            minplus_multiply(&[0.0; 4], &[0.0; 9], 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kpath_of_a1_stabilizes_at_two() {
        let g = g1();
        #[rustfmt::skip]
        let plm = vec![
            0.0, 2.0, 1.0, 1.0, 1.0,
            2.0, 0.0, 1.0, 1.0, 1.0,
            1.0, 1.0, 0.0, 2.0, 2.0,
            1.0, 1.0, 2.0, 0.0, 2.0,
            1.0, 1.0, 2.0, 2.0, 0.0,
        ];
        let t4 = kpath_matrix(&g, 4).unwrap();
        assert_eq!(t4.entries(), plm.as_slice());
        assert_eq!(t4.k(), 4);
        assert_eq!(t4.stabilized_at(), Some(2));
        let t2 = kpath_matrix(&g, 2).unwrap();
        let t3 = kpath_matrix(&g, 3).unwrap();
        assert_eq!(t2.entries(), t4.entries());
        assert_eq!(t3.entries(), t4.entries());
    }

    #[test]
    fn kpath_level_one_is_first_power() {
        let g = g2();
        assert_eq!(kpath_matrix(&g, 1).unwrap().entries(), g.to_one_star().entries());
    }

    #[test]
    fn kpath_of_perturbed_a2() {
        let g = g2().apply_perturbation(1, 2, 0.5, true).unwrap();
        let t = kpath_matrix(&g, 2).unwrap();
        assert_eq!(t.entries(), &[0.0, 1.5, 1.0, 1.5, 0.0, 0.5, 1.0, 0.5, 0.0]);
    }

    #[test]
    fn kpath_rejects_bad_level() {
        let g = g2();
        assert!(matches!(kpath_matrix(&g, 0), Err(Error::InvalidK { k: 0, max: 2 })));
        assert!(matches!(kpath_matrix(&g, 3), Err(Error::InvalidK { k: 3, max: 2 })));
    }

    #[test]
    fn path_length_matrix_of_path_graph() {
        let g = graph(&[(1, 2, None), (2, 3, None)], 3, false);
        let t = path_length_matrix(&g).unwrap();
        assert_eq!(t.get(0, 2), 2.0);
        assert_eq!(t.entries(), &[0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0]);
    }

    #[test]
    fn path_length_matrix_of_single_vertex() {
        let g = Graph::from_edge_list(&[], 1, false).unwrap();
        let t = path_length_matrix(&g).unwrap();
        assert_eq!(t.entries(), &[0.0]);
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn plm_equals_both_printed_matrices() {
        let t2 = path_length_matrix(&g2()).unwrap();
        assert_eq!(t2.entries(), &[0.0, 2.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0, 0.0]);
        let t1 = path_length_matrix(&g1()).unwrap();
        assert_eq!(t1.get(0, 1), 2.0);
        assert_eq!(t1.get(2, 3), 2.0);
        assert_eq!(t1.get(0, 2), 1.0);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&g1()).unwrap(), 2.0);
        assert_eq!(diameter(&g2()).unwrap(), 2.0);
        let perturbed = g2().apply_perturbation(1, 2, 0.5, true).unwrap();
        assert_eq!(diameter(&perturbed).unwrap(), 1.5);
        let isolated = Graph::from_edge_list(&[], 2, false).unwrap();
        assert_eq!(diameter(&isolated).unwrap(), INF);
    }

    #[test]
    fn diameter_of_complete_and_path_graphs() {
        let k3 = graph(&[(1, 2, None), (1, 3, None), (2, 3, None)], 3, false);
        assert_eq!(diameter(&k3).unwrap(), 1.0);
        let p5 = graph(&[(1, 2, None), (2, 3, None), (3, 4, None), (4, 5, None)], 5, false);
        assert_eq!(diameter(&p5).unwrap(), 4.0);
    }

    #[test]
    fn directed_unreachability_is_infinite() {
        let g = graph(&[(1, 2, None), (2, 3, None)], 3, true);
        let t = path_length_matrix(&g).unwrap();
        assert_eq!(t.get(0, 2), 2.0);
        assert_eq!(t.get(2, 0), INF);
        assert_eq!(diameter(&g).unwrap(), INF);
    }

    #[test]
    fn negative_weights_shortest_paths() {
        let g = Graph::from_edge_list_with(
            &[(1, 2, Some(2.0)), (2, 3, Some(-0.5)), (1, 3, Some(3.0))],
            3,
            true,
            true,
        )
        .unwrap();
        let t = path_length_matrix(&g).unwrap();
        assert_eq!(t.get(0, 2), 1.5);
    }

    #[test]
    fn negative_cycle_is_detected() {
        let g = Graph::from_edge_list_with(
            &[(1, 2, Some(1.0)), (2, 1, Some(-2.0)), (2, 3, Some(1.0))],
            3,
            true,
            true,
        )
        .unwrap();
        assert!(matches!(path_length_matrix(&g), Err(Error::NegativeCycle { .. })));
    }

    #[test]
    fn monotone_entries_in_k() {
        let g = graph(&[(1, 2, None), (2, 3, None), (3, 4, None), (4, 1, None)], 4, false);
        let mut prev = kpath_matrix(&g, 1).unwrap();
        for k in 2..=3 {
            let next = kpath_matrix(&g, k).unwrap();
            for (a, b) in next.entries().iter().zip(prev.entries()) {
                assert!(a <= b);
            }
            prev = next;
        }
    }

    #[test]
    fn undirected_weighted_power_stays_symmetric() {
        let g = graph(
            &[(1, 2, Some(0.3)), (2, 3, Some(0.7)), (3, 4, Some(0.1)), (4, 1, Some(0.9))],
            4,
            false,
        );
        for k in 1..=3 {
            assert!(kpath_matrix(&g, k).unwrap().is_symmetric());
        }
    }

    #[test]
    fn shortest_path_counts_of_example_graphs() {
        let one = BigUint::from(1u32);
        let three = BigUint::from(3u32);
        assert_eq!(shortest_path_count(&g1(), 0, 1).unwrap(), Some((2, three)));
        assert_eq!(shortest_path_count(&g2(), 0, 1).unwrap(), Some((2, one.clone())));
        assert_eq!(shortest_path_count(&g2(), 0, 2).unwrap(), Some((1, one)));
    }

    #[test]
    fn shortest_path_count_cross_checks_with_plm() {
        let g = g1();
        let t = path_length_matrix(&g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let (k, _) = shortest_path_count(&g, i, j).unwrap().unwrap();
                    assert_eq!(k as f64, t.get(i, j));
                }
            }
        }
    }

    #[test]
    fn shortest_path_count_unreachable_and_errors() {
        let iso = Graph::from_edge_list(&[], 3, false).unwrap();
        assert_eq!(shortest_path_count(&iso, 0, 1).unwrap(), None);
        let w = graph(&[(1, 2, Some(0.5))], 2, true);
        assert!(matches!(shortest_path_count(&w, 0, 1), Err(Error::WeightedCount)));
        assert!(matches!(shortest_path_count(&g2(), 1, 1), Err(Error::SameVertex)));
    }

    #[test]
    fn seq_and_par_kernels_agree() {
        let g = g1();
        let seq = kernel::kpath_seq(&g, 4).unwrap();
        assert_eq!(seq.entries(), kpath_matrix(&g, 4).unwrap().entries());
        #[cfg(feature = "parallel")]
        {
            let par = kernel::kpath_par(&g, 4).unwrap();
            assert_eq!(seq.entries(), par.entries());
            let a = g.to_one_star();
            assert_eq!(
                kernel::minplus_dense_seq(a.entries(), a.entries(), 5),
                kernel::minplus_dense_par(a.entries(), a.entries(), 5)
            );
        }
    }
}
