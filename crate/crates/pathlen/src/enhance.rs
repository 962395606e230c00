//! Edge selection for raising global K-efficiency.
//!
//! Both routines pick one existing edge whose weight is scaled down
//! (halved by default). `ekg1` works from harmonic centralities: the edge
//! runs from the vertex that best collects reciprocal distances to the
//! out-neighbour with the largest weighted out-centrality. `ekg2` computes
//! the left and right Perron vectors of the reciprocal K-path matrix and
//! picks the largest entry of their outer product restricted to existing
//! edges, the direction of maximal first-order sensitivity of the Perron
//! root. Both maximize lower bounds on the global K-efficiency, so the
//! proposals are heuristics, not optima.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{reciprocal, ReciprocalMatrix};
use crate::spectral::{perron, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::tropical::kpath_matrix;
use crate::util::{argmax_set, round_sig};

/// Which selection routine to run; `Auto` tries `ekg2` and falls back to
/// `ekg1` when the reciprocal matrix is reducible or the power iteration
/// does not converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Ekg1,
    Ekg2,
    Auto,
}

/// The routine that actually produced a proposal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ekg1,
    Ekg2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ekg1 => "ekg1",
            Method::Ekg2 => "ekg2",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnhanceOptions {
    /// Scale applied to the selected weight, in (0, 1].
    pub factor: f64,
    /// Power iteration tolerance for `ekg2`.
    pub tol: f64,
    /// Power iteration cap for `ekg2`.
    pub max_iter: usize,
}

impl Default for EnhanceOptions {
    fn default() -> Self {
        EnhanceOptions { factor: 0.5, tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

/// A recommended single-edge perturbation, with the global K-efficiency
/// before and after applying it. Vertices are 0-based.
#[derive(Debug, Clone)]
pub struct Proposal {
    pub h1: usize,
    pub h2: usize,
    pub method: Method,
    pub k: usize,
    pub weight_before: f64,
    pub weight_after: f64,
    /// Additive change of the selected weight (negative for a reduction).
    pub gamma: f64,
    pub e_before: f64,
    pub e_after: f64,
    /// Whether both (h1, h2) and (h2, h1) were scaled.
    pub symmetric: bool,
    /// Equally valid selections under the tie rules, 0-based; unordered
    /// duplicates are dropped for undirected graphs.
    pub alternatives: Vec<(usize, usize)>,
}

/// Global K-efficiency from a reciprocal matrix, summed row by row so the
/// value is bit-identical with the measures module.
fn efficiency(r: &ReciprocalMatrix) -> f64 {
    let n = r.n();
    if n <= 1 {
        return 0.0;
    }
    r.row_sums().iter().sum::<f64>() / (n * (n - 1)) as f64
}

fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn prologue(g: &Graph, k: usize) -> Result<(ReciprocalMatrix, f64)> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let t = kpath_matrix(g, k)?;
    let r = reciprocal(&t)?;
    let e_before = efficiency(&r);
    Ok((r, e_before))
}

/// What a selection routine decided, before the perturbation is applied.
struct Selection {
    method: Method,
    h1: usize,
    h2: usize,
    alternatives: Vec<(usize, usize)>,
}

fn finish(
    g: &Graph,
    k: usize,
    sel: Selection,
    e_before: f64,
    opts: &EnhanceOptions,
) -> Result<(Proposal, Graph)> {
    let Selection { method, h1, h2, mut alternatives } = sel;
    let symmetric = !g.directed();
    let perturbed = g.apply_perturbation(h1, h2, opts.factor, symmetric)?;
    let e_after = efficiency(&reciprocal(&kpath_matrix(&perturbed, k)?)?);
    alternatives.retain(|&(a, b)| (a, b) != (h1, h2));
    if symmetric {
        // an undirected selection and its mirror are the same edge
        alternatives.retain(|&(a, b)| (b, a) != (h1, h2));
        let mut seen = std::collections::HashSet::new();
        alternatives.retain(|&(a, b)| seen.insert((a.min(b), a.max(b))));
        for pair in alternatives.iter_mut() {
            *pair = (pair.0.min(pair.1), pair.0.max(pair.1));
        }
    }
    let weight_before = g.weight(h1, h2);
    let weight_after = perturbed.weight(h1, h2);
    Ok((
        Proposal {
            h1,
            h2,
            method,
            k,
            weight_before,
            weight_after,
            gamma: weight_after - weight_before,
            e_before,
            e_after,
            symmetric,
            alternatives,
        },
        perturbed,
    ))
}

/// Harmonic-centrality selection: h1 maximizes the in-centralities
/// (column sums of the reciprocal matrix); h2 maximizes out-centrality
/// times edge weight over the existing edges leaving h1. First index wins
/// ties.
pub fn ekg1(g: &Graph, k: usize, opts: &EnhanceOptions) -> Result<(Proposal, Graph)> {
    let n = g.n();
    let (r, e_before) = prologue(g, k)?;
    let h_in = r.col_sums();
    let h_out = r.row_sums();
    let h1 = argmax_first(&h_in);
    let h2 = pick_target(g, &h_out, h1)?;

    // report equally valid picks: tied collectors, each with its tied targets
    let mut alternatives = Vec::new();
    for &c1 in &argmax_set(&h_in) {
        let products: Vec<f64> =
            (0..n)
                .map(|j| {
                    if g.weight(c1, j) > 0.0 {
                        h_out[j] * g.weight(c1, j)
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect();
        if products.iter().all(|v| *v == f64::NEG_INFINITY) {
            continue;
        }
        for c2 in argmax_set(&products) {
            alternatives.push((c1, c2));
        }
    }
    finish(g, k, Selection { method: Method::Ekg1, h1, h2, alternatives }, e_before, opts)
}

fn pick_target(g: &Graph, h_out: &[f64], h1: usize) -> Result<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    for j in 0..n {
        let w = g.weight(h1, j);
        if w > 0.0 {
            let v = h_out[j] * w;
            if best.is_none_or(|b| v > h_out[b] * g.weight(h1, b)) {
                best = Some(j);
            }
        }
    }
    best.ok_or(Error::NoOutgoingEdge { h1: h1 + 1 })
}

/// Perron-based selection: the largest entry of the Wilkinson perturbation
/// y·xᵀ over the existing edges. Exact ties are broken toward the larger
/// left-vector entry y[h1], then toward the smaller column-major index.
pub fn ekg2(g: &Graph, k: usize, opts: &EnhanceOptions) -> Result<(Proposal, Graph)> {
    let n = g.n();
    let (r, e_before) = prologue(g, k)?;
    let p = perron(&r, opts.tol, opts.max_iter)?;
    if !p.converged {
        return Err(Error::NoConvergence { max_iter: opts.max_iter, residual: p.residual });
    }
    let mut best: Option<(f64, f64, usize, usize)> = None;
    for h2 in 0..n {
        for h1 in 0..n {
            if g.weight(h1, h2) <= 0.0 {
                continue;
            }
            let v = p.y[h1] * p.x[h2];
            let replace = match best {
                None => true,
                Some((bv, by, _, _)) => v > bv || (v == bv && p.y[h1] > by),
            };
            if replace {
                best = Some((v, p.y[h1], h1, h2));
            }
        }
    }
    let (best_v, _, h1, h2) = best.ok_or(Error::NoEdges)?;
    let best_r = round_sig(best_v, 12);
    let mut alternatives = Vec::new();
    for c2 in 0..n {
        for c1 in 0..n {
            if g.weight(c1, c2) > 0.0 && round_sig(p.y[c1] * p.x[c2], 12) == best_r {
                alternatives.push((c1, c2));
            }
        }
    }
    finish(g, k, Selection { method: Method::Ekg2, h1, h2, alternatives }, e_before, opts)
}

/// Applies the chosen method `steps` times, each step perturbing the
/// previously perturbed graph.
pub fn improve(
    g: &Graph,
    k: usize,
    choice: MethodChoice,
    steps: usize,
    opts: &EnhanceOptions,
) -> Result<(Vec<Proposal>, Graph)> {
    let mut cur = g.clone();
    let mut proposals = Vec::with_capacity(steps);
    for _ in 0..steps {
        let (proposal, next) = match choice {
            MethodChoice::Ekg1 => ekg1(&cur, k, opts)?,
            MethodChoice::Ekg2 => ekg2(&cur, k, opts)?,
            MethodChoice::Auto => match ekg2(&cur, k, opts) {
                Ok(result) => result,
                Err(Error::Reducible) | Err(Error::NoConvergence { .. }) => ekg1(&cur, k, opts)?,
                Err(e) => return Err(e),
            },
        };
        proposals.push(proposal);
        cur = next;
    }
    Ok((proposals, cur))
}
