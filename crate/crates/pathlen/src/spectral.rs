//! Perron root and vectors of the nonnegative reciprocal K-path matrix.
//!
//! Only the dominant eigenpair is needed, so a two-sided power iteration is
//! enough: the matrix is nonnegative and, when irreducible, has a simple
//! dominant eigenvalue. The iteration runs on a diagonally shifted copy
//! (M + sigma*I), which has the same eigenvectors but is primitive even for
//! periodic patterns such as bipartite graphs, where the plain iteration
//! would oscillate. Rayleigh quotients and residuals are evaluated on the
//! unshifted matrix.

use crate::error::{Error, Result};
use crate::measures::ReciprocalMatrix;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Relative diagonal shift applied to keep the iteration aperiodic.
const SHIFT_FRACTION: f64 = 0.05;
/// Iterations between stagnation checks.
const STAGNATION_WINDOW: usize = 512;
/// Minimum relative residual improvement per window; less means the
/// dominant pair is (near-)degenerate and we give up.
const STAGNATION_FACTOR: f64 = 0.999;

/// Dominant eigen-triple of a nonnegative irreducible matrix.
#[derive(Debug, Clone)]
pub struct PerronData {
    /// Perron root (spectral radius).
    pub rho: f64,
    /// Right Perron vector, unit 2-norm, entrywise positive.
    pub x: Vec<f64>,
    /// Left Perron vector, unit 2-norm; equals `x` for symmetric input.
    pub y: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// max(‖Mx − ρx‖₂, ‖Mᵀy − ρy‖₂) for the reported triple.
    pub residual: f64,
}

/// True iff the digraph of the positivity pattern is strongly connected,
/// checked with one forward and one backward reachability sweep.
pub fn is_irreducible(m: &ReciprocalMatrix) -> bool {
    let n = m.n();
    if n <= 1 {
        return true;
    }
    let forward = |u: usize, v: usize| m.get(u, v) > 0.0;
    let backward = |u: usize, v: usize| m.get(v, u) > 0.0;
    reaches_all(n, forward) && reaches_all(n, backward)
}

fn reaches_all(n: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for (v, seen) in visited.iter_mut().enumerate() {
            if !*seen && edge(u, v) {
                *seen = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// Lower and upper bounds on the Perron root: the minimal and maximal row
/// sums, i.e. the extreme harmonic K-centralities.
pub fn perron_bounds(m: &ReciprocalMatrix) -> (f64, f64) {
    let sums = m.row_sums();
    let lower = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lower, upper)
}

fn matvec(m: &[f64], x: &[f64], n: usize, out: &mut [f64]) {
    #[cfg(feature = "parallel")]
    if n >= 64 {
        use rayon::prelude::*;
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            *o = m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
        });
        return;
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// ‖mv − rho·v‖₂
fn residual_norm(mv: &[f64], rho: f64, v: &[f64]) -> f64 {
    mv.iter().zip(v).map(|(a, b)| (a - rho * b).powi(2)).sum::<f64>().sqrt()
}

/// Next iterate of the shifted iteration: normalize(mv + sigma*v).
fn advance(v: &mut [f64], mv: &[f64], sigma: f64) -> Result<()> {
    for (vi, &mvi) in v.iter_mut().zip(mv) {
        *vi = mvi + sigma * *vi;
    }
    let norm = norm2(v);
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::NotPositive);
    }
    for vi in v.iter_mut() {
        *vi /= norm;
    }
    Ok(())
}

/// Dominant eigen-triple by simultaneous power iteration on M and its
/// transpose. Errors on reducible input; non-convergence is reported in
/// the returned data, not as an error, so callers can fall back.
pub fn perron(m: &ReciprocalMatrix, tol: f64, max_iter: usize) -> Result<PerronData> {
    if !is_irreducible(m) {
        return Err(Error::Reducible);
    }
    let n = m.n();
    if n <= 1 {
        return Ok(PerronData {
            rho: 0.0,
            x: vec![1.0; n],
            y: vec![1.0; n],
            converged: true,
            iterations: 0,
            residual: 0.0,
        });
    }
    let entries = m.entries();
    let symmetric = (0..n).all(|i| (i + 1..n).all(|j| entries[i * n + j] == entries[j * n + i]));
    let transpose: Vec<f64>;
    let mt: &[f64] = if symmetric {
        entries
    } else {
        transpose = {
            let mut t = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[j * n + i] = entries[i * n + j];
                }
            }
            t
        };
        &transpose
    };

    let (_, upper) = perron_bounds(m);
    let sigma = SHIFT_FRACTION * upper;
    let init = 1.0 / (n as f64).sqrt();
    let mut x = vec![init; n];
    let mut y = vec![init; n];
    let mut mx = vec![0.0; n];
    let mut my = vec![0.0; n];

    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    let mut window_residual = f64::INFINITY;

    for it in 1..=max_iter {
        iterations = it;
        matvec(entries, &x, n, &mut mx);
        if symmetric {
            rho = dot(&x, &mx);
            residual = residual_norm(&mx, rho, &x);
        } else {
            matvec(mt, &y, n, &mut my);
            rho = 0.5 * (dot(&x, &mx) + dot(&y, &my));
            residual = residual_norm(&mx, rho, &x).max(residual_norm(&my, rho, &y));
        }
        if residual <= tol {
            converged = true;
            break;
        }
        if it % STAGNATION_WINDOW == 0 {
            if residual > STAGNATION_FACTOR * window_residual {
                break;
            }
            window_residual = residual;
        }
        advance(&mut x, &mx, sigma)?;
        if symmetric {
            y.copy_from_slice(&x);
        } else {
            advance(&mut y, &my, sigma)?;
        }
    }

    if converged && (x.iter().any(|&v| v <= 0.0) || y.iter().any(|&v| v <= 0.0)) {
        return Err(Error::NotPositive);
    }
    Ok(PerronData { rho, x, y, converged, iterations, residual })
}
