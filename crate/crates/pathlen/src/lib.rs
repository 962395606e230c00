//! Network analysis built on the path length matrix.
//!
//! Distances between vertices are obtained as min-plus (tropical) powers of
//! the weight matrix: the K-th power holds shortest-path lengths restricted
//! to paths of at most K edges, and the (n-1)-th power is the full path
//! length matrix. Unreachable pairs carry `f64::INFINITY`. On top of these
//! matrices the crate provides the classical connectivity measures
//! (closeness, eccentricity, harmonic centrality, global efficiency, Harary
//! index, centers) together with their K-limited and in-/out- variants, the
//! Perron root and vectors of the reciprocal matrix, and two heuristics
//! (`ekg1`, `ekg2`) that recommend a single edge whose weight should be
//! scaled down to raise global K-efficiency.
//!
//! The min-plus kernels are data-parallel over rows. With the default
//! `parallel` feature they run on rayon; without it a sequential fallback
//! with identical, bit-for-bit reproducible output is used.

#![forbid(unsafe_code)]

pub mod enhance;
mod error;
pub mod graph;
pub mod io;
pub mod measures;
pub mod spectral;
pub mod tropical;
pub(crate) mod util;

pub use enhance::{ekg1, ekg2, improve, EnhanceOptions, Method, MethodChoice, Proposal};
pub use error::{Error, Result};
pub use graph::Graph;
pub use measures::{MeasureReport, ReciprocalMatrix};
pub use spectral::PerronData;
pub use tropical::TropicalMatrix;
