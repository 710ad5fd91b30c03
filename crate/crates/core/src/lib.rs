//! Exact spectral moments of distance-k graphs of Cartesian product powers.
//!
//! Take a finite connected graph `G` and its `N`-fold Cartesian product
//! `G^N`. The distance-k graph puts an edge between product vertices whose
//! `G^N`-distance is exactly `k`. As `N` grows, the eigenvalue distribution
//! of its adjacency matrix, scaled by `N^{k/2}`, converges in moments to the
//! law of `c^{k/2} (1/k!) H_k(g)` where `g` is standard Gaussian, `H_k` the
//! monic Hermite polynomial, and `c` the mean degree of `G` — for *every*
//! factor graph `G`.
//!
//! This crate computes all the finite-`N` quantities exactly (big rationals
//! end to end) and the Gaussian limit in closed form, so the convergence can
//! be watched, certified against a brute-force oracle, and reported:
//!
//! - [`graph`] — factor graphs, families, BFS distances, distance matrices
//! - [`poly`] — truncated multivariate polynomials (the generating-function
//!   engine that makes exact moments affordable for large `N`)
//! - [`scaled`] — exact values carrying a half-power of the mean degree
//! - [`moments`] — the moment engine for distance-k adjacencies, elementary
//!   sums, partition terms, and the vanishing correction terms
//! - [`hermite`] — monic Hermite polynomials and Gaussian expectations
//! - [`brute`] — explicit product matrices, trace moments, a cyclic Jacobi
//!   eigensolver, spectral histograms
//! - [`report`] — convergence runs, consistency checks, CSV/JSON emission
//!
//! All public computations are pure functions of their inputs (no globals,
//! no interior mutability), so they can be evaluated concurrently from many
//! threads; identical inputs give bit-identical rationals regardless of
//! scheduling.

pub mod brute;
pub mod graph;
pub mod hermite;
pub mod matrix;
pub mod moments;
pub mod poly;
pub mod report;
pub mod scaled;

/// Arbitrary-precision rational, kept in canonical lowest terms with a
/// positive denominator by construction.
pub type Rational = num_rational::BigRational;

pub use graph::{DistanceTable, Graph, GraphError};
pub use matrix::IntSymMatrix;
