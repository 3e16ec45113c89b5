//! Exact tools for the minimum semidefinite rank (msr) of small graphs.
//!
//! msr(G) is the smallest rank among positive semidefinite matrices whose
//! off-diagonal zero pattern matches non-adjacency in G, equivalently the
//! smallest dimension admitting a vector representation of G (one vector per
//! vertex, with zero inner products exactly on non-adjacent distinct pairs).
//!
//! The crate provides:
//!
//! - [`rat`]: arbitrary-precision rational matrices with exact rank,
//!   nullspace, and positive-semidefiniteness decisions.
//! - [`graph`]: small undirected graphs, a graph6 codec, and pattern
//!   recovery from symmetric matrices.
//! - [`cert`]: upper-bound certificates (a matrix B with rank(B) rows whose
//!   Gram matrix realizes the graph), a line-oriented file codec, a verifier,
//!   and corpus loading.
//! - [`bounds`]: lower bounds via maximum induced trees, pendant peeling, a
//!   subset-dimension dynamic program, and a refutation engine that emits
//!   independently checkable proof traces.
//! - [`search`]: randomized exact construction of rank-k representations,
//!   yielding new certificates.
//! - [`engine`]: end-to-end msr determination and a batch report over a
//!   certificate corpus.
//! - [`exec`]: sequential/parallel execution strategy shared by the batch
//!   entry points.
//!
//! All arithmetic is exact over the rationals; every bound comes with
//! evidence (a certificate, an induced tree, a dimension chain, or a
//! refutation trace) that can be replayed without trusting the solver.

pub mod bounds;
pub mod cert;
pub mod engine;
pub mod exec;
pub mod graph;
pub mod rat;
pub mod search;
