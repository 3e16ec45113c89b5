//! Randomized construction of exact rank-k vector representations.
//!
//! The search assigns one rational k-vector per vertex, in a fixed or
//! per-restart-shuffled order. Orthogonality to already-assigned
//! non-neighbors is enforced exactly by sampling inside the nullspace of
//! their stacked vectors; the remaining constraints (nonzero vector,
//! nonzero products with assigned neighbors) are open conditions that
//! random rational coefficients satisfy generically, with bounded
//! resampling and single-step backtracking for the stubborn cases.
//!
//! Restarts are independent: each derives its own random stream from the
//! seed and restart index, so the first success by restart index is
//! deterministic whether restarts run sequentially or in parallel. Every
//! found representation is converted to a certificate and re-verified
//! before being returned; a failed search is honest ignorance, never a
//! nonexistence proof.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cert::{verify_certificate, Certificate};
use crate::exec::{find_map_first, ExecMode};
use crate::graph::Graph;
use crate::rat::{dot, rat_int, Rat, RationalMatrix};

/// Failures of the search routines.
#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search requires a connected graph")]
    Disconnected,
    #[error("rank {0} is outside 1..={1}")]
    RankRange(usize, usize),
    #[error("search needs restarts >= 1 and a coefficient pool of at least 2 values")]
    BadConfig,
    #[error("no rank admitted a representation within the restart budget")]
    Exhausted,
}

/// How vertices are ordered during assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// Descending degree, ties by index: neighbors constrain early while
    /// nullspaces are still large.
    #[default]
    DegreeDescending,
    /// A fresh uniform shuffle on every restart.
    ShuffledPerRestart,
}

/// Parameters of the randomized search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Values the nullspace-combination coefficients are drawn from.
    pub coefficient_pool: Vec<Rat>,
    pub vertex_order: VertexOrder,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 64,
            coefficient_pool: (-3..=3).map(rat_int).collect(),
            vertex_order: VertexOrder::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..SearchConfig::default()
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.restarts == 0 || self.coefficient_pool.len() < 2 {
            return Err(SearchError::BadConfig);
        }
        Ok(())
    }
}

/// Result of a bounded search: a found certificate, or honest failure.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Certificate),
    NotFound,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Certificate> {
        match self {
            SearchOutcome::Found(cert) => Some(cert),
            SearchOutcome::NotFound => None,
        }
    }
}

/// One rational k-vector per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorRepresentation {
    pub k: usize,
    pub vectors: Vec<Vec<Rat>>,
}

impl VectorRepresentation {
    /// The matrix with the vectors as columns.
    pub fn matrix(&self) -> RationalMatrix {
        let n = self.vectors.len();
        let mut data = Vec::with_capacity(self.k * n);
        for i in 0..self.k {
            for v in &self.vectors {
                data.push(v[i].clone());
            }
        }
        RationalMatrix::new(self.k, n, data).expect("k and n are positive")
    }

    /// Checks the defining constraints against a graph: nonzero vectors,
    /// zero products exactly on non-edges.
    pub fn satisfies(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.vectors.len() != n || self.vectors.iter().any(|v| v.len() != self.k) {
            return false;
        }
        if self.vectors.iter().any(|v| v.iter().all(Zero::is_zero)) {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let zero = dot(&self.vectors[i], &self.vectors[j]).is_zero();
                if zero == g.has_edge(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

fn unit_basis(k: usize) -> Vec<Vec<Rat>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { rat_int(1) } else { rat_int(0) })
                .collect()
        })
        .collect()
}

/// Basis of the space orthogonal to all assigned non-neighbors of `u`.
fn free_basis(k: usize, constraints: &[&Vec<Rat>]) -> Vec<Vec<Rat>> {
    if constraints.is_empty() {
        return unit_basis(k);
    }
    let mut data = Vec::with_capacity(constraints.len() * k);
    for row in constraints {
        data.extend(row.iter().cloned());
    }
    let m = RationalMatrix::new(constraints.len(), k, data).expect("positive dimensions");
    m.nullspace_basis()
}

fn attempt_restart(
    g: &Graph,
    k: usize,
    cfg: &SearchConfig,
    restart: usize,
) -> Option<VectorRepresentation> {
    const RESAMPLES_PER_VERTEX: usize = 32;
    const BACKTRACKS_PER_RESTART: usize = 8;

    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);

    let mut order: Vec<usize> = (0..n).collect();
    match cfg.vertex_order {
        VertexOrder::DegreeDescending => {
            order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        }
        VertexOrder::ShuffledPerRestart => order.shuffle(&mut rng),
    }

    let mut vectors: Vec<Option<Vec<Rat>>> = vec![None; n];
    let mut backtracks_left = BACKTRACKS_PER_RESTART;
    let mut rejections = 0usize;
    let mut i = 0usize;
    while i < order.len() {
        let u = order[i];
        let assigned: Vec<usize> = order[..i].to_vec();
        let constraints: Vec<&Vec<Rat>> = assigned
            .iter()
            .filter(|&&w| !g.has_edge(u, w))
            .map(|&w| vectors[w].as_ref().expect("assigned earlier"))
            .collect();
        let basis = free_basis(k, &constraints);
        let mut found = None;
        if !basis.is_empty() {
            'tries: for _ in 0..RESAMPLES_PER_VERTEX {
                let mut candidate = vec![rat_int(0); k];
                for b in &basis {
                    let c = &cfg.coefficient_pool[rng.gen_range(0..cfg.coefficient_pool.len())];
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, entry) in candidate.iter_mut().zip(b.iter()) {
                        *slot += c * entry;
                    }
                }
                if candidate.iter().all(Zero::is_zero) {
                    rejections += 1;
                    continue 'tries;
                }
                for &w in assigned.iter().filter(|&&w| g.has_edge(u, w)) {
                    if dot(&candidate, vectors[w].as_ref().expect("assigned earlier")).is_zero() {
                        rejections += 1;
                        continue 'tries;
                    }
                }
                found = Some(candidate);
                break;
            }
        }
        match found {
            Some(v) => {
                vectors[u] = Some(v);
                i += 1;
            }
            None if i > 0 && backtracks_left > 0 => {
                backtracks_left -= 1;
                i -= 1;
                vectors[order[i]] = None;
            }
            None => {
                log::debug!(
                    "search restart {restart}: stuck at position {i} after {rejections} rejections"
                );
                return None;
            }
        }
    }
    log::debug!("search restart {restart}: assigned all vertices with {rejections} rejections");
    Some(VectorRepresentation {
        k,
        vectors: vectors.into_iter().map(|v| v.expect("all assigned")).collect(),
    })
}

/// Searches for a rank-`k` representation of `g`. On success the returned
/// certificate has `k` rows, columns equal to the found vectors, and has
/// already passed verification. Identical inputs yield byte-identical
/// certificates in either execution mode, since the lowest successful
/// restart index wins.
pub fn search_representation(
    g: &Graph,
    k: usize,
    cfg: &SearchConfig,
    mode: ExecMode,
) -> Result<SearchOutcome, SearchError> {
    cfg.validate()?;
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let n = g.n();
    if k == 0 || k > n {
        return Err(SearchError::RankRange(k, n));
    }
    let found = find_map_first(mode, cfg.restarts, |restart| {
        let rep = attempt_restart(g, k, cfg, restart)?;
        if !rep.satisfies(g) {
            return None;
        }
        let cert = Certificate::new(
            g.label().unwrap_or("search"),
            rep.matrix(),
            k,
            None,
            None,
            false,
        )
        .expect("matrix has k rows by construction");
        let report = verify_certificate(&cert);
        if !report.verdict.passed() {
            log::debug!(
                "search restart {restart}: representation found but certificate failed: {report}"
            );
            return None;
        }
        Some((restart, cert))
    });
    match found {
        Some((restart, cert)) => {
            log::debug!(
                "search: rank {k} representation found at restart {restart} of {}",
                cfg.restarts
            );
            Ok(SearchOutcome::Found(cert))
        }
        None => Ok(SearchOutcome::NotFound),
    }
}

/// Smallest rank reached by running the search from `n - 1` downward while
/// it keeps succeeding (from rank 1 on a single-vertex graph). The result
/// is an upper bound on the minimum semidefinite rank, never a proof of
/// optimality.
pub fn upper_bound_scan(
    g: &Graph,
    cfg: &SearchConfig,
    mode: ExecMode,
) -> Result<(usize, Certificate), SearchError> {
    cfg.validate()?;
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let mut best: Option<(usize, Certificate)> = None;
    let mut k = (g.n() - 1).max(1);
    while let SearchOutcome::Found(cert) = search_representation(g, k, cfg, mode)? {
        best = Some((k, cert));
        if k == 1 {
            break;
        }
        k -= 1;
    }
    best.ok_or(SearchError::Exhausted)
}
