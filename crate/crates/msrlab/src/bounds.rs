//! Lower bounds on the minimum semidefinite rank of a graph.
//!
//! Three bounding techniques live here, ordered roughly by strength on
//! small graphs:
//!
//! * induced trees: a connected graph containing an induced tree on `t`
//!   vertices needs rank at least `t - 1` ([`ts_lower_bound`]);
//! * a subset-dimension dynamic program that certifies, subset by subset,
//!   how many dimensions the vectors of any representation must span
//!   ([`subset_dim_bound`]);
//! * a refutation engine that assumes a representation of a given rank
//!   exists and derives a contradiction by span reasoning
//!   ([`refute_rank`]).
//!
//! Every bound returns replayable evidence: a vertex set for the tree, a
//! [`DimChain`] for the dynamic program and a [`RefutationTrace`] for the
//! engine, so callers can re-check each claim against the adjacency
//! structure alone, without trusting the search that produced it.

mod refute;

pub use refute::{
    check_trace, refute_rank, BranchApp, Closure, Derivation, NodeEnd, RefutationTrace,
    RefuteBudget, RefuteOutcome, TraceNode,
};

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet, SUBSET_GATE};

/// Failures of the bounding routines.
#[derive(Debug, Error)]
pub enum BoundsError {
    /// Subset enumeration is gated to keep runtimes predictable.
    #[error("graph on {0} vertices exceeds the subset enumeration gate of {1}")]
    SizeGate(usize, usize),
    /// The bound is only meaningful (and only sound) on connected graphs.
    #[error("bound requires a connected graph")]
    Disconnected,
    /// A refutation budget must allow at least one level and one node.
    #[error("refutation budget must allow at least one level and one node")]
    EmptyBudget,
}

/// Renders a vertex set as `{v1,v4}` with 1-based vertex numbers.
pub(crate) fn render_set(s: VertexSet) -> String {
    let mut out = String::from("{");
    for (k, v) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push('v');
        out.push_str(&(v + 1).to_string());
    }
    out.push('}');
    out
}

/// Justification for one extension step of a [`DimChain`].
///
/// Each rule certifies that the vector of the new vertex cannot lie in the
/// span of the vectors of the current chain, so the span gains a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimRule {
    /// The new vertex is non-adjacent to (and distinct from) every chain
    /// vertex; a nonzero vector orthogonal to a span lies outside it.
    Orthogonal,
    /// The witness is orthogonal to every chain vertex but not to the new
    /// one, so the new vector is no combination of the chain.
    Witness(usize),
    /// The chain is a single vertex `s` and the witness is orthogonal to
    /// the new vertex but not to `s`; a scalar multiple of `s` would be
    /// orthogonal to the witness only if it were zero.
    ReverseWitness(usize),
}

/// One extension step of a [`DimChain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimStep {
    pub vertex: usize,
    pub rule: DimRule,
}

/// A chain of vertices, starting from a singleton, in which every
/// extension is justified by a [`DimRule`]. A valid chain certifies that
/// the vectors of its support span at least [`DimChain::len`] dimensions
/// in every representation of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DimChain {
    /// First chain vertex; `None` is the empty chain certifying zero.
    pub start: Option<usize>,
    pub steps: Vec<DimStep>,
}

impl DimChain {
    pub fn empty() -> Self {
        DimChain::default()
    }

    /// Dimension certified by the chain.
    pub fn len(&self) -> usize {
        usize::from(self.start.is_some()) + self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_none()
    }

    /// All vertices on the chain.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        if let Some(v) = self.start {
            s = s.insert(v);
        }
        for step in &self.steps {
            s = s.insert(step.vertex);
        }
        s
    }

    /// Replays the chain against a graph using only adjacency queries.
    /// Returns the certified dimension, or `None` if any step is
    /// unjustified (including a zero-degree start or reused vertex).
    pub fn replay(&self, g: &Graph) -> Option<usize> {
        let n = g.n();
        let Some(start) = self.start else {
            return self.steps.is_empty().then_some(0);
        };
        if start >= n || g.degree(start) == 0 {
            return None;
        }
        let mut set = VertexSet::singleton(start);
        for step in &self.steps {
            let x = step.vertex;
            if x >= n || set.contains(x) {
                return None;
            }
            let ok = match step.rule {
                DimRule::Orthogonal => {
                    g.degree(x) > 0 && set.iter().all(|t| !g.has_edge(x, t))
                }
                DimRule::Witness(w) => {
                    w < n && w != x
                        && !set.contains(w)
                        && g.has_edge(w, x)
                        && set.iter().all(|t| !g.has_edge(w, t))
                }
                DimRule::ReverseWitness(w) => {
                    if set.len() != 1 {
                        return None;
                    }
                    let s = set.min().expect("nonempty");
                    w < n && w != x && w != s
                        && !g.has_edge(w, x)
                        && g.has_edge(w, s)
                        && g.degree(x) > 0
                }
            };
            if !ok {
                return None;
            }
            set = set.insert(x);
        }
        Some(self.len())
    }
}

impl fmt::Display for DimChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(start) = self.start else {
            return write!(f, "(empty)");
        };
        write!(f, "v{}", start + 1)?;
        for step in &self.steps {
            write!(f, " -> v{}", step.vertex + 1)?;
            match step.rule {
                DimRule::Orthogonal => write!(f, " (orthogonal)")?,
                DimRule::Witness(w) => write!(f, " (witness v{})", w + 1)?,
                DimRule::ReverseWitness(w) => write!(f, " (reverse witness v{})", w + 1)?,
            }
        }
        Ok(())
    }
}

/// Size of the largest induced tree together with a witnessing vertex
/// set, found by exhausting all subsets. The witness is the first subset
/// in ascending bit order to reach the maximum.
pub fn tree_size_witness(g: &Graph) -> Result<(usize, VertexSet), BoundsError> {
    let n = g.n();
    if n > SUBSET_GATE {
        return Err(BoundsError::SizeGate(n, SUBSET_GATE));
    }
    let mut best = 1usize;
    let mut witness = VertexSet::singleton(0);
    for mask in 1u32..1u32 << n {
        let s = VertexSet::from_bits(mask);
        let size = s.len();
        if size <= best {
            continue;
        }
        if g.edge_count_within(s) == size - 1 && g.is_connected_within(s) {
            best = size;
            witness = s;
        }
    }
    Ok((best, witness))
}

/// Size of the largest induced tree.
pub fn tree_size(g: &Graph) -> Result<usize, BoundsError> {
    tree_size_witness(g).map(|(t, _)| t)
}

/// Lower bound from the largest induced tree: a connected graph needs
/// rank at least one less than its largest induced tree.
pub fn ts_lower_bound(g: &Graph) -> Result<usize, BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    Ok(tree_size(g)? - 1)
}

/// Repeatedly deletes the lowest-numbered degree-one vertex until none is
/// left. Returns the pendant-free core and the number of deletions; the
/// minimum semidefinite rank of the input equals the core's plus that
/// count, because removing a pendant drops the rank by exactly one.
pub fn peel_pendants(g: &Graph) -> Result<(Graph, usize), BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let mut core = g.clone();
    let mut peeled = 0usize;
    while core.n() > 1 {
        let Some(v) = core.pendant_vertices().min() else {
            break;
        };
        let keep = core.vertices().remove(v);
        core = core.induced_subgraph(keep).expect("nonempty remainder");
        peeled += 1;
    }
    Ok((core, peeled))
}

/// Parent pointer of the subset-dimension table: how `d` for a mask was
/// reached from the mask without one vertex.
#[derive(Clone, Copy)]
enum Parent {
    Root,
    Drop(u8),
    Extend(u8, DimRule),
}

/// Dynamic-programming table of certified span dimensions, indexed by
/// vertex subset. `d(S)` is a lower bound on the dimension spanned by the
/// vectors of `S` in every representation, and each value above zero can
/// be reconstructed as a [`DimChain`].
pub(crate) struct DimTable {
    d: Vec<u8>,
    parent: Vec<Parent>,
}

fn extend_rule(g: &Graph, t: VertexSet, x: usize) -> Option<DimRule> {
    let n = g.n();
    let x_nonzero = g.degree(x) > 0;
    if x_nonzero && t.iter().all(|u| !g.has_edge(x, u)) {
        return Some(DimRule::Orthogonal);
    }
    for w in 0..n {
        if w == x || t.contains(w) {
            continue;
        }
        if g.has_edge(w, x) && t.iter().all(|u| !g.has_edge(w, u)) {
            return Some(DimRule::Witness(w));
        }
    }
    if t.len() == 1 && x_nonzero {
        let s = t.min().expect("nonempty");
        for w in 0..n {
            if w == x || w == s {
                continue;
            }
            if !g.has_edge(w, x) && g.has_edge(w, s) {
                return Some(DimRule::ReverseWitness(w));
            }
        }
    }
    None
}

impl DimTable {
    pub(crate) fn build(g: &Graph) -> Result<Self, BoundsError> {
        let n = g.n();
        if n > SUBSET_GATE {
            return Err(BoundsError::SizeGate(n, SUBSET_GATE));
        }
        let size = 1usize << n;
        let mut d = vec![0u8; size];
        let mut parent = vec![Parent::Root; size];
        for mask in 1..size as u32 {
            let s = VertexSet::from_bits(mask);
            if s.len() == 1 {
                let v = s.min().expect("nonempty");
                d[mask as usize] = u8::from(g.degree(v) > 0);
                continue;
            }
            let mut best = 0u8;
            let mut par = Parent::Root;
            for x in s.iter() {
                let rest = mask & !(1 << x);
                let base = d[rest as usize];
                let (val, p) = match extend_rule(g, VertexSet::from_bits(rest), x) {
                    Some(rule) => (base + 1, Parent::Extend(x as u8, rule)),
                    None => (base, Parent::Drop(x as u8)),
                };
                if val > best {
                    best = val;
                    par = p;
                }
            }
            d[mask as usize] = best;
            parent[mask as usize] = par;
        }
        Ok(DimTable { d, parent })
    }

    pub(crate) fn value(&self, s: VertexSet) -> usize {
        self.d[s.bits() as usize] as usize
    }

    /// Reconstructs a chain certifying `value(s)` whose support is a
    /// subset of `s` (vertices that never added a dimension are dropped).
    pub(crate) fn chain(&self, s: VertexSet) -> DimChain {
        let mut steps = Vec::new();
        let mut mask = s.bits();
        let start = loop {
            if mask == 0 {
                break None;
            }
            let cur = VertexSet::from_bits(mask);
            if cur.len() == 1 {
                let v = cur.min().expect("nonempty");
                break (self.d[mask as usize] == 1).then_some(v);
            }
            match self.parent[mask as usize] {
                Parent::Root => break None,
                Parent::Drop(x) => mask &= !(1 << x),
                Parent::Extend(x, rule) => {
                    steps.push(DimStep {
                        vertex: x as usize,
                        rule,
                    });
                    mask &= !(1 << x);
                }
            }
        };
        if start.is_none() {
            steps.clear();
        }
        steps.reverse();
        DimChain { start, steps }
    }

    fn best(&self) -> (usize, VertexSet) {
        let mut best = 0u8;
        let mut best_mask = 0u32;
        for (mask, &v) in self.d.iter().enumerate() {
            if v > best {
                best = v;
                best_mask = mask as u32;
            }
        }
        (best as usize, VertexSet::from_bits(best_mask))
    }
}

/// Best subset-dimension bound over all vertex subsets, with a chain
/// witnessing it. The chain replays against the graph via
/// [`DimChain::replay`].
pub fn subset_dim_bound(g: &Graph) -> Result<(usize, DimChain), BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let table = DimTable::build(g)?;
    let (bound, mask) = table.best();
    Ok((bound, table.chain(mask)))
}

/// Which technique produced the best lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerSource {
    Refutation,
    TreeSize,
    SubsetDim,
}

impl fmt::Display for LowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerSource::Refutation => "refutation",
            LowerSource::TreeSize => "tree",
            LowerSource::SubsetDim => "subset-dim",
        })
    }
}

impl serde::Serialize for LowerSource {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Combined lower-bound evidence for one connected graph.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Vertex count of the largest induced tree.
    pub tree_size: usize,
    /// A subset inducing a tree of that size.
    pub tree_witness: VertexSet,
    /// `tree_size - 1`.
    pub ts_lower: usize,
    /// Best subset-dimension bound.
    pub dp_lower: usize,
    /// Chain certifying `dp_lower`.
    pub dim_chain: DimChain,
    /// Largest `k` such that ranks `0..=k` were all refuted, if any.
    pub refuted_up_to: Option<usize>,
    /// One trace per refuted rank, ascending in `k`.
    pub refutations: Vec<RefutationTrace>,
    /// Strongest of the three bounds.
    pub best_lower: usize,
}

impl BoundReport {
    fn refute_lower(&self) -> usize {
        self.refuted_up_to.map_or(0, |k| k + 1)
    }

    /// Source of `best_lower`. Ties go to the refutation engine, then to
    /// the tree bound, since those carry the more explicit evidence.
    pub fn source(&self) -> LowerSource {
        let r = self.refute_lower();
        if self.refuted_up_to.is_some() && r >= self.ts_lower && r >= self.dp_lower {
            LowerSource::Refutation
        } else if self.ts_lower >= self.dp_lower {
            LowerSource::TreeSize
        } else {
            LowerSource::SubsetDim
        }
    }
}

/// Runs all three bounding techniques and combines them.
///
/// The refutation ladder tries ranks upward from zero and stops at the
/// first rank the engine cannot refute within budget, so `refuted_up_to`
/// is always a contiguous prefix.
pub fn msr_lower_bound(g: &Graph, budget: &RefuteBudget) -> Result<BoundReport, BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let (tree_size, tree_witness) = tree_size_witness(g)?;
    let ts_lower = tree_size - 1;
    let (dp_lower, dim_chain) = subset_dim_bound(g)?;
    let mut refuted_up_to = None;
    let mut refutations = Vec::new();
    if g.n() >= 2 {
        let mut k = 0usize;
        while k <= g.n() {
            match refute_rank(g, k, budget)? {
                RefuteOutcome::Refuted(trace) => {
                    refuted_up_to = Some(k);
                    refutations.push(trace);
                    k += 1;
                }
                RefuteOutcome::Unknown => break,
            }
        }
    }
    let refute_lower = refuted_up_to.map_or(0, |k| k + 1);
    let best_lower = ts_lower.max(dp_lower).max(refute_lower);
    Ok(BoundReport {
        tree_size,
        tree_witness,
        ts_lower,
        dp_lower,
        dim_chain,
        refuted_up_to,
        refutations,
        best_lower,
    })
}
