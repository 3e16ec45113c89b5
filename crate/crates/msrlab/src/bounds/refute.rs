//! Rank refutation by span reasoning.
//!
//! [`refute_rank`] assumes some vector representation of the graph fits in
//! a fixed dimension `k` and searches for a contradiction. The derived
//! statements are of the form "the vector of x lies in the span of the
//! vectors of S"; they come from dimension counting (a subset already
//! certified to span `a` dimensions fills a space that orthogonality caps
//! at `k - b`), shrink when witnesses pin combination coefficients to
//! zero, and clash with adjacency when a vertex orthogonal to the whole
//! span is adjacent to a member.
//!
//! When several vertices must share a too-small space, no single one of
//! them is forced into the span of the rest, only some one of them; the
//! engine then branches over the candidates and must close every case.
//! The result of a successful search is a [`RefutationTrace`] recording
//! one rule application per step, which [`check_trace`] replays against
//! the adjacency structure alone.

use std::fmt;

use super::{render_set, BoundsError, DimChain, DimTable};
use crate::graph::{Graph, VertexSet};

/// Limits on the refutation search.
///
/// `max_depth` caps the number of nested branch applications and
/// `max_facts` caps the total number of nodes visited across one call
/// (shared by the progressively deeper passes), so both refuted and
/// unknown outcomes return in predictable time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefuteBudget {
    pub max_depth: usize,
    pub max_facts: usize,
}

impl Default for RefuteBudget {
    fn default() -> Self {
        RefuteBudget {
            max_depth: 4,
            max_facts: 10_000,
        }
    }
}

/// Result of a refutation attempt. `Unknown` is honest: the engine could
/// not close every case within budget, which says nothing about whether a
/// representation exists.
#[derive(Debug, Clone)]
pub enum RefuteOutcome {
    Refuted(RefutationTrace),
    Unknown,
}

/// A complete, replayable argument that no representation of the graph
/// fits in `hypothesis_k` dimensions.
#[derive(Debug, Clone)]
pub struct RefutationTrace {
    pub hypothesis_k: usize,
    pub root: TraceNode,
}

/// One node of the argument: derivations made at this point, then either
/// a contradiction or a branch over cases that are each closed in turn.
#[derive(Debug, Clone)]
pub struct TraceNode {
    pub steps: Vec<Derivation>,
    pub end: NodeEnd,
}

#[derive(Debug, Clone)]
pub enum NodeEnd {
    Contradiction(Closure),
    Branch(BranchApp, Vec<TraceNode>),
}

/// A case split: the vectors of `vertices` all lie in the orthogonal
/// complement of `perp`, a space too small for them to be independent, so
/// some one of them lies in the span of the others. Child `i` assumes it
/// is the `i`-th vertex in ascending order.
#[derive(Debug, Clone)]
pub struct BranchApp {
    pub vertices: VertexSet,
    pub perp: VertexSet,
    pub perp_chain: DimChain,
}

/// One derived span-membership statement with its justification.
#[derive(Debug, Clone)]
pub enum Derivation {
    /// Dimension counting: `s` spans at least `s_chain.len()` dimensions,
    /// everything in `s` and `x` is orthogonal to `perp` which spans at
    /// least `perp_chain.len()`, and the two lengths together reach the
    /// hypothesis, so the span of `s` fills the complement and contains
    /// the vector of `x`.
    Span {
        x: usize,
        s: VertexSet,
        s_chain: DimChain,
        perp: VertexSet,
        perp_chain: DimChain,
    },
    /// From membership of `x` in the span of `s + removed`: the witness
    /// is orthogonal to all of `s` and to `x` but not to `removed`
    /// (when `witness == removed` its own nonzero inner product serves),
    /// forcing the coefficient of `removed` to zero.
    Eliminate {
        x: usize,
        s: VertexSet,
        removed: usize,
        witness: usize,
    },
    /// From membership of nonzero `x` in the span of the single vertex
    /// `s`: the relation reverses, `s` lies in the span of `x`.
    Swap { x: usize, s: usize },
}

/// The contradiction closing a node.
#[derive(Debug, Clone)]
pub enum Closure {
    /// A chain certifies more dimensions than the hypothesis allows.
    Overflow { chain: DimChain },
    /// `w` is orthogonal to all of `s`, hence to its member `x`, yet
    /// adjacent to `x`.
    OrthWitness { x: usize, s: VertexSet, w: usize },
    /// A nonzero vertex lies in the empty span.
    ZeroVector { x: usize },
    /// `x` lies in the span of `s` while orthogonal to all of it, so its
    /// inner product with itself vanishes.
    SelfOrthogonal { x: usize, s: VertexSet },
}

/// A span-membership statement tracked during search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Fact {
    x: usize,
    s: VertexSet,
}

/// Adds a fact unless an equal or stronger one (same vertex, subset span
/// set) is already present.
fn add_fact(facts: &mut Vec<Fact>, f: Fact) -> bool {
    if facts.iter().any(|e| e.x == f.x && e.s.is_subset_of(f.s)) {
        return false;
    }
    facts.push(f);
    true
}

fn orth_all(n: usize, orth: &[VertexSet], s: VertexSet) -> VertexSet {
    let mut acc = VertexSet::full(n).minus(s);
    for v in s.iter() {
        acc = acc.intersect(orth[v]);
    }
    acc
}

#[derive(Clone, Copy)]
struct Candidate {
    xs: VertexSet,
    perp: VertexSet,
}

struct Engine<'g> {
    g: &'g Graph,
    n: usize,
    orth: Vec<VertexSet>,
    nonzero: VertexSet,
    table: DimTable,
    candidates: Vec<Candidate>,
    nodes_left: usize,
    hit_depth: bool,
    exhausted: bool,
}

impl Engine<'_> {
    fn closure_for(&self, f: Fact) -> Option<Closure> {
        if f.s.is_empty() {
            if self.nonzero.contains(f.x) {
                return Some(Closure::ZeroVector { x: f.x });
            }
            return None;
        }
        if self.nonzero.contains(f.x) && f.s.is_subset_of(self.orth[f.x]) {
            return Some(Closure::SelfOrthogonal { x: f.x, s: f.s });
        }
        for w in 0..self.n {
            if w != f.x && f.s.is_subset_of(self.orth[w]) && self.g.has_edge(w, f.x) {
                return Some(Closure::OrthWitness { x: f.x, s: f.s, w });
            }
        }
        None
    }

    /// Finds a witness pinning the coefficient of `removed` to zero in a
    /// combination producing `x` from `s_new + removed`.
    fn elim_witness(&self, x: usize, s_new: VertexSet, removed: usize) -> Option<usize> {
        for w in 0..self.n {
            if w == x {
                continue;
            }
            let ok = if w == removed {
                self.nonzero.contains(removed)
                    && !self.g.has_edge(removed, x)
                    && s_new.is_subset_of(self.orth[removed])
            } else {
                self.g.has_edge(w, removed)
                    && !self.g.has_edge(w, x)
                    && s_new.is_subset_of(self.orth[w])
            };
            if ok {
                return Some(w);
            }
        }
        None
    }

    fn explore(
        &mut self,
        mut facts: Vec<Fact>,
        seeds: &[(Fact, Option<Derivation>)],
        depth: usize,
        cap: usize,
    ) -> Option<TraceNode> {
        if self.nodes_left == 0 {
            self.exhausted = true;
            return None;
        }
        self.nodes_left -= 1;
        let mut steps: Vec<Derivation> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        for (fact, just) in seeds {
            if !add_fact(&mut facts, *fact) {
                continue;
            }
            if let Some(d) = just {
                steps.push(d.clone());
            }
            queue.push(facts.len() - 1);
            if let Some(c) = self.closure_for(*fact) {
                return Some(TraceNode {
                    steps,
                    end: NodeEnd::Contradiction(c),
                });
            }
        }
        let mut qi = 0;
        while qi < queue.len() {
            let fact = facts[queue[qi]];
            qi += 1;
            for removed in fact.s.iter() {
                let s_new = fact.s.remove(removed);
                let Some(w) = self.elim_witness(fact.x, s_new, removed) else {
                    continue;
                };
                let derived = Fact { x: fact.x, s: s_new };
                if !add_fact(&mut facts, derived) {
                    continue;
                }
                steps.push(Derivation::Eliminate {
                    x: fact.x,
                    s: s_new,
                    removed,
                    witness: w,
                });
                queue.push(facts.len() - 1);
                if let Some(c) = self.closure_for(derived) {
                    return Some(TraceNode {
                        steps,
                        end: NodeEnd::Contradiction(c),
                    });
                }
            }
            if fact.s.len() == 1 && self.nonzero.contains(fact.x) {
                let s = fact.s.min().expect("nonempty");
                let derived = Fact {
                    x: s,
                    s: VertexSet::singleton(fact.x),
                };
                if add_fact(&mut facts, derived) {
                    steps.push(Derivation::Swap { x: fact.x, s });
                    queue.push(facts.len() - 1);
                    if let Some(c) = self.closure_for(derived) {
                        return Some(TraceNode {
                            steps,
                            end: NodeEnd::Contradiction(c),
                        });
                    }
                }
            }
        }
        if depth >= cap {
            self.hit_depth = true;
            return None;
        }
        'cand: for ci in 0..self.candidates.len() {
            if self.exhausted {
                return None;
            }
            let cand = self.candidates[ci];
            let mut children = Vec::with_capacity(cand.xs.len());
            for x in cand.xs.iter() {
                let seed = (
                    Fact {
                        x,
                        s: cand.xs.remove(x),
                    },
                    None,
                );
                match self.explore(facts.clone(), &[seed], depth + 1, cap) {
                    Some(node) => children.push(node),
                    None => continue 'cand,
                }
            }
            let app = BranchApp {
                vertices: cand.xs,
                perp: cand.perp,
                perp_chain: self.table.chain(cand.perp),
            };
            return Some(TraceNode {
                steps,
                end: NodeEnd::Branch(app, children),
            });
        }
        None
    }
}

/// Tries to prove that no vector representation of `g` fits in `k`
/// dimensions. On success the returned trace replays independently via
/// [`check_trace`]. Requires a connected graph within the subset gate.
pub fn refute_rank(
    g: &Graph,
    k: usize,
    budget: &RefuteBudget,
) -> Result<RefuteOutcome, BoundsError> {
    if budget.max_depth == 0 || budget.max_facts == 0 {
        return Err(BoundsError::EmptyBudget);
    }
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let n = g.n();
    let table = DimTable::build(g)?;

    // A single chain certifying more than k dimensions refutes outright.
    for mask in 0..1u32 << n {
        let s = VertexSet::from_bits(mask);
        if table.value(s) > k {
            let chain = table.chain(s);
            let root = TraceNode {
                steps: Vec::new(),
                end: NodeEnd::Contradiction(Closure::Overflow { chain }),
            };
            return Ok(RefuteOutcome::Refuted(RefutationTrace {
                hypothesis_k: k,
                root,
            }));
        }
    }

    let orth: Vec<VertexSet> = (0..n).map(|v| g.non_neighbors(v)).collect();
    let nonzero: VertexSet = (0..n).filter(|&v| g.degree(v) > 0).collect();

    // Static span memberships from dimension counting.
    let mut seeds: Vec<(Fact, Option<Derivation>)> = Vec::new();
    for x in 0..n {
        for mask in 0..1u32 << n {
            let s = VertexSet::from_bits(mask);
            if s.contains(x) {
                continue;
            }
            if seeds
                .iter()
                .any(|(f, _)| f.x == x && f.s.is_subset_of(s))
            {
                continue;
            }
            let perp = orth_all(n, &orth, s.insert(x));
            if table.value(s) + table.value(perp) >= k {
                let derivation = Derivation::Span {
                    x,
                    s,
                    s_chain: table.chain(s),
                    perp,
                    perp_chain: table.chain(perp),
                };
                seeds.push((Fact { x, s }, Some(derivation)));
            }
        }
    }

    // Static case splits: vertex sets exactly one larger than the space
    // their common orthogonal complement leaves them.
    let mut candidates: Vec<Candidate> = Vec::new();
    for mask in 0..1u32 << n {
        let xs = VertexSet::from_bits(mask);
        if xs.len() < 2 {
            continue;
        }
        let perp = orth_all(n, &orth, xs);
        if xs.len() == k + 1 - table.value(perp) {
            candidates.push(Candidate { xs, perp });
        }
    }
    candidates.sort_by_cached_key(|c| (c.xs.len(), c.xs.iter().collect::<Vec<_>>()));

    let mut engine = Engine {
        g,
        n,
        orth,
        nonzero,
        table,
        candidates,
        nodes_left: budget.max_facts,
        hit_depth: false,
        exhausted: false,
    };

    // Progressive deepening: shallow arguments are found first and a pass
    // that never hit the depth limit cannot be improved by a deeper one.
    for cap in 1..=budget.max_depth {
        engine.hit_depth = false;
        if let Some(root) = engine.explore(Vec::new(), &seeds, 0, cap) {
            return Ok(RefuteOutcome::Refuted(RefutationTrace {
                hypothesis_k: k,
                root,
            }));
        }
        if engine.exhausted {
            log::debug!(
                "refute rank {k}: node budget exhausted at depth {cap} for {}",
                g.label().unwrap_or("unlabeled graph"),
            );
            break;
        }
        if !engine.hit_depth {
            break;
        }
    }
    Ok(RefuteOutcome::Unknown)
}

fn in_range(n: usize, s: VertexSet) -> bool {
    s.is_subset_of(VertexSet::full(n))
}

fn replay_within(chain: &DimChain, g: &Graph, within: VertexSet) -> Option<usize> {
    if !chain.support().is_subset_of(within) {
        return None;
    }
    chain.replay(g)
}

fn orth_to_set(g: &Graph, w: usize, s: VertexSet) -> bool {
    !s.contains(w) && s.iter().all(|t| !g.has_edge(w, t))
}

fn has_fact(facts: &[Fact], x: usize, s: VertexSet) -> bool {
    facts.iter().any(|f| f.x == x && f.s == s)
}

fn node_ok(g: &Graph, k: usize, inherited: &[Fact], node: &TraceNode) -> bool {
    let n = g.n();
    let mut facts = inherited.to_vec();
    for step in &node.steps {
        match step {
            Derivation::Span {
                x,
                s,
                s_chain,
                perp,
                perp_chain,
            } => {
                if *x >= n || !in_range(n, *s) || !in_range(n, *perp) || s.contains(*x) {
                    return false;
                }
                let sx = s.insert(*x);
                if !perp.intersect(sx).is_empty() {
                    return false;
                }
                if !perp.iter().all(|p| orth_to_set(g, p, sx)) {
                    return false;
                }
                let Some(a) = replay_within(s_chain, g, *s) else {
                    return false;
                };
                let Some(b) = replay_within(perp_chain, g, *perp) else {
                    return false;
                };
                if a + b < k {
                    return false;
                }
                facts.push(Fact { x: *x, s: *s });
            }
            Derivation::Eliminate {
                x,
                s,
                removed,
                witness,
            } => {
                if *x >= n || *removed >= n || *witness >= n || !in_range(n, *s) {
                    return false;
                }
                if s.contains(*x) || s.contains(*removed) || x == removed || witness == x {
                    return false;
                }
                if !has_fact(&facts, *x, s.insert(*removed)) {
                    return false;
                }
                let w = *witness;
                let ok = if w == *removed {
                    g.degree(w) > 0 && !g.has_edge(w, *x) && orth_to_set(g, w, *s)
                } else {
                    g.has_edge(w, *removed) && !g.has_edge(w, *x) && orth_to_set(g, w, *s)
                };
                if !ok {
                    return false;
                }
                facts.push(Fact { x: *x, s: *s });
            }
            Derivation::Swap { x, s } => {
                if *x >= n || *s >= n || x == s || g.degree(*x) == 0 {
                    return false;
                }
                if !has_fact(&facts, *x, VertexSet::singleton(*s)) {
                    return false;
                }
                facts.push(Fact {
                    x: *s,
                    s: VertexSet::singleton(*x),
                });
            }
        }
    }
    match &node.end {
        NodeEnd::Contradiction(closure) => match closure {
            Closure::Overflow { chain } => matches!(chain.replay(g), Some(v) if v > k),
            Closure::OrthWitness { x, s, w } => {
                *x < n
                    && *w < n
                    && w != x
                    && in_range(n, *s)
                    && has_fact(&facts, *x, *s)
                    && orth_to_set(g, *w, *s)
                    && g.has_edge(*w, *x)
            }
            Closure::ZeroVector { x } => {
                *x < n && g.degree(*x) > 0 && has_fact(&facts, *x, VertexSet::EMPTY)
            }
            Closure::SelfOrthogonal { x, s } => {
                *x < n
                    && in_range(n, *s)
                    && !s.is_empty()
                    && !s.contains(*x)
                    && g.degree(*x) > 0
                    && has_fact(&facts, *x, *s)
                    && s.iter().all(|t| !g.has_edge(*x, t))
            }
        },
        NodeEnd::Branch(app, children) => {
            let xs = app.vertices;
            if !in_range(n, xs) || xs.len() < 2 || !in_range(n, app.perp) {
                return false;
            }
            if !app.perp.intersect(xs).is_empty() {
                return false;
            }
            if !app
                .perp
                .iter()
                .all(|p| xs.iter().all(|t| !g.has_edge(p, t)))
            {
                return false;
            }
            let Some(b) = replay_within(&app.perp_chain, g, app.perp) else {
                return false;
            };
            if xs.len() + b < k + 1 {
                return false;
            }
            if children.len() != xs.len() {
                return false;
            }
            for (child, x) in children.iter().zip(xs.iter()) {
                let mut child_facts = facts.clone();
                child_facts.push(Fact { x, s: xs.remove(x) });
                if !node_ok(g, k, &child_facts, child) {
                    return false;
                }
            }
            true
        }
    }
}

/// Replays a refutation trace against the graph using only adjacency
/// queries: every chain, witness and premise is revalidated and every
/// branch must be closed. Returns false on any defect instead of erring.
pub fn check_trace(g: &Graph, trace: &RefutationTrace) -> bool {
    node_ok(g, trace.hypothesis_k, &[], &trace.root)
}

fn render_node(
    f: &mut fmt::Formatter<'_>,
    node: &TraceNode,
    indent: usize,
    k: usize,
) -> fmt::Result {
    let pad = "  ".repeat(indent);
    for step in &node.steps {
        match step {
            Derivation::Span {
                x,
                s,
                s_chain,
                perp,
                perp_chain,
            } => {
                writeln!(
                    f,
                    "{pad}member v{} in span{}  [dim span{} >= {} via {}; dim span{} >= {} via {}; {} + {} >= {}]",
                    x + 1,
                    render_set(*s),
                    render_set(*s),
                    s_chain.len(),
                    s_chain,
                    render_set(*perp),
                    perp_chain.len(),
                    perp_chain,
                    s_chain.len(),
                    perp_chain.len(),
                    k,
                )?;
            }
            Derivation::Eliminate {
                x,
                s,
                removed,
                witness,
            } => {
                if witness == removed {
                    writeln!(
                        f,
                        "{pad}eliminate v{}: v{} in span{}  [v{} is nonzero and misses v{} and the span set]",
                        removed + 1,
                        x + 1,
                        render_set(*s),
                        removed + 1,
                        x + 1,
                    )?;
                } else {
                    writeln!(
                        f,
                        "{pad}eliminate v{}: v{} in span{}  [v{} meets v{}, misses v{} and the span set]",
                        removed + 1,
                        x + 1,
                        render_set(*s),
                        witness + 1,
                        removed + 1,
                        x + 1,
                    )?;
                }
            }
            Derivation::Swap { x, s } => {
                writeln!(
                    f,
                    "{pad}swap: v{} in span{}  [reversing v{} in span{}]",
                    s + 1,
                    render_set(VertexSet::singleton(*x)),
                    x + 1,
                    render_set(VertexSet::singleton(*s)),
                )?;
            }
        }
    }
    match &node.end {
        NodeEnd::Contradiction(closure) => match closure {
            Closure::Overflow { chain } => writeln!(
                f,
                "{pad}contradiction: dim span{} >= {} > {}  [via {}]",
                render_set(chain.support()),
                chain.len(),
                k,
                chain,
            ),
            Closure::OrthWitness { x, s, w } => writeln!(
                f,
                "{pad}contradiction: v{} is orthogonal to span{} yet adjacent to its member v{}",
                w + 1,
                render_set(*s),
                x + 1,
            ),
            Closure::ZeroVector { x } => writeln!(
                f,
                "{pad}contradiction: v{} lies in the empty span but is nonzero",
                x + 1,
            ),
            Closure::SelfOrthogonal { x, s } => writeln!(
                f,
                "{pad}contradiction: v{} lies in span{} yet is orthogonal to all of it",
                x + 1,
                render_set(*s),
            ),
        },
        NodeEnd::Branch(app, children) => {
            writeln!(
                f,
                "{pad}branch on {}  [dim span{} >= {} via {}; {} vectors in {} dimensions are dependent]",
                render_set(app.vertices),
                render_set(app.perp),
                app.perp_chain.len(),
                app.perp_chain,
                app.vertices.len(),
                k - app.perp_chain.len(),
            )?;
            for (x, child) in app.vertices.iter().zip(children.iter()) {
                writeln!(
                    f,
                    "{pad}case v{} in span{}:",
                    x + 1,
                    render_set(app.vertices.remove(x)),
                )?;
                render_node(f, child, indent + 1, k)?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for RefutationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "assume rank <= {}", self.hypothesis_k)?;
        render_node(f, &self.root, 1, self.hypothesis_k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refuted(g: &Graph, k: usize) -> RefutationTrace {
        match refute_rank(g, k, &RefuteBudget::default()).expect("preconditions hold") {
            RefuteOutcome::Refuted(trace) => trace,
            RefuteOutcome::Unknown => panic!("expected refutation at rank {k}"),
        }
    }

    fn unknown(g: &Graph, k: usize) -> bool {
        matches!(
            refute_rank(g, k, &RefuteBudget::default()).expect("preconditions hold"),
            RefuteOutcome::Unknown
        )
    }

    #[test]
    fn cycle_refutes_rank_one_but_not_two() {
        let c4 = Graph::cycle(4).expect("cycle");
        let trace = refuted(&c4, 1);
        assert!(check_trace(&c4, &trace));
        assert!(unknown(&c4, 2));
    }

    #[test]
    fn complete_graph_refutes_only_rank_zero() {
        let k5 = Graph::complete(5).expect("complete");
        let trace = refuted(&k5, 0);
        assert!(check_trace(&k5, &trace));
        assert!(unknown(&k5, 1));
    }

    #[test]
    fn paths_refute_every_rank_below_their_own() {
        let p5 = Graph::path(5).expect("path");
        for k in 0..4 {
            let trace = refuted(&p5, k);
            assert!(check_trace(&p5, &trace), "rank {k}");
        }
        assert!(unknown(&p5, 4));
    }

    #[test]
    fn single_vertex_admits_rank_zero() {
        let k1 = Graph::new(1, &[], None).expect("single");
        assert!(unknown(&k1, 0));
    }

    #[test]
    fn octahedron_refutes_rank_one_only() {
        // Three pairwise non-adjacent pairs, all other pairs adjacent;
        // it has a rank-two representation.
        let edges: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| j != i + 3)
            .collect();
        let g = Graph::new(6, &edges, None).expect("octahedron");
        let trace = refuted(&g, 1);
        assert!(check_trace(&g, &trace));
        assert!(unknown(&g, 2));
    }

    #[test]
    fn altered_hypothesis_fails_the_check() {
        let c4 = Graph::cycle(4).expect("cycle");
        let mut trace = refuted(&c4, 1);
        assert!(check_trace(&c4, &trace));
        trace.hypothesis_k += 1;
        assert!(!check_trace(&c4, &trace));
    }

    #[test]
    fn hand_built_trace_checks_and_loses_its_premise() {
        // On the 4-cycle at rank one, v2 must lie in the span of v1 (the
        // whole space), yet v3 is orthogonal to v1 and adjacent to v2.
        let c4 = Graph::cycle(4).expect("cycle");
        let span = Derivation::Span {
            x: 1,
            s: VertexSet::singleton(0),
            s_chain: DimChain {
                start: Some(0),
                steps: Vec::new(),
            },
            perp: VertexSet::EMPTY,
            perp_chain: DimChain::empty(),
        };
        let trace = RefutationTrace {
            hypothesis_k: 1,
            root: TraceNode {
                steps: vec![span],
                end: NodeEnd::Contradiction(Closure::OrthWitness {
                    x: 1,
                    s: VertexSet::singleton(0),
                    w: 2,
                }),
            },
        };
        assert!(check_trace(&c4, &trace));

        let mut gutted = trace.clone();
        gutted.root.steps.clear();
        assert!(!check_trace(&c4, &gutted));

        let mut raised = trace.clone();
        raised.hypothesis_k = 2;
        assert!(!check_trace(&c4, &raised));
    }

    #[test]
    fn foreign_graph_fails_the_check() {
        let c4 = Graph::cycle(4).expect("cycle");
        let trace = refuted(&c4, 1);
        let k4 = Graph::complete(4).expect("complete");
        assert!(!check_trace(&k4, &trace));
    }

    #[test]
    fn trace_renders_one_based_vertices() {
        let c4 = Graph::cycle(4).expect("cycle");
        let trace = refuted(&c4, 1);
        let text = trace.to_string();
        assert!(text.starts_with("assume rank <= 1"), "{text}");
        assert!(text.contains("contradiction"), "{text}");
        assert!(!text.contains("v0"), "{text}");
    }

    #[test]
    fn preconditions_are_enforced() {
        let c4 = Graph::cycle(4).expect("cycle");
        let empty = RefuteBudget {
            max_depth: 0,
            max_facts: 0,
        };
        assert!(matches!(
            refute_rank(&c4, 1, &empty),
            Err(BoundsError::EmptyBudget)
        ));
        let split = Graph::new(4, &[(0, 1), (2, 3)], None).expect("valid");
        assert!(matches!(
            refute_rank(&split, 1, &RefuteBudget::default()),
            Err(BoundsError::Disconnected)
        ));
        let long = Graph::path(17).expect("path");
        assert!(matches!(
            refute_rank(&long, 1, &RefuteBudget::default()),
            Err(BoundsError::SizeGate(17, _))
        ));
    }
}
