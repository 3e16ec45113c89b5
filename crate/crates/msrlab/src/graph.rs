//! Small undirected graphs with bitmask adjacency, a strict graph6 codec,
//! and recovery of a graph from the zero pattern of a symmetric matrix.
//!
//! Vertices are 0-based internally; user-facing text (traces, reports)
//! renders them 1-based as v1, v2, ... Labels such as "G706" are opaque
//! metadata: structural equality ignores them, and the identity of a graph
//! is its graph6 string under the fixed vertex order.

use std::fmt;

use thiserror::Error;

use crate::rat::RationalMatrix;

/// Hard cap from the graph6 short form we support.
pub const MAX_VERTICES: usize = 32;
/// Cap for algorithms that enumerate all 2^n vertex subsets.
pub const SUBSET_GATE: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} out of range 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} not allowed")]
    SelfLoop(usize),
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("subset contains vertex {v}, graph has only {n}")]
    SubsetRange { v: usize, n: usize },
    #[error("graph6: input is empty")]
    G6Empty,
    #[error("graph6: long-form or unsupported header byte {0:#04x}")]
    G6Header(u8),
    #[error("graph6: byte {byte:#04x} at position {pos} outside 0x3f..=0x7e")]
    G6Byte { byte: u8, pos: usize },
    #[error("graph6: {n} vertices exceeds the supported short-form cap {MAX_VERTICES}")]
    G6TooLarge { n: usize },
    #[error("graph6: expected {expected} bit bytes, found {got}")]
    G6Truncated { expected: usize, got: usize },
    #[error("graph6: {extra} trailing bytes after the bit section")]
    G6Trailing { extra: usize },
    #[error("graph6: nonzero padding bits in the final byte")]
    G6Padding,
    #[error("pattern matrix is not square ({rows}x{cols})")]
    PatternNotSquare { rows: usize, cols: usize },
    #[error("pattern matrix is not symmetric (entries ({i},{j}) and ({j},{i}) differ)")]
    PatternNotSymmetric { i: usize, j: usize },
}

/// A subset of the vertices {0..n-1}, packed into a `u32` so enumerating
/// all 2^n subsets is a simple integer loop for n within [`SUBSET_GATE`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All vertices of an n-vertex graph.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn remove(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Ascending vertex indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&v| self.0 >> v & 1 == 1)
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.insert(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph on up to [`MAX_VERTICES`] vertices.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
    label: Option<String>,
}

impl PartialEq for Graph {
    /// Structural equality under the fixed vertex order; labels are
    /// metadata and do not participate.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)], label: Option<&str>) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mut adj = vec![0u32; n];
        for &(i, j) in edges {
            if i >= n {
                return Err(GraphError::VertexRange { v: i, n });
            }
            if j >= n {
                return Err(GraphError::VertexRange { v: j, n });
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Self {
            n,
            adj,
            label: label.map(str::to_string),
        })
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, &edges, None)
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges, None)
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::VertexCount(n));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::new(n, &edges, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i < self.n && j < self.n && self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Distinct vertices not adjacent to `v`.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        self.vertices().minus(self.neighbors(v)).remove(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as ordered pairs (i < j), ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| {
                let row = self.adj[i];
                (i + 1..self.n).filter_map(move |j| (row >> j & 1 == 1).then_some((i, j)))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edge_count_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.bits()).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Whether the vertices of `s` are mutually reachable inside `s`.
    /// The empty set counts as connected.
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        let Some(start) = s.min() else { return true };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            let fresh = VertexSet(self.adj[u]).intersect(s).minus(seen);
            for v in fresh.iter() {
                seen = seen.insert(v);
                frontier.push(v);
            }
        }
        seen == s
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// A tree is connected with exactly n-1 edges.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() == self.n - 1
    }

    /// The degree-1 vertices.
    pub fn pendant_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Subgraph induced by `s`, vertices relabeled by increasing original
    /// index. The label is not inherited.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::SubsetRange { v, n: self.n });
        }
        let verts: Vec<usize> = s.iter().collect();
        let edges: Vec<(usize, usize)> = verts
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| {
                verts
                    .iter()
                    .enumerate()
                    .skip(a + 1)
                    .filter(move |&(_, &j)| self.adj[i] >> j & 1 == 1)
                    .map(move |(b, _)| (a, b))
            })
            .collect();
        Graph::new(verts.len(), &edges, None)
    }
}

/// Recover a graph from the off-diagonal zero pattern of a symmetric
/// matrix: edge (i,j) iff i != j and the entry is nonzero.
pub fn from_pattern(a: &RationalMatrix, label: Option<&str>) -> Result<Graph, GraphError> {
    if a.rows() != a.cols() {
        return Err(GraphError::PatternNotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if let Some((i, j)) = a.symmetry_defect() {
        return Err(GraphError::PatternNotSymmetric { i, j });
    }
    let n = a.rows();
    if n > MAX_VERTICES {
        return Err(GraphError::VertexCount(n));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !num_traits::Zero::is_zero(a.get(i, j)))
        .collect();
    Graph::new(n, &edges, label)
}

const G6_MIN: u8 = 63;
const G6_MAX: u8 = 126;

/// Parse a one-line short-form graph6 string (n <= 32). Strict: the byte
/// count must be exact and padding bits must be zero, so parsing accepts
/// precisely the image of [`to_graph6`].
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    let Some((&head, bits)) = bytes.split_first() else {
        return Err(GraphError::G6Empty);
    };
    if head == b'~' {
        return Err(GraphError::G6Header(head));
    }
    if !(G6_MIN..=G6_MAX).contains(&head) {
        return Err(GraphError::G6Byte { byte: head, pos: 0 });
    }
    let n = (head - G6_MIN) as usize;
    if n == 0 {
        return Err(GraphError::VertexCount(0));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::G6TooLarge { n });
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if bits.len() < expected {
        return Err(GraphError::G6Truncated {
            expected,
            got: bits.len(),
        });
    }
    if bits.len() > expected {
        return Err(GraphError::G6Trailing {
            extra: bits.len() - expected,
        });
    }
    if let Some(pos) = bits.iter().position(|b| !(G6_MIN..=G6_MAX).contains(b)) {
        return Err(GraphError::G6Byte {
            byte: bits[pos],
            pos: pos + 1,
        });
    }
    let bit = |pos: usize| ((bits[pos / 6] - G6_MIN) >> (5 - pos % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(pos) {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    if (nbits..expected * 6).any(bit) {
        return Err(GraphError::G6Padding);
    }
    Graph::new(n, &edges, None)
}

/// Encode in canonical short-form graph6.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n;
    let nbits = n * (n - 1) / 2;
    let mut bytes = vec![G6_MIN + n as u8];
    bytes.resize(1 + nbits.div_ceil(6), G6_MIN);
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bytes[1 + pos / 6] += 1 << (5 - pos % 6);
            }
            pos += 1;
        }
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}
