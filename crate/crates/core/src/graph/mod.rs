//! Simple undirected graphs on `{0..n-1}` and the combinatorial helpers the
//! certifier relies on.

mod algo;
pub mod families;
mod graph6;

pub use algo::{
    bfs_spanning_tree, classify_p4_free_components, components, find_p4, induced_subgraph,
    is_bipartite, is_connected, is_cycle, ComponentClassification, SpanningTree,
};
pub use graph6::{parse_graph6, to_graph6, Graph6Error, MAX_GRAPH6_ORDER};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set is not strictly increasing at position {0}")]
    Unsorted(usize),
    #[error("vertex set refers to order {set} but the graph has order {graph}")]
    UniverseMismatch { set: usize, graph: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains a P4 subgraph {0:?}")]
    HasP4([usize; 4]),
}

/// A simple undirected graph stored as dense adjacency bitsets.
///
/// Values are immutable once built; every constructor keeps the adjacency
/// symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.insert_edge(a, b);
        }
        Ok(g)
    }

    /// Inserts `{a, b}`; a no-op if the edge already exists. Callers must
    /// guarantee `a != b` and both are in range.
    pub(crate) fn insert_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n && b < self.n);
        if self.has_edge(a, b) {
            return;
        }
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        let row = self.row(v);
        Neighbors {
            row,
            word: 0,
            bits: row.first().copied().unwrap_or(0),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Lowest-numbered vertex of maximum degree.
    pub fn max_degree_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.n {
            let d = self.degree(v);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best.map(|(v, _)| v)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Graph on the vertices not in `removed`, relabeled in ascending order.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        let set = VertexSet::from_sorted_unchecked(self.n, keep.clone());
        (
            induced_subgraph(self, &set).expect("kept vertices are in range"),
            keep,
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges()
            .chain(other.edges().map(|(a, b)| (a + shift, b + shift)))
            .collect::<Vec<_>>();
        Graph::from_edges(self.n + other.n, edges).expect("union of valid graphs")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.bits = self.row[self.word];
        }
    }
}

/// A strictly increasing subset of `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self, GraphError> {
        for (i, &v) in members.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if i > 0 && members[i - 1] >= v {
                return Err(GraphError::Unsorted(i));
            }
        }
        Ok(VertexSet { n, members })
    }

    /// Sorts and deduplicates before validating the range.
    pub fn from_unsorted(n: usize, mut members: Vec<usize>) -> Result<Self, GraphError> {
        members.sort_unstable();
        members.dedup();
        Self::new(n, members)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.last().is_none_or(|&v| v < n));
        VertexSet { n, members }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }

    pub fn complement(&self) -> VertexSet {
        let members = (0..self.n).filter(|&v| !self.contains(v)).collect();
        VertexSet { n: self.n, members }
    }

    /// Maps each member through `labels` (a local-to-global relabeling) into
    /// a set over the universe `n`.
    pub fn lift(&self, labels: &[usize], n: usize) -> VertexSet {
        let mut members: Vec<usize> = self.members.iter().map(|&v| labels[v]).collect();
        members.sort_unstable();
        VertexSet { n, members }
    }
}
