//! Named graph families used by tests, benches and the CLI fixtures.

use super::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j)))).expect("clique edges")
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        .expect("biclique edges")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges")
}

/// Adds a new vertex `g.n()` adjacent to every existing vertex.
pub fn add_apex(g: &Graph) -> Graph {
    let n = g.n();
    Graph::from_edges(n + 1, g.edges().chain((0..n).map(|v| (v, n)))).expect("apex edges")
}

/// Disjoint union of `l1` triangles, `l2` copies of P3, `l3` copies of K2
/// and `l4` isolated vertices, in that order.
pub fn small_component_union(l1: usize, l2: usize, l3: usize, l4: usize) -> Graph {
    let parts = std::iter::repeat_n(complete(3), l1)
        .chain(std::iter::repeat_n(path(3), l2))
        .chain(std::iter::repeat_n(complete(2), l3))
        .chain(std::iter::repeat_n(Graph::empty(1), l4));
    parts.fold(Graph::empty(0), |acc, part| acc.disjoint_union(&part))
}

/// Friendship graph: `k` triangles joined to the apex `3k`.
pub fn friendship(k: usize) -> Graph {
    add_apex(&small_component_union(k, 0, 0, 0))
}
