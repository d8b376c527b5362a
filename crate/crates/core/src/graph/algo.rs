use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// `K0` and `K1` count as connected.
pub fn is_connected(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    bfs_mark(g, 0, &mut seen) == g.n()
}

fn bfs_mark(g: &Graph, start: usize, seen: &mut [bool]) -> usize {
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Connected and 2-regular on at least three vertices.
pub fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && (0..g.n()).all(|v| g.degree(v) == 2) && is_connected(g)
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let mut label = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        label[start] = id;
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(VertexSet::from_sorted_unchecked(g.n(), members));
    }
    out
}

/// The subgraph induced by `s`, with `s`'s k-th member relabeled to k.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph, GraphError> {
    if let Some(&v) = s.as_slice().iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let members = s.as_slice();
    let mut h = Graph::empty(members.len());
    for (a, &u) in members.iter().enumerate() {
        for (b, &w) in members.iter().enumerate().skip(a + 1) {
            if g.has_edge(u, w) {
                h.insert_edge(a, b);
            }
        }
    }
    Ok(h)
}

/// A rooted spanning tree; edges are stored as `(min, max)` in discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    pub fn n(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn as_graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.edges.iter().copied()).expect("tree edges are valid")
    }
}

/// BFS tree from `root`, scanning neighbors in ascending order. Every
/// neighbor of the root becomes its child, so the root keeps its degree.
pub fn bfs_spanning_tree(g: &Graph, root: usize) -> Result<SpanningTree, GraphError> {
    if root >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(g.n().saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                edges.push((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    if edges.len() + 1 != g.n() {
        return Err(GraphError::Disconnected);
    }
    Ok(SpanningTree { root, edges })
}

fn is_star_or_triangle(g: &Graph, comp: &VertexSet) -> bool {
    let k = comp.len();
    let edges: usize = comp.iter().map(|v| g.degree(v)).sum::<usize>() / 2;
    if k == 3 && edges == 3 {
        return true;
    }
    // a connected graph on k vertices with k-1 edges and a vertex of degree
    // k-1 is the star K_{1,k-1}
    edges + 1 == k && comp.iter().any(|v| g.degree(v) + 1 == k)
}

/// Lexicographically least ordered quadruple `(a, b, c, d)` of distinct
/// vertices with edges `ab`, `bc`, `cd`, if any exists.
pub fn find_p4(g: &Graph) -> Option<[usize; 4]> {
    // P4-free components are exactly stars and triangles
    if components(g).iter().all(|c| is_star_or_triangle(g, c)) {
        return None;
    }
    for a in 0..g.n() {
        for b in g.neighbors(a) {
            for c in g.neighbors(b).filter(|&c| c != a) {
                if let Some(d) = g.neighbors(c).find(|&d| d != a && d != b) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    unreachable!("a component that is neither a star nor a triangle contains a P4")
}

/// Tally of the components of a P4-free graph by shape.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentClassification {
    /// triangles `K3`
    pub l1: usize,
    /// paths `P3`
    pub l2: usize,
    /// single edges `K2`
    pub l3: usize,
    /// isolated vertices `K1`
    pub l4: usize,
    /// components of any other shape (stars `K_{1,s}` with `s >= 3`)
    pub others: Vec<VertexSet>,
}

impl ComponentClassification {
    pub fn order(&self) -> usize {
        3 * self.l1
            + 3 * self.l2
            + 2 * self.l3
            + self.l4
            + self.others.iter().map(VertexSet::len).sum::<usize>()
    }
}

pub fn classify_p4_free_components(g: &Graph) -> Result<ComponentClassification, GraphError> {
    if let Some(p4) = find_p4(g) {
        return Err(GraphError::HasP4(p4));
    }
    let mut out = ComponentClassification::default();
    for comp in components(g) {
        let edges: usize = comp.iter().map(|v| g.degree(v)).sum::<usize>() / 2;
        match (comp.len(), edges) {
            (1, 0) => out.l4 += 1,
            (2, 1) => out.l3 += 1,
            (3, 2) => out.l2 += 1,
            (3, 3) => out.l1 += 1,
            _ => out.others.push(comp),
        }
    }
    debug_assert_eq!(out.order(), g.n());
    Ok(out)
}
