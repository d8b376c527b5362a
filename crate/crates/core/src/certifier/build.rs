use std::collections::VecDeque;

use super::{Certificate, CertifyError, StarBranch};
use crate::graph::{
    bfs_spanning_tree, classify_p4_free_components, components, find_p4, induced_subgraph,
    is_bipartite, is_connected, is_cycle, Graph, SpanningTree, VertexSet,
};
use crate::spectral;
use crate::{par, BoundKind, Tolerances};

/// Parts of at most this order are certified by direct computation.
const DIRECT_ORDER: usize = 10;
/// The apex argument needs this many vertices.
const STAR_CASE_MIN_ORDER: usize = 12;
/// Slack on the final comparison of the root bound with the target.
const ROOT_SLACK: f64 = 1e-9;

/// Builds a certificate that `s(g) >= 3n/4` (or the stronger `target`).
///
/// Returns [`CertifyError::TargetNotMet`], carrying the certificate, when the
/// root bound falls short of `target`.
pub fn certify_three_quarters(
    g: &Graph,
    target: BoundKind,
    tol: &Tolerances,
) -> Result<Certificate, CertifyError> {
    let n = g.n();
    if n < 4 {
        return Err(CertifyError::TooSmall(n));
    }
    if !is_connected(g) {
        return Err(CertifyError::Disconnected);
    }
    let cert = Builder { root: g, tol }.node(VertexSet::full(n))?;
    let required = target.threshold(n);
    if cert.claimed_bound() < required - ROOT_SLACK {
        return Err(CertifyError::TargetNotMet {
            claimed: cert.claimed_bound(),
            required,
            certificate: Box::new(cert),
        });
    }
    Ok(cert)
}

struct Builder<'a> {
    root: &'a Graph,
    tol: &'a Tolerances,
}

impl Builder<'_> {
    fn node(&self, set: VertexSet) -> Result<Certificate, CertifyError> {
        let h = induced_subgraph(self.root, &set)?;
        let labels = set.as_slice();
        let n = self.root.n();

        let parts = components(&h);
        if parts.len() > 1 {
            let lifted = parts.iter().map(|c| c.lift(labels, n)).collect();
            return self.split(set, lifted);
        }

        let k = h.n();
        if k <= DIRECT_ORDER {
            let (s_plus, s_minus) = self.energies(&h)?;
            return Ok(Certificate::Direct {
                vertices: set.into_vec(),
                claimed_bound: s_plus.min(s_minus),
                s_plus,
                s_minus,
            });
        }
        if is_bipartite(&h) {
            return Ok(Certificate::Bipartite {
                vertices: set.into_vec(),
                claimed_bound: h.m() as f64,
                m: h.m(),
            });
        }
        if is_cycle(&h) {
            let (s_plus, s_minus) = self.energies(&h)?;
            return Ok(Certificate::Cycle {
                vertices: set.into_vec(),
                claimed_bound: s_plus.min(s_minus),
                s_plus,
                s_minus,
            });
        }

        let v = h.max_degree_vertex().expect("non-empty part");
        let delta = h.degree(v);
        if delta < 3 {
            return self.fallback(
                set,
                &h,
                "maximum degree below 3 in a non-bipartite non-cycle",
            );
        }
        let tree = bfs_spanning_tree(&h, v)?;

        if delta == 3 {
            return match balanced_tree_edge(&tree, 4) {
                Some(side) => {
                    let side = VertexSet::from_unsorted(k, side)?;
                    let rest = side.complement();
                    self.split(
                        set.clone(),
                        vec![side.lift(labels, n), rest.lift(labels, n)],
                    )
                }
                None => self.fallback(set, &h, "no tree edge leaves two parts of order >= 4"),
            };
        }

        // delta >= 4: the subtrees hanging off v are the components of T - v
        let forest = tree_without(&tree, v);
        if let Some(big) = components(&forest)
            .into_iter()
            .find(|c| c.len() >= 4 && !c.contains(v))
        {
            let rest = big.complement();
            return self.split(set.clone(), vec![big.lift(labels, n), rest.lift(labels, n)]);
        }

        let (without_v, keep) = h.remove_vertices(&[v]);
        if let Some(p4) = find_p4(&without_v) {
            let path = p4.map(|x| keep[x]);
            let mut augmented = forest.clone();
            augmented.insert_edge(path[0], path[1]);
            let mut part = component_of(&augmented, path[0]);
            if part.len() < 4 {
                augmented.insert_edge(path[1], path[2]);
                augmented.insert_edge(path[2], path[3]);
                part = component_of(&augmented, path[0]);
            }
            let part = VertexSet::from_unsorted(k, part)?;
            let rest = part.complement();
            return self.split(
                set.clone(),
                vec![part.lift(labels, n), rest.lift(labels, n)],
            );
        }

        let classes = classify_p4_free_components(&without_v)?;
        if !classes.others.is_empty() {
            return self.fallback(
                set,
                &h,
                "G - v is P4-free but has a star component K_{1,s} with s >= 3",
            );
        }
        if k < STAR_CASE_MIN_ORDER {
            return match removable_edge(&h, v) {
                Some((u, w)) => {
                    let pair = VertexSet::new(k, vec![u, w])?;
                    let rest = pair.complement();
                    self.split(
                        set.clone(),
                        vec![pair.lift(labels, n), rest.lift(labels, n)],
                    )
                }
                None => self.fallback(set, &h, "no edge uw with G - u - w connected"),
            };
        }
        Ok(Certificate::StarCase {
            claimed_bound: (k - 3) as f64,
            apex: labels[v],
            l1: classes.l1,
            l2: classes.l2,
            l3: classes.l3,
            l4: classes.l4,
            branch: if classes.l1 >= 1 {
                StarBranch::WithTriangle
            } else {
                StarBranch::TriangleFree
            },
            vertices: set.into_vec(),
        })
    }

    fn energies(&self, h: &Graph) -> Result<(f64, f64), CertifyError> {
        Ok(spectral::square_energy_parts(
            &spectral::eigenvalues(h)?,
            self.tol,
        ))
    }

    fn fallback(
        &self,
        set: VertexSet,
        h: &Graph,
        reason: &str,
    ) -> Result<Certificate, CertifyError> {
        let (s_plus, s_minus) = self.energies(h)?;
        Ok(Certificate::Fallback {
            vertices: set.into_vec(),
            claimed_bound: s_plus.min(s_minus),
            reason: reason.to_string(),
            s_plus,
            s_minus,
        })
    }

    fn split(
        &self,
        set: VertexSet,
        mut parts: Vec<VertexSet>,
    ) -> Result<Certificate, CertifyError> {
        parts.sort_by_key(|p| p.as_slice().first().copied());
        let children = par::map_ordered(parts, |p| self.node(p))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Certificate::Split {
            vertices: set.into_vec(),
            claimed_bound: children.iter().map(Certificate::claimed_bound).sum(),
            children,
        })
    }
}

/// The forest `T - v`, keeping `v` as an isolated vertex.
fn tree_without(tree: &SpanningTree, v: usize) -> Graph {
    Graph::from_edges(
        tree.n(),
        tree.edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != v && b != v),
    )
    .expect("tree edges are valid")
}

fn component_of(g: &Graph, start: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut out = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// First tree edge, in discovery order, whose removal leaves two parts of
/// order at least `min`; returns the part away from the root.
fn balanced_tree_edge(tree: &SpanningTree, min: usize) -> Option<Vec<usize>> {
    let n = tree.n();
    let t = tree.as_graph();
    // BFS from the root gives parents and an order whose reverse visits
    // children before parents
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([tree.root]);
    parent[tree.root] = tree.root;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().filter(|&&u| u != tree.root) {
        size[parent[u]] += size[u];
    }
    let &(a, b) = tree.edges.iter().find(|&&(a, b)| {
        let child = if parent[b] == a { b } else { a };
        size[child] >= min && n - size[child] >= min
    })?;
    let child = if parent[b] == a { b } else { a };
    let cut = Graph::from_edges(n, t.edges().filter(|&e| e != (a, b))).expect("tree edges");
    Some(component_of(&cut, child))
}

/// Lexicographically first edge `uw` avoiding `v` with `g - u - w` connected.
fn removable_edge(g: &Graph, v: usize) -> Option<(usize, usize)> {
    g.edges()
        .filter(|&(u, w)| u != v && w != v)
        .find(|&(u, w)| is_connected(&g.remove_vertices(&[u, w]).0))
}
