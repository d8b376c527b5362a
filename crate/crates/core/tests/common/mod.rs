//! Test-only oracles and random generators. Nothing here calls into the
//! library's eigensolver, graph6 codec or enumeration.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sqenergy::{Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (row_p, row_q) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * row_p[k] - s * row_q[k];
                    a[q][k] = s * row_p[k] + c * row_q[k];
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    d.sort_by(|x, y| y.partial_cmp(x).unwrap());
    d
}

pub fn adjacency_rows(g: &Graph) -> Vec<Vec<f64>> {
    (0..g.n())
        .map(|i| (0..g.n()).map(|j| g.has_edge(i, j) as u8 as f64).collect())
        .collect()
}

pub fn oracle_eigenvalues(g: &Graph) -> Vec<f64> {
    jacobi_eigenvalues(adjacency_rows(g))
}

/// `(s_plus, s_minus)` from oracle eigenvalues with a fixed zero cutoff.
pub fn oracle_square_energies(g: &Graph) -> (f64, f64) {
    let eps = 1e-8
        * oracle_eigenvalues(g)
            .first()
            .copied()
            .unwrap_or(0.0)
            .max(1.0);
    oracle_eigenvalues(g).iter().fold((0.0, 0.0), |(p, m), &x| {
        if x > eps {
            (p + x * x, m)
        } else if x < -eps {
            (p, m + x * x)
        } else {
            (p, m)
        }
    })
}

/// graph6 encoder written from the format description: size prefix, then
/// the upper triangle column by column as a bit string, padded to a
/// multiple of six, each six bits plus 63.
pub fn reference_graph6(n: usize, has_edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        let bits = format!("{n:018b}");
        for chunk in bits.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            out.push((v + 63) as char);
        }
    }
    let mut bits = String::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(if has_edge(i, j) { '1' } else { '0' });
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push('0');
    }
    for chunk in bits.as_bytes().chunks(6) {
        let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
        out.push((v + 63) as char);
    }
    out
}

fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Connected labeled graphs on `n` vertices by inclusion-exclusion over the
/// component containing vertex 1.
pub fn connected_labeled_count(n: u64) -> u128 {
    let mut c = vec![0u128; n as usize + 1];
    for m in 1..=n {
        let total = 1u128 << (m * (m - 1) / 2);
        let disconnected: u128 = (1..m)
            .map(|k| binom(m - 1, k - 1) * c[k as usize] * (1u128 << ((m - k) * (m - k - 1) / 2)))
            .sum();
        c[m as usize] = total - disconnected;
    }
    c[n as usize]
}

/// Scans all ordered quadruples; returns the lexicographically least path.
pub fn brute_force_p4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn gnp(n: usize, p: f64, r: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random recursive tree plus independent extra edges with probability `p`.
pub fn random_connected(n: usize, p: f64, r: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut edges: Vec<(usize, usize)> =
        (1..n).map(|i| (perm[r.gen_range(0..i)], perm[i])).collect();
    for j in 1..n {
        for i in 0..j {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected bipartite graph with random side sizes.
pub fn random_connected_bipartite(n: usize, p: f64, r: &mut impl Rng) -> Graph {
    assert!(n >= 2);
    let a = r.gen_range(1..n);
    let mut edges = Vec::new();
    // spanning tree: attach each new vertex to an earlier vertex on the other side
    let side = |v: usize| v < a;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    // make sure the first two vertices are on opposite sides
    let first_b = order.iter().position(|&v| !side(v)).unwrap();
    let first_a = order.iter().position(|&v| side(v)).unwrap();
    let (x, y) = (order[first_a], order[first_b]);
    order.retain(|&v| v != x && v != y);
    let mut placed = vec![x, y];
    edges.push((x, y));
    for v in order {
        let candidates: Vec<usize> = placed
            .iter()
            .copied()
            .filter(|&u| side(u) != side(v))
            .collect();
        edges.push((v, *candidates.choose(r).unwrap()));
        placed.push(v);
    }
    for i in 0..a {
        for j in a..n {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random partition of `0..n` into `parts` non-empty sets (needs `n >= parts`).
pub fn random_partition(n: usize, parts: usize, r: &mut impl Rng) -> Vec<VertexSet> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for (i, &v) in perm.iter().enumerate() {
        let b = if i < parts { i } else { r.gen_range(0..parts) };
        buckets[b].push(v);
    }
    buckets
        .into_iter()
        .map(|b| VertexSet::from_unsorted(n, b).unwrap())
        .collect()
}

/// Every labeled graph on `n` vertices, by edge bitmask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e),
        )
        .unwrap()
    })
}

/// Reachability by repeated relaxation; independent of the library's BFS.
pub fn oracle_connected(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut reach = vec![false; n];
    reach[0] = true;
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if reach[i] && !reach[j] && g.has_edge(i, j) {
                    reach[j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    reach.iter().all(|&x| x)
}
