//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use common::*;
use sqenergy::certifier::{
    certify_three_quarters, partition_inequality_check, verify_certificate, Certificate,
};
use sqenergy::enumeration::{sweep, Execution, GraphSource, SweepOptions};
use sqenergy::graph::families::{add_apex, small_component_union};
use sqenergy::graph::{induced_subgraph, parse_graph6, to_graph6};
use sqenergy::spectral::{self, DenseMatrix};
use sqenergy::{BoundKind, Graph, Tolerances, VertexSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> Tolerances {
    Tolerances::default()
}

fn bipartite_identity() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = r.gen_range(2..=40);
        let g = random_connected_bipartite(n, r.gen_range(0.0..0.6), &mut r);
        let rep = spectral::energy_report(&g, &tol()).map_err(|e| e.to_string())?;
        let m = g.m() as f64;
        let bound = 1e-7 * m.max(1.0);
        let dev = (rep.s_plus - m).abs().max((rep.s_minus - m).abs());
        worst = worst.max(dev / m.max(1.0));
        if dev > bound {
            return Err(format!(
                "graph {i} (n={n}, m={m}): s+={}, s-={}",
                rep.s_plus, rep.s_minus
            ));
        }
    }
    Ok(format!("200 graphs, worst relative deviation {worst:.2e}"))
}

fn exhaustive_sweep(bound: BoundKind) -> Outcome {
    let options = SweepOptions {
        threshold: bound,
        execution: Execution::Parallel,
        ..SweepOptions::default()
    };
    let expected = [38u64, 728, 26_704, 1_866_256];
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut failed = false;
    for (n, want) in (4..=7).zip(expected) {
        let summary = sweep(&GraphSource::Builtin { n }, &options).map_err(|e| e.to_string())?;
        let s = &summary[0];
        let ok = s.graphs_tested == want && s.violations == 0 && s.eigen_failures == 0;
        failed |= !ok;
        lines.push(format!(
            "n={n}: {} graphs, {} violations, min s {:.6}",
            s.graphs_tested,
            s.violations,
            s.min_s.unwrap_or(f64::NAN)
        ));
    }
    let msg = format!(
        "{} ({:.1}s)",
        lines.join("; "),
        start.elapsed().as_secs_f64()
    );
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn superadditivity() -> Outcome {
    let mut r = rng(4);
    let mut worst = f64::INFINITY;
    for i in 0..500 {
        let n = r.gen_range(3..=40);
        let g = gnp(n, r.gen_range(0.05..0.9), &mut r);
        let parts = random_partition(n, r.gen_range(2..=3), &mut r);
        let slack = partition_inequality_check(&g, &parts, &tol()).map_err(|e| e.to_string())?;
        worst = worst.min(slack.plus).min(slack.minus);
        if slack.plus < -1e-7 || slack.minus < -1e-7 {
            return Err(format!(
                "graph {i}: slacks ({}, {})",
                slack.plus, slack.minus
            ));
        }
    }
    // equality clause: the parts are unions of whole components
    let mut worst_eq: f64 = 0.0;
    for i in 0..100 {
        let k = r.gen_range(2..=3);
        let mut g = Graph::empty(0);
        let mut parts = Vec::new();
        for _ in 0..k {
            let size = r.gen_range(1..=13);
            let offset = g.n();
            g = g.disjoint_union(&gnp(size, r.gen_range(0.1..0.9), &mut r));
            parts.push((offset..offset + size).collect::<Vec<_>>());
        }
        let parts: Vec<VertexSet> = parts
            .into_iter()
            .map(|p| VertexSet::new(g.n(), p).unwrap())
            .collect();
        let slack = partition_inequality_check(&g, &parts, &tol()).map_err(|e| e.to_string())?;
        worst_eq = worst_eq.max(slack.plus.abs()).max(slack.minus.abs());
        if slack.plus.abs() > 1e-7 || slack.minus.abs() > 1e-7 {
            return Err(format!(
                "equality case {i}: slacks ({}, {})",
                slack.plus, slack.minus
            ));
        }
    }
    Ok(format!(
        "500 partitions, min slack {worst:.2e}; 100 component partitions, max |slack| {worst_eq:.2e}"
    ))
}

fn certifier_end_to_end() -> Outcome {
    let mut r = rng(5);
    let mut fallbacks = 0usize;
    let mut fallback_graphs = 0usize;
    let mut kinds = std::collections::BTreeMap::<&'static str, usize>::new();
    let mut reasons = std::collections::BTreeMap::<String, usize>::new();
    let start = Instant::now();
    for i in 0..1000 {
        let n = r.gen_range(11..=64);
        let g = match i % 5 {
            0 => random_connected(n, 0.0, &mut r),
            1 => random_connected(n, 1.5 / n as f64, &mut r),
            2 => random_connected(n, r.gen_range(0.05..0.9), &mut r),
            3 => random_connected_bipartite(n, r.gen_range(0.0..0.3), &mut r),
            _ => {
                let (l1, l2, l3) = (r.gen_range(0..=5), r.gen_range(0..=5), r.gen_range(0..=6));
                let used = 3 * l1 + 3 * l2 + 2 * l3;
                let l4 = (n - 1).saturating_sub(used);
                add_apex(&small_component_union(l1, l2, l3, l4))
            }
        };
        let n = g.n();
        let cert = certify_three_quarters(&g, BoundKind::ThreeQuarters, &tol())
            .map_err(|e| format!("graph {i} ({}): {e}", to_graph6(&g).unwrap()))?;
        let report = verify_certificate(&g, &cert, &tol())
            .map_err(|e| format!("graph {i} ({}): {e}", to_graph6(&g).unwrap()))?;
        if !report.pass {
            return Err(format!(
                "graph {i} ({}): certificate rejected",
                to_graph6(&g).unwrap()
            ));
        }
        if cert.claimed_bound() < 0.75 * n as f64 - 1e-9 {
            return Err(format!("graph {i}: root claims {}", cert.claimed_bound()));
        }
        for node in cert.nodes() {
            if node.children().is_empty() {
                *kinds.entry(node.kind()).or_default() += 1;
            }
            if let Certificate::Fallback { reason, .. } = node {
                *reasons.entry(reason.clone()).or_default() += 1;
            }
        }
        let f = cert.count_kind("fallback");
        fallbacks += f;
        fallback_graphs += (f > 0) as usize;
    }
    Ok(format!(
        "1000 certified and verified; fallback leaves {fallbacks} in {fallback_graphs} graphs {reasons:?}; leaves {kinds:?} ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn spectral_identities() -> Outcome {
    let mut r = rng(6);
    let mut worst = [0.0f64; 5];
    for i in 0..200 {
        let n = r.gen_range(1..=64);
        let g = gnp(n, r.gen_range(0.0..1.0), &mut r);
        let spec = spectral::eigen_decompose(&g, &tol()).map_err(|e| e.to_string())?;
        let (tr1, tr2) = spec.trace_defects(g.m());
        let split = spectral::spectral_split(&spec, &tol()).map_err(|e| e.to_string())?;
        let a = DenseMatrix::adjacency(&g);
        let mut recombined = split.a_plus.clone();
        for p in 0..n {
            for q in 0..n {
                recombined[(p, q)] -= split.a_minus[(p, q)];
            }
        }
        let (s_plus, _) = spectral::square_energy_parts(&spec, &tol());
        let defects = [
            tr1 / (1e-8 * n as f64),
            tr2 / (1e-8 * (2.0 * g.m() as f64).max(1.0)),
            a.max_abs_diff(&recombined) / 1e-7,
            split.a_plus.mul(&split.a_minus).max_abs() / 1e-7,
            (split.a_plus.trace_of_square() - s_plus).abs() / 1e-7,
        ];
        for (w, d) in worst.iter_mut().zip(defects) {
            *w = w.max(d);
        }
        if defects.iter().any(|&d| d > 1.0) {
            return Err(format!(
                "graph {i} (n={n}): defects relative to bounds {defects:?}"
            ));
        }
    }
    Ok(format!(
        "200 graphs, worst defect as a fraction of each bound {:?}",
        worst.map(|w| format!("{w:.1e}"))
    ))
}

fn interlacing() -> Outcome {
    let mut pairs = 0usize;
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        for g in all_graphs(n).filter(oracle_connected) {
            let outer = spectral::eigenvalues(&g).map_err(|e| e.to_string())?;
            for v in 0..n {
                let (h, _) = g.remove_vertices(&[v]);
                let inner = spectral::eigenvalues(&h).map_err(|e| e.to_string())?;
                let check =
                    spectral::interlacing_check(&outer, &inner, 1e-8).map_err(|e| e.to_string())?;
                worst = worst.max(check.max_violation);
                pairs += 1;
                if !check.holds {
                    return Err(format!(
                        "{} minus {v}: violation {}",
                        to_graph6(&g).unwrap(),
                        check.max_violation
                    ));
                }
            }
        }
    }
    Ok(format!("{pairs} (G, G-v) pairs, max violation {worst:.1e}"))
}

fn star_case_spectrum() -> Outcome {
    let mut r = rng(8);
    let sqrt2 = 2f64.sqrt();
    let mut worst: f64 = 0.0;
    let mut apex_checked = 0usize;
    for i in 0..50 {
        let (l1, l2, l3, l4) = loop {
            let mix = (
                r.gen_range(0..=5),
                r.gen_range(0..=5),
                r.gen_range(0..=5),
                r.gen_range(0..=5),
            );
            if mix != (0, 0, 0, 0) {
                break mix;
            }
        };
        let h = small_component_union(l1, l2, l3, l4);
        let got = spectral::eigenvalues(&h)
            .map_err(|e| e.to_string())?
            .eigenvalues;
        let mut want = Vec::new();
        want.extend(std::iter::repeat_n(2.0, l1));
        want.extend(std::iter::repeat_n(sqrt2, l2));
        want.extend(std::iter::repeat_n(1.0, l3));
        want.extend(std::iter::repeat_n(0.0, l2 + l4));
        want.extend(std::iter::repeat_n(-1.0, 2 * l1 + l3));
        want.extend(std::iter::repeat_n(-sqrt2, l2));
        if got.len() != want.len() {
            return Err(format!(
                "mix {i}: {} eigenvalues, expected {}",
                got.len(),
                want.len()
            ));
        }
        let dev = got
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
        if dev > 1e-8 {
            return Err(format!("mix ({l1},{l2},{l3},{l4}): deviation {dev:.2e}"));
        }

        let g = add_apex(&h);
        let n = g.n();
        if n >= 12 {
            let (p, m) = spectral::square_energy_parts(&spectral::eigenvalues(&g).unwrap(), &tol());
            let bound = n as f64 - 3.0;
            if p < bound - 1e-9 || m < bound - 1e-9 {
                return Err(format!(
                    "apex over ({l1},{l2},{l3},{l4}): s+={p}, s-={m}, n-3={bound}"
                ));
            }
            apex_checked += 1;
        }
    }
    Ok(format!(
        "50 mixes, max eigenvalue deviation {worst:.1e}; {apex_checked} apex graphs with n >= 12 meet n-3"
    ))
}

fn energy_superadditivity() -> Outcome {
    let mut r = rng(9);
    let mut worst = f64::INFINITY;
    for i in 0..200 {
        let n = r.gen_range(2..=40);
        let g = gnp(n, r.gen_range(0.05..0.9), &mut r);
        let parts = random_partition(n, r.gen_range(2..=3.min(n)), &mut r);
        let whole = spectral::graph_energy(&spectral::eigenvalues(&g).unwrap());
        let sum: f64 = parts
            .iter()
            .map(|p| {
                spectral::graph_energy(
                    &spectral::eigenvalues(&induced_subgraph(&g, p).unwrap()).unwrap(),
                )
            })
            .sum();
        let slack = whole - sum;
        worst = worst.min(slack);
        if slack < -1e-7 {
            return Err(format!("pair {i}: slack {slack}"));
        }
    }
    Ok(format!("200 pairs, min slack {worst:.3e}"))
}

fn graph6_codec() -> Outcome {
    for (text, g) in [
        ("@", Graph::empty(1)),
        ("A_", Graph::from_edges(2, [(0, 1)]).unwrap()),
        (
            "Bw",
            Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap(),
        ),
    ] {
        let oracle = reference_graph6(g.n(), |i, j| g.has_edge(i, j));
        if oracle != text || to_graph6(&g).unwrap() != text || parse_graph6(text).unwrap() != g {
            return Err(format!("fixed vector {text} (oracle gives {oracle})"));
        }
    }
    let mut r = rng(10);
    for i in 0..1000 {
        let n = r.gen_range(0..=100);
        let g = gnp(n, r.gen_range(0.0..1.0), &mut r);
        let text = to_graph6(&g).map_err(|e| e.to_string())?;
        if text != reference_graph6(n, |a, b| g.has_edge(a, b)) {
            return Err(format!(
                "graph {i} (n={n}): encoding differs from the oracle"
            ));
        }
        if parse_graph6(&text).map_err(|e| e.to_string())? != g {
            return Err(format!("graph {i} (n={n}): round trip changed the graph"));
        }
    }
    Ok("fixed vectors @, A_, Bw; 1000 random round trips up to n = 100".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("bipartite identity", bipartite_identity),
        ("exhaustive sweep n=4..7, s >= n-1", || {
            exhaustive_sweep(BoundKind::NMinusOne)
        }),
        ("exhaustive sweep n=4..7, s >= 3n/4", || {
            exhaustive_sweep(BoundKind::ThreeQuarters)
        }),
        ("square-energy superadditivity", superadditivity),
        ("certifier end to end", certifier_end_to_end),
        ("spectral identities", spectral_identities),
        ("interlacing", interlacing),
        ("star-case spectrum", star_case_spectrum),
        ("energy superadditivity", energy_superadditivity),
        ("graph6 codec", graph6_codec),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
