use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Certificate, SlackPair, StarBranch};
use crate::graph::{
    classify_p4_free_components, induced_subgraph, is_bipartite, is_cycle, Graph, VertexSet,
};
use crate::spectral::{self, SpectralError};
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("certificate root covers {found} vertices but the graph has {expected}")]
    RootMismatch { expected: usize, found: usize },
    #[error("node {path}: {reason}")]
    Structure { path: String, reason: String },
    #[error("node {path}: {source}")]
    Spectral {
        path: String,
        #[source]
        source: SpectralError,
    },
}

/// Outcome of re-deriving a certificate from its graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub n: usize,
    pub root_bound: f64,
    pub nodes_checked: usize,
    pub tolerances: Tolerances,
    pub root: NodeReport,
}

/// Mirrors one certificate node. `slack` is the recomputed `s` of the part
/// minus its claimed bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeReport {
    pub kind: String,
    pub vertices: Vec<usize>,
    pub claimed_bound: f64,
    pub recomputed_s: f64,
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split_slack: Option<SlackPair>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub issues: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<NodeReport>,
}

impl NodeReport {
    fn all_ok(&self) -> bool {
        self.ok && self.children.iter().all(NodeReport::all_ok)
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(NodeReport::count).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&NodeReport> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(&node.children);
            i += 1;
        }
        out
    }
}

/// Checks every node of `cert` against `g` using only recomputation:
/// structure (partitions), leaf claims, and split superadditivity.
///
/// Structural defects are errors; numeric shortfalls make `pass` false.
pub fn verify_certificate(
    g: &Graph,
    cert: &Certificate,
    tol: &Tolerances,
) -> Result<VerificationReport, VerifyError> {
    let n = g.n();
    let expected: Vec<usize> = (0..n).collect();
    if cert.vertices() != expected.as_slice() {
        return Err(VerifyError::RootMismatch {
            expected: n,
            found: cert.vertices().len(),
        });
    }
    let (root, _) = Verifier { g, tol }.node(cert, "root")?;
    Ok(VerificationReport {
        pass: root.all_ok(),
        n,
        root_bound: cert.claimed_bound(),
        nodes_checked: root.count(),
        tolerances: *tol,
        root,
    })
}

struct Verifier<'a> {
    g: &'a Graph,
    tol: &'a Tolerances,
}

impl Verifier<'_> {
    /// Returns the node report together with the recomputed `(s_plus, s_minus)`.
    fn node(
        &self,
        cert: &Certificate,
        path: &str,
    ) -> Result<(NodeReport, (f64, f64)), VerifyError> {
        let structure = |reason: String| VerifyError::Structure {
            path: path.to_string(),
            reason,
        };
        let set = VertexSet::new(self.g.n(), cert.vertices().to_vec())
            .map_err(|e| structure(e.to_string()))?;
        if set.is_empty() {
            return Err(structure("empty vertex set".into()));
        }
        let h = induced_subgraph(self.g, &set).map_err(|e| structure(e.to_string()))?;
        let spec =
            spectral::eigen_decompose(&h, self.tol).map_err(|source| VerifyError::Spectral {
                path: path.to_string(),
                source,
            })?;
        let (s_plus, s_minus) = spectral::square_energy_parts(&spec, self.tol);
        let recomputed = s_plus.min(s_minus);
        let tau = self.tol.cert;
        let claimed = cert.claimed_bound();

        let mut issues = Vec::new();
        let mut children = Vec::new();
        let mut split_slack = None;

        let mut check_payload = |name: &str, given: f64, actual: f64| {
            if (given - actual).abs() > tau {
                issues.push(format!(
                    "{name} recorded as {given} but recomputed as {actual}"
                ));
            }
        };

        match cert {
            Certificate::Direct {
                s_plus: p,
                s_minus: m,
                ..
            }
            | Certificate::Fallback {
                s_plus: p,
                s_minus: m,
                ..
            } => {
                check_payload("s_plus", *p, s_plus);
                check_payload("s_minus", *m, s_minus);
            }
            Certificate::Cycle {
                s_plus: p,
                s_minus: m,
                ..
            } => {
                check_payload("s_plus", *p, s_plus);
                check_payload("s_minus", *m, s_minus);
                if !is_cycle(&h) {
                    issues.push("part is not a cycle".into());
                }
            }
            Certificate::Bipartite { m, .. } => {
                if !is_bipartite(&h) {
                    issues.push("part is not bipartite".into());
                }
                if h.m() != *m {
                    issues.push(format!("part has {} edges, certificate says {m}", h.m()));
                }
                if claimed > *m as f64 + tau {
                    issues.push(format!("claim {claimed} exceeds the edge count {m}"));
                }
            }
            Certificate::StarCase {
                apex,
                l1,
                l2,
                l3,
                l4,
                branch,
                ..
            } => {
                let k = set.len();
                if k < 12 {
                    issues.push(format!("apex argument needs order >= 12, part has {k}"));
                }
                match set.as_slice().binary_search(apex) {
                    Err(_) => issues.push(format!("apex {apex} is not in the part")),
                    Ok(local) => {
                        let (rest, _) = h.remove_vertices(&[local]);
                        match classify_p4_free_components(&rest) {
                            Err(e) => issues.push(format!("G - apex is not P4-free: {e}")),
                            Ok(c) => {
                                if !c.others.is_empty() {
                                    issues.push(
                                        "G - apex has a component outside K3/P3/K2/K1".into(),
                                    );
                                }
                                if (c.l1, c.l2, c.l3, c.l4) != (*l1, *l2, *l3, *l4) {
                                    issues.push(format!(
                                        "component counts are ({}, {}, {}, {}), certificate says ({l1}, {l2}, {l3}, {l4})",
                                        c.l1, c.l2, c.l3, c.l4
                                    ));
                                }
                            }
                        }
                    }
                }
                let expected_branch = if *l1 >= 1 {
                    StarBranch::WithTriangle
                } else {
                    StarBranch::TriangleFree
                };
                if *branch != expected_branch {
                    issues.push("branch tag disagrees with l1".into());
                }
                let bound = k as f64 - 3.0;
                if claimed > bound + tau {
                    issues.push(format!("claim {claimed} exceeds n - 3 = {bound}"));
                }
                if s_plus < bound - tau || s_minus < bound - tau {
                    issues.push(format!(
                        "s_plus = {s_plus}, s_minus = {s_minus} below n - 3 = {bound}"
                    ));
                }
            }
            Certificate::Split { children: kids, .. } => {
                if kids.len() < 2 {
                    return Err(structure(format!("split has {} children", kids.len())));
                }
                let mut owner = vec![false; self.g.n()];
                for kid in kids {
                    for &v in kid.vertices() {
                        if v >= self.g.n() || !set.contains(v) {
                            return Err(structure(format!(
                                "child vertex {v} lies outside the node"
                            )));
                        }
                        if std::mem::replace(&mut owner[v], true) {
                            return Err(structure(format!("children overlap at vertex {v}")));
                        }
                    }
                }
                if let Some(v) = set.iter().find(|&v| !owner[v]) {
                    return Err(structure(format!("vertex {v} is not covered by any child")));
                }

                let mut sum_plus = 0.0;
                let mut sum_minus = 0.0;
                let mut sum_claims = 0.0;
                for (i, kid) in kids.iter().enumerate() {
                    let (report, (p, m)) = self.node(kid, &format!("{path}.{i}"))?;
                    sum_plus += p;
                    sum_minus += m;
                    sum_claims += kid.claimed_bound();
                    children.push(report);
                }
                if (claimed - sum_claims).abs() > tau {
                    issues.push(format!(
                        "claim {claimed} differs from the children's total {sum_claims}"
                    ));
                }
                let slack = SlackPair {
                    plus: s_plus - sum_plus,
                    minus: s_minus - sum_minus,
                };
                if slack.plus < -tau || slack.minus < -tau {
                    issues.push(format!(
                        "superadditivity fails: slacks ({}, {})",
                        slack.plus, slack.minus
                    ));
                }
                split_slack = Some(slack);
            }
        }

        let slack = recomputed - claimed;
        if slack < -tau {
            issues.push(format!(
                "claim {claimed} exceeds recomputed s = {recomputed}"
            ));
        }
        let report = NodeReport {
            kind: cert.kind().to_string(),
            vertices: set.into_vec(),
            claimed_bound: claimed,
            recomputed_s: recomputed,
            slack,
            split_slack,
            ok: issues.is_empty(),
            issues,
            children,
        };
        Ok((report, (s_plus, s_minus)))
    }
}
