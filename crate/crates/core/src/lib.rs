//! Square energies of graphs.
//!
//! * [`graph`]: simple graphs, the graph6 codec and the combinatorial
//!   helpers (components, BFS trees, P4 search) used by the certifier.
//! * [`spectral`]: the dense symmetric eigensolver and the energies
//!   `s_plus`, `s_minus`, `s` and `E(G)`.
//! * [`certifier`]: certificate trees witnessing `s(G) >= 3n/4` for connected
//!   graphs, and their independent verification.
//! * [`enumeration`]: exhaustive and file-driven sweeps of `s(G)` against a
//!   threshold, parallel when the `parallel` feature is on.

pub mod certifier;
pub mod enumeration;
pub mod graph;
pub mod spectral;

mod par;

pub use graph::{Graph, VertexSet};

use serde::{Deserialize, Serialize};

/// Numerical tolerances. Every report records the values it was produced
/// with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigenpair residual bound, relative to `max(1, |l_1|)`.
    pub eig: f64,
    /// Zero-classification threshold, relative to `max(1, l_1)`.
    pub zero: f64,
    /// Absolute slack allowed on certificate and sweep bound checks.
    pub cert: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig: 1e-10,
            zero: 1e-8,
            cert: 1e-6,
        }
    }
}

/// Lower bound a certificate or sweep checks `s(G)` against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum BoundKind {
    /// `n - 1`
    NMinusOne,
    /// `3n / 4`
    ThreeQuarters,
    Custom(f64),
}

impl BoundKind {
    pub fn threshold(&self, n: usize) -> f64 {
        match *self {
            BoundKind::NMinusOne => n as f64 - 1.0,
            BoundKind::ThreeQuarters => 0.75 * n as f64,
            BoundKind::Custom(x) => x,
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::NMinusOne => f.write_str("n-1"),
            BoundKind::ThreeQuarters => f.write_str("3n/4"),
            BoundKind::Custom(x) => write!(f, "{x}"),
        }
    }
}

impl std::str::FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "n-1" => Ok(BoundKind::NMinusOne),
            "3n/4" => Ok(BoundKind::ThreeQuarters),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(BoundKind::Custom)
                .ok_or_else(|| format!("expected n-1, 3n/4 or a real number, got {other:?}")),
        }
    }
}
