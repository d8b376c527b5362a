//! Adjacency spectra and the energies derived from them.
//!
//! For a graph with eigenvalues `l_1 >= ... >= l_n`:
//!
//! * `s_plus` is the sum of `l_i^2` over positive eigenvalues,
//! * `s_minus` the same over negative eigenvalues,
//! * `s = min(s_plus, s_minus)` is the square energy,
//! * `energy` is the sum of `|l_i|`.
//!
//! Eigenvalues within `zero_threshold` of zero count toward neither sum.

mod eigen;
mod matrix;

pub use eigen::{symmetric_eigen, symmetric_eigenvalues};
pub use matrix::DenseMatrix;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("QL iteration did not converge for eigenvalue {index} after {iterations} iterations (off-diagonal {off_diagonal:e})")]
    NoConvergence {
        index: usize,
        iterations: usize,
        off_diagonal: f64,
    },
    #[error("eigenpair residual {residual:e} exceeds bound {bound:e}")]
    Inaccurate { residual: f64, bound: f64 },
    #[error("spectrum carries no eigenvectors")]
    MissingEigenvectors,
    #[error("inner spectrum must have {expected} eigenvalues, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

/// Descending eigenvalues of a symmetric matrix, optionally with the
/// orthonormal eigenvectors (as matrix columns) they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<DenseMatrix>,
    /// Largest `||A x_i - l_i x_i||_2`; present when eigenvectors are.
    pub residual_bound: Option<f64>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Threshold below which an eigenvalue counts as zero.
    pub fn zero_threshold(&self, tol: &Tolerances) -> f64 {
        tol.zero * self.largest().max(1.0)
    }

    /// Checks the trace identities `sum l_i = 0` and `sum l_i^2 = 2m`.
    pub fn trace_defects(&self, m: usize) -> (f64, f64) {
        let sum: f64 = self.eigenvalues.iter().sum();
        let sq: f64 = self.eigenvalues.iter().map(|x| x * x).sum();
        (sum.abs(), (sq - 2.0 * m as f64).abs())
    }
}

/// Full eigendecomposition of `A(g)`, rejecting any eigenpair whose residual
/// exceeds `tol.eig * max(1, |l_1|)`.
pub fn eigen_decompose(g: &Graph, tol: &Tolerances) -> Result<Spectrum, SpectralError> {
    decompose_matrix(&DenseMatrix::adjacency(g), tol)
}

pub fn decompose_matrix(a: &DenseMatrix, tol: &Tolerances) -> Result<Spectrum, SpectralError> {
    let (eigenvalues, vectors) = symmetric_eigen(a)?;
    let residual = max_residual(a, &eigenvalues, &vectors);
    let scale = eigenvalues.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
    let bound = tol.eig * scale;
    if residual > bound {
        return Err(SpectralError::Inaccurate { residual, bound });
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: Some(vectors),
        residual_bound: Some(residual),
    })
}

/// Eigenvalues of `A(g)` without eigenvectors; the fast path for sweeps.
pub fn eigenvalues(g: &Graph) -> Result<Spectrum, SpectralError> {
    Ok(Spectrum {
        eigenvalues: symmetric_eigenvalues(&DenseMatrix::adjacency(g))?,
        eigenvectors: None,
        residual_bound: None,
    })
}

fn max_residual(a: &DenseMatrix, values: &[f64], vectors: &DenseMatrix) -> f64 {
    let n = a.n();
    let mut worst: f64 = 0.0;
    for (k, &lambda) in values.iter().enumerate() {
        let x = vectors.column(k);
        let ax = a.mul_vec(&x);
        let r = (0..n)
            .map(|i| (ax[i] - lambda * x[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r);
    }
    worst
}

/// One graph's energy profile. Field order is the serialized column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub n: usize,
    pub m: usize,
    pub s_plus: f64,
    pub s_minus: f64,
    pub s: f64,
    pub energy: f64,
    pub zero_threshold: f64,
    pub eigenvalues: Vec<f64>,
}

impl EnergyReport {
    pub const CSV_HEADER: [&'static str; 7] = [
        "n",
        "m",
        "s_plus",
        "s_minus",
        "s",
        "energy",
        "zero_threshold",
    ];

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.n.to_string(),
            self.m.to_string(),
            self.s_plus.to_string(),
            self.s_minus.to_string(),
            self.s.to_string(),
            self.energy.to_string(),
            self.zero_threshold.to_string(),
        ]
    }
}

/// `(s_plus, s_minus)` with the near-zero eigenvalues excluded.
pub fn square_energy_parts(spec: &Spectrum, tol: &Tolerances) -> (f64, f64) {
    let eps = spec.zero_threshold(tol);
    let mut plus = 0.0;
    let mut minus = 0.0;
    for &x in &spec.eigenvalues {
        if x > eps {
            plus += x * x;
        } else if x < -eps {
            minus += x * x;
        }
    }
    (plus, minus)
}

pub fn square_energies(spec: &Spectrum, m: usize, tol: &Tolerances) -> EnergyReport {
    let (s_plus, s_minus) = square_energy_parts(spec, tol);
    EnergyReport {
        n: spec.n(),
        m,
        s_plus,
        s_minus,
        s: s_plus.min(s_minus),
        energy: graph_energy(spec),
        zero_threshold: spec.zero_threshold(tol),
        eigenvalues: spec.eigenvalues.clone(),
    }
}

/// Energy report of `g` via the eigenvalue-only solver.
pub fn energy_report(g: &Graph, tol: &Tolerances) -> Result<EnergyReport, SpectralError> {
    Ok(square_energies(&eigenvalues(g)?, g.m(), tol))
}

pub fn graph_energy(spec: &Spectrum) -> f64 {
    spec.eigenvalues.iter().map(|x| x.abs()).sum()
}

/// `A = a_plus - a_minus`, both positive semidefinite, with
/// `a_plus * a_minus = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSplit {
    pub a_plus: DenseMatrix,
    pub a_minus: DenseMatrix,
}

pub fn spectral_split(spec: &Spectrum, tol: &Tolerances) -> Result<SpectralSplit, SpectralError> {
    let vectors = spec
        .eigenvectors
        .as_ref()
        .ok_or(SpectralError::MissingEigenvectors)?;
    let n = spec.n();
    let eps = spec.zero_threshold(tol);
    let mut a_plus = DenseMatrix::zeros(n);
    let mut a_minus = DenseMatrix::zeros(n);
    for (k, &lambda) in spec.eigenvalues.iter().enumerate() {
        if lambda > eps {
            a_plus.add_outer(lambda, &vectors.column(k));
        } else if lambda < -eps {
            a_minus.add_outer(-lambda, &vectors.column(k));
        }
    }
    Ok(SpectralSplit { a_plus, a_minus })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interlacing {
    pub holds: bool,
    /// Largest amount by which any inequality fails; zero when all hold.
    pub max_violation: f64,
}

/// Checks `outer_i >= inner_i >= outer_{i+1}` for every `i`, where `inner`
/// has exactly one eigenvalue fewer than `outer`.
pub fn interlacing_check(
    outer: &Spectrum,
    inner: &Spectrum,
    tolerance: f64,
) -> Result<Interlacing, SpectralError> {
    let expected = outer.n().saturating_sub(1);
    if outer.n() == 0 || inner.n() != expected {
        return Err(SpectralError::SizeMismatch {
            expected,
            found: inner.n(),
        });
    }
    let a = &outer.eigenvalues;
    let b = &inner.eigenvalues;
    let mut worst: f64 = 0.0;
    for i in 0..b.len() {
        worst = worst.max(b[i] - a[i]).max(a[i + 1] - b[i]);
    }
    Ok(Interlacing {
        holds: worst <= tolerance,
        max_violation: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
    }

    #[test]
    fn small_spectra() {
        let s = eigen_decompose(&complete(2), &tol()).unwrap();
        assert!(close(&s.eigenvalues, &[1.0, -1.0], 1e-14));
        let s = eigen_decompose(&complete(3), &tol()).unwrap();
        assert!(close(&s.eigenvalues, &[2.0, -1.0, -1.0], 1e-14));
        let r2 = 2f64.sqrt();
        let s = eigen_decompose(&path(3), &tol()).unwrap();
        assert!(close(&s.eigenvalues, &[r2, 0.0, -r2], 1e-14));
        let s = eigen_decompose(&Graph::empty(0), &tol()).unwrap();
        assert!(s.eigenvalues.is_empty());
    }

    #[test]
    fn square_energy_examples() {
        let r = energy_report(&complete(3), &tol()).unwrap();
        assert!((r.s_plus - 4.0).abs() < 1e-12 && (r.s_minus - 2.0).abs() < 1e-12);
        assert!((r.s - 2.0).abs() < 1e-12);

        let r = energy_report(&path(3), &tol()).unwrap();
        assert!((r.s_plus - 2.0).abs() < 1e-12 && (r.s_minus - 2.0).abs() < 1e-12);

        let r = energy_report(&Graph::empty(1), &tol()).unwrap();
        assert_eq!((r.s_plus, r.s_minus, r.s), (0.0, 0.0, 0.0));

        // spectrum 3, 1^(5), (-2)^(4)
        let r = energy_report(&petersen(), &tol()).unwrap();
        assert!((r.s_plus - 14.0).abs() < 1e-10);
        assert!((r.s_minus - 16.0).abs() < 1e-10);
        assert!((r.s - 14.0).abs() < 1e-10);
    }

    #[test]
    fn zeros_are_excluded_from_both_sums() {
        // C4 has spectrum {2, 0, 0, -2}
        let r = energy_report(&cycle(4), &tol()).unwrap();
        assert!((r.s_plus - 4.0).abs() < 1e-12 && (r.s_minus - 4.0).abs() < 1e-12);
        assert!((r.zero_threshold - 2e-8).abs() < 1e-20);
    }

    #[test]
    fn energies() {
        let e = |g: &Graph| graph_energy(&eigen_decompose(g, &tol()).unwrap());
        assert!((e(&complete(2)) - 2.0).abs() < 1e-12);
        assert!((e(&complete(3)) - 4.0).abs() < 1e-12);
        assert!((e(&cycle(4)) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn split_of_an_edge() {
        let s = eigen_decompose(&complete(2), &tol()).unwrap();
        let split = spectral_split(&s, &tol()).unwrap();
        let plus = DenseMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
        let minus = DenseMatrix::from_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]);
        assert!(split.a_plus.max_abs_diff(&plus) < 1e-14);
        assert!(split.a_minus.max_abs_diff(&minus) < 1e-14);

        let s = eigen_decompose(&Graph::empty(3), &tol()).unwrap();
        let split = spectral_split(&s, &tol()).unwrap();
        assert_eq!(split.a_plus.max_abs(), 0.0);
        assert_eq!(split.a_minus.max_abs(), 0.0);

        let s = eigenvalues(&complete(2)).unwrap();
        assert_eq!(
            spectral_split(&s, &tol()),
            Err(SpectralError::MissingEigenvectors)
        );
    }

    #[test]
    fn interlacing_examples() {
        let k3 = eigenvalues(&complete(3)).unwrap();
        let k2 = eigenvalues(&complete(2)).unwrap();
        assert!(interlacing_check(&k3, &k2, 1e-10).unwrap().holds);
        let one = eigenvalues(&Graph::empty(1)).unwrap();
        let none = eigenvalues(&Graph::empty(0)).unwrap();
        let r = interlacing_check(&one, &none, 1e-10).unwrap();
        assert!(r.holds && r.max_violation == 0.0);
        assert!(matches!(
            interlacing_check(&k3, &k3, 1e-10),
            Err(SpectralError::SizeMismatch { .. })
        ));
        let k4 = eigenvalues(&complete(4)).unwrap();
        assert!(interlacing_check(&k4, &k3, 1e-10).unwrap().holds);
        // P3 is not a principal submatrix of K4: -1 >= 0 fails
        let p3 = eigenvalues(&path(3)).unwrap();
        let r = interlacing_check(&k4, &p3, 1e-10).unwrap();
        assert!(!r.holds && (r.max_violation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_serializes_fields_in_order() {
        let r = energy_report(&complete(2), &tol()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let keys = [
            "\"n\"",
            "\"m\"",
            "\"s_plus\"",
            "\"s_minus\"",
            "\"s\"",
            "\"energy\"",
            "\"zero_threshold\"",
            "\"eigenvalues\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
    }
}
