//! Symmetric eigensolver: Householder reduction to tridiagonal form followed
//! by implicit-shift QL iteration (the EISPACK `tred2`/`tql2` pair).

use super::{DenseMatrix, SpectralError};

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues in descending order with matching orthonormal eigenvector
/// columns.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix), SpectralError> {
    let n = a.n();
    if n == 0 {
        return Ok((Vec::new(), DenseMatrix::zeros(0)));
    }
    let mut work = Tridiagonal::reduce(a, true);
    work.ql_iterate(true)?;
    let order = descending_order(&work.d);
    let values = order.iter().map(|&k| work.d[k]).collect();
    let mut vectors = DenseMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = work.v[row * n + k];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues only, descending. Skips all eigenvector accumulation.
pub fn symmetric_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>, SpectralError> {
    if a.n() == 0 {
        return Ok(Vec::new());
    }
    let mut work = Tridiagonal::reduce(a, false);
    work.ql_iterate(false)?;
    let mut d = work.d;
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

fn descending_order(d: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    order
}

struct Tridiagonal {
    n: usize,
    /// diagonal, then eigenvalues
    d: Vec<f64>,
    /// subdiagonal
    e: Vec<f64>,
    /// row-major workspace, then eigenvectors as columns
    v: Vec<f64>,
}

impl Tridiagonal {
    fn reduce(a: &DenseMatrix, accumulate: bool) -> Self {
        let n = a.n();
        let mut v: Vec<f64> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n];
        let at = |i: usize, j: usize| i * n + j;

        for j in 0..n {
            d[j] = v[at(n - 1, j)];
        }

        for i in (1..n).rev() {
            let mut scale = 0.0;
            let mut h = 0.0;
            for dk in &d[..i] {
                scale += dk.abs();
            }
            if scale == 0.0 {
                e[i] = d[i - 1];
                for j in 0..i {
                    d[j] = v[at(i - 1, j)];
                    v[at(i, j)] = 0.0;
                    v[at(j, i)] = 0.0;
                }
            } else {
                for dk in &mut d[..i] {
                    *dk /= scale;
                    h += *dk * *dk;
                }
                let mut f = d[i - 1];
                let mut g = h.sqrt();
                if f > 0.0 {
                    g = -g;
                }
                e[i] = scale * g;
                h -= f * g;
                d[i - 1] = f - g;
                for ej in &mut e[..i] {
                    *ej = 0.0;
                }

                for j in 0..i {
                    f = d[j];
                    v[at(j, i)] = f;
                    g = e[j] + v[at(j, j)] * f;
                    for k in j + 1..i {
                        g += v[at(k, j)] * d[k];
                        e[k] += v[at(k, j)] * f;
                    }
                    e[j] = g;
                }
                f = 0.0;
                for j in 0..i {
                    e[j] /= h;
                    f += e[j] * d[j];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    e[j] -= hh * d[j];
                }
                for j in 0..i {
                    f = d[j];
                    g = e[j];
                    for k in j..i {
                        v[at(k, j)] -= f * e[k] + g * d[k];
                    }
                    d[j] = v[at(i - 1, j)];
                    v[at(i, j)] = 0.0;
                }
            }
            d[i] = h;
        }

        if accumulate {
            for i in 0..n - 1 {
                v[at(n - 1, i)] = v[at(i, i)];
                v[at(i, i)] = 1.0;
                let h = d[i + 1];
                if h != 0.0 {
                    for k in 0..=i {
                        d[k] = v[at(k, i + 1)] / h;
                    }
                    for j in 0..=i {
                        let mut g = 0.0;
                        for k in 0..=i {
                            g += v[at(k, i + 1)] * v[at(k, j)];
                        }
                        for k in 0..=i {
                            v[at(k, j)] -= g * d[k];
                        }
                    }
                }
                for k in 0..=i {
                    v[at(k, i + 1)] = 0.0;
                }
            }
            for j in 0..n {
                d[j] = v[at(n - 1, j)];
                v[at(n - 1, j)] = 0.0;
            }
            v[at(n - 1, n - 1)] = 1.0;
        } else {
            // the reduced diagonal sits untouched on the workspace diagonal
            for j in 0..n {
                d[j] = v[at(j, j)];
            }
        }
        e[0] = 0.0;
        Tridiagonal { n, d, e, v }
    }

    fn ql_iterate(&mut self, accumulate: bool) -> Result<(), SpectralError> {
        let n = self.n;
        let (d, e, v) = (&mut self.d, &mut self.e, &mut self.v);
        for i in 1..n {
            e[i - 1] = e[i];
        }
        e[n - 1] = 0.0;

        let mut f = 0.0;
        let mut tst1: f64 = 0.0;
        let eps = f64::EPSILON;
        for l in 0..n {
            tst1 = tst1.max(d[l].abs() + e[l].abs());
            let mut m = l;
            while m < n - 1 && e[m].abs() > eps * tst1 {
                m += 1;
            }

            if m > l {
                let mut iter = 0;
                loop {
                    iter += 1;
                    if iter > MAX_ITERATIONS_PER_EIGENVALUE {
                        return Err(SpectralError::NoConvergence {
                            index: l,
                            iterations: iter - 1,
                            off_diagonal: e[l].abs(),
                        });
                    }
                    let mut g = d[l];
                    let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                    let mut r = p.hypot(1.0);
                    if p < 0.0 {
                        r = -r;
                    }
                    d[l] = e[l] / (p + r);
                    d[l + 1] = e[l] * (p + r);
                    let dl1 = d[l + 1];
                    let mut h = g - d[l];
                    for di in &mut d[l + 2..n] {
                        *di -= h;
                    }
                    f += h;

                    p = d[m];
                    let mut c = 1.0;
                    let mut c2 = c;
                    let mut c3 = c;
                    let el1 = e[l + 1];
                    let mut s = 0.0;
                    let mut s2 = 0.0;
                    for i in (l..m).rev() {
                        c3 = c2;
                        c2 = c;
                        s2 = s;
                        g = c * e[i];
                        h = c * p;
                        r = p.hypot(e[i]);
                        e[i + 1] = s * r;
                        s = e[i] / r;
                        c = p / r;
                        p = c * d[i] - s * g;
                        d[i + 1] = h + s * (c * g + s * d[i]);
                        if accumulate {
                            for k in 0..n {
                                let row = k * n;
                                h = v[row + i + 1];
                                v[row + i + 1] = s * v[row + i] + c * h;
                                v[row + i] = c * v[row + i] - s * h;
                            }
                        }
                    }
                    p = -s * s2 * c3 * el1 * e[l] / dl1;
                    e[l] = s * p;
                    d[l] = c * p;
                    if e[l].abs() <= eps * tst1 {
                        break;
                    }
                }
            }
            d[l] += f;
            e[l] = 0.0;
        }
        Ok(())
    }
}
