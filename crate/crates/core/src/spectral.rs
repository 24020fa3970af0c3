//! Adjacency matrices and their spectra.
//!
//! The eigensolver is the cyclic Jacobi method: sweep over every
//! off-diagonal position in row order, annihilating each with a plane
//! rotation, until the off-diagonal Frobenius norm drops below
//! `1e-12 * ||A||_F`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::Graph;

pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NotConverged(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("signature is not sorted in descending order")]
    Unsorted,
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    /// Wraps row-major data after checking exact symmetry.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if data.len() != dim * dim {
            return Err(SpectralError::DimensionMismatch { expected: dim * dim, got: data.len() });
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(SpectralError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let x = self.get(i, j);
                s += 2.0 * x * x;
            }
        }
        s.sqrt()
    }
}

/// Adjacency spectrum sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSignature {
    values: Vec<f64>,
}

impl SpectralSignature {
    /// Accepts an already-sorted vector (e.g. one read back from disk).
    pub fn from_sorted(values: Vec<f64>) -> Result<Self, SpectralError> {
        if values.windows(2).any(|w| !(w[0] >= w[1])) {
            return Err(SpectralError::Unsorted);
        }
        Ok(SpectralSignature { values })
    }

    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        SpectralSignature { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

pub fn adjacency(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for (a, b) in g.edges() {
        m.set(a, b, 1.0);
    }
    m
}

pub fn eigenvalues(m: &SymMatrix) -> Result<SpectralSignature, SpectralError> {
    let mut work = m.clone();
    jacobi(&mut work, None)?;
    Ok(SpectralSignature::from_unsorted((0..m.dim).map(|i| work.get(i, i)).collect()))
}

pub fn signature_of(g: &Graph) -> Result<SpectralSignature, SpectralError> {
    eigenvalues(&adjacency(g))
}

/// Eigenpairs sorted by descending eigenvalue. Each eigenvector is
/// normalized and its largest-magnitude component is made positive.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub fn symmetric_eigen(m: &SymMatrix) -> Result<EigenDecomposition, SpectralError> {
    let n = m.dim;
    let mut work = m.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(&mut work, Some(&mut v))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| work.get(b, b).total_cmp(&work.get(a, a)));
    let values = order.iter().map(|&k| work.get(k, k)).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            let pivot = col.iter().copied().fold(0.0_f64, |best, x| if x.abs() > best.abs() { x } else { best });
            let scale = if pivot < 0.0 { -1.0 / norm } else { 1.0 / norm };
            col.iter_mut().for_each(|x| *x *= scale);
            col
        })
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Diagonalizes `a` in place. When `vectors` is given (row-major n×n,
/// initially the identity) the rotations are accumulated into its columns.
fn jacobi(a: &mut SymMatrix, mut vectors: Option<&mut Vec<f64>>) -> Result<(), SpectralError> {
    let n = a.dim;
    let tol = OFF_DIAGONAL_TOLERANCE * a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if a.off_diagonal_norm() <= tol {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                a.data[p * n + p] = app - t * apq;
                a.data[q * n + q] = aqq + t * apq;
                a.set(p, q, 0.0);

                if let Some(v) = vectors.as_deref_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = c * vrp - s * vrq;
                        v[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    if a.off_diagonal_norm() <= tol {
        Ok(())
    } else {
        Err(SpectralError::NotConverged(MAX_SWEEPS))
    }
}
