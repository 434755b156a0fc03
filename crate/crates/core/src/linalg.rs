//! Dense real symmetric matrices and a cyclic Jacobi eigensolver.
//!
//! The eigensolver here is the brute-force referee for every closed-form
//! result in the crate, so it is kept deliberately plain: full storage,
//! explicit plane rotations, and a residual certificate on return.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Asymmetry above which construction is rejected as a caller bug.
pub const ASYMMETRY_LIMIT: f64 = 1e-9;

/// Sweep budget for [`eigen_sym`].
pub const MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
    asymmetry: f64,
}

impl SymMatrix {
    /// Builds a matrix from row-major entries, symmetrizing as `(M + Mᵀ)/2`.
    ///
    /// The largest `|M[i,j] - M[j,i]|` seen is kept in [`SymMatrix::asymmetry`];
    /// anything above [`ASYMMETRY_LIMIT`] is an error.
    pub fn from_row_major(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut m = Self {
            dim,
            entries,
            asymmetry: 0.0,
        };
        m.symmetrize();
        if m.asymmetry > ASYMMETRY_LIMIT {
            return Err(Error::Asymmetric(m.asymmetry));
        }
        Ok(m)
    }

    /// Builds a matrix from a generator `f(i, j)`; the result is symmetrized.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self::from_row_major(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        Self {
            dim,
            entries: vec![0.0; dim * dim],
            asymmetry: 0.0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![1.0; dim])
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.entries[i * m.dim + i] = *v;
        }
        m
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let upper = self.entries[i * n + j];
                let lower = self.entries[j * n + i];
                worst = worst.max((upper - lower).abs());
                let mean = 0.5 * (upper + lower);
                self.entries[i * n + j] = mean;
                self.entries[j * n + i] = mean;
            }
        }
        self.asymmetry = worst;
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest asymmetry removed at construction.
    pub fn asymmetry(&self) -> f64 {
        self.asymmetry
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest elementwise difference to `other`. Panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        SymMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
            asymmetry: 0.0,
        }
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;

    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;

    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &SymMatrix {
    type Output = SymMatrix;

    fn mul(self, rhs: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * rhs).collect(),
            asymmetry: 0.0,
        }
    }
}

/// Kronecker product: `result[(i·nb + k), (j·nb + l)] = a[i,j]·b[k,l]`.
pub fn kron(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut entries = vec![0.0; n * n];
    for i in 0..na {
        for j in 0..na {
            let aij = a.get(i, j);
            if aij == 0.0 {
                continue;
            }
            for k in 0..nb {
                let row = (i * nb + k) * n + j * nb;
                for l in 0..nb {
                    entries[row + l] = aij * b.get(k, l);
                }
            }
        }
    }
    SymMatrix {
        dim: n,
        entries,
        asymmetry: 0.0,
    }
}

/// Traces out the second factor of a `d²`-dimensional operator:
/// `result[i,j] = Σ_k m[(i·d + k), (j·d + k)]`.
pub fn partial_trace_b(m: &SymMatrix, d: usize) -> Result<SymMatrix> {
    if d == 0 || m.dim != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: m.dim,
        });
    }
    let mut out = SymMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out.entries[i * d + j] = (0..d).map(|k| m.get(i * d + k, j * d + k)).sum();
        }
    }
    Ok(out)
}

/// Eigen-decomposition returned by [`eigen_sym`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Column-major `dim × dim` matrix; column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Vec<f64>,
    /// Largest off-diagonal magnitude left when iteration stopped.
    pub max_offdiag_residual: f64,
    /// Tolerance the solve was run with.
    pub tol: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        let n = self.eigenvalues.len();
        &self.eigenvectors[k * n..(k + 1) * n]
    }

    /// Rebuilds `V·diag(λ)·Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.eigenvalues.len();
        let mut entries = vec![0.0; n * n];
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            for i in 0..n {
                let vi = lambda * v[i];
                for j in 0..n {
                    entries[i * n + j] += vi * v[j];
                }
            }
        }
        SymMatrix::from_row_major(n, entries).expect("reconstruction is symmetric")
    }
}

/// Scale-aware default tolerance: `1e-12·‖m‖_F`, floored at `1e-300`.
pub fn default_tol(m: &SymMatrix) -> f64 {
    (1e-12 * m.frobenius_norm()).max(1e-300)
}

/// [`eigen_sym`] with [`default_tol`].
pub fn eigen_sym_default(m: &SymMatrix) -> Result<Spectrum> {
    eigen_sym(m, default_tol(m))
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over all `(p, q)` pairs in row order, annihilating each
/// off-diagonal entry with a plane rotation, until every off-diagonal
/// magnitude is at most `tol`. Fails after [`MAX_SWEEPS`] sweeps.
pub fn eigen_sym(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let n = m.dim;
    let mut a = m.entries.clone();
    // v is row-major here; column k holds eigenvector k.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let max_offdiag = |a: &[f64]| {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                worst = worst.max(a[p * n + q].abs());
            }
        }
        worst
    };

    let mut residual = max_offdiag(&a);
    let mut sweeps = 0;
    while residual > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual,
                tol,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- Jᵀ A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        residual = max_offdiag(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues = order.iter().map(|&k| a[k * n + k]).collect();
    let mut eigenvectors = Vec::with_capacity(n * n);
    for &k in &order {
        eigenvectors.extend((0..n).map(|i| v[i * n + k]));
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        max_offdiag_residual: residual,
        tol,
    })
}

/// Cosine and sine of the rotation zeroing `a_pq` in the 2×2 block
/// `[[a_pp, a_pq], [a_pq, a_qq]]`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        let t = 1.0 / (tau.abs() + (1.0 + tau * tau).sqrt());
        if tau >= 0.0 {
            t
        } else {
            -t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}
