//! Minimal dense square complex matrix, sized at runtime.
//!
//! Exists to hold exact many-qubit operators for oracle-grade checks; it is
//! deliberately not a general linear-algebra type.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrixD {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrixD {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, rhs: &CMatrixD) -> CMatrixD {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrixD::zeros(n);
        for i in 0..n {
            for kk in 0..n {
                let aik = self.data[i * n + kk];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * rhs.data[kk * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrixD {
        let n = self.dim;
        let mut out = CMatrixD::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Kronecker product, self on the left (most significant factor).
    pub fn kron(&self, rhs: &CMatrixD) -> CMatrixD {
        let (na, nb) = (self.dim, rhs.dim);
        let n = na * nb;
        let mut out = CMatrixD::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self.data[ia * na + ja];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for ib in 0..nb {
                    for jb in 0..nb {
                        out.data[(ia * nb + ib) * n + (ja * nb + jb)] = a * rhs.data[ib * nb + jb];
                    }
                }
            }
        }
        out
    }

    /// Right-multiplication by a diagonal matrix: scales each column.
    pub fn scale_columns(&mut self, diag: &[Complex64]) {
        assert_eq!(diag.len(), self.dim);
        let n = self.dim;
        for row in 0..n {
            for col in 0..n {
                self.data[row * n + col] *= diag[col];
            }
        }
    }

    /// ||U U^dagger - I||_F.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.mul(&self.adjoint());
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                acc += (prod.data[i * n + j] - Complex64::new(expected, 0.0)).norm_sqr();
            }
        }
        acc.sqrt()
    }
}
