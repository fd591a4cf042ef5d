//! Dense 2x2 complex matrices: the carrier type for everything in this crate.
//!
//! Entries are stored row-major as `[m11, m12, m21, m22]`. The type is `Copy`
//! and all operations are pure; there is no in-place mutation API.

#[allow(unused_imports)]
use num_traits::Float;

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::Complex64;

/// Tolerance on |trace| for inputs of [`expm_traceless`].
pub const TRACELESS_TOL: f64 = 1e-12;

/// A 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2C {
    e: [Complex64; 4],
}

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Mat2C {
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self {
            e: [m11, m12, m21, m22],
        }
    }

    pub const fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    pub const fn identity() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        Self::new(o, z, z, o)
    }

    /// sigma_1
    pub const fn pauli_x() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        Self::new(z, o, o, z)
    }

    /// sigma_2
    pub const fn pauli_y() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), z)
    }

    /// sigma_3
    pub const fn pauli_z() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        Self::new(o, z, z, Complex64::new(-1.0, 0.0))
    }

    /// (X + Z)/sqrt(2); conjugation swaps X and Z.
    pub fn hadamard() -> Self {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Self::new(c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0))
    }

    /// Diagonal matrix from two entries.
    pub const fn diag(d1: Complex64, d2: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(d1, z, z, d2)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < 2 && col < 2);
        self.e[2 * row + col]
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64; 4] {
        &self.e
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0] + self.e[3]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0].conj(),
            self.e[2].conj(),
            self.e[1].conj(),
            self.e[3].conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.e[0], self.e[2], self.e[1], self.e[3])
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.e[0].conj(),
            self.e[1].conj(),
            self.e[2].conj(),
            self.e[3].conj(),
        )
    }

    /// Inverse via the adjugate. Errors when |det| is numerically zero.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return Err(Error::SingularMatrix { det_abs: d.norm() });
        }
        Ok(Self::new(
            self.e[3] / d,
            -self.e[1] / d,
            -self.e[2] / d,
            self.e[0] / d,
        ))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.e[0] * k, self.e[1] * k, self.e[2] * k, self.e[3] * k)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Frobenius distance to another matrix.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// ||M - M^dagger|| / 2, zero iff Hermitian.
    pub fn hermiticity_residual(&self) -> f64 {
        self.distance(&self.adjoint()) / 2.0
    }

    /// Symmetrized Hermitian part (M + M^dagger)/2.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(c(0.5, 0.0))
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, rhs: Mat2C) -> Mat2C {
        Mat2C::new(
            self.e[0] + rhs.e[0],
            self.e[1] + rhs.e[1],
            self.e[2] + rhs.e[2],
            self.e[3] + rhs.e[3],
        )
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, rhs: Mat2C) -> Mat2C {
        Mat2C::new(
            self.e[0] - rhs.e[0],
            self.e[1] - rhs.e[1],
            self.e[2] - rhs.e[2],
            self.e[3] - rhs.e[3],
        )
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        self.scale(c(-1.0, 0.0))
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Mat2C) -> Mat2C {
        let a = &self.e;
        let b = &rhs.e;
        Mat2C::new(
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )
    }
}

impl Mul<Complex64> for Mat2C {
    type Output = Mat2C;
    fn mul(self, k: Complex64) -> Mat2C {
        self.scale(k)
    }
}

impl Mul<f64> for Mat2C {
    type Output = Mat2C;
    fn mul(self, k: f64) -> Mat2C {
        self.scale(c(k, 0.0))
    }
}

/// AB - BA.
pub fn commutator(a: &Mat2C, b: &Mat2C) -> Mat2C {
    *a * *b - *b * *a
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Determinant in doubled precision (exact products via fused
/// multiply-add, compensated summation).
///
/// The naive a d - b c loses about ||M||^2 eps to cancellation, which is
/// fatal for unimodularity checks on elements with large boost content;
/// this version keeps the absolute error near eps^2 ||M||^2.
pub fn det_accurate(m: &Mat2C) -> Complex64 {
    let [a, b, c, d] = *m.entries();
    let re = [
        two_product(a.re, d.re),
        two_product(-a.im, d.im),
        two_product(-b.re, c.re),
        two_product(b.im, c.im),
    ];
    let im = [
        two_product(a.re, d.im),
        two_product(a.im, d.re),
        two_product(-b.re, c.im),
        two_product(-b.im, c.re),
    ];
    let flatten = |t: &[(f64, f64); 4]| -> [f64; 8] {
        [
            t[0].1, t[1].1, t[2].1, t[3].1, t[0].0, t[1].0, t[2].0, t[3].0,
        ]
    };
    Complex64::new(neumaier_sum(&flatten(&re)), neumaier_sum(&flatten(&im)))
}

/// Pauli matrix by index: 0 -> identity, 1 -> X, 2 -> Y, 3 -> Z.
pub fn pauli(index: usize) -> Result<Mat2C> {
    match index {
        0 => Ok(Mat2C::identity()),
        1 => Ok(Mat2C::pauli_x()),
        2 => Ok(Mat2C::pauli_y()),
        3 => Ok(Mat2C::pauli_z()),
        _ => Err(Error::InvalidArgument(alloc::format!(
            "Pauli index {index} out of range 0..=3"
        ))),
    }
}

/// Closed-form exponential of a traceless 2x2 matrix.
///
/// With mu^2 = -det M, exp(M) = cosh(mu) I + (sinh(mu)/mu) M. Both
/// coefficients are even in mu, so the branch of the square root is
/// irrelevant. For |mu| < 1e-6 the coefficients are evaluated as truncated
/// series in mu^2 to avoid cancellation near the identity.
pub fn expm_traceless(m: &Mat2C) -> Result<Mat2C> {
    let tr = m.trace().norm();
    if tr > TRACELESS_TOL {
        return Err(Error::NotTraceless { trace_abs: tr });
    }
    let mu2 = -m.det();
    let (cosh_mu, sinhc_mu) = if mu2.norm() < 1e-12 {
        // 4-term series in x = mu^2: cosh = 1 + x/2 + x^2/24 + x^3/720,
        // sinh(mu)/mu = 1 + x/6 + x^2/120 + x^3/5040.
        let x = mu2;
        let cosh = c(1.0, 0.0) + x / 2.0 + x * x / 24.0 + x * x * x / 720.0;
        let sinhc = c(1.0, 0.0) + x / 6.0 + x * x / 120.0 + x * x * x / 5040.0;
        (cosh, sinhc)
    } else {
        let mu = mu2.sqrt();
        (mu.cosh(), mu.sinh() / mu)
    };
    Ok(Mat2C::identity().scale(cosh_mu) + m.scale(sinhc_mu))
}

/// Eigendecomposition of a 2x2 Hermitian matrix.
///
/// Returns eigenvalues in descending order together with an orthonormal pair
/// of eigenvectors (columns). The larger-gap eigenvector is computed first
/// and the second is taken orthogonal to it, which keeps the pair orthonormal
/// even for near-degenerate spectra.
pub(crate) fn hermitian_eig2(m: &Mat2C) -> ([f64; 2], [[Complex64; 2]; 2]) {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let mid = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let hi = mid + half_gap;
    let lo = mid - half_gap;

    // Eigenvector for the larger eigenvalue: pick the better-conditioned of
    // (b, hi - a) and (hi - d, conj(b)).
    let cand1 = [b, c(hi - a, 0.0)];
    let cand2 = [c(hi - d, 0.0), b.conj()];
    let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
    let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
    let v = if n1 >= n2 { cand1 } else { cand2 };
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v_hi = if norm < 1e-300 {
        // matrix is (numerically) a multiple of the identity
        [c(1.0, 0.0), c(0.0, 0.0)]
    } else {
        [v[0] / norm, v[1] / norm]
    };
    let v_lo = [-v_hi[1].conj(), v_hi[0].conj()];
    ([hi, lo], [v_hi, v_lo])
}
