//! Unit-determinant 2x2 complex matrices and the six Lie generators.
//!
//! `SL2CElement` renormalizes at construction: inputs with |det - 1| up to
//! [`DET_BUDGET`] are accepted and divided by the principal square root of
//! their determinant, so long factor chains stay on the group manifold.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use core::ops::Mul;

use crate::error::{Error, Result};
use crate::mat2::{det_accurate, hermitian_eig2, Mat2C};
use crate::Complex64;

/// Largest accepted |det - 1| before construction fails.
pub const DET_BUDGET: f64 = 1e-8;

/// An element of SL(2,C): a 2x2 complex matrix with unit determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2CElement {
    m: Mat2C,
}

impl SL2CElement {
    /// Validates |det - 1| <= [`DET_BUDGET`], then renormalizes by the
    /// principal square root of the determinant.
    pub fn new(m: Mat2C) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidArgument(String::from(
                "matrix entries must be finite",
            )));
        }
        let det = det_accurate(&m);
        let dist = (det - Complex64::new(1.0, 0.0)).norm();
        if dist > DET_BUDGET {
            return Err(Error::NotUnimodular { det_distance: dist });
        }
        Ok(Self::renormalized(m))
    }

    /// Renormalization without the budget gate, for internal factor chains.
    /// Long boosted products can drift measurably in the last bits; dividing
    /// by the accurately evaluated root restores det = 1 at any norm.
    pub(crate) fn renormalized(m: Mat2C) -> Self {
        let det = det_accurate(&m);
        debug_assert!((det - Complex64::new(1.0, 0.0)).norm() < 0.5);
        Self {
            m: m.scale(Complex64::new(1.0, 0.0) / det.sqrt()),
        }
    }

    pub fn identity() -> Self {
        Self {
            m: Mat2C::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat2C {
        &self.m
    }

    pub fn into_matrix(self) -> Mat2C {
        self.m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m.get(row, col)
    }

    /// Group inverse, exact for det = 1: [[d, -b], [-c, a]].
    pub fn inverse(&self) -> Self {
        Self {
            m: Mat2C::new(
                self.m.get(1, 1),
                -self.m.get(0, 1),
                -self.m.get(1, 0),
                self.m.get(0, 0),
            ),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    /// |det - 1| of the stored matrix, evaluated in doubled precision.
    pub fn det_residual(&self) -> f64 {
        (det_accurate(&self.m) - Complex64::new(1.0, 0.0)).norm()
    }

    /// ||V V^dagger - I||_F, zero iff unitary.
    pub fn unitarity_residual(&self) -> f64 {
        (self.m * self.m.adjoint() - Mat2C::identity()).frobenius_norm()
    }
}

impl Mul for SL2CElement {
    type Output = SL2CElement;
    fn mul(self, rhs: SL2CElement) -> SL2CElement {
        SL2CElement::renormalized(self.m * rhs.m)
    }
}

impl AsRef<Mat2C> for SL2CElement {
    fn as_ref(&self) -> &Mat2C {
        &self.m
    }
}

/// Polar decomposition V = P U with P Hermitian positive-definite and U
/// unitary, both of unit determinant.
///
/// P is the square root of V V^dagger obtained from the closed-form 2x2
/// eigendecomposition; eigenvalues are floored at 1e-300 before the root, and
/// anything at the floor reports the input as singular.
pub fn polar_decompose(v: &SL2CElement) -> Result<(Mat2C, Mat2C)> {
    let h = *v.matrix() * v.matrix().adjoint();
    let (vals, vecs) = hermitian_eig2(&h);
    let floored = [vals[0].max(1e-300), vals[1].max(1e-300)];
    if floored[1] <= 1e-300 {
        return Err(Error::SingularMatrix {
            det_abs: vals[1].abs(),
        });
    }
    let mut p = Mat2C::zero();
    for (val, vec) in floored.iter().zip(vecs.iter()) {
        let outer = Mat2C::new(
            vec[0] * vec[0].conj(),
            vec[0] * vec[1].conj(),
            vec[1] * vec[0].conj(),
            vec[1] * vec[1].conj(),
        );
        p = p + outer.scale(Complex64::new(val.sqrt(), 0.0));
    }
    // det P = sqrt(det H) = 1 up to rounding; pin it exactly. The scalar is
    // real positive, so Hermiticity and positivity survive.
    let det_p = p.det().re;
    if det_p <= 0.0 {
        return Err(Error::SingularMatrix {
            det_abs: det_p.abs(),
        });
    }
    p = p.scale(Complex64::new(1.0 / det_p.sqrt(), 0.0));
    let p_inv = Mat2C::new(p.get(1, 1), -p.get(0, 1), -p.get(1, 0), p.get(0, 0));
    let u = p_inv * *v.matrix();
    Ok((p, u))
}

/// Labels for the six generators: J's are Hermitian (rotations), K's are
/// anti-Hermitian in the 2x2 representation (boosts).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
}

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 6] = [
        GeneratorLabel::J1,
        GeneratorLabel::J2,
        GeneratorLabel::J3,
        GeneratorLabel::K1,
        GeneratorLabel::K2,
        GeneratorLabel::K3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorLabel::J1 => "J1",
            GeneratorLabel::J2 => "J2",
            GeneratorLabel::J3 => "J3",
            GeneratorLabel::K1 => "K1",
            GeneratorLabel::K2 => "K2",
            GeneratorLabel::K3 => "K3",
        }
    }
}

/// A labelled Lie-algebra generator.
#[derive(Clone, Copy, Debug)]
pub struct LieGenerator {
    pub label: GeneratorLabel,
    pub matrix: Mat2C,
}

/// The 2x2 generator matrix: J_k = sigma_k / 2, K_k = i sigma_k / 2.
pub fn generator(label: GeneratorLabel) -> Mat2C {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    match label {
        GeneratorLabel::J1 => Mat2C::pauli_x().scale(half),
        GeneratorLabel::J2 => Mat2C::pauli_y().scale(half),
        GeneratorLabel::J3 => Mat2C::pauli_z().scale(half),
        GeneratorLabel::K1 => Mat2C::pauli_x().scale(ihalf),
        GeneratorLabel::K2 => Mat2C::pauli_y().scale(ihalf),
        GeneratorLabel::K3 => Mat2C::pauli_z().scale(ihalf),
    }
}

/// All six generators: three rotations J_k followed by three boosts K_k.
pub fn generators() -> [LieGenerator; 6] {
    GeneratorLabel::ALL.map(|label| LieGenerator {
        label,
        matrix: generator(label),
    })
}
