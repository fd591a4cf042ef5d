//! Heisenberg-picture representation on the mode quadruple
//! (a1, a2, a1^dag, a2^dag).
//!
//! Each Lorentz generator G maps to the 4x4 matrix M_G defined by
//! i [G, Psi_k] = sum_l (M_G)_{kl} Psi_l, computed from Dirac's quadratic
//! forms via the canonical commutators. With this convention a factor
//! e^{i theta G} acts on the modes as exp(theta M_G), and the phase-shifter
//! anchor comes out in the standard orientation: conjugating a1 by
//! e^{i phi n1} multiplies it by e^{-i phi}.
//!
//! The M_G close under the commutator as [M_A, M_B] = -i M_{[A, B]};
//! equivalently the matrices i M_G satisfy the Lorentz-algebra table
//! verbatim. Sequences map factor by factor: the 4x4 matrices multiply in
//! the same printed order as the 2x2 factors, which corresponds to
//! conjugation by the reversed operator product (Heisenberg-picture
//! input-output composition).

#[allow(unused_imports)]
use num_traits::Float;

use core::ops::{Add, Mul, Sub};

use crate::qsp::{ComplexSignal, PhaseSchedule};
use crate::sl2c::GeneratorLabel;
use crate::Complex64;

/// A dense 4x4 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4C {
    e: [[Complex64; 4]; 4],
}

#[inline]
fn cz() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl Mat4C {
    pub fn zero() -> Self {
        Self { e: [[cz(); 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.e[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(e: [[Complex64; 4]; 4]) -> Self {
        Self { e }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.e[row][col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.e[row][col] = v;
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= k;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.e[j][i] = self.e[i][j].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for v in row.iter_mut() {
                *v = v.conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1] + self.e[2][2] + self.e[3][3]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// Scaling-and-squaring Taylor exponential; plenty for the factor norms
    /// this crate produces.
    pub fn expm(&self) -> Self {
        let norm = self.frobenius_norm();
        let mut squarings = 0u32;
        while norm / (1u64 << squarings) as f64 > 0.5 {
            squarings += 1;
        }
        let scaled = self.scale(Complex64::new(1.0 / (1u64 << squarings) as f64, 0.0));
        let mut sum = Mat4C::identity();
        let mut term = Mat4C::identity();
        for k in 1..=24 {
            term = (term * scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum + term;
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }
}

impl Add for Mat4C {
    type Output = Mat4C;
    fn add(self, rhs: Mat4C) -> Mat4C {
        let mut out = self;
        for (orow, rrow) in out.e.iter_mut().zip(rhs.e.iter()) {
            for (o, r) in orow.iter_mut().zip(rrow.iter()) {
                *o += *r;
            }
        }
        out
    }
}

impl Sub for Mat4C {
    type Output = Mat4C;
    fn sub(self, rhs: Mat4C) -> Mat4C {
        let mut out = self;
        for (orow, rrow) in out.e.iter_mut().zip(rhs.e.iter()) {
            for (o, r) in orow.iter_mut().zip(rrow.iter()) {
                *o -= *r;
            }
        }
        out
    }
}

impl Mul for Mat4C {
    type Output = Mat4C;
    fn mul(self, rhs: Mat4C) -> Mat4C {
        let mut out = Mat4C::zero();
        for i in 0..4 {
            for k in 0..4 {
                let aik = self.e[i][k];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    out.e[i][j] += aik * rhs.e[k][j];
                }
            }
        }
        out
    }
}

/// The mode-basis matrix M_G of a generator, from i [G, Psi_k] = (M_G Psi)_k.
pub fn heisenberg_generator(label: GeneratorLabel) -> Mat4C {
    let i2 = Complex64::new(0.0, 0.5);
    let h = Complex64::new(0.5, 0.0);
    let z = cz();
    match label {
        // J1 = (a1^dag a2 + a2^dag a1)/2
        GeneratorLabel::J1 => {
            Mat4C::from_rows([[z, -i2, z, z], [-i2, z, z, z], [z, z, z, i2], [z, z, i2, z]])
        }
        // J2 = (a1^dag a2 - a2^dag a1)/(2i)
        GeneratorLabel::J2 => {
            Mat4C::from_rows([[z, -h, z, z], [h, z, z, z], [z, z, z, -h], [z, z, h, z]])
        }
        // J3 = (a1^dag a1 - a2^dag a2)/2
        GeneratorLabel::J3 => {
            Mat4C::from_rows([[-i2, z, z, z], [z, i2, z, z], [z, z, i2, z], [z, z, z, -i2]])
        }
        // K1 = -[(a1^dag)^2 + a1^2 - (a2^dag)^2 - a2^2]/4
        GeneratorLabel::K1 => {
            Mat4C::from_rows([[z, z, i2, z], [z, z, z, -i2], [-i2, z, z, z], [z, i2, z, z]])
        }
        // K2 = i [(a1^dag)^2 - a1^2 + (a2^dag)^2 - a2^2]/4
        GeneratorLabel::K2 => {
            Mat4C::from_rows([[z, z, h, z], [z, z, z, h], [h, z, z, z], [z, h, z, z]])
        }
        // K3 = (a1^dag a2^dag + a1 a2)/2
        GeneratorLabel::K3 => {
            Mat4C::from_rows([[z, z, z, -i2], [z, z, -i2, z], [z, i2, z, z], [i2, z, z, z]])
        }
    }
}

/// Heisenberg-picture matrix of one sequence, with the invariant checks that
/// make it a Bogoliubov transformation.
#[derive(Clone, Copy, Debug)]
pub struct SymplecticRep {
    m: Mat4C,
}

impl SymplecticRep {
    pub fn matrix(&self) -> &Mat4C {
        &self.m
    }

    /// ||V K V^dagger - K|| with K = diag(1, 1, -1, -1): preservation of the
    /// canonical commutators.
    pub fn bogoliubov_residual(&self) -> f64 {
        let mut k = Mat4C::identity();
        k.set(2, 2, Complex64::new(-1.0, 0.0));
        k.set(3, 3, Complex64::new(-1.0, 0.0));
        (self.m * k * self.m.adjoint() - k).frobenius_norm()
    }

    /// ||V - S V* S|| with S the block swap of (a1, a2) and (a1^dag,
    /// a2^dag): the conjugate rows must mirror the plain ones.
    pub fn particle_hole_residual(&self) -> f64 {
        let mut swapped = Mat4C::zero();
        for i in 0..4 {
            for j in 0..4 {
                swapped.set(i, j, self.m.get((i + 2) % 4, (j + 2) % 4).conj());
            }
        }
        (self.m - swapped).frobenius_norm()
    }

    /// Frobenius norm of the two off-diagonal 2x2 blocks that mix modes with
    /// conjugate modes; zero for number-conserving sequences.
    pub fn mode_mixing_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 2..4 {
                acc += self.m.get(i, j).norm_sqr();
                acc += self.m.get(j, i).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// 4x4 matrix of one phase factor e^{2 i phi J3}.
pub fn phase_symplectic(phi: f64) -> Mat4C {
    heisenberg_generator(GeneratorLabel::J3)
        .scale(Complex64::new(2.0 * phi, 0.0))
        .expm()
}

/// 4x4 matrix of one signal factor e^{i delta J1 + i eta K1}.
pub fn signal_symplectic(signal: &ComplexSignal) -> Mat4C {
    let gen = heisenberg_generator(GeneratorLabel::J1).scale(Complex64::new(signal.delta(), 0.0))
        + heisenberg_generator(GeneratorLabel::K1).scale(Complex64::new(signal.eta(), 0.0));
    gen.expm()
}

/// Mode-basis matrix of the whole sequence: per-factor exponentials
/// multiplied in the same printed order as the 2x2 product.
pub fn sequence_symplectic(schedule: &PhaseSchedule, signal: &ComplexSignal) -> SymplecticRep {
    let sig = signal_symplectic(signal);
    let mut acc = phase_symplectic(schedule.phases()[0]);
    for &phi in &schedule.phases()[1..] {
        acc = acc * sig * phase_symplectic(phi);
    }
    SymplecticRep { m: acc }
}

/// Exposes the generator combination of each printed factor (coefficients of
/// J1..K3) so the Fock oracle can exponentiate the same quadratic forms.
pub(crate) fn factor_generators(
    schedule: &PhaseSchedule,
    signal: &ComplexSignal,
) -> alloc::vec::Vec<[f64; 6]> {
    let mut gens = alloc::vec::Vec::with_capacity(2 * schedule.len() - 1);
    let phase = |phi: f64| [0.0, 0.0, 2.0 * phi, 0.0, 0.0, 0.0];
    gens.push(phase(schedule.phases()[0]));
    for &phi in &schedule.phases()[1..] {
        gens.push([signal.delta(), 0.0, 0.0, signal.eta(), 0.0, 0.0]);
        gens.push(phase(phi));
    }
    gens
}
