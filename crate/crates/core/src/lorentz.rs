//! Sequences as Lorentz transformations on four-vectors encoded in 2x2
//! Hermitian matrices.
//!
//! A four-vector x maps to Omega = (1/2) sum_nu x_nu sigma_nu, whose
//! determinant is a quarter of the Minkowski norm. Conjugation by a group
//! element preserves that determinant but not the trace; dividing by the
//! trace afterwards gives a physical (trace-one, PSD) density matrix, the
//! hybrid unitary-plus-postselection channel.
//!
//! All orientation signs are inherited from the trace formula
//! 2 Lambda_{mu nu} = Tr(sigma_mu V sigma_nu V^dagger); none are assumed.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat2::{hermitian_eig2, pauli, Mat2C};
use crate::sl2c::SL2CElement;
use crate::Complex64;

/// A real four-vector (x0; x1, x2, x3) with x0 the time-like component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinkowskiFourVector {
    components: [f64; 4],
}

impl MinkowskiFourVector {
    pub fn new(components: [f64; 4]) -> Result<Self> {
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(String::from(
                "four-vector components must be finite",
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> [f64; 4] {
        self.components
    }

    /// x0^2 - x1^2 - x2^2 - x3^2.
    pub fn minkowski_norm(&self) -> f64 {
        let [t, x, y, z] = self.components;
        t * t - x * x - y * y - z * z
    }
}

/// The Hermitian encoding Omega of a four-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianSheet {
    omega: Mat2C,
}

impl HermitianSheet {
    /// Accepts matrices Hermitian to within 1e-8 and stores the exactly
    /// symmetrized part.
    pub fn new(m: Mat2C) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidArgument(String::from(
                "matrix entries must be finite",
            )));
        }
        let residual = m.hermiticity_residual();
        if residual > 1e-8 {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self {
            omega: m.hermitian_part(),
        })
    }

    pub fn matrix(&self) -> &Mat2C {
        &self.omega
    }

    pub fn trace(&self) -> f64 {
        self.omega.trace().re
    }

    pub fn det(&self) -> f64 {
        self.omega.det().re
    }
}

/// Omega = (1/2) sum_nu x_nu sigma_nu.
pub fn omega_from_fourvector(x: &MinkowskiFourVector) -> HermitianSheet {
    let [t, x1, x2, x3] = x.components();
    let half = |v: f64| Complex64::new(v / 2.0, 0.0);
    HermitianSheet {
        omega: Mat2C::new(
            half(t + x3),
            Complex64::new(x1 / 2.0, -x2 / 2.0),
            Complex64::new(x1 / 2.0, x2 / 2.0),
            half(t - x3),
        ),
    }
}

/// x_nu = Tr(sigma_nu Omega); inverse of [`omega_from_fourvector`].
pub fn fourvector_from_omega(omega: &HermitianSheet) -> MinkowskiFourVector {
    let mut components = [0.0; 4];
    for (nu, slot) in components.iter_mut().enumerate() {
        let s = pauli(nu).expect("index in range");
        *slot = (s * *omega.matrix()).trace().re;
    }
    MinkowskiFourVector { components }
}

/// Spinor action V Omega V^dagger. Preserves the determinant (the Minkowski
/// norm), generally not the trace.
pub fn conjugate_action(v: &SL2CElement, omega: &HermitianSheet) -> HermitianSheet {
    let m = *v.matrix() * *omega.matrix() * v.matrix().adjoint();
    HermitianSheet {
        omega: m.hermitian_part(),
    }
}

/// The 4x4 real Lorentz matrix of a group element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix {
    entries: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// ||Lambda^T g Lambda - g||_F with g = diag(1, -1, -1, -1).
    pub fn metric_residual(&self) -> f64 {
        let g = [1.0, -1.0, -1.0, -1.0];
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let mut sum = 0.0;
                for m in 0..4 {
                    sum += self.entries[m][a] * g[m] * self.entries[m][b];
                }
                let expected = if a == b { g[a] } else { 0.0 };
                acc += (sum - expected) * (sum - expected);
            }
        }
        acc.sqrt()
    }

    pub fn det(&self) -> f64 {
        det4(&self.entries)
    }

    pub fn apply(&self, x: &MinkowskiFourVector) -> MinkowskiFourVector {
        let xin = x.components();
        let mut out = [0.0; 4];
        for (mu, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|nu| self.entries[mu][nu] * xin[nu]).sum();
        }
        MinkowskiFourVector { components: out }
    }

    /// Matrix product, for the homomorphism checks.
    pub fn compose(&self, rhs: &LorentzMatrix) -> LorentzMatrix {
        let mut entries = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        LorentzMatrix { entries }
    }

    pub fn distance(&self, rhs: &LorentzMatrix) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let d = self.entries[i][j] - rhs.entries[i][j];
                acc += d * d;
            }
        }
        acc.sqrt()
    }
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let det3 = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    m[0][0] * det3([1, 2, 3], [1, 2, 3]) - m[0][1] * det3([1, 2, 3], [0, 2, 3])
        + m[0][2] * det3([1, 2, 3], [0, 1, 3])
        - m[0][3] * det3([1, 2, 3], [0, 1, 2])
}

/// 2 Lambda_{mu nu} = Tr(sigma_mu V sigma_nu V^dagger).
///
/// The trace is real for group elements; a complex residue above 1e-8 means
/// the input was corrupted and is reported as an internal-consistency error.
pub fn lorentz_matrix(v: &SL2CElement) -> Result<LorentzMatrix> {
    let vm = v.matrix();
    let vd = vm.adjoint();
    let mut entries = [[0.0; 4]; 4];
    let sigmas: Vec<Mat2C> = (0..4).map(|k| pauli(k).expect("index in range")).collect();
    for (mu, row) in entries.iter_mut().enumerate() {
        for (nu, slot) in row.iter_mut().enumerate() {
            let val = (sigmas[mu] * *vm * sigmas[nu] * vd).trace() / 2.0;
            if val.im.abs() > 1e-8 {
                return Err(Error::InternalConsistency(alloc::format!(
                    "Lorentz entry ({mu},{nu}) has imaginary residue {:.3e}",
                    val.im
                )));
            }
            *slot = val.re;
        }
    }
    Ok(LorentzMatrix { entries })
}

/// Trace-normalized channel rho = V Omega V^dagger / Tr(V Omega V^dagger).
///
/// Omega must be a density matrix (unit trace, PSD). A vanishing
/// normalization trace means the post-selected outcome has probability
/// compatible with zero and is reported as a degenerate channel.
pub fn physical_channel(v: &SL2CElement, omega0: &HermitianSheet) -> Result<Mat2C> {
    let trace = omega0.trace();
    if (trace - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(alloc::format!(
            "input must have unit trace, got {trace}"
        )));
    }
    let (vals, _) = hermitian_eig2(omega0.matrix());
    if vals[1] < -1e-10 {
        return Err(Error::NotPositive {
            min_eigenvalue: vals[1],
        });
    }
    let conjugated = conjugate_action(v, omega0);
    let norm = conjugated.trace();
    if norm <= 1e-12 {
        return Err(Error::DegenerateChannel { trace: norm });
    }
    Ok(conjugated.matrix().scale(Complex64::new(1.0 / norm, 0.0)))
}

/// One sampled point of the Bloch-sphere image of a channel.
#[derive(Clone, Copy, Debug)]
pub struct BlochSample {
    pub input: [f64; 3],
    pub output: [f64; 3],
    /// Unnormalized trace Tr(V Omega V^dagger): the post-selection weight.
    pub weight: f64,
}

/// Push `n` Fibonacci-lattice points of the Bloch sphere through the
/// physical channel. Pure states stay pure, so outputs remain on the unit
/// sphere; the weights record how the boost redistributes them.
///
/// The lattice is deterministic, so figures built from it reproduce exactly.
pub fn bloch_image(v: &SL2CElement, samples: usize) -> Result<Vec<BlochSample>> {
    if samples == 0 {
        return Err(Error::InvalidArgument(String::from(
            "sample count must be at least 1",
        )));
    }
    let golden_angle = core::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / samples as f64;
        let radius = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden_angle * k as f64;
        let input = [radius * phi.cos(), radius * phi.sin(), z];
        let omega = omega_from_fourvector(
            &MinkowskiFourVector::new([1.0, input[0], input[1], input[2]]).expect("finite"),
        );
        let weight = conjugate_action(v, &omega).trace();
        let rho = physical_channel(v, &omega)?;
        let sheet = HermitianSheet { omega: rho };
        let x = fourvector_from_omega(&sheet).components();
        out.push(BlochSample {
            input,
            output: [x[1], x[2], x[3]],
            weight,
        });
    }
    Ok(out)
}
