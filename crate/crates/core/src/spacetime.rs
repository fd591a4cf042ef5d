//! Kicked-Ising Floquet operator and its space-time dual single-qubit
//! sequence.
//!
//! The dense operator propagates N sites over one period; the dual picture
//! propagates a single site over N steps with a complex signal angle fixed by
//! tan(theta~) = -i e^{-2 i theta}. The map has poles at theta = k pi / 2,
//! where the dual angle runs off to infinity.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec::Vec;

use crate::cmatrix::CMatrixD;
use crate::error::{Error, Result};
use crate::mat2::Mat2C;
use crate::qsp::{self, ComplexSignal, PhaseSchedule};
use crate::sl2c::SL2CElement;
use crate::Complex64;

/// Dense construction refuses more sites than this.
pub const MAX_DENSE_SITES: usize = 12;

/// Whether the Ising coupling wraps around the chain. The sum over Z_j Z_{j+1}
/// does not say; both readings appear in the literature, so both are
/// supported and the wrap-around form is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Periodic,
    Open,
}

/// Parameters of one Floquet period: transverse kicks alpha_j, longitudinal
/// fields phi_j, uniform Ising angle theta.
#[derive(Clone, Debug)]
pub struct FloquetParams {
    n_sites: usize,
    theta: f64,
    alphas: Vec<f64>,
    phis: Vec<f64>,
    boundary: Boundary,
}

impl FloquetParams {
    pub fn new(
        n_sites: usize,
        theta: f64,
        alphas: Vec<f64>,
        phis: Vec<f64>,
        boundary: Boundary,
    ) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidArgument(String::from(
                "site count must be at least 1",
            )));
        }
        if alphas.len() != n_sites || phis.len() != n_sites {
            return Err(Error::InvalidArgument(alloc::format!(
                "angle lists must have length {n_sites}, got {} and {}",
                alphas.len(),
                phis.len()
            )));
        }
        if !theta.is_finite()
            || alphas.iter().any(|a| !a.is_finite())
            || phis.iter().any(|p| !p.is_finite())
        {
            return Err(Error::InvalidArgument(String::from(
                "all angles must be finite",
            )));
        }
        Ok(Self {
            n_sites,
            theta,
            alphas,
            phis,
            boundary,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }
}

/// Spin value of site `site` (1-based, site 1 = most significant bit) in
/// basis state `index`: +1 for bit 0, -1 for bit 1.
#[inline]
fn z_value(index: usize, site: usize, n: usize) -> f64 {
    let bit = (index >> (n - site)) & 1;
    1.0 - 2.0 * bit as f64
}

/// Dense 2^N x 2^N Floquet operator
/// e^{i sum_j alpha_j X_j} e^{i sum_j (theta Z_j Z_{j+1} + phi_j Z_j)}.
///
/// The second factor is diagonal in the computational basis; the first is a
/// Kronecker product of single-site X rotations. Site 1 is the most
/// significant bit.
pub fn floquet_operator(params: &FloquetParams) -> Result<CMatrixD> {
    let n = params.n_sites;
    if n > MAX_DENSE_SITES {
        return Err(Error::ResourceLimit(alloc::format!(
            "dense construction supports at most {MAX_DENSE_SITES} sites, got {n}"
        )));
    }
    let dim = 1usize << n;

    // Kick factor: kron of 2x2 X rotations.
    let mut kick = CMatrixD::identity(1);
    for &alpha in &params.alphas {
        let (c, s) = (alpha.cos(), alpha.sin());
        let mut rot = CMatrixD::zeros(2);
        rot.set(0, 0, Complex64::new(c, 0.0));
        rot.set(0, 1, Complex64::new(0.0, s));
        rot.set(1, 0, Complex64::new(0.0, s));
        rot.set(1, 1, Complex64::new(c, 0.0));
        kick = kick.kron(&rot);
    }

    // Diagonal Ising + longitudinal factor.
    let mut diag = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut angle = 0.0;
        for site in 1..=n {
            let zj = z_value(b, site, n);
            angle += params.phis[site - 1] * zj;
            let neighbor = if site < n {
                Some(site + 1)
            } else {
                match params.boundary {
                    Boundary::Periodic => Some(1),
                    Boundary::Open => None,
                }
            };
            if let Some(nb) = neighbor {
                if n == 1 {
                    // Z_1 Z_1 = identity: the wrap term is a global phase.
                    angle += params.theta;
                } else {
                    angle += params.theta * zj * z_value(b, nb, n);
                }
            }
        }
        diag.push(Complex64::cis(angle));
    }

    let mut op = kick;
    op.scale_columns(&diag);
    Ok(op)
}

/// Residual of the defining relation: |tan(theta~) + i e^{-2 i theta}|.
pub fn dual_map_residual(theta: f64, theta_tilde: Complex64) -> f64 {
    (theta_tilde.tan() + Complex64::new(0.0, 1.0) * Complex64::cis(-2.0 * theta)).norm()
}

/// The dual signal angle theta~ = arctan(-i e^{-2 i theta}), evaluated with
/// the principal complex logarithm.
///
/// theta within 1e-6 of a multiple of pi/2 puts the arctan argument on a
/// logarithm pole and is rejected.
pub fn dual_signal(theta: f64) -> Result<Complex64> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(String::from("theta must be finite")));
    }
    let quarter = core::f64::consts::FRAC_PI_2;
    let nearest = (theta / quarter).round() * quarter;
    if (theta - nearest).abs() < 1e-6 {
        return Err(Error::DegenerateParameter(alloc::format!(
            "theta = {theta} is within 1e-6 of a multiple of pi/2; \
             the dual angle diverges there"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let z = -i * Complex64::cis(-2.0 * theta);
    // arctan(z) = (1/2i) log((1 + i z)/(1 - i z))
    let ratio = (Complex64::new(1.0, 0.0) + i * z) / (Complex64::new(1.0, 0.0) - i * z);
    Ok(ratio.ln() / (2.0 * i))
}

/// The dual sequence prod_{r=1}^{N} e^{i theta~ X} e^{i phi_r Z}, built as a
/// direct factor product.
pub fn dual_sequence(theta: f64, phis: &[f64]) -> Result<SL2CElement> {
    let theta_tilde = dual_signal(theta)?;
    if phis.is_empty() {
        return Err(Error::InvalidArgument(String::from(
            "dual sequence needs at least one step",
        )));
    }
    let sig = qsp::signal_factor_mat(&ComplexSignal::from_w(theta_tilde)?);
    let mut acc = Mat2C::identity();
    for &phi in phis {
        acc = acc * sig * qsp::phase_factor(phi);
    }
    Ok(SL2CElement::renormalized(acc))
}

/// Schedule embedding of the dual sequence: a leading zero phase followed by
/// the longitudinal angles, evaluated at w = theta~.
pub fn dual_sequence_as_qsp(theta: f64, phis: &[f64]) -> Result<SL2CElement> {
    let theta_tilde = dual_signal(theta)?;
    let mut phases = Vec::with_capacity(phis.len() + 1);
    phases.push(0.0);
    phases.extend_from_slice(phis);
    let schedule = PhaseSchedule::new(phases)?;
    Ok(qsp::evaluate(
        &schedule,
        &ComplexSignal::from_w(theta_tilde)?,
    ))
}
