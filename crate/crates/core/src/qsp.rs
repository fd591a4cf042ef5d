//! Sequence evaluation for complex-signal QSP.
//!
//! A sequence is an alternating product of tunable phase rotations
//! e^{i phi Z} and fixed signal factors e^{i w X}, where the signal
//! w = (delta + i eta)/2 is complex: delta drives an ordinary rotation, eta a
//! boost. The product lives in SL(2,C); it is unitary exactly when eta = 0
//! and falls into the SU(1,1) form when delta = 0.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat2::Mat2C;
use crate::sl2c::SL2CElement;
use crate::Complex64;

/// The complex signal w = (delta + i eta)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSignal {
    delta: f64,
    eta: f64,
}

impl ComplexSignal {
    pub fn new(delta: f64, eta: f64) -> Result<Self> {
        if !delta.is_finite() || !eta.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!(
                "signal parameters must be finite, got delta={delta}, eta={eta}"
            )));
        }
        Ok(Self { delta, eta })
    }

    /// Signal with a prescribed w; delta = 2 Re w, eta = 2 Im w.
    pub fn from_w(w: Complex64) -> Result<Self> {
        Self::new(2.0 * w.re, 2.0 * w.im)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn w(&self) -> Complex64 {
        Complex64::new(self.delta / 2.0, self.eta / 2.0)
    }
}

/// An ordered list of phase angles phi_0 .. phi_m (radians), length >= 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSchedule {
    phases: Vec<f64>,
}

impl PhaseSchedule {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidArgument(String::from(
                "phase schedule must contain at least one angle",
            )));
        }
        if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "phase angles must be finite, got {bad}"
            )));
        }
        Ok(Self { phases })
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of signal factors in the leading-phase product: one fewer than
    /// the number of phases.
    pub fn signal_factor_count(&self) -> usize {
        self.phases.len() - 1
    }
}

/// Factor ordering of the evaluated product.
///
/// Both orderings appear in the literature; they differ in whether the
/// sequence opens with a bare phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// e^{i phi_0 Z} prod_r e^{i w X} e^{i phi_r Z}: a schedule of length
    /// m + 1 contributes m signal factors. The default.
    LeadingPhase,
    /// prod_r e^{i phi_r Z} e^{i w X}: every phase is paired with a signal
    /// factor, so a schedule of length m + 1 contributes m + 1 of them.
    PhaseSignalPairs,
}

/// diag(e^{i phi}, e^{-i phi}) = e^{i phi Z}. Unit determinant exactly.
pub fn phase_factor(phi: f64) -> Mat2C {
    Mat2C::diag(Complex64::cis(phi), Complex64::cis(-phi))
}

/// e^{i w X} = cos(w) I + i sin(w) X in closed form.
pub fn signal_factor_mat(signal: &ComplexSignal) -> Mat2C {
    let w = signal.w();
    let cw = w.cos();
    let isw = Complex64::new(0.0, 1.0) * w.sin();
    Mat2C::new(cw, isw, isw, cw)
}

/// exp(i delta J_1 + i eta K_1) as a group element. Since
/// i delta J_1 + i eta K_1 = i w X, this is identical to the signal factor of
/// the canonical product.
pub fn signal_factor(signal: &ComplexSignal) -> SL2CElement {
    SL2CElement::renormalized(signal_factor_mat(signal))
}

/// Raw factor product without the final renormalization; exposed so that
/// determinant drift of long chains can be measured directly.
pub fn evaluate_mat(schedule: &PhaseSchedule, signal: &ComplexSignal) -> Mat2C {
    evaluate_mat_with_order(schedule, signal, ProductOrder::LeadingPhase)
}

pub fn evaluate_mat_with_order(
    schedule: &PhaseSchedule,
    signal: &ComplexSignal,
    order: ProductOrder,
) -> Mat2C {
    let sig = signal_factor_mat(signal);
    match order {
        ProductOrder::LeadingPhase => {
            let mut acc = phase_factor(schedule.phases()[0]);
            for &phi in &schedule.phases()[1..] {
                acc = acc * sig * phase_factor(phi);
            }
            acc
        }
        ProductOrder::PhaseSignalPairs => {
            let mut acc = Mat2C::identity();
            for &phi in schedule.phases() {
                acc = acc * phase_factor(phi) * sig;
            }
            acc
        }
    }
}

/// Evaluate the sequence in the default leading-phase ordering.
pub fn evaluate(schedule: &PhaseSchedule, signal: &ComplexSignal) -> SL2CElement {
    SL2CElement::renormalized(evaluate_mat(schedule, signal))
}

pub fn evaluate_with_order(
    schedule: &PhaseSchedule,
    signal: &ComplexSignal,
    order: ProductOrder,
) -> SL2CElement {
    SL2CElement::renormalized(evaluate_mat_with_order(schedule, signal, order))
}

/// How far V is from the SU(1,1) form [[alpha, beta], [conj(beta),
/// conj(alpha)]] with |alpha|^2 - |beta|^2 = 1. Sequences built with
/// delta = 0 satisfy this to rounding; generic complex signals do not.
pub fn su11_structure_check(v: &SL2CElement) -> f64 {
    let m = v.matrix();
    let r1 = (m.get(1, 1) - m.get(0, 0).conj()).norm();
    let r2 = (m.get(1, 0) - m.get(0, 1).conj()).norm();
    let r3 = (m.get(0, 0).norm_sqr() - m.get(0, 1).norm_sqr() - 1.0).abs();
    r1.max(r2).max(r3)
}
