//! Fractional-linear maps on the extended complex plane induced by group
//! elements acting on spinor component ratios.
//!
//! The plane is closed: poles map to the infinity variant and infinity maps
//! to a/c, so no operation ever produces NaN. Coefficients are normalized to
//! ad - bc = 1, matching the determinant of the underlying matrix (the
//! only combination the map's definition leaves invariant).

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qsp::{self, ComplexSignal, PhaseSchedule};
use crate::sl2c::SL2CElement;
use crate::Complex64;

/// Magnitudes below this are treated as exact zero when deciding pole cases.
const POLE_FLOOR: f64 = 1e-300;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

/// Chordal metric on the sphere: bounded by 2, continuous across infinity.
pub fn chordal_distance(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    match (a, b) {
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
        (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
        | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => {
            2.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

/// z -> (a z + b) / (c z + d) with ad - bc = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    /// Accepts coefficients with |ad - bc - 1| up to the group budget and
    /// renormalizes by the principal root of the determinant.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let dist = (det - Complex64::new(1.0, 0.0)).norm();
        if dist > crate::sl2c::DET_BUDGET {
            return Err(Error::NotUnimodular { det_distance: dist });
        }
        let k = Complex64::new(1.0, 0.0) / det.sqrt();
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// z -> e z + f, scaled to unit determinant. Requires e != 0.
    pub fn affine(e: Complex64, f: Complex64) -> Result<Self> {
        if e.norm() < POLE_FLOOR {
            return Err(Error::InvalidArgument(String::from(
                "affine coefficient e must be nonzero",
            )));
        }
        let root = e.sqrt();
        Ok(Self {
            a: root,
            b: f / root,
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0) / root,
        })
    }

    /// z -> 1/z with unit determinant: [[0, -i], [-i, 0]].
    pub fn inversion() -> Self {
        let mi = Complex64::new(0.0, -1.0);
        Self {
            a: Complex64::new(0.0, 0.0),
            b: mi,
            c: mi,
            d: Complex64::new(0.0, 0.0),
        }
    }

    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Matrix inverse; exact for unit determinant.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

/// Coefficients read off a group element; the unit determinant is inherited.
pub fn from_sl2c(v: &SL2CElement) -> MobiusMap {
    MobiusMap {
        a: v.get(0, 0),
        b: v.get(0, 1),
        c: v.get(1, 0),
        d: v.get(1, 1),
    }
}

/// Evaluate the map; poles return the infinity variant.
pub fn apply(m: &MobiusMap, z: ExtendedComplex) -> ExtendedComplex {
    match z {
        ExtendedComplex::Infinity => {
            if m.c.norm() < POLE_FLOOR {
                ExtendedComplex::Infinity
            } else {
                ExtendedComplex::Finite(m.a / m.c)
            }
        }
        ExtendedComplex::Finite(z) => {
            let denom = m.c * z + m.d;
            if denom.norm() < POLE_FLOOR {
                ExtendedComplex::Infinity
            } else {
                ExtendedComplex::Finite((m.a * z + m.b) / denom)
            }
        }
    }
}

/// Composition m1 after m2, realized by the coefficient matrix product.
pub fn compose(m1: &MobiusMap, m2: &MobiusMap) -> MobiusMap {
    MobiusMap {
        a: m1.a * m2.a + m1.b * m2.c,
        b: m1.a * m2.b + m1.b * m2.d,
        c: m1.c * m2.a + m1.d * m2.c,
        d: m1.c * m2.b + m1.d * m2.d,
    }
}

/// One elementary automorphism: an affine map or the inversion 1/z.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MobiusStep {
    Affine { e: Complex64, f: Complex64 },
    Inversion,
}

/// Apply the steps in order (first entry acts first).
pub fn apply_steps(steps: &[MobiusStep], z0: ExtendedComplex) -> ExtendedComplex {
    let mut z = z0;
    for step in steps {
        z = match *step {
            MobiusStep::Affine { e, f } => match z {
                ExtendedComplex::Infinity => ExtendedComplex::Infinity,
                ExtendedComplex::Finite(v) => ExtendedComplex::Finite(e * v + f),
            },
            MobiusStep::Inversion => match z {
                ExtendedComplex::Infinity => ExtendedComplex::Finite(Complex64::new(0.0, 0.0)),
                ExtendedComplex::Finite(v) => {
                    if v.norm() < POLE_FLOOR {
                        ExtendedComplex::Infinity
                    } else {
                        ExtendedComplex::Finite(Complex64::new(1.0, 0.0) / v)
                    }
                }
            },
        };
    }
    z
}

/// Decompose into affine and inversion steps: c = 0 gives one affine step;
/// otherwise (a z + b)/(c z + d) = a/c - 1/(c (c z + d)) gives an
/// affine-inversion-affine chain.
pub fn decompose_elementary(m: &MobiusMap) -> Vec<MobiusStep> {
    let mut steps = Vec::new();
    if m.c.norm() < POLE_FLOOR {
        steps.push(MobiusStep::Affine {
            e: m.a / m.d,
            f: m.b / m.d,
        });
    } else {
        steps.push(MobiusStep::Affine { e: m.c, f: m.d });
        steps.push(MobiusStep::Inversion);
        steps.push(MobiusStep::Affine {
            e: -Complex64::new(1.0, 0.0) / m.c,
            f: m.a / m.c,
        });
    }
    steps
}

/// Track the scale factor z through the sequence one factor at a time,
/// rightmost factor first (the order in which they act on a spinor).
/// Returns z after each factor; the endpoint equals the whole-sequence map
/// applied to z0.
pub fn qsp_scale_flow(
    schedule: &PhaseSchedule,
    signal: &ComplexSignal,
    z0: ExtendedComplex,
) -> Vec<ExtendedComplex> {
    let sig = from_sl2c(&qsp::signal_factor(signal));
    let mut factors = Vec::with_capacity(2 * schedule.len() - 1);
    factors.push(from_sl2c(
        &SL2CElement::new(qsp::phase_factor(schedule.phases()[0])).expect("unit determinant"),
    ));
    for &phi in &schedule.phases()[1..] {
        factors.push(sig);
        factors.push(from_sl2c(
            &SL2CElement::new(qsp::phase_factor(phi)).expect("unit determinant"),
        ));
    }
    let mut z = z0;
    let mut trajectory = Vec::with_capacity(factors.len());
    for factor in factors.iter().rev() {
        z = apply(factor, z);
        trajectory.push(z);
    }
    trajectory
}
