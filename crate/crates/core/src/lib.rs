//! Numerics for complex-signal quantum signal processing over SL(2,C).
//!
//! A sequence of phase rotations interleaved with a fixed complex-angle
//! rotation lands in the group of unit-determinant 2x2 complex matrices.
//! This crate evaluates such sequences and exposes every representation
//! attached to them:
//!
//! - closed-form 2x2 algebra: Pauli basis, traceless exponentials, polar
//!   decomposition, the six rotation/boost generators ([`mat2`], [`sl2c`]);
//! - sequence evaluation, the unitary and SU(1,1) limits, and the entry
//!   polynomials in cos w ([`qsp`], [`entry_poly`]);
//! - the kicked-Ising Floquet operator and its space-time dual signal map
//!   ([`spacetime`]);
//! - the action on four-vectors encoded as Hermitian matrices, the 4x4
//!   Lorentz matrix, and the trace-normalized hybrid channel ([`lorentz`]);
//! - the Heisenberg-picture Bogoliubov matrices on two bosonic modes with a
//!   truncated Fock-space oracle ([`bosonic`], [`fock`]);
//! - the nonlinear Fourier transform of even purely imaginary sequences,
//!   its discretized rotating-frame form, and brute-force calibration of the
//!   correspondence conventions ([`nlft`]);
//! - the continuous side: canonical first-order operator, gauge rotation,
//!   midpoint product integration, and finite-difference residuals for the
//!   focusing NLS zero-curvature condition and the KdV equation ([`lax`]);
//! - fractional-linear maps on the extended complex plane ([`moebius`]).
//!
//! Everything is pure and deterministic; the crate is `no_std`-compatible
//! (with `alloc`) when built without the default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bosonic;
pub mod cmatrix;
pub mod entry_poly;
pub mod error;
pub mod fock;
pub mod lax;
pub mod lorentz;
pub mod mat2;
pub mod moebius;
pub mod nlft;
pub mod qsp;
pub mod sl2c;
pub mod spacetime;
mod util;

pub use error::{Error, Result};
pub use mat2::Mat2C;
pub use num_complex::Complex64;
pub use sl2c::SL2CElement;
