//! Truncated two-mode Fock-space oracle for the Heisenberg-picture matrices.
//!
//! The oracle builds the quadratic generators on a Fock space truncated at
//! occupation `n_max` per mode, applies the factor unitaries to basis-state
//! blocks by scaled Taylor series (the generators are sparse, so
//! exponential-times-vector is cheap), and compares V a_j V^dagger matrix
//! elements against the 4x4 prediction on a low-occupation window. The
//! window keeps squeezing-induced truncation leakage out of the comparison;
//! the deviation shrinks as `n_max` grows.
//!
//! Composition caveat: the 4x4 sequence matrix multiplies factors in printed
//! order, which equals conjugation by the *reversed* operator product. The
//! oracle builds its Fock unitary accordingly.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec;
use alloc::vec::Vec;

use crate::bosonic::{factor_generators, heisenberg_generator, sequence_symplectic, Mat4C};
use crate::error::{Error, Result};
use crate::qsp::{ComplexSignal, PhaseSchedule};
use crate::sl2c::GeneratorLabel;
use crate::Complex64;

/// Truncation and comparison-window sizes.
#[derive(Clone, Copy, Debug)]
pub struct FockOracleConfig {
    n_max: usize,
    compare_occupation: usize,
}

impl FockOracleConfig {
    /// `n_max` must lie in 4..=60; the comparison window defaults to
    /// `n_max / 2` total occupation.
    pub fn new(n_max: usize) -> Result<Self> {
        if !(4..=60).contains(&n_max) {
            return Err(Error::InvalidArgument(alloc::format!(
                "n_max must be between 4 and 60, got {n_max}"
            )));
        }
        Ok(Self {
            n_max,
            compare_occupation: n_max / 2,
        })
    }

    pub fn with_compare_occupation(mut self, occupation: usize) -> Result<Self> {
        if occupation + 2 > self.n_max {
            return Err(Error::InvalidArgument(alloc::format!(
                "comparison occupation {occupation} leaves no truncation margin below n_max = {}",
                self.n_max
            )));
        }
        self.compare_occupation = occupation;
        Ok(self)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn compare_occupation(&self) -> usize {
        self.compare_occupation
    }
}

/// Index layout of the truncated |n1, n2> basis.
#[derive(Clone, Copy)]
struct FockSpace {
    side: usize,
}

impl FockSpace {
    fn new(n_max: usize) -> Self {
        Self { side: n_max + 1 }
    }

    fn dim(&self) -> usize {
        self.side * self.side
    }

    #[inline]
    fn idx(&self, n1: usize, n2: usize) -> usize {
        n1 * self.side + n2
    }

    #[inline]
    fn occupation(&self, idx: usize) -> usize {
        idx / self.side + idx % self.side
    }
}

/// Column block of state vectors, column-major.
#[derive(Clone)]
struct Block {
    dim: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Block {
    fn zeros(dim: usize, cols: usize) -> Self {
        Self {
            dim,
            cols,
            data: vec![Complex64::new(0.0, 0.0); dim * cols],
        }
    }

    #[inline]
    fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim + row]
    }

    #[inline]
    fn add(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[col * self.dim + row] += v;
    }

    fn axpy(&mut self, a: Complex64, x: &Block) {
        for (dst, src) in self.data.iter_mut().zip(x.data.iter()) {
            *dst += a * *src;
        }
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy)]
enum ModeOp {
    A1,
    A2,
    A1Dag,
    A2Dag,
}

/// Apply a single mode operator to every column; amplitudes pushed past the
/// truncation boundary are dropped.
fn apply_mode(space: FockSpace, op: ModeOp, block: &Block) -> Block {
    let side = space.side;
    let mut out = Block::zeros(block.dim, block.cols);
    for col in 0..block.cols {
        for n1 in 0..side {
            for n2 in 0..side {
                let v = block.at(space.idx(n1, n2), col);
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                match op {
                    ModeOp::A1 => {
                        if n1 >= 1 {
                            out.add(space.idx(n1 - 1, n2), col, v * (n1 as f64).sqrt());
                        }
                    }
                    ModeOp::A2 => {
                        if n2 >= 1 {
                            out.add(space.idx(n1, n2 - 1), col, v * (n2 as f64).sqrt());
                        }
                    }
                    ModeOp::A1Dag => {
                        if n1 + 1 < side {
                            out.add(space.idx(n1 + 1, n2), col, v * ((n1 + 1) as f64).sqrt());
                        }
                    }
                    ModeOp::A2Dag => {
                        if n2 + 1 < side {
                            out.add(space.idx(n1, n2 + 1), col, v * ((n2 + 1) as f64).sqrt());
                        }
                    }
                }
            }
        }
    }
    out
}

/// w = G v for the quadratic generator G = sum_i c_i G_i with the Dirac
/// forms: beam splitter (J1, J2), relative phase (J3), single-mode squeezing
/// (K1, K2), two-mode squeezing (K3).
fn apply_quadratic(space: FockSpace, c: &[f64; 6], block: &Block) -> Block {
    let side = space.side;
    let mut out = Block::zeros(block.dim, block.cols);
    let i = Complex64::new(0.0, 1.0);
    for col in 0..block.cols {
        for n1 in 0..side {
            for n2 in 0..side {
                let v = block.at(space.idx(n1, n2), col);
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                let f1 = n1 as f64;
                let f2 = n2 as f64;
                if c[2] != 0.0 {
                    out.add(space.idx(n1, n2), col, v * (0.5 * c[2] * (f1 - f2)));
                }
                // a1^dag a2 and a2^dag a1 (J1, J2)
                if c[0] != 0.0 || c[1] != 0.0 {
                    if n2 >= 1 && n1 + 1 < side {
                        let amp = ((f1 + 1.0) * f2).sqrt();
                        let coeff = Complex64::new(0.5 * c[0], 0.0) - i * (0.5 * c[1]);
                        out.add(space.idx(n1 + 1, n2 - 1), col, v * amp * coeff);
                    }
                    if n1 >= 1 && n2 + 1 < side {
                        let amp = (f1 * (f2 + 1.0)).sqrt();
                        let coeff = Complex64::new(0.5 * c[0], 0.0) + i * (0.5 * c[1]);
                        out.add(space.idx(n1 - 1, n2 + 1), col, v * amp * coeff);
                    }
                }
                // (a1^dag)^2, a1^2, (a2^dag)^2, a2^2 (K1, K2)
                if c[3] != 0.0 || c[4] != 0.0 {
                    if n1 + 2 < side {
                        let amp = ((f1 + 1.0) * (f1 + 2.0)).sqrt();
                        let coeff = Complex64::new(-0.25 * c[3], 0.0) + i * (0.25 * c[4]);
                        out.add(space.idx(n1 + 2, n2), col, v * amp * coeff);
                    }
                    if n1 >= 2 {
                        let amp = (f1 * (f1 - 1.0)).sqrt();
                        let coeff = Complex64::new(-0.25 * c[3], 0.0) - i * (0.25 * c[4]);
                        out.add(space.idx(n1 - 2, n2), col, v * amp * coeff);
                    }
                    if n2 + 2 < side {
                        let amp = ((f2 + 1.0) * (f2 + 2.0)).sqrt();
                        let coeff = Complex64::new(0.25 * c[3], 0.0) + i * (0.25 * c[4]);
                        out.add(space.idx(n1, n2 + 2), col, v * amp * coeff);
                    }
                    if n2 >= 2 {
                        let amp = (f2 * (f2 - 1.0)).sqrt();
                        let coeff = Complex64::new(0.25 * c[3], 0.0) - i * (0.25 * c[4]);
                        out.add(space.idx(n1, n2 - 2), col, v * amp * coeff);
                    }
                }
                // a1^dag a2^dag and a1 a2 (K3)
                if c[5] != 0.0 {
                    if n1 + 1 < side && n2 + 1 < side {
                        let amp = ((f1 + 1.0) * (f2 + 1.0)).sqrt();
                        out.add(space.idx(n1 + 1, n2 + 1), col, v * (0.5 * c[5] * amp));
                    }
                    if n1 >= 1 && n2 >= 1 {
                        let amp = (f1 * f2).sqrt();
                        out.add(space.idx(n1 - 1, n2 - 1), col, v * (0.5 * c[5] * amp));
                    }
                }
            }
        }
    }
    out
}

/// exp(sign * i * G) applied to a block by scaled Taylor series. The
/// generator is Hermitian, so the result is unitary on the truncated space
/// and no renormalization is needed.
fn apply_exp_quadratic(space: FockSpace, c: &[f64; 6], sign: f64, block: &Block) -> Block {
    let coeff_sum: f64 = c.iter().map(|x| x.abs()).sum();
    let bound = coeff_sum * (space.side as f64 + 2.0);
    let mut halvings = 0u32;
    while bound / (1u64 << halvings) as f64 > 4.0 {
        halvings += 1;
    }
    let step = Complex64::new(0.0, sign) / (1u64 << halvings) as f64;
    let mut state = block.clone();
    for _ in 0..(1u64 << halvings) {
        let mut acc = state.clone();
        let mut term = state;
        let floor = acc.max_abs() * 1e-18;
        for k in 1..=48u32 {
            let gterm = apply_quadratic(space, c, &term);
            term = Block::zeros(gterm.dim, gterm.cols);
            term.axpy(step / k as f64, &gterm);
            acc.axpy(Complex64::new(1.0, 0.0), &term);
            if term.max_abs() < floor {
                break;
            }
        }
        state = acc;
    }
    state
}

/// Basis block of all states with total occupation up to the window, plus
/// the list of their row indices.
fn window_block(space: FockSpace, occupation: usize) -> (Block, Vec<usize>) {
    let mut indices = Vec::new();
    for n1 in 0..space.side {
        for n2 in 0..space.side {
            if n1 + n2 <= occupation {
                indices.push(space.idx(n1, n2));
            }
        }
    }
    let mut block = Block::zeros(space.dim(), indices.len());
    for (col, &row) in indices.iter().enumerate() {
        block.add(row, col, Complex64::new(1.0, 0.0));
    }
    (block, indices)
}

/// Shared comparison: conjugate the window by the factor chain and measure
/// the worst deviation from the 4x4 prediction over low-occupation matrix
/// elements.
fn oracle_residual(cfg: &FockOracleConfig, factors: &[[f64; 6]], predicted: &Mat4C) -> f64 {
    let space = FockSpace::new(cfg.n_max);
    let (basis, _) = window_block(space, cfg.compare_occupation);

    // V^dag applied to the window: factors daggered in reverse printed order.
    let mut conjugated = basis.clone();
    for c in factors.iter().rev() {
        conjugated = apply_exp_quadratic(space, c, -1.0, &conjugated);
    }

    let mode_ops = [ModeOp::A1, ModeOp::A2, ModeOp::A1Dag, ModeOp::A2Dag];
    let mode_on_basis: Vec<Block> = mode_ops
        .iter()
        .map(|&op| apply_mode(space, op, &basis))
        .collect();

    let bra_limit = cfg.compare_occupation + 1;
    let mut worst: f64 = 0.0;
    for (row_idx, &op) in mode_ops.iter().enumerate() {
        // V (Psi_row V^dag |n>) for every window ket
        let mut lhs = apply_mode(space, op, &conjugated);
        for c in factors.iter() {
            lhs = apply_exp_quadratic(space, c, 1.0, &lhs);
        }
        // prediction: sum_l V_{row,l} Psi_l |n>
        let mut rhs = Block::zeros(lhs.dim, lhs.cols);
        for (l, mb) in mode_on_basis.iter().enumerate() {
            rhs.axpy(predicted.get(row_idx, l), mb);
        }
        for col in 0..lhs.cols {
            for row in 0..lhs.dim {
                if space.occupation(row) > bra_limit {
                    continue;
                }
                let dev = (lhs.at(row, col) - rhs.at(row, col)).norm();
                worst = worst.max(dev);
            }
        }
    }
    worst
}

/// Residual of a single generator factor e^{i angle G}: truncated
/// conjugation versus exp(angle M_G).
pub fn fock_oracle_generator(
    label: GeneratorLabel,
    angle: f64,
    cfg: &FockOracleConfig,
) -> Result<f64> {
    if !angle.is_finite() {
        return Err(Error::InvalidArgument(String::from("angle must be finite")));
    }
    let mut coeffs = [0.0; 6];
    let slot = match label {
        GeneratorLabel::J1 => 0,
        GeneratorLabel::J2 => 1,
        GeneratorLabel::J3 => 2,
        GeneratorLabel::K1 => 3,
        GeneratorLabel::K2 => 4,
        GeneratorLabel::K3 => 5,
    };
    coeffs[slot] = angle;
    let predicted = heisenberg_generator(label)
        .scale(Complex64::new(angle, 0.0))
        .expm();
    Ok(oracle_residual(cfg, &[coeffs], &predicted))
}

/// Residual of a whole sequence against [`sequence_symplectic`].
pub fn fock_oracle_sequence(
    schedule: &PhaseSchedule,
    signal: &ComplexSignal,
    cfg: &FockOracleConfig,
) -> Result<f64> {
    let factors = factor_generators(schedule, signal);
    let predicted = sequence_symplectic(schedule, signal);
    Ok(oracle_residual(cfg, &factors, predicted.matrix()))
}
