//! Extraction of the four entry polynomials of a sequence.
//!
//! The evaluated product has the form
//! [[P(a), i Q(a) sin w], [i R(a) sin w, S(a)]] with a = cos w, where P, Q,
//! R, S are polynomials of degree at most the signal-factor count m. The fit
//! samples the sequence at real signals whose a-values sit on Chebyshev
//! nodes, divides the off-diagonal entries by i sin w, and solves an
//! overdetermined least-squares problem in the Chebyshev basis (converted to
//! monomial coefficients afterwards). Overdetermination makes degree
//! mistakes visible as large residuals instead of silent aliasing.
//!
//! Fitting on real signals and evaluating at complex ones is an analytic
//! continuation; the determinant constraint becomes the coefficient identity
//! P(a) S(a) + Q(a) R(a) (1 - a^2) = 1.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat2::Mat2C;
use crate::qsp::{evaluate, ComplexSignal, PhaseSchedule};
use crate::Complex64;

/// Nodes are pulled this far inside the interval so 1 - a^2 stays away
/// from zero and the off-diagonal division never degenerates.
const NODE_SHRINK: f64 = 1e-3;
/// Any node with |sin w| below this is discarded before fitting.
const SIN_FLOOR: f64 = 1e-6;

/// Even/odd coefficient mass of one fitted polynomial. The parity structure
/// is measured, not asserted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParityBalance {
    pub even_norm: f64,
    pub odd_norm: f64,
}

/// Monomial coefficients (ascending degree) of the four entry polynomials,
/// plus the fitted degree and the worst reconstruction error over the fit
/// nodes.
#[derive(Clone, Debug)]
pub struct EntryPolynomials {
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    r: Vec<Complex64>,
    s: Vec<Complex64>,
    degree: usize,
    residual: f64,
}

fn horner(coeffs: &[Complex64], a: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * a + c;
    }
    acc
}

fn parity(coeffs: &[Complex64]) -> ParityBalance {
    let mut even = 0.0;
    let mut odd = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        if i % 2 == 0 {
            even += c.norm_sqr();
        } else {
            odd += c.norm_sqr();
        }
    }
    ParityBalance {
        even_norm: even.sqrt(),
        odd_norm: odd.sqrt(),
    }
}

/// Polynomial product by coefficient convolution.
fn conv(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl EntryPolynomials {
    pub fn p(&self) -> &[Complex64] {
        &self.p
    }

    pub fn q(&self) -> &[Complex64] {
        &self.q
    }

    pub fn r(&self) -> &[Complex64] {
        &self.r
    }

    pub fn s(&self) -> &[Complex64] {
        &self.s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Assemble the sequence matrix at an arbitrary complex signal value w.
    pub fn eval_matrix(&self, w: Complex64) -> Mat2C {
        let a = w.cos();
        let isw = Complex64::new(0.0, 1.0) * w.sin();
        Mat2C::new(
            horner(&self.p, a),
            horner(&self.q, a) * isw,
            horner(&self.r, a) * isw,
            horner(&self.s, a),
        )
    }

    /// Max coefficient of P S + Q R (1 - a^2) - 1; zero in exact arithmetic.
    pub fn determinant_identity_residual(&self) -> f64 {
        let ps = conv(&self.p, &self.s);
        let qr = conv(&self.q, &self.r);
        // (1 - a^2) * QR = QR - shift-by-two(QR)
        let mut total = vec![Complex64::new(0.0, 0.0); ps.len().max(qr.len() + 2)];
        for (i, &c) in ps.iter().enumerate() {
            total[i] += c;
        }
        for (i, &c) in qr.iter().enumerate() {
            total[i] += c;
            total[i + 2] -= c;
        }
        total[0] -= Complex64::new(1.0, 0.0);
        total.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Parity balance of P, Q, R, S in that order.
    pub fn parity_summary(&self) -> [ParityBalance; 4] {
        [
            parity(&self.p),
            parity(&self.q),
            parity(&self.r),
            parity(&self.s),
        ]
    }
}

/// Deterministic held-out signal values with |Im w| <= 0.5, used to check the
/// analytic continuation of a real-signal fit.
pub fn default_holdout_points() -> Vec<Complex64> {
    (0..20)
        .map(|k| {
            let t = (k as f64 + 0.5) / 20.0;
            let re = -1.2 + 2.4 * t;
            let im = 0.45 * (if k % 2 == 0 { 1.0 } else { -1.0 }) * (0.3 + 0.7 * t);
            Complex64::new(re, im)
        })
        .collect()
}

/// Worst relative reconstruction error of the fitted polynomials against the
/// directly evaluated sequence, over the given complex signal values.
pub fn holdout_relative_error(
    schedule: &PhaseSchedule,
    fit: &EntryPolynomials,
    points: &[Complex64],
) -> f64 {
    let mut worst: f64 = 0.0;
    for &w in points {
        let direct = evaluate(schedule, &ComplexSignal::from_w(w).unwrap());
        let assembled = fit.eval_matrix(w);
        let scale = direct.matrix().max_abs().max(1.0);
        worst = worst.max((assembled - *direct.matrix()).max_abs() / scale);
    }
    worst
}

/// Least squares for a real matrix with complex right-hand sides, by
/// Householder QR. `a` is row-major n x k with n >= k.
fn qr_lstsq(
    a: &mut [f64],
    n: usize,
    k: usize,
    rhs: &mut [Vec<Complex64>],
) -> Result<Vec<Vec<Complex64>>> {
    debug_assert!(n >= k);
    let mut v = vec![0.0; n];
    for col in 0..k {
        let mut sigma = 0.0;
        for row in col..n {
            sigma += a[row * k + col] * a[row * k + col];
        }
        let sigma = sigma.sqrt();
        if sigma < 1e-300 {
            return Err(Error::SingularMatrix { det_abs: sigma });
        }
        let pivot = a[col * k + col];
        let alpha = if pivot >= 0.0 { -sigma } else { sigma };
        v[col] = pivot - alpha;
        for row in (col + 1)..n {
            v[row] = a[row * k + col];
        }
        let vtv: f64 = v[col..n].iter().map(|x| x * x).sum();
        a[col * k + col] = alpha;
        for row in (col + 1)..n {
            a[row * k + col] = 0.0;
        }
        if vtv < 1e-300 {
            continue;
        }
        for other in (col + 1)..k {
            let dot: f64 = (col..n).map(|row| v[row] * a[row * k + other]).sum();
            let scale = 2.0 * dot / vtv;
            for row in col..n {
                a[row * k + other] -= scale * v[row];
            }
        }
        for b in rhs.iter_mut() {
            let dot: Complex64 = (col..n).map(|row| b[row] * v[row]).sum();
            let scale = dot * (2.0 / vtv);
            for row in col..n {
                b[row] -= scale * v[row];
            }
        }
    }
    // back substitution
    let mut solutions = Vec::with_capacity(rhs.len());
    for b in rhs.iter() {
        let mut x = vec![Complex64::new(0.0, 0.0); k];
        for col in (0..k).rev() {
            let mut acc = b[col];
            for j in (col + 1)..k {
                acc -= x[j] * a[col * k + j];
            }
            x[col] = acc / a[col * k + col];
        }
        solutions.push(x);
    }
    Ok(solutions)
}

/// Chebyshev coefficients (ascending order in T_j) to monomial coefficients.
fn cheb_to_monomial(cheb: &[Complex64]) -> Vec<Complex64> {
    let deg = cheb.len() - 1;
    // rows of Chebyshev polynomials in the monomial basis
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
    if deg >= 1 {
        rows.push(vec![0.0, 1.0]);
    }
    for j in 2..=deg {
        let mut next = vec![0.0; j + 1];
        for (i, &c) in rows[j - 1].iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in rows[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        rows.push(next);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (j, &coef) in cheb.iter().enumerate() {
        for (i, &t) in rows[j].iter().enumerate() {
            out[i] += coef * t;
        }
    }
    out
}

fn cheb_basis_row(a: f64, degree: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(degree + 1);
    row.push(1.0);
    if degree >= 1 {
        row.push(a);
    }
    for j in 2..=degree {
        let next = 2.0 * a * row[j - 1] - row[j - 2];
        row.push(next);
    }
    row
}

/// Fit P, Q, R, S by least squares over at least `signal_samples` real-signal
/// nodes (the node count is raised to 2 (m + 2) when the request is smaller).
///
/// Requires `signal_samples >= m + 2` where m is the signal-factor count.
pub fn fit_entry_polynomials(
    schedule: &PhaseSchedule,
    signal_samples: usize,
) -> Result<EntryPolynomials> {
    let m = schedule.signal_factor_count();
    if signal_samples < m + 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "need at least {} samples for {} signal factors, got {signal_samples}",
            m + 2,
            m
        )));
    }
    let n_nodes = signal_samples.max(2 * (m + 2));
    let shrink = 1.0 - NODE_SHRINK;

    // Chebyshev nodes mapped to a = cos w, discarding any node too close to
    // the sin w = 0 singularity of the off-diagonal division.
    let mut nodes = Vec::with_capacity(n_nodes);
    for kidx in 0..n_nodes {
        let a = shrink
            * (core::f64::consts::PI * (2.0 * kidx as f64 + 1.0) / (2.0 * n_nodes as f64)).cos();
        let w = a.acos();
        let sin_w = w.sin();
        if sin_w.abs() < SIN_FLOOR {
            continue;
        }
        nodes.push((a, w, sin_w));
    }
    if nodes.len() < m + 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "only {} usable nodes remain after singular-node removal",
            nodes.len()
        )));
    }

    let n = nodes.len();
    let k = m + 1;
    let mut design = vec![0.0; n * k];
    let mut rhs: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); n]; 4];
    let mut direct = Vec::with_capacity(n);
    for (row, &(a, w, sin_w)) in nodes.iter().enumerate() {
        let basis = cheb_basis_row(a, m);
        design[row * k..(row + 1) * k].copy_from_slice(&basis);
        let v = evaluate(schedule, &ComplexSignal::new(2.0 * w, 0.0).unwrap());
        let isw = Complex64::new(0.0, sin_w);
        rhs[0][row] = v.get(0, 0);
        rhs[1][row] = v.get(0, 1) / isw;
        rhs[2][row] = v.get(1, 0) / isw;
        rhs[3][row] = v.get(1, 1);
        direct.push(*v.matrix());
    }

    let cheb = qr_lstsq(&mut design, n, k, &mut rhs)?;
    let p = cheb_to_monomial(&cheb[0]);
    let q = cheb_to_monomial(&cheb[1]);
    let r = cheb_to_monomial(&cheb[2]);
    let s = cheb_to_monomial(&cheb[3]);

    let fit = EntryPolynomials {
        p,
        q,
        r,
        s,
        degree: m,
        residual: 0.0,
    };
    let mut residual: f64 = 0.0;
    for (&(_, w, _), v) in nodes.iter().zip(direct.iter()) {
        let assembled = fit.eval_matrix(Complex64::new(w, 0.0));
        residual = residual.max((assembled - *v).max_abs());
    }
    Ok(EntryPolynomials { residual, ..fit })
}
