//! Continuous-side machinery: the canonical first-order 2x2 operator, its
//! rotating-frame gauge, midpoint product integration of the propagator, and
//! finite-difference residuals of the zero-curvature condition (focusing
//! NLS) and of the KdV evolution equation.
//!
//! Gauge note: conjugating by g = e^{i lambda Z x} advances the off-diagonal
//! phases at rate 2 lambda, not lambda; [`GaugePhaseRate::Printed`] keeps the
//! slower rate for compatibility with the discretized recurrence, which is
//! written against it.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat2::Mat2C;
use crate::sl2c::SL2CElement;
use crate::Complex64;

/// Tolerance on grid-spacing uniformity.
const SPACING_TOL: f64 = 1e-12;

/// Complex samples of a wave on a uniform x grid, optionally extended along
/// a uniform t grid (row-major, t outermost).
#[derive(Clone, Debug)]
pub struct WaveSamples {
    xs: Vec<f64>,
    ts: Option<Vec<f64>>,
    values: Vec<Complex64>,
}

fn check_uniform(grid: &[f64], axis: &str) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "{axis} grid needs at least 2 points"
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "{axis} grid must be finite"
        )));
    }
    let h = grid[1] - grid[0];
    if h <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "{axis} grid must be strictly increasing"
        )));
    }
    for pair in grid.windows(2) {
        if ((pair[1] - pair[0]) - h).abs() > SPACING_TOL * h.abs().max(1.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "{axis} grid spacing is not uniform within 1e-12"
            )));
        }
    }
    Ok(h)
}

impl WaveSamples {
    /// One-dimensional profile f(x).
    pub fn profile(xs: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_uniform(&xs, "x")?;
        if values.len() != xs.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "value count {} does not match grid size {}",
                values.len(),
                xs.len()
            )));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::InvalidArgument(String::from(
                "samples must be finite",
            )));
        }
        Ok(Self {
            xs,
            ts: None,
            values,
        })
    }

    /// Two-dimensional grid f(x, t); both axes feed difference stencils and
    /// need at least 5 points each.
    pub fn grid(xs: Vec<f64>, ts: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_uniform(&xs, "x")?;
        check_uniform(&ts, "t")?;
        if xs.len() < 5 || ts.len() < 5 {
            return Err(Error::InvalidArgument(alloc::format!(
                "differentiated axes need at least 5 points, got {} x {}",
                xs.len(),
                ts.len()
            )));
        }
        if values.len() != xs.len() * ts.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "value count {} does not match grid size {} x {}",
                values.len(),
                xs.len(),
                ts.len()
            )));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::InvalidArgument(String::from(
                "samples must be finite",
            )));
        }
        Ok(Self {
            xs,
            ts: Some(ts),
            values,
        })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ts(&self) -> Option<&[f64]> {
        self.ts.as_deref()
    }

    pub fn h_x(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }

    pub fn h_t(&self) -> Option<f64> {
        self.ts.as_ref().map(|t| t[1] - t[0])
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn nt(&self) -> usize {
        self.ts.as_ref().map_or(1, |t| t.len())
    }

    #[inline]
    pub fn value(&self, it: usize, ix: usize) -> Complex64 {
        self.values[it * self.xs.len() + ix]
    }
}

/// The canonical operator [[i lambda, r], [s, -i lambda]] sampled on a
/// uniform x grid.
#[derive(Clone, Debug)]
pub struct AknsOperator {
    lambda: f64,
    xs: Vec<f64>,
    r: Vec<Complex64>,
    s: Vec<Complex64>,
}

impl AknsOperator {
    pub fn new(lambda: f64, xs: Vec<f64>, r: Vec<Complex64>, s: Vec<Complex64>) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidArgument(String::from(
                "lambda must be finite",
            )));
        }
        check_uniform(&xs, "x")?;
        if r.len() != xs.len() || s.len() != xs.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "sample counts ({}, {}) do not match grid size {}",
                r.len(),
                s.len(),
                xs.len()
            )));
        }
        let finite = |v: &[Complex64]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite(&r) || !finite(&s) {
            return Err(Error::InvalidArgument(String::from(
                "samples must be finite",
            )));
        }
        Ok(Self { lambda, xs, r, s })
    }

    /// The choice r = f, s = -conj(f) from a one-dimensional profile.
    pub fn zakharov_shabat(lambda: f64, wave: &WaveSamples) -> Result<Self> {
        if wave.ts().is_some() {
            return Err(Error::InvalidArgument(String::from(
                "expected a one-dimensional profile, got a space-time grid",
            )));
        }
        let r: Vec<Complex64> = (0..wave.nx()).map(|i| wave.value(0, i)).collect();
        let s: Vec<Complex64> = r.iter().map(|f| -f.conj()).collect();
        Self::new(lambda, wave.xs().to_vec(), r, s)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn h_x(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Linear interpolation of (r, s) at an arbitrary x, clamped to the grid.
    fn interp(&self, x: f64) -> (Complex64, Complex64) {
        let h = self.h_x();
        let pos = (x - self.xs[0]) / h;
        if pos <= 0.0 {
            return (self.r[0], self.s[0]);
        }
        let last = self.xs.len() - 1;
        if pos >= last as f64 {
            return (self.r[last], self.s[last]);
        }
        let i = pos as usize;
        let frac = pos - i as f64;
        let lerp = |a: Complex64, b: Complex64| a * (1.0 - frac) + b * frac;
        (
            lerp(self.r[i], self.r[i + 1]),
            lerp(self.s[i], self.s[i + 1]),
        )
    }
}

/// The operator matrix at one grid index.
pub fn akns_matrix(op: &AknsOperator, index: usize) -> Result<Mat2C> {
    if index >= op.len() {
        return Err(Error::InvalidArgument(alloc::format!(
            "index {index} out of range for {} samples",
            op.len()
        )));
    }
    let il = Complex64::new(0.0, op.lambda);
    Ok(Mat2C::new(il, op.r[index], op.s[index], -il))
}

/// Off-diagonal phase advance rate of the rotating frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GaugePhaseRate {
    /// e^{-+ 2 i lambda x}: what conjugation by e^{i lambda Z x} produces.
    #[default]
    Derived,
    /// e^{-+ i lambda x}: the rate the discretized recurrence is written
    /// against.
    Printed,
}

impl GaugePhaseRate {
    fn factor(&self) -> f64 {
        match self {
            GaugePhaseRate::Derived => 2.0,
            GaugePhaseRate::Printed => 1.0,
        }
    }
}

/// Rotating-frame operator at an arbitrary position (samples interpolated):
/// [[0, r e^{-i c lambda x}], [s e^{i c lambda x}, 0]] with c the phase rate.
pub fn gauge_rotate_with(op: &AknsOperator, x: f64, rate: GaugePhaseRate) -> Mat2C {
    let (r, s) = op.interp(x);
    let phase = Complex64::cis(rate.factor() * op.lambda * x);
    Mat2C::new(
        Complex64::new(0.0, 0.0),
        r / phase,
        s * phase,
        Complex64::new(0.0, 0.0),
    )
}

/// Rotating-frame operator at the derived rate.
pub fn gauge_rotate(op: &AknsOperator, x: f64) -> Mat2C {
    gauge_rotate_with(op, x, GaugePhaseRate::Derived)
}

/// Midpoint product integration of d/dx G = A_g G from `x_start` to `x_end`:
/// each substep multiplies by exp(h A_g(x_mid)). Every factor is the
/// exponential of a traceless matrix, so the result has unit determinant
/// regardless of step size; accuracy is second order in the step.
pub fn propagate_with(
    op: &AknsOperator,
    x_start: f64,
    x_end: f64,
    step: f64,
    rate: GaugePhaseRate,
) -> Result<SL2CElement> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::InvalidArgument(alloc::format!(
            "step must be positive and finite, got {step}"
        )));
    }
    if step > op.h_x() * (1.0 + 1e-9) {
        return Err(Error::InvalidArgument(alloc::format!(
            "step {step} exceeds the sample spacing {}",
            op.h_x()
        )));
    }
    if x_end < x_start {
        return Err(Error::InvalidArgument(String::from(
            "x range must be increasing",
        )));
    }
    let margin = 1e-9 * op.h_x();
    if x_start < op.xs()[0] - margin || x_end > op.xs()[op.len() - 1] + margin {
        return Err(Error::InvalidArgument(alloc::format!(
            "range [{x_start}, {x_end}] is not covered by the samples"
        )));
    }
    let span = x_end - x_start;
    if span == 0.0 {
        return Ok(SL2CElement::identity());
    }
    let n_steps = (span / step).ceil().max(1.0) as usize;
    let h = span / n_steps as f64;
    let mut g = Mat2C::identity();
    for k in 0..n_steps {
        let x_mid = x_start + (k as f64 + 0.5) * h;
        let a = gauge_rotate_with(op, x_mid, rate).scale(Complex64::new(h, 0.0));
        let factor = crate::mat2::expm_traceless(&a).expect("gauge operator is traceless");
        g = factor * g;
    }
    SL2CElement::new(g)
}

/// Product integration at the derived gauge rate.
pub fn propagate(op: &AknsOperator, x_start: f64, x_end: f64, step: f64) -> Result<SL2CElement> {
    propagate_with(op, x_start, x_end, step, GaugePhaseRate::Derived)
}

fn sigma_plus_minus(a: Complex64, b: Complex64, c: Complex64) -> Mat2C {
    // a sigma_z + b sigma^+ + c sigma^-
    Mat2C::new(a, b, c, -a)
}

/// Max interior Frobenius norm of d_t A - d_x P + [A, P] for the
/// Zakharov-Shabat choice r = f, s = -conj(f), with P the quadratic NLS
/// partner matrix. Second-order central differences throughout; the residual
/// is O(h^2) exactly when f solves i f_t = f_xx + 2 f |f|^2.
pub fn zero_curvature_residual_nls(wave: &WaveSamples, lambda: f64) -> Result<f64> {
    if wave.ts().is_none() {
        return Err(Error::InvalidArgument(String::from(
            "zero-curvature residual needs a space-time grid",
        )));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(String::from(
            "lambda must be finite",
        )));
    }
    let (nx, nt) = (wave.nx(), wave.nt());
    let (hx, ht) = (wave.h_x(), wave.h_t().expect("grid has t axis"));
    let il = Complex64::new(0.0, lambda);
    let i = Complex64::new(0.0, 1.0);

    let a_at = |it: usize, ix: usize| -> Mat2C {
        let f = wave.value(it, ix);
        sigma_plus_minus(il, f, -f.conj())
    };
    // P needs f_x, so it is defined one cell in from the x edges.
    let p_at = |it: usize, ix: usize| -> Mat2C {
        let f = wave.value(it, ix);
        let fx = (wave.value(it, ix + 1) - wave.value(it, ix - 1)) / (2.0 * hx);
        let diag = i * (2.0 * lambda * lambda - f.norm_sqr());
        let upper = f * (2.0 * lambda) - i * fx;
        let lower = -f.conj() * (2.0 * lambda) - i * fx.conj();
        sigma_plus_minus(diag, upper, lower)
    };

    let mut worst: f64 = 0.0;
    for it in 1..nt - 1 {
        for ix in 2..nx - 2 {
            let da_dt =
                (a_at(it + 1, ix) - a_at(it - 1, ix)).scale(Complex64::new(1.0 / (2.0 * ht), 0.0));
            let dp_dx =
                (p_at(it, ix + 1) - p_at(it, ix - 1)).scale(Complex64::new(1.0 / (2.0 * hx), 0.0));
            let a = a_at(it, ix);
            let p = p_at(it, ix);
            let residual = da_dt - dp_dx + (a * p - p * a);
            worst = worst.max(residual.frobenius_norm());
        }
    }
    Ok(worst)
}

/// Max interior residual of d_t f - d_xxx f - f d_x f for real samples.
/// Second-order stencils; third derivative uses the five-point form.
pub fn kdv_residual(wave: &WaveSamples) -> Result<f64> {
    if wave.ts().is_none() {
        return Err(Error::InvalidArgument(String::from(
            "the evolution residual needs a space-time grid",
        )));
    }
    if wave.values.iter().any(|v| v.im != 0.0) {
        return Err(Error::InvalidArgument(String::from(
            "samples must be real-valued",
        )));
    }
    let (nx, nt) = (wave.nx(), wave.nt());
    let (hx, ht) = (wave.h_x(), wave.h_t().expect("grid has t axis"));
    let f = |it: usize, ix: usize| wave.value(it, ix).re;

    let mut worst: f64 = 0.0;
    for it in 1..nt - 1 {
        for ix in 2..nx - 2 {
            let ft = (f(it + 1, ix) - f(it - 1, ix)) / (2.0 * ht);
            let fx = (f(it, ix + 1) - f(it, ix - 1)) / (2.0 * hx);
            let fxxx = (f(it, ix + 2) - 2.0 * f(it, ix + 1) + 2.0 * f(it, ix - 1) - f(it, ix - 2))
                / (2.0 * hx * hx * hx);
            worst = worst.max((ft - fxxx - f(it, ix) * fx).abs());
        }
    }
    Ok(worst)
}
