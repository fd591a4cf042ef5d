//! Command-line front end: evaluate sequences and write every derived
//! representation (Lorentz matrices, Bloch clouds, symplectic matrices,
//! transform grids, residual tables, Möbius trajectories) as JSON or CSV.
//!
//! Exit codes: 0 success, 1 argument errors, 2 numerical/domain errors
//! (poles, degenerate channels, calibration failure). Output is
//! byte-deterministic for identical inputs.

mod io;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sl2cqsp_core::bosonic::{sequence_symplectic, Mat4C};
use sl2cqsp_core::entry_poly;
use sl2cqsp_core::fock::{fock_oracle_sequence, FockOracleConfig};
use sl2cqsp_core::lax;
use sl2cqsp_core::lorentz;
use sl2cqsp_core::moebius::{self, ExtendedComplex};
use sl2cqsp_core::nlft::{
    self, ConventionDescriptor, ImaginaryEvenSequence, IndexRange, OuterPower, PalindromicAngles,
    PhaseScale,
};
use sl2cqsp_core::qsp::{self, ComplexSignal, ProductOrder};
use sl2cqsp_core::spacetime;
use sl2cqsp_core::{Complex64, Error as CoreError};

use io::{complex_pair, emit, fmt_f64, parse_complex};

/// Error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn arg(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let code = match &err {
            CoreError::InvalidArgument(_)
            | CoreError::NotTraceless { .. }
            | CoreError::NotUnimodular { .. }
            | CoreError::NotHermitian { .. }
            | CoreError::ResourceLimit(_) => 1,
            CoreError::SingularMatrix { .. }
            | CoreError::NotPositive { .. }
            | CoreError::DegenerateParameter(_)
            | CoreError::PhasePole { .. }
            | CoreError::DegenerateChannel { .. }
            | CoreError::InternalConsistency(_)
            | CoreError::CalibrationFailed { .. } => 2,
        };
        let mut message = err.to_string();
        if let CoreError::CalibrationFailed { table } = &err {
            for (cand, residual) in table {
                let _ = write!(message, "\n  {cand}: residual {residual:.3e}");
            }
        }
        Self { code, message }
    }
}

#[derive(Parser)]
#[command(
    name = "sl2cqsp",
    about = "Complex-signal QSP sequences over SL(2,C) and their representations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Self-check gate for the command's own residuals; defaults to
    /// SL2CQSP_TOL or 1e-6.
    #[arg(long)]
    tol: Option<f64>,
}

impl Common {
    fn tolerance(&self) -> Result<f64, CliError> {
        let tol = match self.tol {
            Some(t) => t,
            None => match std::env::var("SL2CQSP_TOL") {
                Ok(text) => text
                    .parse()
                    .map_err(|_| CliError::arg(format!("SL2CQSP_TOL is not a number: {text}")))?,
                Err(_) => 1e-6,
            },
        };
        if tol <= 0.0 || !tol.is_finite() {
            return Err(CliError::arg(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sequence; emit the four entries and the det residual as JSON.
    QspEval {
        /// Schedule file: {"phases": [..], "delta": .., "eta": ..}.
        #[arg(long)]
        phases: PathBuf,
        /// Override the file's signal with w = a+bi (delta = 2 Re w, eta = 2 Im w).
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Pair every phase with a signal factor instead of leading with a bare phase.
        #[arg(long)]
        phase_signal_pairs: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Fit the entry polynomials P, Q, R, S in cos w; emit coefficients as JSON.
    QspPoly {
        #[arg(long)]
        phases: PathBuf,
        /// Least-squares node count (raised to 2(m+2) when smaller).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Map the Ising angle to the dual signal angle; with --params, also
    /// evaluate the dual sequence.
    DualMap {
        /// Ising angle theta (radians).
        #[arg(long, conflicts_with = "params", allow_negative_numbers = true)]
        theta: Option<f64>,
        /// Floquet parameter file; theta and the longitudinal angles are taken from it.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the 4x4 Lorentz matrix of a sequence as CSV.
    Lorentz {
        #[arg(long)]
        phases: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Push a Fibonacci lattice of pure states through the physical channel; CSV.
    Bloch {
        #[arg(long)]
        phases: PathBuf,
        /// Number of lattice points.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the Heisenberg-picture 4x4 sequence matrix as CSV, or the
    /// Fock-oracle residual report as JSON.
    Bosonic {
        #[arg(long)]
        phases: PathBuf,
        /// Run the truncated-Fock-space oracle instead of printing the matrix.
        #[arg(long)]
        oracle: bool,
        /// Fock truncation per mode (4..=60).
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Comparison window: total occupation of the checked states.
        #[arg(long)]
        occupation: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the transform matrix on a w-grid; CSV columns
    /// re_w, im_w, re_A, im_A, ..., im_D.
    Nlft {
        /// Input file: {"psi": [..], "delta": .., "eta": ..}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        re_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        re_max: Option<f64>,
        #[arg(long, default_value_t = 1)]
        re_steps: usize,
        #[arg(long, allow_negative_numbers = true)]
        im_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        im_max: Option<f64>,
        #[arg(long, default_value_t = 1)]
        im_steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Grid-refinement residual table for the zero-curvature (NLS) or KdV
    /// check; CSV columns h, residual, ratio.
    ZsResidual {
        /// Wave CSV with header x,t,re_f,im_f.
        #[arg(long)]
        wave: PathBuf,
        /// Which residual to evaluate.
        #[arg(long, value_parser = ["nls", "kdv"])]
        equation: String,
        /// Spectral parameter (NLS only).
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        lambda: f64,
        /// Number of resolutions, each coarsened by 2.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Track the scale factor through the sequence factor by factor; CSV.
    MoebiusFlow {
        #[arg(long)]
        phases: PathBuf,
        /// Start point a+bi, or 'inf'.
        #[arg(long, default_value = "1+0i", allow_hyphen_values = true)]
        z0: String,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force the sequence-transform convention; emit the descriptor
    /// and the full residual table as JSON.
    Calibrate {
        #[arg(long)]
        max_d: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0x51_2c_05_17)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn mat2_entries_json(m: &sl2cqsp_core::Mat2C) -> serde_json::Value {
    serde_json::json!([
        complex_pair(m.get(0, 0)),
        complex_pair(m.get(0, 1)),
        complex_pair(m.get(1, 0)),
        complex_pair(m.get(1, 1)),
    ])
}

fn coeff_list(coeffs: &[Complex64]) -> serde_json::Value {
    serde_json::Value::Array(coeffs.iter().map(|&c| complex_pair(c)).collect())
}

fn json_out(common: &Common, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(common.output.as_ref(), &text)
}

fn run_qsp_eval(
    phases: &Path,
    w: Option<&str>,
    pairs: bool,
    common: &Common,
) -> Result<(), CliError> {
    let tol = common.tolerance()?;
    let (schedule, mut signal) = io::load_schedule(phases)?;
    if let Some(text) = w {
        signal = ComplexSignal::from_w(parse_complex(text)?)?;
    }
    let order = if pairs {
        ProductOrder::PhaseSignalPairs
    } else {
        ProductOrder::LeadingPhase
    };
    let v = qsp::evaluate_with_order(&schedule, &signal, order);
    let det_residual = v.det_residual();
    if det_residual > tol {
        return Err(CliError::numeric(format!(
            "determinant residual {det_residual:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    json_out(
        common,
        &serde_json::json!({
            "entries": mat2_entries_json(v.matrix()),
            "det_residual": det_residual,
            "unitarity_residual": v.unitarity_residual(),
            "su11_residual": qsp::su11_structure_check(&v),
        }),
    )
}

fn run_qsp_poly(phases: &Path, samples: Option<usize>, common: &Common) -> Result<(), CliError> {
    let tol = common.tolerance()?;
    let (schedule, _) = io::load_schedule(phases)?;
    let m = schedule.signal_factor_count();
    let fit = entry_poly::fit_entry_polynomials(&schedule, samples.unwrap_or(2 * (m + 2)))?;
    let holdout =
        entry_poly::holdout_relative_error(&schedule, &fit, &entry_poly::default_holdout_points());
    if holdout > tol {
        return Err(CliError::numeric(format!(
            "held-out reconstruction error {holdout:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    let parity = fit.parity_summary();
    let parity_json = |b: &entry_poly::ParityBalance| serde_json::json!({"even_norm": b.even_norm, "odd_norm": b.odd_norm});
    json_out(
        common,
        &serde_json::json!({
            "P": coeff_list(fit.p()),
            "Q": coeff_list(fit.q()),
            "R": coeff_list(fit.r()),
            "S": coeff_list(fit.s()),
            "degree": fit.degree(),
            "residual": fit.residual(),
            "holdout_rel_error": holdout,
            "determinant_identity_residual": fit.determinant_identity_residual(),
            "parity": {
                "P": parity_json(&parity[0]),
                "Q": parity_json(&parity[1]),
                "R": parity_json(&parity[2]),
                "S": parity_json(&parity[3]),
            },
        }),
    )
}

fn run_dual_map(
    theta: Option<f64>,
    params: Option<&PathBuf>,
    common: &Common,
) -> Result<(), CliError> {
    let mut doc = serde_json::Map::new();
    let (theta, phis) = match (theta, params) {
        (Some(t), None) => (t, None),
        (None, Some(path)) => {
            let p = io::load_floquet(path)?;
            (p.theta(), Some(p.phis().to_vec()))
        }
        (None, None) => return Err(CliError::arg("pass either --theta or --params")),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let theta_tilde = spacetime::dual_signal(theta)?;
    doc.insert("theta".into(), serde_json::json!(theta));
    doc.insert("theta_tilde".into(), complex_pair(theta_tilde));
    doc.insert(
        "residual".into(),
        serde_json::json!(spacetime::dual_map_residual(theta, theta_tilde)),
    );
    if let Some(phis) = phis {
        let seq = spacetime::dual_sequence(theta, &phis)?;
        doc.insert("sequence_entries".into(), mat2_entries_json(seq.matrix()));
        doc.insert(
            "sequence_det_residual".into(),
            serde_json::json!(seq.det_residual()),
        );
    }
    json_out(common, &serde_json::Value::Object(doc))
}

fn run_lorentz(phases: &Path, common: &Common) -> Result<(), CliError> {
    let tol = common.tolerance()?;
    let (schedule, signal) = io::load_schedule(phases)?;
    let v = qsp::evaluate(&schedule, &signal);
    let lambda = lorentz::lorentz_matrix(&v)?;
    let metric = lambda.metric_residual();
    if metric > tol {
        return Err(CliError::numeric(format!(
            "metric residual {metric:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    let mut out = String::from("x0,x1,x2,x3\n");
    for row in 0..4 {
        let line: Vec<String> = (0..4).map(|col| fmt_f64(lambda.get(row, col))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    emit(common.output.as_ref(), &out)
}

fn run_bloch(phases: &Path, samples: usize, common: &Common) -> Result<(), CliError> {
    let (schedule, signal) = io::load_schedule(phases)?;
    let v = qsp::evaluate(&schedule, &signal);
    let cloud = lorentz::bloch_image(&v, samples)?;
    let mut out = String::from("in_x,in_y,in_z,out_x,out_y,out_z,weight\n");
    for s in cloud {
        let fields = [
            s.input[0],
            s.input[1],
            s.input[2],
            s.output[0],
            s.output[1],
            s.output[2],
            s.weight,
        ];
        let line: Vec<String> = fields.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    emit(common.output.as_ref(), &out)
}

fn run_bosonic(
    phases: &Path,
    oracle: bool,
    n_max: usize,
    occupation: Option<usize>,
    common: &Common,
) -> Result<(), CliError> {
    let tol = common.tolerance()?;
    let (schedule, signal) = io::load_schedule(phases)?;
    if oracle {
        let mut cfg = FockOracleConfig::new(n_max)?;
        if let Some(occ) = occupation {
            cfg = cfg.with_compare_occupation(occ)?;
        }
        let residual = fock_oracle_sequence(&schedule, &signal, &cfg)?;
        if residual > tol {
            return Err(CliError::numeric(format!(
                "Fock-oracle residual {residual:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
        return json_out(
            common,
            &serde_json::json!({
                "n_max": cfg.n_max(),
                "compare_occupation": cfg.compare_occupation(),
                "residual": residual,
            }),
        );
    }
    let rep = sequence_symplectic(&schedule, &signal);
    let m: &Mat4C = rep.matrix();
    let mut out = String::from("re_a1,im_a1,re_a2,im_a2,re_a1dag,im_a1dag,re_a2dag,im_a2dag\n");
    for row in 0..4 {
        let mut fields = Vec::with_capacity(8);
        for col in 0..4 {
            let z = m.get(row, col);
            fields.push(fmt_f64(z.re));
            fields.push(fmt_f64(z.im));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    emit(common.output.as_ref(), &out)
}

#[allow(clippy::too_many_arguments)]
fn run_nlft(
    input: &Path,
    re_min: Option<f64>,
    re_max: Option<f64>,
    re_steps: usize,
    im_min: Option<f64>,
    im_max: Option<f64>,
    im_steps: usize,
    common: &Common,
) -> Result<(), CliError> {
    let (psi, delta, eta) = io::load_nlft_input(input)?;
    let angles = PalindromicAngles::new(psi)?;
    let seq = ImaginaryEvenSequence::from_angles(&angles)?;
    let d = angles.d();
    let w0 = Complex64::new(delta / 2.0, eta / 2.0);
    if re_steps == 0 || im_steps == 0 {
        return Err(CliError::arg("grid steps must be at least 1"));
    }
    let axis = |min: Option<f64>, max: Option<f64>, steps: usize, center: f64| -> Vec<f64> {
        let lo = min.unwrap_or(center);
        let hi = max.unwrap_or(lo);
        if steps == 1 {
            vec![lo]
        } else {
            (0..steps)
                .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
                .collect()
        }
    };
    let res = axis(re_min, re_max, re_steps, w0.re);
    let ims = axis(im_min, im_max, im_steps, w0.im);
    let mut out = String::from("re_w,im_w,re_A,im_A,re_B,im_B,re_C,im_C,re_D,im_D\n");
    for &im in &ims {
        for &re in &res {
            let w = Complex64::new(re, im);
            let g = nlft::nlft_forward(&seq, w, d)?;
            let fields = [
                w.re,
                w.im,
                g.a().re,
                g.a().im,
                g.b().re,
                g.b().im,
                g.c().re,
                g.c().im,
                g.d().re,
                g.d().im,
            ];
            let line: Vec<String> = fields.iter().map(|&x| fmt_f64(x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
    emit(common.output.as_ref(), &out)
}

fn coarsen(wave: &lax::WaveSamples, stride: usize) -> Option<lax::WaveSamples> {
    let xs: Vec<f64> = wave.xs().iter().copied().step_by(stride).collect();
    let ts: Vec<f64> = wave.ts()?.iter().copied().step_by(stride).collect();
    if xs.len() < 5 || ts.len() < 5 {
        return None;
    }
    let mut values = Vec::with_capacity(xs.len() * ts.len());
    for it in (0..wave.nt()).step_by(stride) {
        for ix in (0..wave.nx()).step_by(stride) {
            values.push(wave.value(it, ix));
        }
    }
    lax::WaveSamples::grid(xs, ts, values).ok()
}

fn run_zs_residual(
    wave_path: &Path,
    equation: &str,
    lambda: f64,
    levels: usize,
    common: &Common,
) -> Result<(), CliError> {
    if levels == 0 {
        return Err(CliError::arg("need at least one level"));
    }
    let wave = io::load_wave_csv(wave_path)?;
    // level k uses every 2^k-th sample; listed coarsest first so each ratio
    // compares against the previous (coarser) row
    let mut grids = Vec::new();
    for k in 0..levels {
        let stride = 1usize << k;
        if stride == 1 {
            grids.push(wave.clone());
        } else {
            match coarsen(&wave, stride) {
                Some(g) => grids.push(g),
                None => break,
            }
        }
    }
    if grids.is_empty() {
        return Err(CliError::arg("grid too small for the requested levels"));
    }
    grids.reverse();
    let mut out = String::from("h,residual,ratio\n");
    let mut previous: Option<f64> = None;
    for g in &grids {
        let residual = match equation {
            "nls" => lax::zero_curvature_residual_nls(g, lambda)?,
            "kdv" => lax::kdv_residual(g)?,
            _ => unreachable!("clap value_parser"),
        };
        let ratio = previous.map(|p| p / residual);
        out.push_str(&fmt_f64(g.h_x()));
        out.push(',');
        out.push_str(&fmt_f64(residual));
        out.push(',');
        if let Some(r) = ratio {
            out.push_str(&fmt_f64(r));
        }
        out.push('\n');
        previous = Some(residual);
    }
    emit(common.output.as_ref(), &out)
}

fn run_moebius_flow(phases: &Path, z0: &str, common: &Common) -> Result<(), CliError> {
    let (schedule, signal) = io::load_schedule(phases)?;
    let start = if z0.eq_ignore_ascii_case("inf") || z0.eq_ignore_ascii_case("infinity") {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::Finite(parse_complex(z0)?)
    };
    let trajectory = moebius::qsp_scale_flow(&schedule, &signal, start);
    let mut out = String::from("step,re_z,im_z,is_infinity\n");
    for (step, z) in trajectory.iter().enumerate() {
        match z {
            ExtendedComplex::Finite(v) => {
                out.push_str(&format!(
                    "{},{},{},0\n",
                    step + 1,
                    fmt_f64(v.re),
                    fmt_f64(v.im)
                ));
            }
            ExtendedComplex::Infinity => {
                out.push_str(&format!("{},,,1\n", step + 1));
            }
        }
    }
    emit(common.output.as_ref(), &out)
}

fn descriptor_json(desc: &ConventionDescriptor) -> serde_json::Value {
    serde_json::json!({
        "index_range": match desc.index_range {
            IndexRange::Closed => "closed",
            IndexRange::HalfOpen => "half_open",
        },
        "phase_scale": match desc.phase_scale {
            PhaseScale::Single => "w",
            PhaseScale::Doubled => "2w",
        },
        "outer_power": match desc.outer_power {
            OuterPower::Zero => "none",
            OuterPower::One => "w",
            OuterPower::Degree => "d*w",
        },
        "hadamard": desc.hadamard,
        "sign": if desc.negate { -1 } else { 1 },
    })
}

fn run_calibrate(max_d: usize, trials: usize, seed: u64, common: &Common) -> Result<(), CliError> {
    let report = nlft::calibrate_convention(max_d, trials, seed)?;
    let table: Vec<serde_json::Value> = report
        .table
        .iter()
        .map(|(cand, residual)| {
            serde_json::json!({
                "convention": descriptor_json(cand),
                "residual": residual,
            })
        })
        .collect();
    json_out(
        common,
        &serde_json::json!({
            "descriptor": descriptor_json(&report.descriptor),
            "residual_table": table,
        }),
    )
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::QspEval {
            phases,
            w,
            phase_signal_pairs,
            common,
        } => run_qsp_eval(phases, w.as_deref(), *phase_signal_pairs, common),
        Command::QspPoly {
            phases,
            samples,
            common,
        } => run_qsp_poly(phases, *samples, common),
        Command::DualMap {
            theta,
            params,
            common,
        } => run_dual_map(*theta, params.as_ref(), common),
        Command::Lorentz { phases, common } => run_lorentz(phases, common),
        Command::Bloch {
            phases,
            samples,
            common,
        } => run_bloch(phases, *samples, common),
        Command::Bosonic {
            phases,
            oracle,
            n_max,
            occupation,
            common,
        } => run_bosonic(phases, *oracle, *n_max, *occupation, common),
        Command::Nlft {
            input,
            re_min,
            re_max,
            re_steps,
            im_min,
            im_max,
            im_steps,
            common,
        } => run_nlft(
            input, *re_min, *re_max, *re_steps, *im_min, *im_max, *im_steps, common,
        ),
        Command::ZsResidual {
            wave,
            equation,
            lambda,
            levels,
            common,
        } => run_zs_residual(wave, equation, *lambda, *levels, common),
        Command::MoebiusFlow { phases, z0, common } => run_moebius_flow(phases, z0, common),
        Command::Calibrate {
            max_d,
            trials,
            seed,
            common,
        } => run_calibrate(*max_d, *trials, *seed, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
