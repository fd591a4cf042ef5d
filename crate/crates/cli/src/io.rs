//! Input parsing and output formatting shared by the subcommands.
//!
//! Command-line complex numbers use the compact `a+bi` form with no spaces;
//! files carry `[re, im]` pairs. All CSV floats are printed with 17
//! significant digits so doubles round-trip exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sl2cqsp_core::qsp::{ComplexSignal, PhaseSchedule};
use sl2cqsp_core::spacetime::{Boundary, FloquetParams};
use sl2cqsp_core::Complex64;

use crate::CliError;

/// `a+bi` with no spaces; plain reals and pure imaginaries are accepted.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(CliError::arg("empty complex literal"));
    }
    let bad = || {
        CliError::arg(format!(
            "cannot parse complex number '{text}' (expected a+bi)"
        ))
    };
    if let Some(imag_part) = s.strip_suffix(['i', 'I']) {
        // find the split point: a sign that is not an exponent sign and not
        // the leading sign
        let bytes = imag_part.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = imag_part[..k].parse().map_err(|_| bad())?;
                let im_text = &imag_part[k..];
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                // pure imaginary: "bi"
                let im: f64 = if imag_part.is_empty() {
                    1.0
                } else if imag_part == "-" {
                    -1.0
                } else {
                    imag_part.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// 17 significant digits: exact round-trip for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_pair(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    phases: Vec<f64>,
    delta: f64,
    eta: f64,
}

/// Schedule document: {"phases": [..], "delta": .., "eta": ..} in radians.
pub fn load_schedule(path: &Path) -> Result<(PhaseSchedule, ComplexSignal), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::arg(format!("cannot read {}: {e}", path.display())))?;
    let parsed: ScheduleFile = serde_json::from_str(&text)
        .map_err(|e| CliError::arg(format!("malformed schedule file {}: {e}", path.display())))?;
    let schedule = PhaseSchedule::new(parsed.phases).map_err(CliError::from)?;
    let signal = ComplexSignal::new(parsed.delta, parsed.eta).map_err(CliError::from)?;
    Ok((schedule, signal))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FloquetFile {
    n_sites: usize,
    theta: f64,
    alphas: Vec<f64>,
    phis: Vec<f64>,
    #[serde(default)]
    boundary: Option<String>,
}

/// Floquet parameter document:
/// {"n_sites": .., "theta": .., "alphas": [..], "phis": [..], "boundary": "periodic"|"open"}.
pub fn load_floquet(path: &Path) -> Result<FloquetParams, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::arg(format!("cannot read {}: {e}", path.display())))?;
    let parsed: FloquetFile = serde_json::from_str(&text)
        .map_err(|e| CliError::arg(format!("malformed parameter file {}: {e}", path.display())))?;
    let boundary = match parsed.boundary.as_deref() {
        None | Some("periodic") => Boundary::Periodic,
        Some("open") => Boundary::Open,
        Some(other) => {
            return Err(CliError::arg(format!(
                "unknown boundary '{other}' (expected 'periodic' or 'open')"
            )))
        }
    };
    FloquetParams::new(
        parsed.n_sites,
        parsed.theta,
        parsed.alphas,
        parsed.phis,
        boundary,
    )
    .map_err(CliError::from)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NlftFile {
    psi: Vec<f64>,
    delta: f64,
    eta: f64,
}

pub fn load_nlft_input(path: &Path) -> Result<(Vec<f64>, f64, f64), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::arg(format!("cannot read {}: {e}", path.display())))?;
    let parsed: NlftFile = serde_json::from_str(&text)
        .map_err(|e| CliError::arg(format!("malformed input file {}: {e}", path.display())))?;
    Ok((parsed.psi, parsed.delta, parsed.eta))
}

/// Wave CSV with header `x,t,re_f,im_f`; rows must tile a complete uniform
/// grid (any row order).
pub fn load_wave_csv(path: &Path) -> Result<sl2cqsp_core::lax::WaveSamples, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::arg(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.starts_with(|c: char| c.is_alphabetic()) {
            continue; // header
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(CliError::arg(format!(
                "{}:{}: expected 4 columns (x,t,re_f,im_f)",
                path.display(),
                lineno + 1
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.parse().map_err(|_| {
                CliError::arg(format!(
                    "{}:{}: bad number '{s}'",
                    path.display(),
                    lineno + 1
                ))
            })
        };
        rows.push((
            parse(fields[0])?,
            parse(fields[1])?,
            Complex64::new(parse(fields[2])?, parse(fields[3])?),
        ));
    }
    if rows.is_empty() {
        return Err(CliError::arg("wave file contains no samples"));
    }

    let mut xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    xs.dedup();
    let mut ts: Vec<f64> = rows.iter().map(|r| r.1).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    ts.dedup();
    if xs.len() * ts.len() != rows.len() {
        return Err(CliError::arg(format!(
            "samples do not tile a complete grid: {} x-values times {} t-values != {} rows",
            xs.len(),
            ts.len(),
            rows.len()
        )));
    }
    let index_of = |grid: &[f64], v: f64| -> Result<usize, CliError> {
        grid.binary_search_by(|g| g.partial_cmp(&v).expect("finite"))
            .map_err(|_| CliError::arg("inconsistent grid coordinates"))
    };
    let mut values = vec![Complex64::new(f64::NAN, 0.0); rows.len()];
    for (x, t, f) in rows {
        let ix = index_of(&xs, x)?;
        let it = index_of(&ts, t)?;
        values[it * xs.len() + ix] = f;
    }
    sl2cqsp_core::lax::WaveSamples::grid(xs, ts, values).map_err(CliError::from)
}

/// Write to the output path, or stdout when absent.
pub fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::arg(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
