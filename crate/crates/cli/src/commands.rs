// SPDX-License-Identifier: Apache-2.0

use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde::Serialize;
use thiserror::Error;

use ucg::cayley::build_ucg;
use ucg::detect::{self, Classification, GridSpec, QfrCertificate};
use ucg::numtheory::gcd;
use ucg::spectral::{spectrum_via_ramanujan, CirculantSpectrum};
use ucg::time::TimeExpression;
use ucg::walk::{evolve_oracle, evolve_spectral, probability_profile};

use crate::output::{csv_table, emit, float, write_atomic};
use crate::range::NRange;
use crate::{Command, Format};

const MAX_N_VAR: &str = "UCG_MAX_N";
const DEFAULT_MAX_N: usize = 4096;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ucg::Error),
    #[error("n = {n} exceeds {MAX_N_VAR} = {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid {MAX_N_VAR}: {0:?}")]
    BadMaxN(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("write failed: {0}")]
    Stdout(io::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn max_n() -> Result<usize> {
    match std::env::var(MAX_N_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| CliError::BadMaxN(raw)),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn spectrum_for(n: usize) -> Result<CirculantSpectrum> {
    let max = max_n()?;
    if n > max {
        return Err(CliError::TooLarge { n, max });
    }
    Ok(spectrum_via_ramanujan(n)?)
}

fn write_to(path: Option<&Path>, contents: &str) -> Result<()> {
    emit(path, contents).map_err(|source| match path {
        Some(p) => CliError::Io {
            path: p.to_path_buf(),
            source,
        },
        None => CliError::Stdout(source),
    })
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Spectrum { n, format } => spectrum(n, format),
        Command::Evolve {
            n,
            t,
            u,
            grid,
            oracle,
            format,
            output,
        } => evolve(n, t.as_deref(), u, grid, oracle, format, output.as_deref()),
        Command::Detect { n, u, v, t, tol } => detect(n, u, v, &t, tol),
        Command::Scan {
            n,
            grid,
            tol,
            output,
            emit_profile,
            v,
        } => scan(n, grid, tol, output.as_deref(), emit_profile, v),
        Command::Verify { n, tol, output } => verify(n, tol, output.as_deref()),
    }
}

fn spectrum(n: usize, format: Format) -> Result<ExitCode> {
    let spec = spectrum_for(n)?;
    let text = match format {
        Format::Json => ucg::json::to_string(&spec) + "\n",
        Format::Csv => {
            let header = ["d", "gcd", "lambda", "multiplicity"].map(String::from);
            let rows = spec.eigenvalues().iter().enumerate().map(|(d, &l)| {
                vec![
                    d.to_string(),
                    gcd(d as u64, n as u64).to_string(),
                    l.to_string(),
                    spec.multiplicity(l).to_string(),
                ]
            });
            csv_table(&header, rows).map_err(CliError::Stdout)?
        }
    };
    write_to(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_time(raw: &str) -> Result<TimeExpression> {
    Ok(TimeExpression::parse(raw)?)
}

#[allow(clippy::too_many_arguments)]
fn evolve(
    n: usize,
    t: Option<&str>,
    u: usize,
    grid: usize,
    oracle: bool,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let spec = spectrum_for(n)?;
    let text = match format {
        Format::Json => {
            let t = parse_time(t.ok_or_else(|| CliError::Usage("--t is required for JSON output".into()))?)?;
            let snapshot = if oracle {
                evolve_oracle(&build_ucg(n)?, t.time)?
            } else {
                evolve_spectral(&spec, t.time)
            };
            ucg::json::to_string(&snapshot) + "\n"
        }
        Format::Csv => {
            if grid == 0 {
                return Err(CliError::Usage("--grid must be positive".into()));
            }
            let profile = probability_profile(&spec, u, grid)?;
            let header: Vec<String> = std::iter::once("t".to_string())
                .chain((0..n).map(|v| format!("p{v}")))
                .collect();
            let rows = profile.into_iter().map(|(t, probs)| {
                std::iter::once(float(t))
                    .chain(probs.into_iter().map(float))
                    .collect()
            });
            csv_table(&header, rows).map_err(CliError::Stdout)?
        }
    };
    write_to(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn detect(n: usize, u: usize, v: usize, t: &str, tol: f64) -> Result<ExitCode> {
    let spec = spectrum_for(n)?;
    let t = parse_time(t)?;
    let cert = detect::detect_at(&spec, u, v, t.time, tol)?;
    write_to(None, &(ucg::json::to_string(&cert) + "\n"))?;
    Ok(if cert.classification == Classification::None {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// All revival hits of pairs `(0, v)` for one `n`.
#[derive(Debug, Serialize)]
struct ScanSummary {
    n: usize,
    grid: GridSpec,
    tol: f64,
    refined: bool,
    rejected_by_oracle: usize,
    hits: Vec<QfrCertificate>,
}

fn scan_one(n: usize, grid: usize, tol: f64) -> Result<ScanSummary> {
    let spec = spectrum_for(n)?;
    let reports = detect::scan_all_pairs(&spec, grid, tol)?;
    let grid_spec = GridSpec {
        count: grid,
        start: 0.0,
        end: std::f64::consts::TAU,
    };
    Ok(ScanSummary {
        n,
        grid: grid_spec,
        tol,
        refined: true,
        rejected_by_oracle: reports.iter().map(|r| r.rejected_by_oracle).sum(),
        hits: reports.into_iter().flat_map(|r| r.hits).collect(),
    })
}

fn scan(
    range: NRange,
    grid: usize,
    tol: f64,
    output: Option<&Path>,
    emit_profile: bool,
    v: Option<usize>,
) -> Result<ExitCode> {
    if emit_profile {
        if !range.is_single() {
            return Err(CliError::Usage("--emit-profile takes a single n".into()));
        }
        let n = range.start;
        let spec = spectrum_for(n)?;
        let v = v.unwrap_or(if n % 2 == 0 { n / 2 } else { 1 });
        let profile = detect::scan_profile(&spec, 0, v, grid)?;
        let header = ["t", "alpha_sq", "beta_sq", "residual"].map(String::from);
        let rows = profile
            .iter()
            .map(|p| vec![float(p.t), float(p.alpha_sq), float(p.beta_sq), float(p.residual)]);
        let text = csv_table(&header, rows).map_err(CliError::Stdout)?;
        write_to(output, &text)?;
        return Ok(ExitCode::SUCCESS);
    }

    // Validate the whole range before doing any work.
    for n in range.iter() {
        spectrum_for(n)?;
    }
    if let (Some(dir), false) = (output, range.is_single()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let mut stdout_text = String::new();
    for n in range.iter() {
        let line = ucg::json::to_string(&scan_one(n, grid, tol)?) + "\n";
        match output {
            None => stdout_text.push_str(&line),
            Some(path) => {
                let target = if range.is_single() {
                    path.to_path_buf()
                } else {
                    path.join(format!("scan-n{n}.json"))
                };
                write_atomic(&target, line.as_bytes()).map_err(|source| CliError::Io {
                    path: target.clone(),
                    source,
                })?;
            }
        }
    }
    if output.is_none() {
        write_to(None, &stdout_text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(range: NRange, tol: f64, output: Option<&Path>) -> Result<ExitCode> {
    if range.start < 2 {
        return Err(CliError::Usage("verify needs n >= 2".into()));
    }
    for n in range.iter() {
        spectrum_for(n)?;
    }
    let report = detect::verify_theorems(range.iter(), tol)?;
    write_to(output, &report.to_json_lines())?;
    if report.all_pass() {
        return Ok(ExitCode::SUCCESS);
    }
    for e in report.entries.iter().filter(|e| !e.pass) {
        let failed: Vec<&str> = [
            ("odd_no_qfr", e.odd_no_qfr),
            ("strongly_cospectral", e.strongly_cospectral),
            ("squarefree_parity", e.squarefree_parity),
            ("antipodal", e.antipodal),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect();
        eprintln!("n = {}: failed {}", e.n, failed.join(", "));
    }
    Ok(ExitCode::from(1))
}
