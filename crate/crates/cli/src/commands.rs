//! The four subcommands. Each returns the rendered output and an exit code;
//! nothing is written until the whole computation has succeeded.

use std::time::Instant;

use fockforge::fock::Budget;
use fockforge::linalg::eigvalsh;
use fockforge::oneparticle::{
    bogoliubov_transform, build_dirac_1d, build_klein_gordon_1d, build_schrodinger_1d, free_dirac_dispersion,
    free_schrodinger_dispersion, LatticeConfig, LatticeModel, OperatorMatrix, DEFAULT_ZERO_TOL,
};
use fockforge::par::Execution;
use fockforge::physics::{equivalence_sweep, free_energy_report, SweepMember, ThermoParams, TraceOptions};
use fockforge::sampling::{random_hermitian, stream_rng};
use fockforge::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, ModelName, RunConfig};
use crate::error::CliError;
use crate::record::{csv_field, csv_number, exit_code, records_csv, render_records, Document, ResultRecord, Status};

/// Stream index for the random free-energy Hamiltonian, clear of the check streams.
const THERMO_STREAM: u64 = 1 << 16;

pub struct Outcome {
    pub text: String,
    pub exit_code: u8,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub format: Option<Format>,
    pub timing: bool,
}

fn format_of(cfg: &RunConfig, opts: &RunOptions, default: Format) -> Format {
    opts.format.or(cfg.output.format).unwrap_or(default)
}

#[derive(Serialize)]
struct SpectrumBody {
    model: &'static str,
    sites: usize,
    /// Which operator the eigenvalues belong to.
    operator: &'static str,
    eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    status: Status,
}

/// Constant `phi` and vanishing `A`: the spectrum is the free one shifted by `-e phi`.
fn uniform_shift(l: &LatticeConfig) -> Option<f64> {
    let phi0 = l.phi[0];
    let uniform = l.phi.iter().all(|&p| p == phi0) && l.vec_a.iter().all(|&a| a == 0.0);
    uniform.then_some(-l.charge * phi0)
}

pub fn spectrum(cfg: &RunConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let model = cfg.require_model("spectrum")?;
    let lattice = model.lattice();
    let shift = uniform_shift(&lattice);
    let (operator, eigenvalues, analytic) = match lattice.model {
        LatticeModel::Schrodinger1d => {
            let h = build_schrodinger_1d(&lattice)?;
            let free = free_schrodinger_dispersion(lattice.sites, lattice.spacing, lattice.mass);
            ("H", eigvalsh(h.entries()), shift.map(|s| free.iter().map(|e| e + s).collect()))
        }
        LatticeModel::Dirac1d => {
            let d = build_dirac_1d(&lattice)?;
            let free = free_dirac_dispersion(lattice.sites, lattice.spacing, lattice.mass);
            ("D", eigvalsh(d.entries()), shift.map(|s| free.iter().map(|e| e + s).collect()))
        }
        LatticeModel::KleinGordon1d => {
            let kg = build_klein_gordon_1d(&lattice)?;
            let bog = bogoliubov_transform(&kg.b2)?;
            let levels = eigvalsh(bog.k_hat.entries());
            let free_b = lattice.vec_a.iter().all(|&a| a == 0.0);
            let free = free_dirac_dispersion(lattice.sites, lattice.spacing, lattice.mass);
            ("diag(B,-B)", levels, free_b.then_some(free))
        }
    };
    let tol = cfg.tolerance("dispersion", 1e-10);
    let max_deviation = analytic.as_ref().map(|a: &Vec<f64>| {
        eigenvalues
            .iter()
            .zip(a)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    });
    let status = match max_deviation {
        Some(d) if d <= tol => Status::Pass,
        Some(_) => Status::Fail,
        None => Status::Skipped,
    };
    let code = if status == Status::Fail { 1 } else { 0 };
    let text = match format_of(cfg, opts, Format::Json) {
        Format::Json => {
            let body = SpectrumBody {
                model: lattice.model.name(),
                sites: lattice.sites,
                operator,
                eigenvalues,
                tolerance: max_deviation.map(|_| tol),
                analytic,
                max_deviation,
                status,
            };
            Document::new("spectrum", cfg.digest(), cfg.seed, body).to_json()
        }
        Format::Csv => {
            let mut out = String::from("index,eigenvalue,analytic,deviation\n");
            for (i, e) in eigenvalues.iter().enumerate() {
                let (a, d) = match &analytic {
                    Some(a) => (csv_number(a[i]), csv_number((e - a[i]).abs())),
                    None => (String::new(), String::new()),
                };
                out.push_str(&format!("{i},{},{a},{d}\n", csv_number(*e)));
            }
            out
        }
    };
    Ok(Outcome { text, exit_code: code })
}

pub fn verify(cfg: &RunConfig, opts: &RunOptions, budget: Budget) -> Result<Outcome, CliError> {
    let digest = cfg.digest();
    let records: Vec<ResultRecord> = cfg
        .suite
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let record = check.run(cfg, &digest, budget)?;
            Ok(if opts.timing {
                ResultRecord {
                    wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
                    ..record
                }
            } else {
                record
            })
        })
        .collect::<Result<_, CliError>>()?;
    let text = render_records("verify", &digest, cfg.seed, &records, format_of(cfg, opts, Format::Json));
    Ok(Outcome {
        text,
        exit_code: exit_code(&records),
    })
}

fn thermo_hamiltonian(cfg: &RunConfig) -> Result<OperatorMatrix, CliError> {
    let thermo = cfg.thermo.as_ref().expect("checked by caller");
    if let Some(levels) = &thermo.levels {
        let diag = fockforge::linalg::CVector::from_iterator(levels.len(), levels.iter().map(|&e| fockforge::linalg::c(e, 0.0)));
        return Ok(OperatorMatrix::from_matrix(fockforge::linalg::CMatrix::from_diagonal(&diag))?);
    }
    if let Some(n) = thermo.random_modes {
        let mut rng = stream_rng(cfg.seed, THERMO_STREAM);
        return Ok(OperatorMatrix::from_matrix(random_hermitian(n, &mut rng))?);
    }
    let model = cfg.require_model("free-energy without thermo.levels or thermo.random_modes")?;
    let lattice = model.lattice();
    Ok(match model.model {
        ModelName::Schrodinger1d => build_schrodinger_1d(&lattice)?,
        ModelName::Dirac1d => build_dirac_1d(&lattice)?,
        ModelName::KleinGordon1d => {
            return Err(CliError::Config("free-energy does not accept model kleingordon1d".into()));
        }
    })
}

#[derive(Serialize)]
struct TableRow {
    route: &'static str,
    value: Option<f64>,
}

#[derive(Serialize)]
struct FreeEnergyBody<'a> {
    statistics: &'static str,
    beta: f64,
    mu: f64,
    table: Vec<TableRow>,
    records: &'a [ResultRecord],
}

pub fn free_energy(cfg: &RunConfig, opts: &RunOptions, budget: Budget) -> Result<Outcome, CliError> {
    let thermo = cfg
        .thermo
        .as_ref()
        .ok_or_else(|| CliError::Config("free-energy needs a [thermo] section".into()))?;
    let h = thermo_hamiltonian(cfg)?;
    let stats = cfg.statistics();
    let params = ThermoParams::new(thermo.beta, thermo.mu, stats)?;
    let trace = TraceOptions {
        cap: cfg.boson_cap,
        budget,
        exec: Execution::default(),
    };
    let digest = cfg.digest();
    let base_tol = cfg.tolerance("free_energy", 1e-10);
    let record = ResultRecord::new("free_energy", &digest);
    let (record, table) = match free_energy_report(&h, &params, Some(&trace)) {
        Ok(report) => {
            let mut r = record.measure("value_formula", report.value_formula);
            if let Some(t) = report.value_trace {
                r = r.measure("value_trace", t);
            }
            if let Some(d) = report.discrepancy {
                r = r.measure("discrepancy", d);
            }
            if let Some(b) = report.truncation_bound {
                r = r.measure("truncation_bound", b);
            }
            let tol = base_tol + report.truncation_bound.unwrap_or(0.0);
            let r = if report.discrepancy.is_some() {
                r.gate(tol, &["discrepancy"])
            } else {
                r.with_status(Status::Skipped).detail("Fock trace route not feasible for this size")
            };
            let table = vec![
                TableRow {
                    route: "formula",
                    value: Some(report.value_formula),
                },
                TableRow {
                    route: "trace",
                    value: report.value_trace,
                },
            ];
            (r, table)
        }
        Err(e @ Error::Divergence { .. }) => (record.with_status(Status::Fail).detail(e.to_string()), Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let records = [record];
    let text = match format_of(cfg, opts, Format::Json) {
        Format::Json => {
            let body = FreeEnergyBody {
                statistics: stats.name(),
                beta: thermo.beta,
                mu: thermo.mu,
                table,
                records: &records,
            };
            Document::new("free-energy", digest.clone(), cfg.seed, body).to_json()
        }
        Format::Csv => records_csv(&records),
    };
    Ok(Outcome {
        text,
        exit_code: exit_code(&records),
    })
}

#[derive(Serialize)]
struct RefusalRow {
    label: String,
    eigenvalue: f64,
    zero_tol: f64,
}

#[derive(Serialize)]
struct EquivalenceBody<'a> {
    labels: Vec<String>,
    distances: Vec<Vec<Option<f64>>>,
    refused: Vec<RefusalRow>,
    records: &'a [ResultRecord],
}

pub fn equivalence(cfg: &RunConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let model = cfg.require_model("equivalence")?;
    if model.model != ModelName::Dirac1d {
        return Err(CliError::Config("equivalence needs model dirac1d".into()));
    }
    if cfg.family.len() < 2 {
        return Err(CliError::Config("equivalence needs at least two [[family]] entries".into()));
    }
    let base = model.lattice();
    let family: Vec<SweepMember> = cfg
        .family
        .iter()
        .map(|m| {
            let mut config = base.clone();
            if let Some(phi) = &m.phi {
                config.phi = phi.clone();
            }
            if let Some(a) = &m.vec_a {
                config.vec_a = a.clone();
            }
            if let Some(mass) = m.mass {
                config.mass = mass;
            }
            config.validate().map_err(|e| CliError::Config(format!("family {:?}: {e}", m.label)))?;
            Ok(SweepMember {
                label: m.label.clone(),
                config,
            })
        })
        .collect::<Result<_, CliError>>()?;

    let table = equivalence_sweep(&family, DEFAULT_ZERO_TOL, Execution::default())?;
    let digest = cfg.digest();
    let mut records = Vec::new();
    let n = table.labels.len();
    for i in 0..n {
        for j in i + 1..n {
            let name = format!("hs_distance[{},{}]", table.labels[i], table.labels[j]);
            let record = ResultRecord::new(name, &digest);
            records.push(match table.distances[i][j] {
                Some(d) => record.measure("distance", d).with_status(Status::Pass),
                None => record.detail("spectral gap closed"),
            });
        }
    }
    let symmetry = table.symmetry_residual();
    records.push(
        ResultRecord::new("symmetry", &digest)
            .measure("residual", symmetry)
            .gate(cfg.tolerance("symmetry", 1e-14), &["residual"]),
    );

    let text = match format_of(cfg, opts, Format::Csv) {
        Format::Csv => {
            let mut out = String::from("label");
            for l in &table.labels {
                out.push(',');
                out.push_str(&csv_field(l));
            }
            out.push('\n');
            for (l, row) in table.labels.iter().zip(&table.distances) {
                out.push_str(&csv_field(l));
                for d in row {
                    out.push(',');
                    out.push_str(&d.map(csv_number).unwrap_or_else(|| "skipped".into()));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let body = EquivalenceBody {
                labels: table.labels.clone(),
                distances: table.distances.clone(),
                refused: table
                    .refused
                    .iter()
                    .map(|r| RefusalRow {
                        label: r.label.clone(),
                        eigenvalue: r.eigenvalue,
                        zero_tol: r.zero_tol,
                    })
                    .collect(),
                records: &records,
            };
            Document::new("equivalence", digest.clone(), cfg.seed, body).to_json()
        }
    };
    Ok(Outcome {
        text,
        exit_code: exit_code(&records),
    })
}
