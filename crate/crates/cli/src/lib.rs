//! Command-line front end for `conevol`.
//!
//! Every command reads one JSON document (see `docs/formats.md`), writes one
//! JSON, CSV or text document, and is deterministic for a fixed `--seed`.

mod error;
pub mod fixtures;
mod input;
pub mod suite;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use conevol::inverse::{solve, InverseProblem, SolverOptions};
use conevol::matroid::{build_pscc, scc_check_with, MatroidData};
use conevol::planar::{figure1_samples, trapezoid_branch, TrapezoidLabels};
use conevol::polytope::{cone_volume_vector, HPolytope, Tolerances};
use conevol::semialg::{build_system, sample_type_cones};
use serde::Serialize;
use serde_json::json;

pub use error::CliError;
pub use input::Input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    ConeVolume,
    Pscc,
    SccCheck,
    Typecones,
    EmitSystem,
    SolveInverse,
    MembershipTrapezoid,
    #[value(name = "figure1-data")]
    Figure1Data,
    PaperSuite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "conevol",
    version,
    about = "Cone-volume vectors, subspace concentration and the inverse problem for polytopes P(U, b)"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON input document.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_incidence: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_residual: f64,
    /// Number of multistarts for solve-inverse.
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// emit-system: write SMT-LIB text instead of JSON.
    #[arg(long)]
    pub smtlib: bool,
    /// solve-inverse: target vector as a JSON array, overriding `gamma` from the input.
    #[arg(long)]
    pub gamma: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            output: None,
            seed: 0,
            tol_incidence: 1e-9,
            tol_residual: 1e-10,
            starts: None,
            format: None,
            smtlib: false,
            gamma: None,
        }
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances { incidence: self.tol_incidence, ..Tolerances::default() }
    }

    fn solver_options(&self) -> SolverOptions {
        let d = SolverOptions::default();
        SolverOptions { starts: self.starts.unwrap_or(d.starts), seed: self.seed, residual_tol: self.tol_residual, ..d }
    }
}

/// The rendered document and the exit status it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

/// Executes the command and writes its output; returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = execute(config).and_then(|out| {
        match &config.output {
            Some(path) => fs::write(path, &out.text).map_err(|source| CliError::Io { path: path.clone(), source })?,
            None => print!("{}", out.text),
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Executes the command without touching the output path.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let input = match &config.input {
        Some(path) => Some(Input::from_path(path)?),
        None => None,
    };
    let need = || input.as_ref().ok_or_else(|| CliError::Invalid(format!("{:?} needs --input", config.command)));
    let format = config.format.unwrap_or(match config.command {
        Command::Figure1Data => Format::Csv,
        _ => Format::Json,
    });
    let csv_unsupported = || CliError::Invalid(format!("{:?} has no CSV form", config.command));
    let tol = config.tolerances();
    match config.command {
        Command::ConeVolume => {
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let b = inp.require_b()?;
            let p = HPolytope::build_with(&u, b, &tol)?;
            let g = cone_volume_vector(&p);
            let normalized: Vec<f64> = g.gamma.iter().map(|x| x / g.total).collect();
            match format {
                Format::Json => json_text(&json!({
                    "n": u.dim(),
                    "m": u.len(),
                    "b": b,
                    "volume": p.volume(),
                    "facet_measures": p.facet_measures(),
                    "gamma": g.gamma,
                    "total": g.total,
                    "normalized": normalized,
                    "vertices": p.vertices().iter().map(|v| v.as_slice().to_vec()).collect::<Vec<_>>(),
                    "simple": p.is_simple(),
                })),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "b", "facet_measure", "gamma", "normalized"])?;
                    for i in 0..u.len() {
                        w.serialize((i, b[i], p.facet_volume(i), g.gamma[i], normalized[i]))?;
                    }
                    csv_text(w)
                }
            }
        }
        Command::Pscc | Command::SccCheck => {
            if format == Format::Csv {
                return Err(csv_unsupported());
            }
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let data = MatroidData::new(&u);
            let mut doc = json!({
                "bases": data.bases,
                "flats": data.flats,
                "separators": data.separators,
                "partition": data.partition,
            });
            if config.command == Command::Pscc {
                let p = build_pscc(&u);
                doc["vertices"] = json!(p.vertices);
                doc["equalities"] = json!(p.equalities);
                doc["inequalities"] = json!(p.inequalities);
                doc["dim"] = json!(p.dim);
            } else {
                let gamma = inp.require_gamma()?;
                doc["verdict"] = serde_json::to_value(scc_check_with(&data, gamma, config.tol_incidence)?)
                    .expect("verdicts serialize");
            }
            json_text(&doc)
        }
        Command::Typecones => {
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let trials = inp.trials.unwrap_or(400);
            let types = sample_type_cones(&u, trials, config.seed);
            let m = u.len();
            match format {
                Format::Json => {
                    let rows: Vec<_> = types
                        .iter()
                        .map(|t| {
                            let mut v = serde_json::to_value(t).expect("type samples serialize");
                            v["full_facet"] = json!(t.facets.len() == m);
                            v
                        })
                        .collect();
                    json_text(&json!({
                        "trials": trials,
                        "coverage": format!("at least {} types", types.len()),
                        "types": rows,
                    }))
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["type_id", "full_facet", "facets", "representative"])?;
                    for t in &types {
                        w.write_record([
                            t.type_id.clone(),
                            (t.facets.len() == m).to_string(),
                            join(&t.facets),
                            join(&t.representative),
                        ])?;
                    }
                    csv_text(w)
                }
            }
        }
        Command::EmitSystem => {
            if format == Format::Csv {
                return Err(csv_unsupported());
            }
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let sys = build_system(&u, inp.require_b()?)?;
            if config.smtlib {
                Ok(Outcome::ok(sys.to_smtlib()))
            } else {
                json_text(&sys)
            }
        }
        Command::SolveInverse => {
            if format == Format::Csv {
                return Err(csv_unsupported());
            }
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let gamma = match &config.gamma {
                Some(text) => serde_json::from_str::<Vec<f64>>(text)
                    .map_err(|source| CliError::Json { origin: "--gamma".into(), source })?,
                None => inp.require_gamma()?.to_vec(),
            };
            let family = solve(&InverseProblem::new(u, gamma)?, &config.solver_options())?;
            json_text(&family)
        }
        Command::MembershipTrapezoid => {
            if format == Format::Csv {
                return Err(csv_unsupported());
            }
            let inp = need()?;
            let u = inp.normals(&tol)?;
            let labels = TrapezoidLabels::new(&u, inp.labels.unwrap_or([0, 1, 2, 3]))?;
            let gamma = inp.require_gamma()?;
            let member = conevol::planar::trapezoid_membership(gamma, &labels)?;
            json_text(&json!({
                "labels": labels.columns,
                "member": member,
                "branch": trapezoid_branch(labels.relabel(gamma)),
            }))
        }
        Command::Figure1Data => {
            let count = input.as_ref().and_then(|i| i.count).unwrap_or(2000);
            let samples = figure1_samples(count, config.seed);
            match format {
                Format::Json => json_text(&samples),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for s in &samples {
                        w.serialize(s)?;
                    }
                    csv_text(w)
                }
            }
        }
        Command::PaperSuite => {
            let rows = suite::paper_suite(&config.solver_options());
            let status = if rows.iter().all(|r| r.passed) { 0 } else { 1 };
            let text = match config.format {
                None => suite::render_table(&rows),
                Some(Format::Json) => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
                Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r)?;
                    }
                    csv_text(w)?.text
                }
            };
            Ok(Outcome { text, status })
        }
    }
}

fn json_text<T: Serialize + ?Sized>(value: &T) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(serde_json::to_string_pretty(value).expect("output serializes") + "\n"))
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> Result<Outcome, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Outcome::ok(String::from_utf8(bytes).expect("csv output is utf-8")))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
