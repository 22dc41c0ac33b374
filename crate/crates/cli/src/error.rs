use std::path::PathBuf;

use conevol::inverse::InverseError;
use conevol::matroid::MatroidError;
use conevol::planar::PlanarError;
use conevol::polytope::PolytopeError;
use conevol::semialg::SemialgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    /// The message of `serde_json` already carries line and column.
    #[error("input: {origin}: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("input: {0}")]
    Invalid(String),
    #[error("polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("matroid: {0}")]
    Matroid(#[from] MatroidError),
    #[error("planar: {0}")]
    Planar(#[from] PlanarError),
    #[error("semialg: {0}")]
    Semialg(#[from] SemialgError),
    #[error("inverse: {0}")]
    Inverse(#[from] InverseError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 3 when the solver gave up, 2 for everything else: bad paths, bad
    /// JSON and inputs rejected by the library.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inverse(InverseError::NoConvergence { .. }) => 3,
            _ => 2,
        }
    }
}
