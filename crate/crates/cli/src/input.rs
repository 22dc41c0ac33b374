use std::fs;
use std::path::Path;

use conevol::polytope::{NormalMatrix, Tolerances};
use serde::Deserialize;

use crate::CliError;

/// The single input document shared by all commands. Which fields are
/// required depends on the command.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    /// Columns `u_1..u_m`, each of length `n`.
    #[serde(default)]
    pub normals: Vec<Vec<f64>>,
    pub b: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    /// membership-trapezoid: columns carrying the labels 1..4.
    pub labels: Option<[usize; 4]>,
    /// typecones: number of random right-hand sides.
    pub trials: Option<u64>,
    /// figure1-data: number of samples.
    pub count: Option<usize>,
}

impl Input {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|source| CliError::Json { origin: origin.to_string(), source })
    }

    pub fn normals(&self, tol: &Tolerances) -> Result<NormalMatrix, CliError> {
        if self.normals.is_empty() {
            return Err(CliError::Invalid("missing field `normals`".into()));
        }
        Ok(NormalMatrix::with_tolerances(self.normals.clone(), tol)?)
    }

    pub fn require_b(&self) -> Result<&[f64], CliError> {
        self.b.as_deref().ok_or_else(|| CliError::Invalid("missing field `b`".into()))
    }

    pub fn require_gamma(&self) -> Result<&[f64], CliError> {
        self.gamma.as_deref().ok_or_else(|| CliError::Invalid("missing field `gamma`".into()))
    }
}
