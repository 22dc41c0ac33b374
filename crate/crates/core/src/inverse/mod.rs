//! Recovering `b` from a prescribed cone-volume vector.

mod family;
mod newton;

pub use family::{dimension_probe, feasibility_scan, scaling_family, ScanVerdict};
pub use newton::{jacobian, residual, solve, Solution, SolutionFamily, SolverOptions};

use thiserror::Error;

use crate::polytope::{NormalMatrix, PolytopeError};
use crate::semialg::SemialgError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InverseError {
    #[error("target has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("target entry {index} = {value} is negative")]
    NegativeTarget { index: usize, value: f64 },
    #[error("target sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("the support of the target does not positively span")]
    SupportNotSpanning,
    #[error("no start converged; best residual {best_residual:.3e}")]
    NoConvergence { best_residual: f64, best_b: Vec<f64> },
    #[error("the normals are irreducible, there is no scaling family")]
    Irreducible,
    #[error("block {block} does not exist (there are {blocks})")]
    NoSuchBlock { block: usize, blocks: usize },
    #[error("b is on the boundary of its type cone")]
    OnTypeConeBoundary,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Semialg(#[from] SemialgError),
}

/// `gamma(U, b) = target` with a normalized, non-negative target.
#[derive(Clone, Debug)]
pub struct InverseProblem {
    pub u: NormalMatrix,
    pub target: Vec<f64>,
}

impl InverseProblem {
    pub fn new(u: NormalMatrix, target: Vec<f64>) -> Result<Self, InverseError> {
        if target.len() != u.len() {
            return Err(InverseError::DimensionMismatch { expected: u.len(), found: target.len() });
        }
        if let Some((index, &value)) = target.iter().enumerate().find(|(_, g)| !(**g >= 0.0)) {
            return Err(InverseError::NegativeTarget { index, value });
        }
        let sum: f64 = target.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(InverseError::NotNormalized { sum });
        }
        Ok(Self { u, target })
    }

    /// Indices with a positive target entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.target.len()).filter(|&i| self.target[i] > 0.0).collect()
    }
}
