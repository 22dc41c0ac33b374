use serde::Serialize;

use super::newton::{jacobian, rank_defect, solve, SolverOptions};
use super::{InverseError, InverseProblem};
use crate::matroid::MatroidData;
use crate::polytope::NormalMatrix;
use crate::semialg::detect_type;

/// Moves along the solution family of a reducible `U`: the coordinates of
/// `block` are multiplied by `lambda`, the others by
/// `lambda^(-r / (n - r))` with `r` the rank of the block, which keeps every
/// cone volume fixed.
pub fn scaling_family(u: &NormalMatrix, b: &[f64], lambda: f64, block: usize) -> Result<Vec<f64>, InverseError> {
    let data = MatroidData::new(u);
    if data.d() < 2 {
        return Err(InverseError::Irreducible);
    }
    let blocks = &data.partition;
    let chosen = blocks.get(block).ok_or(InverseError::NoSuchBlock { block, blocks: blocks.len() })?;
    let r = u.rank_of(chosen) as f64;
    let other = lambda.powf(-r / (u.dim() as f64 - r));
    Ok(b.iter().enumerate().map(|(i, x)| if chosen.contains(&i) { x * lambda } else { x * other }).collect())
}

/// Numeric nullity of the Jacobian of `b -> gamma(U, b)` at `b`.
///
/// Only meaningful strictly inside a full-facet type cone; the nullity is a
/// local proxy for the dimension of the solution set.
pub fn dimension_probe(u: &NormalMatrix, b: &[f64]) -> Result<usize, InverseError> {
    let t = detect_type(u, b)?;
    if !t.simple || !t.is_full_facet(u.len()) {
        return Err(InverseError::OnTypeConeBoundary);
    }
    Ok(rank_defect(&jacobian(u, b)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScanVerdict {
    Solved { b: Vec<f64>, residual: f64 },
    Unsolved { best_residual: f64 },
}

impl ScanVerdict {
    pub fn is_solved(&self) -> bool {
        matches!(self, ScanVerdict::Solved { .. })
    }
}

/// Runs the solver on every target of a grid.
pub fn feasibility_scan(
    u: &NormalMatrix,
    gammas: &[Vec<f64>],
    opts: &SolverOptions,
) -> Result<Vec<ScanVerdict>, InverseError> {
    gammas
        .iter()
        .map(|g| {
            let p = InverseProblem::new(u.clone(), g.clone())?;
            Ok(match solve(&p, opts) {
                Ok(fam) => {
                    let s = &fam.solutions[0];
                    ScanVerdict::Solved { b: s.b.clone(), residual: s.residual }
                }
                Err(InverseError::NoConvergence { best_residual, .. }) => ScanVerdict::Unsolved { best_residual },
                Err(e) => return Err(e),
            })
        })
        .collect()
}
