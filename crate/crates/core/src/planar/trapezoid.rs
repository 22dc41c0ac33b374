use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use super::PlanarError;
use crate::polytope::NormalMatrix;

const MEMBERSHIP_TOL: f64 = 1e-12;

/// Maps the labels `1..4` of the closed-form description to column indices.
///
/// Label 3 must be the antipode of label 1 and labels 2 and 4 must make a
/// positive inner product with label 1, so the two slanted sides converge
/// towards the facet with label 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrapezoidLabels {
    pub columns: [usize; 4],
}

impl TrapezoidLabels {
    /// Labels used when the columns already come in that order.
    pub const IDENTITY: TrapezoidLabels = TrapezoidLabels { columns: [0, 1, 2, 3] };

    pub fn new(u: &NormalMatrix, columns: [usize; 4]) -> Result<Self, PlanarError> {
        if u.dim() != 2 {
            return Err(PlanarError::NotPlanar { n: u.dim() });
        }
        if u.len() != 4 {
            return Err(PlanarError::DimensionMismatch { expected: 4, found: u.len() });
        }
        let mut sorted = columns;
        sorted.sort_unstable();
        if sorted != [0, 1, 2, 3] {
            return Err(PlanarError::NotTrapezoid { reason: format!("labels {columns:?} are not a permutation") });
        }
        let c = |k: usize| u.column(columns[k]);
        if (c(0) + c(2)).norm() > 1e-9 {
            return Err(PlanarError::NotTrapezoid { reason: "u_3 != -u_1".into() });
        }
        if !(c(0).dot(c(1)) > 0.0 && c(0).dot(c(3)) > 0.0) {
            return Err(PlanarError::NotTrapezoid { reason: "<u_1, u_2> and <u_1, u_4> must be positive".into() });
        }
        Ok(Self { columns })
    }

    /// `gamma` permuted into label order.
    pub fn relabel(&self, gamma: &[f64]) -> [f64; 4] {
        self.columns.map(|i| gamma[i])
    }
}

/// Which part of the union a cone-volume vector falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrapezoidBranch {
    /// `g1 + g3 < g2 + g4`.
    A,
    /// `g1 + g3 >= g2 + g4 >= 2 sqrt(g1 g3)` and `g1 < g3`.
    B,
    Outside,
}

/// Branch of a positive vector given in label order.
pub fn trapezoid_branch(g: [f64; 4]) -> TrapezoidBranch {
    let (odd, even) = (g[0] + g[2], g[1] + g[3]);
    if odd < even {
        TrapezoidBranch::A
    } else if even >= 2.0 * (g[0] * g[2]).sqrt() - MEMBERSHIP_TOL && g[0] < g[2] {
        TrapezoidBranch::B
    } else {
        TrapezoidBranch::Outside
    }
}

/// Closed-form membership of a positive, normalized `gamma` in the
/// cone-volume set of a trapezoid.
pub fn trapezoid_membership(gamma: &[f64], labels: &TrapezoidLabels) -> Result<bool, PlanarError> {
    if gamma.len() != 4 {
        return Err(PlanarError::DimensionMismatch { expected: 4, found: gamma.len() });
    }
    if let Some((index, &value)) = gamma.iter().enumerate().find(|(_, &g)| !(g > 0.0)) {
        return Err(PlanarError::NotPositive { index, value });
    }
    let sum: f64 = gamma.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(PlanarError::NotNormalized { sum });
    }
    Ok(trapezoid_branch(labels.relabel(gamma)) != TrapezoidBranch::Outside)
}

/// One point of the plot data: `(g1, g3, g2)` and its branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure1Sample {
    pub subset: TrapezoidBranch,
    pub gamma1: f64,
    pub gamma3: f64,
    pub gamma2: f64,
}

/// Draws uniform points of the open simplex and keeps those in branch A or B.
pub fn figure1_samples(count: usize, seed: u64) -> Vec<Figure1Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w: [f64; 4] = std::array::from_fn(|_| Exp1.sample(&mut rng));
        let s: f64 = w.iter().sum();
        let g = w.map(|x| x / s);
        let branch = trapezoid_branch(g);
        if branch != TrapezoidBranch::Outside {
            out.push(Figure1Sample { subset: branch, gamma1: g[0], gamma3: g[2], gamma2: g[1] });
        }
    }
    out
}
