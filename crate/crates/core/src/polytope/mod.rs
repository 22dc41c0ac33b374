//! Floating-point geometry of H-polytopes `P(U, b) = {x : U^T x <= b}`.
//!
//! Vertices are enumerated by brute force over all `n`-subsets of the
//! constraint hyperplanes; facet measures and volumes come from a recursive
//! pyramid decomposition in orthonormal facet charts.

mod cone_volume;
mod hpolytope;
mod normals;
mod witness;

pub use cone_volume::{
    cone_volume_vector, continuity_probe, normalize_to_unit_volume, translate_cone_volumes, translate_to_centroid,
    ConeVolumeVector,
};
pub use hpolytope::{build_polytope, HPolytope};
pub use normals::{canonicalize, canonicalize_with, NormalMatrix};
pub use witness::{sparse_vertex_witness, VertexWitness};

use thiserror::Error;

/// Numeric tolerances for incidence and normalization decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Feasibility / incidence tolerance, scaled by `max(1, |b|_inf)`.
    pub incidence: f64,
    /// Allowed deviation of a column norm from 1.
    pub normalization: f64,
    /// Minimal distance between two distinct normals.
    pub distinct: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { incidence: 1e-9, normalization: 1e-12, distinct: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("normal matrix has no columns")]
    Empty,
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch { what: String, expected: usize, found: usize },
    #[error("need at least n+1 = {} normals in dimension {n}, got {m}", n + 1)]
    TooFewColumns { n: usize, m: usize },
    #[error("column {column} is zero")]
    ZeroColumn { column: usize },
    #[error("column {column} has norm {norm}, expected 1")]
    NotUnit { column: usize, norm: f64 },
    #[error("columns {first} and {second} point in the same direction")]
    DuplicateDirection { first: usize, second: usize },
    #[error("normals do not positively span R^n{}", match column { Some(j) => format!(" (-u_{j} is not in their positive hull)"), None => " (rank deficient)".to_string() })]
    NotPositivelySpanning { column: Option<usize> },
    #[error("right-hand side entry b_{index} = {value} is negative")]
    NegativeRhs { index: usize, value: f64 },
    #[error("polytope has zero volume")]
    ZeroVolume,
    #[error("translation moves the origin outside the body (entry {index} becomes {value})")]
    OriginLeavesBody { index: usize, value: f64 },
    #[error("probe leaves the nonnegative orthant at step {step}")]
    InvalidProbe { step: f64 },
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::NormalMatrix;
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn square() -> NormalMatrix {
        NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap()
    }

    pub fn right_triangle() -> NormalMatrix {
        NormalMatrix::new(vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]]).unwrap()
    }
}
