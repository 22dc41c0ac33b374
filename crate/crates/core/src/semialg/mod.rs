//! Combinatorial types of `P(U, b)`, their type cones and the polynomial
//! systems describing cone-volume vectors on each cone.

mod polynomial;
mod system;
mod types;

pub use polynomial::{monomials_of_degree, round_sig, smt_decimal, Monomial, Polynomial};
pub use system::{build_system, Construction, SemialgSystem, HOLDOUT_TOL};
pub use types::{
    cone_matrix, detect_type, filter_full_facet_types, local_type_cone, perturbation_line, sample_type_cones,
    type_of_polytope, CombinatorialType, ConeRow, FacetSupport, TypeSample, FACET_TOL,
};

use thiserror::Error;

use crate::planar::PlanarError;
use crate::polytope::PolytopeError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemialgError {
    #[error("polytope has zero volume")]
    ZeroVolume,
    #[error("vertex on facets {vertex:?} is not simple")]
    NonSimpleType { vertex: Vec<usize> },
    #[error("interpolation failed: {detail}")]
    InterpolationIllConditioned { detail: String },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}
