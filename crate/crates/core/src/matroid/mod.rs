//! Linear matroid of a normal matrix: bases, flats, separators, the
//! irreducible partition and the subspace concentration polytope.

mod brute;
mod data;
mod pscc;
mod scc;
pub mod vertex_enum;

pub use brute::brute_force_scc;
pub use data::{
    block_bases, block_is_irreducible, enumerate_bases, enumerate_flats, enumerate_separators, flats_of,
    irreducible_partition, Flat, MatroidData,
};
pub use pscc::{build_pscc, edge_directions, pscc_direct_sum_check, RankConstraint, SccPolytope};
pub use scc::{scc_check, scc_check_with, validate_gamma, SccVerdict};

use thiserror::Error;

/// Default tolerance for sums of cone volumes against `rg(S)/n`.
pub const SCC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatroidError {
    #[error("gamma has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gamma_{index} = {value} is not positive")]
    NotPositive { index: usize, value: f64 },
    #[error("gamma sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("normal matrix is irreducible (d = 1)")]
    NotReducible,
}
