//! Polygons: counter-clockwise fans, edge-length linear forms, the type cone
//! on which all directions are edges, and the trapezoid membership test.

mod fan;
mod trapezoid;

pub use fan::{
    edge_length_forms, order_ccw, planar_type_cone, stancu_lengths, EdgeForm, EdgeLengthForms, PlanarFan, TypeCone,
    TypeConeRow,
};
pub use trapezoid::{
    figure1_samples, trapezoid_branch, trapezoid_membership, Figure1Sample, TrapezoidBranch, TrapezoidLabels,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarError {
    #[error("planar operation needs n = 2, got n = {n}")]
    NotPlanar { n: usize },
    #[error("need at least 3 directions for a polygon, got {m}")]
    TooFewDirections { m: usize },
    #[error("edge length f_{index} = {value} is negative: b is outside the type cone")]
    OutsideTypeCone { index: usize, value: f64 },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gamma_{index} = {value} is not positive")]
    NotPositive { index: usize, value: f64 },
    #[error("gamma sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("labels do not describe a trapezoid: {reason}")]
    NotTrapezoid { reason: String },
}
