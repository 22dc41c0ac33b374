pub mod inverse;
pub mod linalg;
pub mod matroid;
pub mod planar;
pub mod polytope;
pub mod semialg;
