use itertools::Itertools;
use serde::Serialize;

use super::{cone_volume_vector, normalize_to_unit_volume, ConeVolumeVector, HPolytope, NormalMatrix};

/// A volume-one polytope with a vertex at the origin whose cone-volume
/// vector has fewer than `n` nonzero entries.
#[derive(Clone, Debug, Serialize)]
pub struct VertexWitness {
    /// The positively spanning subset that carries all facets.
    pub subset: Vec<usize>,
    pub b: Vec<f64>,
    pub gamma: ConeVolumeVector,
}

impl VertexWitness {
    pub fn support_size(&self) -> usize {
        self.gamma.support(0.0).len()
    }
}

/// Looks for a positively spanning subset `S` with `|S| <= 2n - 1`, builds a
/// polytope with facets exactly in the directions of `S`, and moves one of its
/// vertices to the origin. Returns `None` when no such subset exists, which
/// happens exactly for parallelepiped normals `(V, -V)`.
pub fn sparse_vertex_witness(u: &NormalMatrix) -> Option<VertexWitness> {
    let n = u.dim();
    let m = u.len();
    for size in (n + 1)..=(2 * n - 1).min(m) {
        for subset in (0..m).combinations(size) {
            if !u.positively_spans(&subset) {
                continue;
            }
            let sub = u.restrict(&subset).ok()?;
            let inner = HPolytope::build(&sub, &vec![1.0; size]).ok()?;
            let b: Vec<f64> = (0..m)
                .map(|i| match subset.binary_search(&i) {
                    Ok(_) => 1.0,
                    Err(_) => inner.vertices().iter().map(|v| u.column(i).dot(v)).fold(f64::NEG_INFINITY, f64::max),
                })
                .collect();
            let p = HPolytope::build(u, &b).ok()?;
            let v = p.vertices().first()?.clone();
            let tol = p.incidence_tolerance();
            let moved: Vec<f64> = b
                .iter()
                .zip(u.apply_transpose(&v))
                .map(|(bi, s)| {
                    let x = bi - s;
                    if x.abs() <= tol {
                        0.0
                    } else {
                        x.max(0.0)
                    }
                })
                .collect();
            let b = normalize_to_unit_volume(u, &moved).ok()?;
            let gamma = cone_volume_vector(&HPolytope::build(u, &b).ok()?);
            return Some(VertexWitness { subset, b, gamma });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::{right_triangle, square};
    use approx::assert_abs_diff_eq;

    #[test]
    fn triangle_witness_has_one_cone() {
        let w = sparse_vertex_witness(&right_triangle()).unwrap();
        assert_eq!(w.support_size(), 1);
        assert_abs_diff_eq!(w.gamma.total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn square_has_no_witness() {
        assert!(sparse_vertex_witness(&square()).is_none());
    }

    #[test]
    fn trapezoid_drops_the_top() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = NormalMatrix::new(vec![vec![0.0, 1.0], vec![-s, s], vec![0.0, -1.0], vec![s, s]]).unwrap();
        let w = sparse_vertex_witness(&u).unwrap();
        assert_eq!(w.subset, vec![1, 2, 3]);
        assert!(w.support_size() < 2);
        assert_eq!(w.gamma.gamma[0], 0.0);
    }
}
