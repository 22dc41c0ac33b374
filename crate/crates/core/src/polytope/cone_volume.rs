use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{HPolytope, NormalMatrix, PolytopeError};

/// The cone-volume vector `gamma_i = b_i phi_i / n` of a polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeVolumeVector {
    pub gamma: Vec<f64>,
    /// `sum_i gamma_i`, which equals the volume.
    pub total: f64,
}

impl ConeVolumeVector {
    pub fn new(gamma: Vec<f64>) -> Self {
        let total = gamma.iter().sum();
        Self { gamma, total }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Indices with `gamma_i > tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.gamma.len()).filter(|&i| self.gamma[i] > tol).collect()
    }

    /// Euclidean distance to another vector of the same length.
    pub fn distance(&self, other: &[f64]) -> f64 {
        self.gamma.iter().zip(other).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }
}

pub fn cone_volume_vector(p: &HPolytope) -> ConeVolumeVector {
    let n = p.dim() as f64;
    ConeVolumeVector::new(p.b().iter().zip(p.facet_measures()).map(|(b, phi)| b * phi / n).collect())
}

/// Rescales `b` so that `P(U, b)` has volume one.
pub fn normalize_to_unit_volume(u: &NormalMatrix, b: &[f64]) -> Result<Vec<f64>, PolytopeError> {
    let p = HPolytope::build(u, b)?;
    let scale = p.b().iter().fold(1.0_f64, |a, &x| a.max(x));
    if !(p.volume() > f64::EPSILON * scale.powi(u.dim() as i32)) {
        return Err(PolytopeError::ZeroVolume);
    }
    let s = p.volume().powf(-1.0 / u.dim() as f64);
    Ok(p.b().iter().map(|x| x * s).collect())
}

/// Cone volumes of `t + P`, obtained from those of `P` by
/// `gamma_i + (phi_i / n) <u_i, t>`.
pub fn translate_cone_volumes(p: &HPolytope, t: &[f64]) -> Result<ConeVolumeVector, PolytopeError> {
    let n = p.dim();
    if t.len() != n {
        return Err(PolytopeError::DimensionMismatch { what: "translation".into(), expected: n, found: t.len() });
    }
    let t = DVector::from_column_slice(t);
    let shifts = p.normals().apply_transpose(&t);
    for (index, (b, s)) in p.b().iter().zip(&shifts).enumerate() {
        let value = b + s;
        if value < -p.incidence_tolerance() {
            return Err(PolytopeError::OriginLeavesBody { index, value });
        }
    }
    let base = cone_volume_vector(p);
    Ok(ConeVolumeVector::new(
        base.gamma.iter().zip(p.facet_measures()).zip(&shifts).map(|((g, phi), s)| g + phi / n as f64 * s).collect(),
    ))
}

/// Translates `P` so that its centroid is the origin. Returns the new
/// right-hand side and cone-volume vector.
pub fn translate_to_centroid(p: &HPolytope) -> Result<(Vec<f64>, ConeVolumeVector), PolytopeError> {
    let c = p.centroid().ok_or(PolytopeError::ZeroVolume)?;
    let t: Vec<f64> = c.iter().map(|x| -x).collect();
    let gamma = translate_cone_volumes(p, &t)?;
    let shifts = p.normals().apply_transpose(&DVector::from_column_slice(&t));
    let b = p.b().iter().zip(shifts).map(|(b, s)| (b + s).max(0.0)).collect();
    Ok((b, gamma))
}

/// `|gamma(U, b + h dir) - gamma(U, b)|` for `h = 10^-1, ..., 10^-steps`.
pub fn continuity_probe(
    u: &NormalMatrix,
    b: &[f64],
    direction: &[f64],
    steps: usize,
) -> Result<Vec<(f64, f64)>, PolytopeError> {
    if direction.len() != b.len() {
        return Err(PolytopeError::DimensionMismatch {
            what: "probe direction".into(),
            expected: b.len(),
            found: direction.len(),
        });
    }
    let base = cone_volume_vector(&HPolytope::build(u, b)?);
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        let h = 10f64.powi(-(k as i32));
        let shifted: Vec<f64> = b.iter().zip(direction).map(|(x, d)| x + h * d).collect();
        if shifted.iter().any(|&x| x < 0.0) {
            return Err(PolytopeError::InvalidProbe { step: h });
        }
        let g = cone_volume_vector(&HPolytope::build(u, &shifted)?);
        out.push((h, base.distance(&g.gamma)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::{right_triangle, square};
    use approx::assert_abs_diff_eq;

    fn gamma_of(u: &NormalMatrix, b: &[f64]) -> ConeVolumeVector {
        cone_volume_vector(&HPolytope::build(u, b).unwrap())
    }

    #[test]
    fn square_cone_volumes() {
        let g = gamma_of(&square(), &[0.5; 4]);
        for x in &g.gamma {
            assert_abs_diff_eq!(*x, 0.25, epsilon = 1e-12);
        }
        let g = gamma_of(&square(), &[0.75, 0.5, 0.25, 0.5]);
        for (x, y) in g.gamma.iter().zip([0.375, 0.25, 0.125, 0.25]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(g.total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pentagon_cone_volumes() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![s, s]])
            .unwrap();
        // The rounded right-hand side quoted for this pentagon does not have
        // volume one; its cone volumes are recomputed by hand below.
        let quoted = gamma_of(&u, &[0.66, 0.82, 0.15, 0.66, 0.79]);
        let expected = [0.42147, 0.33210, 0.11100, 0.20042, 0.11327];
        for (x, y) in quoted.gamma.iter().zip(expected) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-4);
        }
        // The actual solution for gamma = (1/3, 1/3, 1/9, 1/9, 1/9).
        let b = [0.540342, 0.969688, 0.147164, 0.540342, 0.568825];
        let g = gamma_of(&u, &b);
        for (x, y) in g.gamma.iter().zip([1.0 / 3.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-5);
        }
    }

    #[test]
    fn unit_volume_normalization() {
        let b = normalize_to_unit_volume(&square(), &[1.0; 4]).unwrap();
        assert_eq!(b, vec![0.5; 4]);
        let b = normalize_to_unit_volume(&square(), &[0.5; 4]).unwrap();
        assert_eq!(b, vec![0.5; 4]);
        let b = normalize_to_unit_volume(&right_triangle(), &[0.0, 0.0, 2.0]).unwrap();
        assert_abs_diff_eq!(b[2], 1.0, epsilon = 1e-14);
        assert_eq!(normalize_to_unit_volume(&square(), &[0.5, 0.0, 0.5, 0.0]), Err(PolytopeError::ZeroVolume));
    }

    #[test]
    fn translation_formula() {
        let p = HPolytope::build(&square(), &[0.5; 4]).unwrap();
        let g = translate_cone_volumes(&p, &[0.0, 0.0]).unwrap();
        assert_eq!(g, cone_volume_vector(&p));
        let g = translate_cone_volumes(&p, &[0.25, 0.0]).unwrap();
        for (x, y) in g.gamma.iter().zip([0.375, 0.25, 0.125, 0.25]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
        }
        assert!(matches!(
            translate_cone_volumes(&p, &[1.0, 0.0]),
            Err(PolytopeError::OriginLeavesBody { index: 2, .. })
        ));
    }

    #[test]
    fn centroid_translation_of_triangle() {
        let p = HPolytope::build(&right_triangle(), &[0.0, 0.0, 1.0]).unwrap();
        let (b, g) = translate_to_centroid(&p).unwrap();
        // a triangle with centroid at the origin has equal cone volumes
        for x in &g.gamma {
            assert_abs_diff_eq!(*x, 1.0 / 3.0, epsilon = 1e-12);
        }
        let direct = gamma_of(&right_triangle(), &b);
        assert!(direct.distance(&g.gamma) < 1e-12);
    }

    #[test]
    fn continuity_of_square() {
        let dev = continuity_probe(&square(), &[0.5; 4], &[1.0, 0.0, 0.0, 0.0], 3).unwrap();
        assert!(dev.windows(2).all(|w| w[1].1 < w[0].1));
        let zero = continuity_probe(&square(), &[0.5; 4], &[0.0; 4], 3).unwrap();
        assert!(zero.iter().all(|&(_, d)| d == 0.0));
        assert!(matches!(
            continuity_probe(&square(), &[0.5, 0.0, 0.5, 0.5], &[0.0, -1.0, 0.0, 0.0], 2),
            Err(PolytopeError::InvalidProbe { .. })
        ));
    }

    #[test]
    fn degenerate_trapezoid_family() {
        // raw normals (e_2, e_1 + e_2, -e_2, -e_1 + e_2) with b = (eps, 0, 0, 1/eps + eps)
        for eps in [0.5, 0.1, 0.01] {
            let (u, b) = crate::polytope::canonicalize(
                vec![vec![0.0, 1.0], vec![1.0, 1.0], vec![0.0, -1.0], vec![-1.0, 1.0]],
                &[eps, 0.0, 0.0, 1.0 / eps + eps],
            )
            .unwrap();
            let g = gamma_of(&u, &b);
            assert_abs_diff_eq!(g.total, 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(g.gamma[0], 0.5 * (1.0 - eps * eps), epsilon = 1e-9);
            assert_abs_diff_eq!(g.gamma[3], 0.5 * (1.0 + eps * eps), epsilon = 1e-9);
            assert_eq!(g.gamma[1], 0.0);
            assert_eq!(g.gamma[2], 0.0);
        }
    }
}
