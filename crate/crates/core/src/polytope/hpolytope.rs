use std::collections::HashSet;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{NormalMatrix, PolytopeError, Tolerances};
use crate::linalg;

/// Determinant cutoff for `n x n` systems of unit rows.
const DET_TOL: f64 = 1e-12;
/// Constraints whose projection into a facet chart is shorter than this are
/// parallel to the facet and dropped.
const PROJ_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
struct Halfspace {
    w: DVector<f64>,
    c: f64,
}

/// `P(U, b)` together with its vertices, facet incidences and measures.
///
/// All derived data is computed in [`HPolytope::build`]; the struct is
/// immutable afterwards.
#[derive(Clone, Debug)]
pub struct HPolytope {
    normals: NormalMatrix,
    b: Vec<f64>,
    tol_abs: f64,
    vertices: Vec<DVector<f64>>,
    vertex_facets: Vec<Vec<usize>>,
    facet_incidence: Vec<Vec<usize>>,
    facet_measures: Vec<f64>,
    affine_dim: usize,
    volume: f64,
    centroid: Option<DVector<f64>>,
}

/// Shorthand for [`HPolytope::build`].
pub fn build_polytope(u: &NormalMatrix, b: &[f64]) -> Result<HPolytope, PolytopeError> {
    HPolytope::build(u, b)
}

impl HPolytope {
    pub fn build(u: &NormalMatrix, b: &[f64]) -> Result<Self, PolytopeError> {
        Self::build_with(u, b, &Tolerances::default())
    }

    pub fn build_with(u: &NormalMatrix, b: &[f64], tol: &Tolerances) -> Result<Self, PolytopeError> {
        if b.len() != u.len() {
            return Err(PolytopeError::DimensionMismatch {
                what: "right-hand side".into(),
                expected: u.len(),
                found: b.len(),
            });
        }
        let scale = b.iter().fold(1.0_f64, |a, &x| a.max(x.abs()));
        let tol_abs = tol.incidence * scale;
        let mut rhs = Vec::with_capacity(b.len());
        for (index, &value) in b.iter().enumerate() {
            if !value.is_finite() || value < -tol_abs {
                return Err(PolytopeError::NegativeRhs { index, value });
            }
            rhs.push(value.max(0.0));
        }
        let n = u.dim();
        let cons: Vec<Halfspace> = u.columns().iter().zip(&rhs).map(|(w, &c)| Halfspace { w: w.clone(), c }).collect();

        let vertices = enumerate_vertices(n, &cons, tol_abs);
        let vertex_facets: Vec<Vec<usize>> =
            vertices.iter().map(|v| (0..cons.len()).filter(|&i| is_tight(&cons[i], v, tol_abs)).collect()).collect();
        let mut facet_incidence = vec![Vec::new(); cons.len()];
        for (k, tight) in vertex_facets.iter().enumerate() {
            for &i in tight {
                facet_incidence[i].push(k);
            }
        }
        let affine_dim = linalg::affine_rank(&vertices, tol_abs);

        let mut facet_measures = vec![0.0; cons.len()];
        let mut facet_centroids = vec![None; cons.len()];
        for i in 0..cons.len() {
            let pts: Vec<DVector<f64>> = facet_incidence[i].iter().map(|&k| vertices[k].clone()).collect();
            if pts.is_empty() {
                continue;
            }
            if n == 1 {
                facet_measures[i] = 1.0;
                facet_centroids[i] = Some(pts[0].clone());
                continue;
            }
            if pts.len() < n || linalg::affine_rank(&pts, tol_abs) < n - 1 {
                continue;
            }
            let (phi, g) = facet_measure(n, &cons, i, &pts, tol_abs);
            facet_measures[i] = phi;
            facet_centroids[i] = Some(g);
        }

        let (volume, centroid) = if affine_dim < n || vertices.is_empty() {
            (0.0, None)
        } else {
            let c = mean(&vertices);
            let mut vol = 0.0;
            let mut moment = DVector::zeros(n);
            for i in 0..cons.len() {
                let (phi, Some(g)) = (facet_measures[i], facet_centroids[i].as_ref()) else {
                    continue;
                };
                let pv = (cons[i].c - cons[i].w.dot(&c)) * phi / n as f64;
                vol += pv;
                moment += pyramid_centroid(&c, g, n) * pv;
            }
            if vol > 0.0 {
                (vol, Some(moment / vol))
            } else {
                (0.0, None)
            }
        };

        Ok(Self {
            normals: u.clone(),
            b: rhs,
            tol_abs,
            vertices,
            vertex_facets,
            facet_incidence,
            facet_measures,
            affine_dim,
            volume,
            centroid,
        })
    }

    pub fn normals(&self) -> &NormalMatrix {
        &self.normals
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.normals.dim()
    }

    /// Dimension of the affine hull of the polytope.
    pub fn affine_dimension(&self) -> usize {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    /// Facet indices tight at vertex `k`.
    pub fn vertex_facets(&self, k: usize) -> &[usize] {
        &self.vertex_facets[k]
    }

    pub fn facet_incidence(&self) -> &[Vec<usize>] {
        &self.facet_incidence
    }

    /// `phi_i = vol_{n-1}(F_i(b))` for every normal.
    pub fn facet_measures(&self) -> &[f64] {
        &self.facet_measures
    }

    pub fn facet_volume(&self, i: usize) -> f64 {
        self.facet_measures[i]
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Center of mass; `None` for lower-dimensional polytopes.
    pub fn centroid(&self) -> Option<&DVector<f64>> {
        self.centroid.as_ref()
    }

    /// Absolute incidence tolerance used while building.
    pub fn incidence_tolerance(&self) -> f64 {
        self.tol_abs
    }

    /// True when no vertex lies on more than `n` facet hyperplanes.
    pub fn is_simple(&self) -> bool {
        self.vertex_facets.iter().all(|f| f.len() <= self.dim())
    }

    /// `(1/n) sum_i b_i phi_i`, the pyramid formula around the origin.
    pub fn pyramid_volume(&self) -> f64 {
        self.b.iter().zip(&self.facet_measures).map(|(b, f)| b * f).sum::<f64>() / self.dim() as f64
    }
}

impl Serialize for HPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vertices: Vec<&[f64]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        let mut st = s.serialize_struct("HPolytope", 8)?;
        st.serialize_field("n", &self.dim())?;
        st.serialize_field("m", &self.normals.len())?;
        st.serialize_field("normals", &self.normals.to_vecs())?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("facet_incidence", &self.facet_incidence)?;
        st.serialize_field("facet_measures", &self.facet_measures)?;
        st.serialize_field("volume", &self.volume)?;
        st.end()
    }
}

fn is_tight(h: &Halfspace, x: &DVector<f64>, tol: f64) -> bool {
    (h.w.dot(x) - h.c).abs() <= tol
}

fn mean(pts: &[DVector<f64>]) -> DVector<f64> {
    let mut acc = DVector::zeros(pts[0].len());
    for p in pts {
        acc += p;
    }
    acc / pts.len() as f64
}

/// Centroid of the pyramid with apex `apex` over a base with centroid `base`.
fn pyramid_centroid(apex: &DVector<f64>, base: &DVector<f64>, dim: usize) -> DVector<f64> {
    let t = dim as f64 / (dim as f64 + 1.0);
    apex + (base - apex) * t
}

fn enumerate_vertices(dim: usize, cons: &[Halfspace], tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for subset in (0..cons.len()).combinations(dim) {
        let a = DMatrix::from_fn(dim, dim, |r, c| cons[subset[r]].w[c]);
        let rhs = DVector::from_fn(dim, |r, _| cons[subset[r]].c);
        let Some(x) = linalg::solve_square(a, &rhs, DET_TOL) else {
            continue;
        };
        if cons.iter().any(|h| h.w.dot(&x) > h.c + tol) {
            continue;
        }
        let dedup = tol * (1.0 + x.norm());
        if out.iter().any(|v| (v - &x).norm() <= dedup) {
            continue;
        }
        out.push(x);
    }
    out
}

/// Volume and centroid of `{x in R^dim : <w_j, x> <= c_j}`.
fn measure(dim: usize, cons: &[Halfspace], tol: f64) -> (f64, Option<DVector<f64>>) {
    let verts = enumerate_vertices(dim, cons, tol);
    if verts.is_empty() {
        return (0.0, None);
    }
    if dim == 1 {
        let (lo, hi) =
            verts.iter().map(|v| v[0]).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        return (hi - lo, Some(DVector::from_element(1, 0.5 * (lo + hi))));
    }
    if linalg::affine_rank(&verts, tol) < dim {
        return (0.0, None);
    }
    let c = mean(&verts);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut vol = 0.0;
    let mut moment = DVector::zeros(dim);
    for (j, h) in cons.iter().enumerate() {
        let tight: Vec<usize> = (0..verts.len()).filter(|&k| is_tight(h, &verts[k], tol)).collect();
        if tight.len() < dim {
            continue;
        }
        let pts: Vec<DVector<f64>> = tight.iter().map(|&k| verts[k].clone()).collect();
        if linalg::affine_rank(&pts, tol) < dim - 1 || !seen.insert(tight) {
            continue;
        }
        let (area, g) = facet_measure(dim, cons, j, &pts, tol);
        let pv = (h.c - h.w.dot(&c)) * area / dim as f64;
        vol += pv;
        moment += pyramid_centroid(&c, &g, dim) * pv;
    }
    if vol > 0.0 {
        (vol, Some(moment / vol))
    } else {
        (0.0, None)
    }
}

/// `(dim - 1)`-volume and centroid of the facet of constraint `j`, whose
/// vertices are `pts`. Works in an orthonormal chart of the facet hyperplane
/// centred at the vertex centroid.
fn facet_measure(dim: usize, cons: &[Halfspace], j: usize, pts: &[DVector<f64>], tol: f64) -> (f64, DVector<f64>) {
    let o = mean(pts);
    let q = linalg::hyperplane_chart(&cons[j].w);
    let qt = q.transpose();
    let sub: Vec<Halfspace> = cons
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .filter_map(|(_, h)| {
            let w = &qt * &h.w;
            let nw = w.norm();
            (nw > PROJ_TOL).then(|| Halfspace { w: w / nw, c: (h.c - h.w.dot(&o)) / nw })
        })
        .collect();
    let (area, g) = measure(dim - 1, &sub, tol);
    let g = match g {
        Some(g) => &o + &q * g,
        None => o,
    };
    (area, g)
}
