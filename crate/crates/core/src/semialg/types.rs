use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::SemialgError;
use crate::polytope::{HPolytope, NormalMatrix};

/// Facet measures above this count as facets.
pub const FACET_TOL: f64 = 1e-9;

/// Combinatorial type of `P(U, b)`: the facet sets of all vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialType {
    /// First 16 hex digits of the SHA-256 of the sorted vertex sets.
    pub id: String,
    pub vertex_sets: Vec<Vec<usize>>,
    /// No vertex lies on more than `n` facet hyperplanes.
    pub simple: bool,
    /// Directions supporting an actual facet.
    pub facets: Vec<usize>,
}

impl CombinatorialType {
    pub fn is_full_facet(&self, m: usize) -> bool {
        self.facets.len() == m
    }
}

pub fn type_of_polytope(p: &HPolytope) -> Result<CombinatorialType, SemialgError> {
    if p.volume() <= 0.0 {
        return Err(SemialgError::ZeroVolume);
    }
    let n = p.dim();
    let mut vertex_sets: Vec<Vec<usize>> = (0..p.vertices().len()).map(|k| p.vertex_facets(k).to_vec()).collect();
    vertex_sets.sort();
    let simple = vertex_sets.iter().all(|s| s.len() == n);
    let facets = (0..p.b().len()).filter(|&i| p.facet_volume(i) > FACET_TOL).collect();
    let canon: Vec<String> =
        vertex_sets.iter().map(|s| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")).collect();
    let digest = Sha256::digest(canon.join(";").as_bytes());
    let id = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    Ok(CombinatorialType { id, vertex_sets, simple, facets })
}

/// Combinatorial type of `P(U, b)`.
pub fn detect_type(u: &NormalMatrix, b: &[f64]) -> Result<CombinatorialType, SemialgError> {
    type_of_polytope(&HPolytope::build(u, b)?)
}

/// `coeffs . b > 0`: constraint `i` stays strictly slack at the vertex whose
/// tight set is `vertex`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeRow {
    pub coeffs: Vec<f64>,
    pub vertex: Vec<usize>,
    pub constraint: usize,
}

impl ConeRow {
    pub fn eval(&self, b: &[f64]) -> f64 {
        self.coeffs.iter().zip(b).map(|(c, x)| c * x).sum()
    }
}

/// Linear inequalities cutting out the closed type cone containing `b`.
///
/// Each vertex `v_D(b) = U_D^{-T} b_D` depends linearly on `b`; the rows
/// say that every other constraint is slack there.
pub fn local_type_cone(u: &NormalMatrix, b: &[f64]) -> Result<Vec<ConeRow>, SemialgError> {
    let t = detect_type(u, b)?;
    cone_rows_for(u, &t)
}

pub(crate) fn cone_rows_for(u: &NormalMatrix, t: &CombinatorialType) -> Result<Vec<ConeRow>, SemialgError> {
    if let Some(s) = t.vertex_sets.iter().find(|s| s.len() != u.dim()) {
        return Err(SemialgError::NonSimpleType { vertex: s.clone() });
    }
    let n = u.dim();
    let mut rows = Vec::new();
    for d in &t.vertex_sets {
        let ud_t = u.submatrix(d).transpose();
        let inv = ud_t.try_inverse().ok_or(SemialgError::NonSimpleType { vertex: d.clone() })?;
        for i in 0..u.len() {
            if d.contains(&i) {
                continue;
            }
            // <u_i, v> = sum_k <u_i, inv[:, k]> b_{d_k}
            let w: DVector<f64> = inv.transpose() * u.column(i);
            let mut coeffs = vec![0.0; u.len()];
            coeffs[i] = 1.0;
            for k in 0..n {
                coeffs[d[k]] -= w[k];
            }
            rows.push(ConeRow { coeffs, vertex: d.clone(), constraint: i });
        }
    }
    Ok(rows)
}

/// Smallest row value relative to the scale of `b`.
pub(crate) fn relative_slack(rows: &[ConeRow], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1e-300_f64, |a, x| a.max(x.abs()));
    rows.iter().map(|r| r.eval(b)).fold(f64::INFINITY, f64::min) / scale
}

/// One discovered type cone with an interior representative.
#[derive(Clone, Debug, Serialize)]
pub struct TypeSample {
    pub type_id: String,
    pub representative: Vec<f64>,
    pub facets: Vec<usize>,
    pub vertex_sets: Vec<Vec<usize>>,
    /// Lowest trial index that produced this type.
    pub trial: u64,
}

/// Things that know which directions carry facets.
pub trait FacetSupport {
    fn facet_count(&self) -> usize;
    fn direction_count(&self) -> usize;
}

impl FacetSupport for TypeSample {
    fn facet_count(&self) -> usize {
        self.facets.len()
    }
    fn direction_count(&self) -> usize {
        self.representative.len()
    }
}

/// Keeps the types on which every direction supports a facet.
pub fn filter_full_facet_types<T: FacetSupport + Clone>(items: &[T]) -> Vec<T> {
    items.iter().filter(|t| t.facet_count() == t.direction_count()).cloned().collect()
}

/// `b + (eps, eps^2, ..., eps^m)`.
pub fn perturbation_line(b: &[f64], eps: f64) -> Vec<f64> {
    let mut p = eps;
    b.iter()
        .map(|x| {
            let y = x + p;
            p *= eps;
            y
        })
        .collect()
}

fn sample_one(u: &NormalMatrix, seed: u64, trial: u64) -> Option<(Vec<f64>, CombinatorialType)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
    let b: Vec<f64> = (0..u.len()).map(|_| rng.random::<f64>()).collect();
    let t = detect_type(u, &b).ok()?;
    if t.simple {
        return Some((b, t));
    }
    // escape a lower-dimensional cell along the perturbation line
    [1e-2, 1e-3, 1e-4].iter().find_map(|&eps| {
        let bp = perturbation_line(&b, eps);
        let t = detect_type(u, &bp).ok()?;
        t.simple.then_some((bp, t))
    })
}

/// Discovers type cones by random sampling of `b` in `(0, 1)^m`.
///
/// Trial `k` uses the seed `seed + k`; results are merged by type id and
/// sorted by it, so the output does not depend on thread scheduling.
pub fn sample_type_cones(u: &NormalMatrix, trials: u64, seed: u64) -> Vec<TypeSample> {
    let found: Vec<(u64, Vec<f64>, CombinatorialType)> =
        (0..trials).into_par_iter().filter_map(|k| sample_one(u, seed, k).map(|(b, t)| (k, b, t))).collect();
    let mut merged: BTreeMap<String, TypeSample> = BTreeMap::new();
    for (trial, b, t) in found {
        let keep = merged.get(&t.id).is_none_or(|s| s.trial > trial);
        if keep {
            merged.insert(
                t.id.clone(),
                TypeSample { type_id: t.id, representative: b, facets: t.facets, vertex_sets: t.vertex_sets, trial },
            );
        }
    }
    merged.into_values().collect()
}

/// Matrix with one row per cone row.
pub fn cone_matrix(rows: &[ConeRow]) -> DMatrix<f64> {
    let m = rows.first().map(|r| r.coeffs.len()).unwrap_or(0);
    DMatrix::from_fn(rows.len(), m, |i, j| rows[i].coeffs[j])
}
