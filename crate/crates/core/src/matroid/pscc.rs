use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use super::data::{block_bases, MatroidData};
use super::vertex_enum::{self, IntConstraint, RationalPoint, VertexEnumeration};
use super::MatroidError;
use crate::linalg;
use crate::polytope::NormalMatrix;

/// `sum_{i in indices} x_i` compared against `rank / n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankConstraint {
    pub indices: Vec<usize>,
    pub rank: usize,
}

/// `P_scc(U) = (1/n) conv{chi(B) : B basis}` with both representations.
#[derive(Clone, Debug, Serialize)]
pub struct SccPolytope {
    pub n: usize,
    pub m: usize,
    /// Bases generating the vertices, in lexicographic order.
    pub bases: Vec<Vec<usize>>,
    /// `(1/n) chi(B)` for every basis.
    pub vertices: Vec<Vec<f64>>,
    /// `sum x = 1` is implied; one row per separator.
    pub equalities: Vec<RankConstraint>,
    /// One row per non-separating flat; `x >= 0` is implied.
    pub inequalities: Vec<RankConstraint>,
    pub dim: usize,
}

pub fn build_pscc(u: &NormalMatrix) -> SccPolytope {
    SccPolytope::new(&MatroidData::new(u))
}

impl SccPolytope {
    pub fn new(data: &MatroidData) -> Self {
        let n = data.n;
        let vertices =
            data.bases.iter().map(|b| data.chi(b).into_iter().map(|c| c as f64 / n as f64).collect()).collect();
        let (eqs, ineqs): (Vec<_>, Vec<_>) = data.flats.iter().partition(|f| data.is_separator(f));
        let to_rows = |fs: Vec<&super::Flat>| -> Vec<RankConstraint> {
            fs.into_iter().map(|f| RankConstraint { indices: f.indices.clone(), rank: f.rank }).collect()
        };
        Self {
            n,
            m: data.m,
            bases: data.bases.clone(),
            vertices,
            equalities: to_rows(eqs),
            inequalities: to_rows(ineqs),
            dim: data.m - data.d(),
        }
    }

    fn row_sum(x: &[f64], row: &RankConstraint) -> f64 {
        row.indices.iter().map(|&i| x[i]).sum()
    }

    /// Membership in `P_scc` with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let nf = self.n as f64;
        x.len() == self.m
            && (x.iter().sum::<f64>() - 1.0).abs() <= tol
            && x.iter().all(|&v| v >= -tol)
            && self.equalities.iter().all(|r| (Self::row_sum(x, r) - r.rank as f64 / nf).abs() <= tol)
            && self.inequalities.iter().all(|r| Self::row_sum(x, r) <= r.rank as f64 / nf + tol)
    }

    /// Membership in the relative interior: every inequality strict by `tol`.
    pub fn contains_relint(&self, x: &[f64], tol: f64) -> bool {
        let nf = self.n as f64;
        self.contains(x, tol)
            && x.iter().all(|&v| v > tol)
            && self.inequalities.iter().all(|r| Self::row_sum(x, r) < r.rank as f64 / nf - tol)
    }

    /// Numeric affine rank of the vertex set.
    pub fn affine_dimension(&self) -> usize {
        let pts: Vec<nalgebra::DVector<f64>> =
            self.vertices.iter().map(|v| nalgebra::DVector::from_column_slice(v)).collect();
        linalg::affine_rank(&pts, 1e-9)
    }

    /// Exact vertex enumeration of the H-representation, scaled by `n` so
    /// that all data is integral.
    pub fn enumerate_hrep(&self) -> VertexEnumeration {
        let row = |r: &RankConstraint| {
            let mut c = vec![0i64; self.m];
            for &i in &r.indices {
                c[i] = 1;
            }
            IntConstraint { coeffs: c, rhs: r.rank as i64 }
        };
        let mut eq: Vec<IntConstraint> = vec![IntConstraint { coeffs: vec![1; self.m], rhs: self.n as i64 }];
        eq.extend(self.equalities.iter().map(row));
        let ineq: Vec<IntConstraint> = self.inequalities.iter().map(row).collect();
        vertex_enum::enumerate(self.m, &ineq, &eq)
    }

    /// Vertices of the H-representation as points of `P_scc`.
    pub fn hrep_vertices(&self) -> Vec<Vec<f64>> {
        self.enumerate_hrep()
            .vertices
            .iter()
            .map(|p| p.to_f64().into_iter().map(|x| x / self.n as f64).collect())
            .collect()
    }

    /// True when the H-representation has exactly the characteristic vectors
    /// of the bases as vertices.
    pub fn representations_agree(&self) -> bool {
        let from_h: BTreeSet<RationalPoint> = self.enumerate_hrep().vertices.into_iter().collect();
        let from_v: BTreeSet<RationalPoint> = self
            .bases
            .iter()
            .map(|b| {
                let mut num = vec![0i128; self.m];
                for &i in b {
                    num[i] = 1;
                }
                RationalPoint { num, den: 1 }
            })
            .collect();
        from_h == from_v
    }

    /// Random points of the relative interior: convex combinations of all
    /// vertices with exponential (Dirichlet(1)) weights.
    pub fn sample_relative_interior<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<Vec<f64>> {
        (0..count)
            .map(|_| {
                let w: Vec<f64> = (0..self.vertices.len()).map(|_| Exp1.sample(rng)).collect();
                let total: f64 = w.iter().sum();
                let mut x = vec![0.0; self.m];
                for (v, wi) in self.vertices.iter().zip(&w) {
                    for (xj, vj) in x.iter_mut().zip(v) {
                        *xj += wi / total * vj;
                    }
                }
                x
            })
            .collect()
    }
}

/// Compares the vertices of `P_scc(U)` with the direct sum of the scaled
/// block polytopes `(rg S_j / n) P_scc(S_j)`.
pub fn pscc_direct_sum_check(u: &NormalMatrix) -> Result<bool, MatroidError> {
    let data = MatroidData::new(u);
    if data.d() < 2 {
        return Err(MatroidError::NotReducible);
    }
    let n = data.n as f64;
    let m = data.m;
    // (rg S / n) * (1 / rg S) chi(B_S) = chi(B_S) / n
    let block_vertices: Vec<Vec<Vec<f64>>> = data
        .partition
        .iter()
        .map(|block| {
            block_bases(u, block)
                .into_iter()
                .map(|b| {
                    let mut v = vec![0.0; m];
                    for i in b {
                        v[i] = 1.0 / n;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut sums: Vec<Vec<f64>> = block_vertices
        .iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut x = vec![0.0; m];
            for v in choice {
                for (xj, vj) in x.iter_mut().zip(v) {
                    *xj += vj;
                }
            }
            x
        })
        .collect();
    let pscc = SccPolytope::new(&data);
    let mut verts = pscc.vertices.clone();
    if sums.len() != verts.len() {
        return Ok(false);
    }
    let cmp = |a: &Vec<f64>, b: &Vec<f64>| a.partial_cmp(b).unwrap();
    sums.sort_by(cmp);
    verts.sort_by(cmp);
    Ok(sums.iter().zip(&verts).all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9)))
}

/// Edge directions of a vertex enumeration, as `(i, j)` with the edge
/// parallel to `e_i - e_j`, or `None` when some edge is not of that form.
pub fn edge_directions(e: &VertexEnumeration) -> Option<Vec<(usize, usize)>> {
    e.edges
        .iter()
        .map(|&(a, b)| {
            let (p, q) = (&e.vertices[a], &e.vertices[b]);
            let diff: Vec<i128> = p.num.iter().zip(&q.num).map(|(x, y)| x * q.den - y * p.den).collect();
            let pos: Vec<usize> = (0..diff.len()).filter(|&k| diff[k] > 0).collect();
            let neg: Vec<usize> = (0..diff.len()).filter(|&k| diff[k] < 0).collect();
            (pos.len() == 1 && neg.len() == 1 && diff[pos[0]] == -diff[neg[0]]).then(|| (pos[0], neg[0]))
        })
        .collect()
}
