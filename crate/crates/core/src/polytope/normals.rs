use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{PolytopeError, Tolerances};
use crate::linalg;

/// The `m` outer unit normals `u_1..u_m` of a polytope family `P(U, b)`.
///
/// Columns are unit vectors, pairwise distinct, and positively span `R^n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalMatrix {
    dim: usize,
    #[serde(serialize_with = "serialize_columns")]
    columns: Vec<DVector<f64>>,
}

fn serialize_columns<S: serde::Serializer>(cols: &[DVector<f64>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(cols.len()))?;
    for c in cols {
        seq.serialize_element(c.as_slice())?;
    }
    seq.end()
}

impl NormalMatrix {
    /// Validates unit columns, distinctness and positive spanning.
    pub fn new(columns: Vec<Vec<f64>>) -> Result<Self, PolytopeError> {
        Self::with_tolerances(columns, &Tolerances::default())
    }

    pub fn with_tolerances(columns: Vec<Vec<f64>>, tol: &Tolerances) -> Result<Self, PolytopeError> {
        let dim = columns.first().map(|c| c.len()).unwrap_or(0);
        if dim == 0 {
            return Err(PolytopeError::Empty);
        }
        if let Some((i, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != dim) {
            return Err(PolytopeError::DimensionMismatch {
                what: format!("column {i}"),
                expected: dim,
                found: c.len(),
            });
        }
        if columns.len() < dim + 1 {
            return Err(PolytopeError::TooFewColumns { n: dim, m: columns.len() });
        }
        let columns: Vec<DVector<f64>> = columns.into_iter().map(DVector::from_vec).collect();
        for (i, c) in columns.iter().enumerate() {
            let norm = c.norm();
            if !norm.is_finite() || (norm - 1.0).abs() > tol.normalization {
                return Err(PolytopeError::NotUnit { column: i, norm });
            }
        }
        for (i, j) in (0..columns.len()).tuple_combinations() {
            if (&columns[i] - &columns[j]).norm() <= tol.distinct {
                return Err(PolytopeError::DuplicateDirection { first: i, second: j });
            }
        }
        let all: Vec<usize> = (0..columns.len()).collect();
        if let Err(column) = positive_spanning_witness(dim, &columns, &all) {
            return Err(PolytopeError::NotPositivelySpanning { column });
        }
        Ok(Self { dim, columns })
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of normals `m`.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, i: usize) -> &DVector<f64> {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[DVector<f64>] {
        &self.columns
    }

    /// `n x m` matrix with the normals as columns.
    pub fn as_matrix(&self) -> DMatrix<f64> {
        self.submatrix(&(0..self.len()).collect::<Vec<_>>())
    }

    /// `n x |idx|` matrix with the selected normals as columns.
    pub fn submatrix(&self, idx: &[usize]) -> DMatrix<f64> {
        let refs: Vec<&DVector<f64>> = idx.iter().map(|&i| &self.columns[i]).collect();
        linalg::columns_to_matrix(self.dim, &refs)
    }

    /// Rank of the selected columns (singular-value cutoff relative to sigma_max).
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        linalg::numeric_rank(&self.submatrix(idx), linalg::RANK_TOL)
    }

    /// `U^T x`.
    pub fn apply_transpose(&self, x: &DVector<f64>) -> Vec<f64> {
        self.columns.iter().map(|u| u.dot(x)).collect()
    }

    /// True when the selected columns positively span `R^n`.
    pub fn positively_spans(&self, idx: &[usize]) -> bool {
        positive_spanning_witness(self.dim, &self.columns, idx).is_ok()
    }

    /// The normals restricted to `idx`, validated as a normal matrix of its own.
    pub fn restrict(&self, idx: &[usize]) -> Result<NormalMatrix, PolytopeError> {
        NormalMatrix::new(idx.iter().map(|&i| self.columns[i].as_slice().to_vec()).collect())
    }

    /// Row-major copy of the columns, as plain vectors.
    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.columns.iter().map(|c| c.as_slice().to_vec()).collect()
    }
}

/// Checks `pos{u_i : i in idx} = R^dim`.
///
/// On failure returns the index of a column `u_j` with `-u_j` outside the
/// positive hull, or `None` when the columns do not even span `R^dim`.
pub(crate) fn positive_spanning_witness(
    dim: usize,
    columns: &[DVector<f64>],
    idx: &[usize],
) -> Result<(), Option<usize>> {
    const SIDE_TOL: f64 = 1e-10;
    let sel: Vec<&DVector<f64>> = idx.iter().map(|&i| &columns[i]).collect();
    if linalg::numeric_rank(&linalg::columns_to_matrix(dim, &sel), linalg::RANK_TOL) < dim {
        return Err(None);
    }
    // A full-rank cone other than R^n has a facet whose hyperplane is spanned
    // by dim - 1 of its generators, so it suffices to test those hyperplanes.
    let normals: Vec<DVector<f64>> = if dim == 1 {
        vec![DVector::from_element(1, 1.0)]
    } else {
        let mut out = Vec::new();
        for subset in idx.iter().copied().combinations(dim - 1) {
            let vs: Vec<DVector<f64>> = subset.iter().map(|&i| columns[i].clone()).collect();
            if linalg::orthonormal_basis(&vs, 1e-9).len() < dim - 1 {
                continue;
            }
            out.extend(linalg::orthogonal_complement(&vs, dim));
        }
        out
    };
    for d in normals {
        let sides: Vec<f64> = idx.iter().map(|&i| columns[i].dot(&d)).collect();
        for sign in [1.0, -1.0] {
            if sides.iter().all(|&s| sign * s <= SIDE_TOL) {
                let j = idx.iter().zip(&sides).find(|(_, &s)| sign * s < -SIDE_TOL).map(|(&i, _)| i);
                return Err(j);
            }
        }
    }
    Ok(())
}

/// Rescales raw (non-unit) normals to unit length, adjusting `b` so that the
/// point set `{x : raw^T x <= b}` is unchanged.
pub fn canonicalize(raw: Vec<Vec<f64>>, b: &[f64]) -> Result<(NormalMatrix, Vec<f64>), PolytopeError> {
    canonicalize_with(raw, b, &Tolerances::default())
}

pub fn canonicalize_with(
    raw: Vec<Vec<f64>>,
    b: &[f64],
    tol: &Tolerances,
) -> Result<(NormalMatrix, Vec<f64>), PolytopeError> {
    if raw.len() != b.len() {
        return Err(PolytopeError::DimensionMismatch {
            what: "right-hand side".into(),
            expected: raw.len(),
            found: b.len(),
        });
    }
    let mut cols = Vec::with_capacity(raw.len());
    let mut rhs = Vec::with_capacity(raw.len());
    for (i, (c, &bi)) in raw.into_iter().zip(b).enumerate() {
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > tol.normalization) {
            return Err(PolytopeError::ZeroColumn { column: i });
        }
        cols.push(c.iter().map(|x| x / norm).collect());
        rhs.push(bi / norm);
    }
    Ok((NormalMatrix::with_tolerances(cols, tol)?, rhs))
}
