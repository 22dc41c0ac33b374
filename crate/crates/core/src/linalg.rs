//! Small dense linear-algebra helpers shared by the geometry modules.

use nalgebra::{DMatrix, DVector};

/// Relative singular-value cutoff used for rank decisions on column sets.
pub const RANK_TOL: f64 = 1e-9;

/// Numeric rank: number of singular values above `rel_tol * sigma_max`.
pub fn numeric_rank(mat: &DMatrix<f64>, rel_tol: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let sv = mat.singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax <= f64::MIN_POSITIVE {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Matrix whose columns are the given vectors.
pub fn columns_to_matrix(dim: usize, cols: &[&DVector<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Affine rank of a point set: rank of the differences to the first point.
///
/// The cutoff is absolute, scaled by the spread of the point set.
pub fn affine_rank(points: &[DVector<f64>], tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let dim = points[0].len();
    let base = &points[0];
    let mut m = DMatrix::zeros(dim, points.len() - 1);
    for (j, p) in points[1..].iter().enumerate() {
        m.set_column(j, &(p - base));
    }
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = tol.max(1e-12 * smax);
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt, two passes).
pub fn orthonormal_basis(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        if let Some(q) = orthogonalize_against(v, &basis, tol) {
            basis.push(q);
        }
    }
    basis
}

fn orthogonalize_against(v: &DVector<f64>, basis: &[DVector<f64>], tol: f64) -> Option<DVector<f64>> {
    let scale = v.norm();
    if scale == 0.0 {
        return None;
    }
    let mut w = v.clone();
    for _ in 0..2 {
        for q in basis {
            let c = q.dot(&w);
            w.axpy(-c, q, 1.0);
        }
    }
    let nw = w.norm();
    if nw <= tol * scale {
        None
    } else {
        Some(w / nw)
    }
}

/// Orthonormal basis of the orthogonal complement of span(`vectors`) in R^dim.
pub fn orthogonal_complement(vectors: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let mut basis = orthonormal_basis(vectors, 1e-10);
    let start = basis.len();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let e = DVector::from_fn(dim, |i, _| if i == k { 1.0 } else { 0.0 });
        // Coordinate vectors nearly inside the current span are skipped; a
        // loose threshold keeps the chart well conditioned.
        if let Some(q) = orthogonalize_against(&e, &basis, 1e-3) {
            basis.push(q);
        }
    }
    basis.split_off(start)
}

/// Orthonormal chart of the hyperplane orthogonal to the unit vector `normal`,
/// returned as a `dim x (dim - 1)` matrix with orthonormal columns.
pub fn hyperplane_chart(normal: &DVector<f64>) -> DMatrix<f64> {
    let dim = normal.len();
    let comp = orthogonal_complement(std::slice::from_ref(normal), dim);
    let refs: Vec<&DVector<f64>> = comp.iter().collect();
    columns_to_matrix(dim, &refs)
}

/// Solves `a x = rhs` for square `a`, returning `None` when `|det a| <= det_tol`.
pub fn solve_square(a: DMatrix<f64>, rhs: &DVector<f64>, det_tol: f64) -> Option<DVector<f64>> {
    let lu = a.lu();
    if lu.determinant().abs() <= det_tol {
        return None;
    }
    lu.solve(rhs)
}

/// Binomial coefficient, saturating.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
