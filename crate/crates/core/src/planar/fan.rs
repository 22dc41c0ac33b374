use std::f64::consts::TAU;

use nalgebra::{DMatrix, Matrix2, Vector2};
use serde::Serialize;

use super::PlanarError;
use crate::polytope::NormalMatrix;

/// Directions sorted counter-clockwise, starting at the first selected column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanarFan {
    /// Number of columns of the underlying normal matrix.
    pub m: usize,
    /// `ordering[k]` is the column at position `k`.
    pub ordering: Vec<usize>,
    /// `<u_k, u_{k+1}>` for consecutive positions (cyclically).
    pub gaps: Vec<f64>,
    #[serde(skip)]
    columns: Vec<Vector2<f64>>,
    #[serde(skip)]
    position: Vec<Option<usize>>,
}

/// Orders all columns of a planar normal matrix.
pub fn order_ccw(u: &NormalMatrix) -> Result<PlanarFan, PlanarError> {
    let all: Vec<usize> = (0..u.len()).collect();
    PlanarFan::over(u, &all)
}

impl PlanarFan {
    /// Orders the columns `idx` by angle measured counter-clockwise from
    /// `u_{idx[0]}`.
    pub fn over(u: &NormalMatrix, idx: &[usize]) -> Result<Self, PlanarError> {
        if u.dim() != 2 {
            return Err(PlanarError::NotPlanar { n: u.dim() });
        }
        if idx.len() < 3 {
            return Err(PlanarError::TooFewDirections { m: idx.len() });
        }
        let columns: Vec<Vector2<f64>> = u.columns().iter().map(|c| Vector2::new(c[0], c[1])).collect();
        let angle = |v: &Vector2<f64>| v[1].atan2(v[0]);
        let base = angle(&columns[idx[0]]);
        let rel = |i: usize| (angle(&columns[i]) - base).rem_euclid(TAU);
        let mut ordering = idx.to_vec();
        ordering.sort_by(|&a, &b| {
            // the first column has relative angle 0 (rem_euclid can give TAU - tiny)
            let ra = if a == idx[0] { 0.0 } else { rel(a) };
            let rb = if b == idx[0] { 0.0 } else { rel(b) };
            ra.partial_cmp(&rb).unwrap()
        });
        let k = ordering.len();
        let gaps = (0..k).map(|p| columns[ordering[p]].dot(&columns[ordering[(p + 1) % k]])).collect();
        let mut position = vec![None; u.len()];
        for (p, &i) in ordering.iter().enumerate() {
            position[i] = Some(p);
        }
        Ok(Self { m: u.len(), ordering, gaps, columns, position })
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn position_of(&self, i: usize) -> Option<usize> {
        self.position[i]
    }

    /// Column following `i` counter-clockwise.
    pub fn next(&self, i: usize) -> usize {
        let p = self.position[i].expect("column not in fan");
        self.ordering[(p + 1) % self.len()]
    }

    /// Column preceding `i` counter-clockwise.
    pub fn prev(&self, i: usize) -> usize {
        let p = self.position[i].expect("column not in fan");
        self.ordering[(p + self.len() - 1) % self.len()]
    }

    pub fn column(&self, i: usize) -> &Vector2<f64> {
        &self.columns[i]
    }

    /// Counter-clockwise angle from `u_k` to its successor, for every position.
    pub fn angular_gaps(&self) -> Vec<f64> {
        let k = self.len();
        (0..k)
            .map(|p| {
                let (a, b) = (&self.columns[self.ordering[p]], &self.columns[self.ordering[(p + 1) % k]]);
                (a[0] * b[1] - a[1] * b[0]).atan2(a.dot(b)).rem_euclid(TAU)
            })
            .collect()
    }
}

/// `f_i(b) = alpha b_i + beta b_next + delta b_prev`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeForm {
    pub index: usize,
    pub next: usize,
    pub prev: usize,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeLengthForms {
    pub m: usize,
    pub forms: Vec<EdgeForm>,
}

impl EdgeLengthForms {
    /// Edge lengths indexed by column; columns outside the fan get 0.
    pub fn eval(&self, b: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; self.m];
        for e in &self.forms {
            f[e.index] = e.alpha * b[e.index] + e.beta * b[e.next] + e.delta * b[e.prev];
        }
        f
    }

    /// `m x m` matrix `L` with `f = L b`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.m, self.m);
        for e in &self.forms {
            l[(e.index, e.index)] += e.alpha;
            l[(e.index, e.next)] += e.beta;
            l[(e.index, e.prev)] += e.delta;
        }
        l
    }

    /// `sum_i f_i(b) b_i / 2`.
    pub fn area(&self, b: &[f64]) -> f64 {
        self.eval(b).iter().zip(b).map(|(f, x)| f * x).sum::<f64>() / 2.0
    }
}

pub fn edge_length_forms(fan: &PlanarFan) -> EdgeLengthForms {
    let forms = fan
        .ordering
        .iter()
        .map(|&i| {
            let (next, prev) = (fan.next(i), fan.prev(i));
            let cp = fan.column(i).dot(fan.column(next));
            let cm = fan.column(prev).dot(fan.column(i));
            let (sp, sm) = ((1.0 - cp * cp).sqrt(), (1.0 - cm * cm).sqrt());
            EdgeForm { index: i, next, prev, alpha: -(cp / sp + cm / sm), beta: 1.0 / sp, delta: 1.0 / sm }
        })
        .collect();
    EdgeLengthForms { m: fan.m, forms }
}

/// Edge lengths of `P(U, b)` for `b` in the type cone of the fan.
pub fn stancu_lengths(fan: &PlanarFan, b: &[f64]) -> Result<Vec<f64>, PlanarError> {
    if b.len() != fan.m {
        return Err(PlanarError::DimensionMismatch { expected: fan.m, found: b.len() });
    }
    let f = edge_length_forms(fan).eval(b);
    if let Some(&i) = fan.ordering.iter().find(|&&i| f[i] < -1e-9) {
        return Err(PlanarError::OutsideTypeCone { index: i, value: f[i] });
    }
    Ok(f)
}

/// `<u_i, v_l> <= b_i` written as `coeffs . b >= 0`, where `v_l` is the
/// intersection of the lines of `l` and its successor `l_next`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeConeRow {
    pub coeffs: Vec<f64>,
    pub l: usize,
    pub l_next: usize,
    pub i: usize,
}

impl TypeConeRow {
    pub fn eval(&self, b: &[f64]) -> f64 {
        self.coeffs.iter().zip(b).map(|(c, x)| c * x).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeCone {
    pub rows: Vec<TypeConeRow>,
}

impl TypeCone {
    /// Smallest row value at `b`; positive in the interior.
    pub fn min_slack(&self, b: &[f64]) -> f64 {
        self.rows.iter().map(|r| r.eval(b)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, b: &[f64], tol: f64) -> bool {
        self.min_slack(b) >= -tol
    }
}

/// All `k (k - 2)` vertex conditions of the fan, redundant rows included.
pub fn planar_type_cone(fan: &PlanarFan) -> TypeCone {
    let mut rows = Vec::new();
    for &l in &fan.ordering {
        let ln = fan.next(l);
        let (a, c) = (fan.column(l), fan.column(ln));
        let mat = Matrix2::new(a[0], a[1], c[0], c[1]);
        // columns of the inverse: v_l = c1 b_l + c2 b_ln
        let inv = mat.try_inverse().expect("consecutive normals are independent");
        let (c1, c2) = (inv.column(0).into_owned(), inv.column(1).into_owned());
        for &i in &fan.ordering {
            if i == l || i == ln {
                continue;
            }
            let ui = fan.column(i);
            let mut coeffs = vec![0.0; fan.m];
            coeffs[i] += 1.0;
            coeffs[l] -= ui.dot(&c1);
            coeffs[ln] -= ui.dot(&c2);
            rows.push(TypeConeRow { coeffs, l, l_next: ln, i });
        }
    }
    TypeCone { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cone_volume_vector, HPolytope};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2 as S;

    fn square() -> NormalMatrix {
        NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap()
    }

    pub(crate) fn pentagon() -> NormalMatrix {
        NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![S, S]]).unwrap()
    }

    #[test]
    fn orderings() {
        assert_eq!(order_ccw(&square()).unwrap().ordering, vec![0, 1, 2, 3]);
        let shuffled =
            NormalMatrix::new(vec![vec![0.0, -1.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(order_ccw(&shuffled).unwrap().ordering, vec![0, 1, 3, 2]);
        let trap = NormalMatrix::new(vec![vec![0.0, 1.0], vec![-S, S], vec![0.0, -1.0], vec![S, S]]).unwrap();
        let fan = order_ccw(&trap).unwrap();
        assert_eq!(fan.ordering, vec![0, 1, 2, 3]);
        assert!(fan.angular_gaps().iter().all(|&g| g > 0.0 && g < std::f64::consts::PI));
        let cube = NormalMatrix::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![-1.0, -1.0, -1.0].iter().map(|x| x / 3f64.sqrt()).collect(),
        ])
        .unwrap();
        assert_eq!(order_ccw(&cube), Err(PlanarError::NotPlanar { n: 3 }));
    }

    #[test]
    fn square_lengths() {
        let fan = order_ccw(&square()).unwrap();
        let forms = edge_length_forms(&fan);
        for e in &forms.forms {
            assert_abs_diff_eq!(e.alpha, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e.beta, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e.delta, 1.0, epsilon = 1e-15);
        }
        assert_eq!(stancu_lengths(&fan, &[0.5; 4]).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn pentagon_forms() {
        // f_1 = -b_1 + b_2 + sqrt2 b_5, f_2 = b_1 + b_3, f_3 = b_2 + b_4,
        // f_4 = b_3 - b_4 + sqrt2 b_5, f_5 = sqrt2 b_1 + sqrt2 b_4 - 2 b_5
        let r2 = 2f64.sqrt();
        let l = edge_length_forms(&order_ccw(&pentagon()).unwrap()).matrix();
        let expected = DMatrix::from_row_slice(
            5,
            5,
            &[
                -1.0, 1.0, 0.0, 0.0, r2, //
                1.0, 0.0, 1.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 1.0, -1.0, r2, //
                r2, 0.0, 0.0, r2, -2.0,
            ],
        );
        assert!((l - expected).norm() < 1e-12);
        // at the solution for gamma = (1/3, 1/3, 1/9, 1/9, 1/9)
        let b = [0.540342, 0.969688, 0.147164, 0.540342, 0.568825];
        let f = stancu_lengths(&order_ccw(&pentagon()).unwrap(), &b).unwrap();
        let g: Vec<f64> = f.iter().zip(b).map(|(f, b)| f * b / 2.0).collect();
        let target = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0];
        for (x, y) in g.iter().zip(target) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-5);
        }
        let p = HPolytope::build(&pentagon(), &b).unwrap();
        let direct = cone_volume_vector(&p);
        for (x, y) in g.iter().zip(&direct.gamma) {
            assert_abs_diff_eq!(*x, *y, epsilon = 1e-12);
        }
    }

    #[test]
    fn outside_type_cone() {
        let trap = NormalMatrix::new(vec![vec![0.0, 1.0], vec![-S, S], vec![0.0, -1.0], vec![S, S]]).unwrap();
        let fan = order_ccw(&trap).unwrap();
        // top line far above the apex
        assert!(matches!(
            stancu_lengths(&fan, &[5.0, 0.5, 0.5, 0.5]),
            Err(PlanarError::OutsideTypeCone { index: 0, .. })
        ));
    }

    #[test]
    fn trapezoid_type_cone_row() {
        // u_2 = (-1, -a_2)/l_2, u_4 = (1, a_4)/l_4
        let (a2, a4) = (-0.5_f64, 2.0_f64);
        let (l2, l4) = ((1.0 + a2 * a2).sqrt(), (1.0 + a4 * a4).sqrt());
        let u = NormalMatrix::new(vec![
            vec![0.0, 1.0],
            vec![-1.0 / l2, -a2 / l2],
            vec![0.0, -1.0],
            vec![1.0 / l4, a4 / l4],
        ])
        .unwrap();
        let tc = planar_type_cone(&order_ccw(&u).unwrap());
        assert_eq!(tc.rows.len(), 8);
        let row = tc.rows.iter().find(|r| r.l == 3 && r.l_next == 0 && r.i == 1).unwrap();
        let paper = [-(a4 - a2), l2, 0.0, l4];
        for (c, p) in row.coeffs.iter().zip(paper) {
            assert_abs_diff_eq!(c * l2, p, epsilon = 1e-12);
        }
    }

    #[test]
    fn square_type_cone_is_orthant_implied() {
        let tc = planar_type_cone(&order_ccw(&square()).unwrap());
        assert_eq!(tc.rows.len(), 8);
        for r in &tc.rows {
            // b_i + b_{i+2} >= 0
            let nz: Vec<usize> = (0..4).filter(|&k| r.coeffs[k].abs() > 1e-12).collect();
            assert_eq!(nz.len(), 2);
            assert!(nz.iter().all(|&k| (r.coeffs[k] - 1.0).abs() < 1e-12));
        }
    }
}
