//! Normal matrices of the running examples.

use std::f64::consts::FRAC_1_SQRT_2 as S;

use conevol::polytope::NormalMatrix;

fn build(cols: Vec<Vec<f64>>) -> NormalMatrix {
    NormalMatrix::new(cols).expect("fixture normals are valid")
}

pub fn square() -> NormalMatrix {
    build(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]])
}

/// `u_3 = -u_1`; `u_2` and `u_4` lean towards `u_1`.
pub fn trapezoid() -> NormalMatrix {
    build(vec![vec![0.0, 1.0], vec![-S, S], vec![0.0, -1.0], vec![S, S]])
}

/// `(e_2, e_1 + e_2, -e_2, -e_1 + e_2)` with unit columns; the order used for
/// the degenerating family `b_eps`.
pub fn limit_trapezoid() -> NormalMatrix {
    build(vec![vec![0.0, 1.0], vec![S, S], vec![0.0, -1.0], vec![-S, S]])
}

/// `(e_1, -e_2, -e_1, e_2, (e_1 + e_2)/sqrt 2)`.
pub fn pentagon() -> NormalMatrix {
    build(vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![S, S]])
}

/// `(e_1, .., e_n, -e_1, .., -e_n)`.
pub fn cube(n: usize) -> NormalMatrix {
    let mut cols = Vec::with_capacity(2 * n);
    for s in [1.0, -1.0] {
        for k in 0..n {
            let mut c = vec![0.0; n];
            c[k] = s;
            cols.push(c);
        }
    }
    build(cols)
}

/// `-e_1, .., -e_n` and the normalized all-ones vector.
pub fn simplex(n: usize) -> NormalMatrix {
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut c = vec![0.0; n];
            c[k] = -1.0;
            c
        })
        .collect();
    cols.push(vec![1.0 / (n as f64).sqrt(); n]);
    build(cols)
}

/// Four planar directions, no two parallel.
pub fn general_position_planar() -> NormalMatrix {
    let cols = [10.0f64, 100.0, 200.0, 290.0]
        .iter()
        .map(|deg| {
            let t = deg.to_radians();
            vec![t.cos(), t.sin()]
        })
        .collect();
    build(cols)
}
