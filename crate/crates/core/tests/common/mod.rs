#![allow(dead_code)]

use conevol::polytope::{HPolytope, NormalMatrix};
use nalgebra::DVector;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn square() -> NormalMatrix {
    NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap()
}

/// `u1 = e2 = -u3`, the slanted sides converge towards `u1`.
pub fn trapezoid() -> NormalMatrix {
    NormalMatrix::new(vec![vec![0.0, 1.0], vec![-S, S], vec![0.0, -1.0], vec![S, S]]).unwrap()
}

/// `e1, -e2, -e1, e2` and the normalized diagonal `(1, 1)`.
pub fn pentagon() -> NormalMatrix {
    NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, -1.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![S, S]]).unwrap()
}

/// `e_1..e_n, -e_1..-e_n`.
pub fn cube(n: usize) -> NormalMatrix {
    let mut cols = Vec::new();
    for s in [1.0, -1.0] {
        for i in 0..n {
            let mut c = vec![0.0; n];
            c[i] = s;
            cols.push(c);
        }
    }
    NormalMatrix::new(cols).unwrap()
}

/// A skew parallelepiped: unit columns `a_1..a_n` and their negatives.
pub fn parallelepiped(n: usize) -> NormalMatrix {
    let mut a = Vec::new();
    for i in 0..n {
        let mut c = vec![0.0; n];
        c[i] = 1.0;
        if i + 1 < n {
            c[i + 1] = 0.5;
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        a.push(c.into_iter().map(|x| x / norm).collect::<Vec<_>>());
    }
    let neg: Vec<Vec<f64>> = a.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
    NormalMatrix::new(a.into_iter().chain(neg).collect()).unwrap()
}

/// Outer normals of the regular simplex in `R^n`, `m = n + 1`.
pub fn simplex(n: usize) -> NormalMatrix {
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut c = vec![0.0; n];
            c[i] = -1.0;
            c
        })
        .collect();
    cols.push(vec![1.0 / (n as f64).sqrt(); n]);
    NormalMatrix::new(cols).unwrap()
}

fn unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Random positively spanning unit normals.
pub fn random_normals<R: Rng>(rng: &mut R, n: usize, m: usize) -> NormalMatrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..m).map(|_| unit(rng, n)).collect();
        if let Ok(u) = NormalMatrix::new(cols) {
            return u;
        }
    }
}

/// Random right-hand side with the origin in the interior.
pub fn random_rhs<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.random_range(0.2..1.2)).collect()
}

/// Random normals with a random `b` on which every direction is a facet.
pub fn random_full_facet<R: Rng>(rng: &mut R, n: usize, m: usize) -> (NormalMatrix, Vec<f64>) {
    loop {
        let u = random_normals(rng, n, m);
        for _ in 0..20 {
            let b = random_rhs(rng, m);
            let p = HPolytope::build(&u, &b).unwrap();
            let scale = p.volume().powf((n as f64 - 1.0) / n as f64);
            if (0..m).all(|i| p.facet_volume(i) > 1e-3 * scale) {
                return (u, b);
            }
        }
    }
}

/// Volume from the vertex list only: facets are ordered around their
/// centroid and fanned into simplices with apex at the vertex centroid.
pub fn volume_by_triangulation(p: &HPolytope) -> f64 {
    let verts = p.vertices();
    let n = p.dim();
    let apex: DVector<f64> = verts.iter().fold(DVector::zeros(n), |a, v| a + v) / verts.len() as f64;
    let mut total = 0.0;
    for i in 0..p.b().len() {
        let on: Vec<&DVector<f64>> =
            (0..verts.len()).filter(|&k| p.vertex_facets(k).contains(&i)).map(|k| &verts[k]).collect();
        if on.len() < n {
            continue;
        }
        let u = p.normals().column(i).clone();
        let c: DVector<f64> = on.iter().fold(DVector::zeros(n), |a, v| a + *v) / on.len() as f64;
        let height = p.b()[i] - u.dot(&apex);
        if n == 2 {
            // segment: distance between the two extreme points
            let len = on.iter().flat_map(|a| on.iter().map(move |b| (*a - *b).norm())).fold(0.0, f64::max);
            total += len * height / 2.0;
            continue;
        }
        assert_eq!(n, 3);
        let e1 = {
            let t = if u[0].abs() < 0.9 {
                DVector::from_vec(vec![1.0, 0.0, 0.0])
            } else {
                DVector::from_vec(vec![0.0, 1.0, 0.0])
            };
            let t = &t - &u * u.dot(&t);
            t.normalize()
        };
        let e2 = u.cross(&e1);
        let mut ring: Vec<(f64, &DVector<f64>)> = on
            .iter()
            .map(|v| {
                let d = *v - &c;
                (d.dot(&e2).atan2(d.dot(&e1)), *v)
            })
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut area = 0.0;
        for k in 0..ring.len() {
            let (a, b) = (ring[k].1 - &c, ring[(k + 1) % ring.len()].1 - &c);
            area += a.cross(&b).dot(&u) / 2.0;
        }
        total += area * height / 3.0;
    }
    total
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Prints the verdict line of a criterion and fails the test when it fails.
pub fn report(criterion: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {title}");
    } else {
        println!("FAIL criterion {criterion}: {title}");
        for f in failures {
            println!("    {f}");
        }
        panic!("criterion {criterion} failed: {}", failures.join("; "));
    }
}
