//! Exact double-description vertex enumeration for small integer polytopes.
//!
//! The polytope `{x >= 0 : A x <= b, E x = f}` is homogenized to the cone
//! `{(x, t) >= 0 : A x - b t <= 0, E x - f t = 0}`. The initial cone is the
//! nonnegative orthant; the remaining constraints are added one at a time.
//! Adjacency uses the combinatorial zero-set test.

use num_integer::Integer;

/// `sum_j coeffs[j] x_j <= rhs` (or `=` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntConstraint {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// A rational point `num / den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    pub num: Vec<i128>,
    pub den: i128,
}

impl RationalPoint {
    pub fn to_f64(&self) -> Vec<f64> {
        self.num.iter().map(|&x| x as f64 / self.den as f64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct VertexEnumeration {
    pub vertices: Vec<RationalPoint>,
    /// Pairs of adjacent vertex indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<i128>,
    zeros: Vec<u64>,
}

fn set_bit(bits: &mut [u64], k: usize) {
    bits[k / 64] |= 1 << (k % 64);
}

fn subset_of(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn dot(h: &[i128], r: &[i128]) -> i128 {
    h.iter().zip(r).map(|(a, b)| a * b).sum()
}

fn normalize(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Pairs `(p, q)` such that no third ray's zero set contains `Z(p) & Z(q)`.
fn adjacent_pairs(rays: &[Ray], candidates: &[(usize, usize)]) -> Vec<(usize, usize)> {
    candidates
        .iter()
        .copied()
        .filter(|&(p, q)| {
            let common = and(&rays[p].zeros, &rays[q].zeros);
            !rays.iter().enumerate().any(|(r, ray)| r != p && r != q && subset_of(&common, &ray.zeros))
        })
        .collect()
}

/// Vertices and edges of `{x in R^d : x >= 0, ineq, eq}`, assumed bounded.
pub fn enumerate(d: usize, ineq: &[IntConstraint], eq: &[IntConstraint]) -> VertexEnumeration {
    // homogeneous rows h with h . (x, t) <= 0
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for c in ineq {
        rows.push(homogenize(c, 1));
    }
    for c in eq {
        rows.push(homogenize(c, 1));
        rows.push(homogenize(c, -1));
    }
    let total = d + 1 + rows.len();
    let words = total.div_ceil(64);

    let mut rays: Vec<Ray> = (0..=d)
        .map(|k| {
            let mut coords = vec![0i128; d + 1];
            coords[k] = 1;
            let mut zeros = vec![0u64; words];
            for j in 0..=d {
                if j != k {
                    set_bit(&mut zeros, j);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    for (step, h) in rows.iter().enumerate() {
        let bit = d + 1 + step;
        let vals: Vec<i128> = rays.iter().map(|r| dot(h, &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let candidates: Vec<(usize, usize)> = plus.iter().flat_map(|&p| minus.iter().map(move |&q| (p, q))).collect();
        let adjacent = adjacent_pairs(&rays, &candidates);

        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i] <= 0 {
                let mut r = r.clone();
                if vals[i] == 0 {
                    set_bit(&mut r.zeros, bit);
                }
                next.push(r);
            }
        }
        for (p, q) in adjacent {
            let (vp, vq) = (vals[p], vals[q]);
            let coords: Vec<i128> = rays[p].coords.iter().zip(&rays[q].coords).map(|(a, b)| vp * b - vq * a).collect();
            let coords = normalize(coords);
            let mut zeros = and(&rays[p].zeros, &rays[q].zeros);
            set_bit(&mut zeros, bit);
            next.push(Ray { coords, zeros });
        }
        rays = next;
    }

    let keep: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].coords[d] > 0).collect();
    let rays: Vec<Ray> = keep.iter().map(|&i| rays[i].clone()).collect();
    let mut order: Vec<usize> = (0..rays.len()).collect();
    let points: Vec<RationalPoint> = rays
        .iter()
        .map(|r| {
            let den = r.coords[d];
            let g = r.coords.iter().fold(0i128, |g, &x| g.gcd(&x));
            RationalPoint { num: r.coords[..d].iter().map(|x| x / g).collect(), den: den / g }
        })
        .collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let rank: Vec<usize> = {
        let mut rank = vec![0; order.len()];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        rank
    };
    let pairs: Vec<(usize, usize)> = (0..rays.len()).flat_map(|p| ((p + 1)..rays.len()).map(move |q| (p, q))).collect();
    let mut edges: Vec<(usize, usize)> = adjacent_pairs(&rays, &pairs)
        .into_iter()
        .map(|(p, q)| {
            let (a, b) = (rank[p], rank[q]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let vertices = order.iter().map(|&i| points[i].clone()).collect();
    VertexEnumeration { vertices, edges }
}

fn homogenize(c: &IntConstraint, sign: i128) -> Vec<i128> {
    let mut h: Vec<i128> = c.coeffs.iter().map(|&a| sign * a as i128).collect();
    h.push(-sign * c.rhs as i128);
    h
}
