//! One test per acceptance criterion; each prints a PASS or FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use common::*;
use conevol::inverse::{
    dimension_probe, feasibility_scan, residual, scaling_family, solve, InverseProblem, SolverOptions,
};
use conevol::matroid::{brute_force_scc, build_pscc, scc_check};
use conevol::planar::{trapezoid_membership, TrapezoidLabels};
use conevol::polytope::{
    cone_volume_vector, normalize_to_unit_volume, sparse_vertex_witness, translate_cone_volumes, translate_to_centroid,
    HPolytope, NormalMatrix,
};
use conevol::semialg::{build_system, filter_full_facet_types, local_type_cone, sample_type_cones, Polynomial};
use itertools::Itertools;
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

fn dirichlet(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..m).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

fn normalized_gamma(u: &NormalMatrix, b: &[f64]) -> Vec<f64> {
    let g = cone_volume_vector(&HPolytope::build(u, b).unwrap());
    g.gamma.iter().map(|x| x / g.total).collect()
}

#[test]
fn criterion_01_cone_volumes() {
    let mut fails = Vec::new();
    let p = HPolytope::build(&square(), &[0.5; 4]).unwrap();
    let g = cone_volume_vector(&p);
    if max_abs_diff(&g.gamma, &[0.25; 4]) > 1e-12 {
        fails.push(format!("unit square gamma = {:?}", g.gamma));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for k in 0..500 {
        let n = 2 + k % 2;
        let m = rng.random_range(n + 1..=8);
        let u = random_normals(&mut rng, n, m);
        let b = random_rhs(&mut rng, m);
        let p = HPolytope::build(&u, &b).unwrap();
        let vol = volume_by_triangulation(&p);
        let sum = cone_volume_vector(&p).total;
        let err = (sum - vol).abs().max((p.volume() - vol).abs()) / vol.max(1.0);
        worst = worst.max(err);
        if err > 1e-9 {
            fails.push(format!("case {k}: sum gamma = {sum}, triangulated volume = {vol}"));
        }
    }
    println!("    worst pyramid-identity error over 500 cases: {worst:.2e}");
    report(1, "square gamma exact, pyramid identity on 500 random polytopes", &fails);
}

#[test]
fn criterion_02_trapezoid_closed_form() {
    let u = trapezoid();
    let labels = TrapezoidLabels::new(&u, [0, 1, 2, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut fails = Vec::new();
    for k in 0..1000 {
        let (b2, b3, b4) = (rng.random_range(0.1..1.5), rng.random_range(0.1..1.5), rng.random_range(0.1..1.5));
        // the u2/u4 apex sits at height (b2 + b4) / sqrt(2); every fifth
        // sample is pushed close to it, where the trapezoid degenerates
        let apex = (b2 + b4) * S;
        let b1 =
            if k % 5 == 0 { apex * (1.0 - rng.random_range(1e-6..1e-2)) } else { rng.random_range(0.01..0.999) * apex };
        let b = normalize_to_unit_volume(&u, &[b1, b2, b3, b4]).unwrap();
        let g = cone_volume_vector(&HPolytope::build(&u, &b).unwrap()).gamma;
        match trapezoid_membership(&g, &labels) {
            Ok(true) => {}
            other => fails.push(format!("b = {b:?}, gamma = {g:?}: {other:?}")),
        }
    }
    let boundary = [1.0 / 9.0, 2.0 / 9.0, 4.0 / 9.0, 2.0 / 9.0];
    if trapezoid_membership(&boundary, &labels) != Ok(true) {
        fails.push("boundary point rejected".into());
    }
    let e = 1e-3;
    let outside = [1.0 / 9.0 + e, 2.0 / 9.0 - e, 4.0 / 9.0, 2.0 / 9.0];
    if trapezoid_membership(&outside, &labels) != Ok(false) {
        fails.push("perturbed boundary point accepted".into());
    }
    report(2, "1000 trapezoid cone-volume vectors accepted, boundary point and its perturbation", &fails);
}

fn scaled_vertex_set(vertices: &[Vec<f64>], n: usize) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> =
        vertices.iter().map(|x| x.iter().map(|c| (c * n as f64).round() as i64).collect()).collect();
    v.sort();
    v
}

fn is_exact_multiple(vertices: &[Vec<f64>], n: usize) -> bool {
    vertices.iter().flatten().all(|c| (c * n as f64 - (c * n as f64).round()).abs() < 1e-12)
}

#[test]
fn criterion_03_pscc_structure() {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, m) in [(2usize, 4usize), (3, 5)] {
        let u = random_normals(&mut rng, n, m);
        let p = build_pscc(&u);
        let hyper: Vec<Vec<i64>> =
            (0..m).combinations(n).map(|s| (0..m).map(|i| s.contains(&i) as i64).collect()).sorted().collect();
        let dd = p.hrep_vertices();
        if scaled_vertex_set(&p.vertices, n) != hyper
            || scaled_vertex_set(&dd, n) != hyper
            || !is_exact_multiple(&dd, n)
        {
            fails.push(format!("general position ({n}, {m}) is not the scaled hypersimplex"));
        }
    }
    for n in [2usize, 3] {
        let u = parallelepiped(n);
        let p = build_pscc(&u);
        let e = p.enumerate_hrep();
        let pts: Vec<Vec<f64>> = e.vertices.iter().map(|v| v.to_f64()).collect();
        if pts.len() != 1 << n || p.dim != n {
            fails.push(format!("parallelepiped n = {n}: {} vertices, dim {}", pts.len(), p.dim));
        }
        let mut degree = vec![0; pts.len()];
        for &(a, b) in &e.edges {
            degree[a] += 1;
            degree[b] += 1;
            // the exact enumeration works on n P_scc, whose vertices are the 0/1 vectors chi(B)
            let d = pts[a].iter().zip(&pts[b]).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
            if (d - 2f64.sqrt()).abs() > 1e-12 {
                fails.push(format!("parallelepiped n = {n}: edge of length {d}"));
            }
        }
        if degree.iter().any(|&k| k != n) || e.edges.len() != n << (n - 1) {
            fails.push(format!("parallelepiped n = {n}: not an n-cube graph"));
        }
    }
    let p = build_pscc(&trapezoid());
    // already in lexicographic order
    let listed = vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 1, 0, 0]];
    let dd = p.hrep_vertices();
    if scaled_vertex_set(&dd, 2) != listed || scaled_vertex_set(&p.vertices, 2) != listed || p.dim != 3 {
        fails.push(format!("trapezoid: {:?}, dim {}", scaled_vertex_set(&dd, 2), p.dim));
    }
    report(3, "hypersimplex, parallelepiped cube with edge sqrt 2, trapezoid pyramid", &fails);
}

fn scc_matrices(rng: &mut ChaCha8Rng) -> Vec<NormalMatrix> {
    let mut v = vec![square(), trapezoid(), pentagon(), cube(3), parallelepiped(3), simplex(3), simplex(4)];
    v.push(random_normals(rng, 3, 6));
    v.push(random_normals(rng, 4, 7));
    v.push(random_normals(rng, 2, 6));
    // coordinate directions plus one diagonal: flats of every rank
    v.push(
        NormalMatrix::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
            vec![S, S, 0.0],
        ])
        .unwrap(),
    );
    v
}

#[test]
fn criterion_04_scc_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mats = scc_matrices(&mut rng);
    let mut fails = Vec::new();
    let mut cases = 0;
    let mut kinds = std::collections::BTreeMap::new();
    for k in 0..220 {
        let u = &mats[k % mats.len()];
        let p = build_pscc(u);
        let m = u.len();
        // vertices and midpoints of vertex pairs sit on many facets at once;
        // a 1e-11 admixture keeps every entry positive
        let nudge = |v: Vec<f64>, rng: &mut ChaCha8Rng| -> Vec<f64> {
            let w = dirichlet(rng, m);
            v.iter().zip(&w).map(|(x, y)| (1.0 - 1e-11) * x + 1e-11 * y).collect()
        };
        let gamma: Vec<f64> = match k % 4 {
            0 => dirichlet(&mut rng, m),
            1 => nudge(p.vertices[rng.random_range(0..p.vertices.len())].clone(), &mut rng),
            2 => {
                let (a, b) = (rng.random_range(0..p.vertices.len()), rng.random_range(0..p.vertices.len()));
                nudge(p.vertices[a].iter().zip(&p.vertices[b]).map(|(x, y)| (x + y) / 2.0).collect(), &mut rng)
            }
            _ => {
                let v = &p.vertices[rng.random_range(0..p.vertices.len())];
                let w = dirichlet(&mut rng, m);
                let t = rng.random_range(0.0..1.0);
                v.iter().zip(&w).map(|(x, y)| t * x + (1.0 - t) * y).collect()
            }
        };
        let fast = scc_check(u, &gamma).unwrap();
        let slow = brute_force_scc(u, &gamma).unwrap();
        *kinds.entry(format!("{:?}", std::mem::discriminant(&fast))).or_insert(0) += 1;
        cases += 1;
        if !fast.same_as(&slow) {
            fails.push(format!("gamma = {gamma:?}: {fast:?} vs {slow:?}"));
        }
    }
    println!("    {cases} cases over {} matrices, {} verdict kinds", mats.len(), kinds.len());
    if kinds.len() < 3 {
        fails.push("sample did not exercise all verdict kinds".into());
    }
    report(4, "scc_check agrees with brute force", &fails);
}

#[test]
fn criterion_05_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fails = Vec::new();
    for k in 0..200 {
        let n = 2 + k % 2;
        let m = rng.random_range(n + 1..=7);
        // every direction a facet, so the centered gamma is positive
        let (u, b) = random_full_facet(&mut rng, n, m);
        let p = HPolytope::build(&u, &b).unwrap();
        // -t is a random point of P, so the origin stays inside P + t
        let w = dirichlet(&mut rng, p.vertices().len());
        let x: DVector<f64> = p.vertices().iter().zip(&w).fold(DVector::zeros(n), |a, (v, c)| a + v * *c);
        let t: Vec<f64> = x.iter().map(|c| -c).collect();
        let analytic = translate_cone_volumes(&p, &t).unwrap();
        let shifted: Vec<f64> =
            b.iter().zip(u.apply_transpose(&DVector::from_vec(t.clone()))).map(|(bi, s)| bi + s).collect();
        let direct = cone_volume_vector(&HPolytope::build(&u, &shifted).unwrap());
        if max_abs_diff(&analytic.gamma, &direct.gamma) > 1e-9 {
            fails.push(format!(
                "case {k}: translated gamma differs by {:.2e}",
                max_abs_diff(&analytic.gamma, &direct.gamma)
            ));
        }
        let (_, centered) = translate_to_centroid(&p).unwrap();
        let g: Vec<f64> = centered.gamma.iter().map(|x| x / centered.total).collect();
        match scc_check(&u, &g) {
            Ok(v) if v.is_satisfied() => {}
            other => fails.push(format!("case {k}: centered gamma {g:?} gives {other:?}")),
        }
    }
    report(5, "translation formula and centered polytopes satisfy SCC", &fails);
}

#[test]
fn criterion_06_pentagon_inverse() {
    let u = pentagon();
    let mut fails = Vec::new();
    let target = vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0];
    let fam = solve(&InverseProblem::new(u.clone(), target).unwrap(), &SolverOptions::default()).unwrap();
    for s in &fam.solutions {
        println!("    solution b = {:?}, residual {:.1e}, rank defect {}", s.b, s.residual, s.rank_defect);
    }
    if fam.solutions.len() != 1 {
        fails.push(format!("{} solution clusters", fam.solutions.len()));
    }
    let s = &fam.solutions[0];
    if s.residual > 1e-10 || s.rank_defect != 0 {
        fails.push(format!("residual {:.2e}, rank defect {}", s.residual, s.rank_defect));
    }
    let quoted = [0.66, 0.82, 0.15, 0.66, 0.79];
    let off = max_abs_diff(&s.b, &quoted);
    if off > 2e-2 {
        let g = cone_volume_vector(&HPolytope::build(&u, &quoted).unwrap()).gamma;
        fails.push(format!(
            "solution is {off:.3} away from the quoted (0.66, 0.82, 0.15, 0.66, 0.79); that vector has gamma = {g:.4?}"
        ));
    }
    let hat = InverseProblem::new(u, vec![0.25, 0.25, 0.25, 0.25, 0.0]).unwrap();
    let fam = solve(&hat, &SolverOptions::default()).unwrap();
    if fam.support != vec![0, 1, 2, 3] || fam.solutions.iter().any(|s| s.rank_defect < 1) || fam.expected_defect != 1 {
        fails.push(format!(
            "zero-entry target: support {:?}, defects {:?}",
            fam.support,
            fam.solutions.iter().map(|s| s.rank_defect).collect::<Vec<_>>()
        ));
    }
    report(6, "pentagon inverse problem", &fails);
}

#[test]
fn criterion_07_scaling_family() {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (u, d) in [(square(), 2usize), (cube(3), 3)] {
        let b0 = normalize_to_unit_volume(&u, &random_rhs(&mut rng, u.len())).unwrap();
        let gamma = cone_volume_vector(&HPolytope::build(&u, &b0).unwrap()).gamma;
        for block in 0..d {
            for lambda in [0.5, 0.75, 1.0, 1.5, 2.0] {
                let bl = scaling_family(&u, &b0, lambda, block).unwrap();
                let r = residual(&u, &bl, &gamma).unwrap();
                let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                if rn > 1e-9 {
                    fails.push(format!("n = {}, block {block}, lambda {lambda}: residual {rn:.2e}", u.dim()));
                }
            }
        }
        let defect = dimension_probe(&u, &b0).unwrap();
        if defect != d - 1 {
            fails.push(format!("n = {}: rank defect {defect}, expected {}", u.dim(), d - 1));
        }
    }
    report(7, "scaling family of the square and the 3-cube", &fails);
}

#[test]
fn criterion_08_type_cones() {
    let mut fails = Vec::new();
    let u = trapezoid();
    let types = sample_type_cones(&u, 400, 0);
    if types.len() != 2 || filter_full_facet_types(&types).len() != 1 {
        fails.push(format!("trapezoid: {} types", types.len()));
    }
    // a_2 = -1, a_4 = 1, l_2 = l_4 = sqrt 2: sqrt2 b2 + sqrt2 b4 - 2 b1 >= 0
    let expected = [-2.0, 2f64.sqrt(), 0.0, 2f64.sqrt()];
    let unit = |v: &[f64]| {
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter().map(|x| x / nrm).collect::<Vec<_>>()
    };
    let rows = local_type_cone(&u, &[0.5, 1.0, 1.0, 1.0]).unwrap();
    let best = rows.iter().map(|r| max_abs_diff(&unit(&r.coeffs), &unit(&expected))).fold(f64::INFINITY, f64::min);
    if best > 1e-9 {
        fails.push(format!("separating form not recovered (closest row off by {best:.2e})"));
    }
    for (name, u) in [("square", square()), ("cube", cube(3)), ("triangle", simplex(2)), ("tetrahedron", simplex(3))] {
        let k = sample_type_cones(&u, 100, 0).len();
        if k != 1 {
            fails.push(format!("{name}: {k} types"));
        }
    }
    for n in [2usize, 3] {
        let u = parallelepiped(n);
        let det = u.submatrix(&(0..n).collect::<Vec<_>>()).determinant().abs();
        let b: Vec<f64> = (0..2 * n).map(|i| 0.6 + 0.1 * i as f64).collect();
        let sys = build_system(&u, &b).unwrap();
        let mut expected = Polynomial::constant(2 * n, 1.0 / det);
        for i in 0..n {
            expected = &expected * &(&Polynomial::var(2 * n, i) + &Polynomial::var(2 * n, n + i));
        }
        let d = sys.volume_poly.max_coefficient_distance(&expected);
        if d > 1e-9 {
            fails.push(format!("parallelepiped n = {n}: volume polynomial off by {d:.2e}"));
        }
    }
    report(8, "type cones of the running examples and the parallelepiped volume", &fails);
}

#[test]
fn criterion_09_relint_pscc_solvable() {
    let u = trapezoid();
    let p = build_pscc(&u);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let gammas = p.sample_relative_interior(&mut rng, 100);
    let verdicts = feasibility_scan(&u, &gammas, &SolverOptions::default()).unwrap();
    let mut fails = Vec::new();
    for (g, v) in gammas.iter().zip(&verdicts) {
        if !v.is_solved() {
            fails.push(format!("gamma = {g:?}: {v:?}"));
        }
    }
    println!("    solved {}/100", verdicts.iter().filter(|v| v.is_solved()).count());
    report(9, "relative interior of P_scc of the trapezoid is solvable", &fails);
}

#[test]
fn criterion_10_dichotomy() {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let sparse = [
        ("trapezoid", trapezoid()),
        ("pentagon", pentagon()),
        ("general 2x5", random_normals(&mut rng, 2, 5)),
        ("general 3x6", random_normals(&mut rng, 3, 6)),
        ("tetrahedron", simplex(3)),
    ];
    for (name, u) in sparse {
        match sparse_vertex_witness(&u) {
            Some(w) => {
                let g = cone_volume_vector(&HPolytope::build(&u, &w.b).unwrap());
                if w.support_size() >= u.dim()
                    || max_abs_diff(&g.gamma, &w.gamma.gamma) > 1e-12
                    || (g.total - 1.0).abs() > 1e-9
                {
                    fails.push(format!("{name}: bad witness {w:?}"));
                }
            }
            None => fails.push(format!("{name}: no witness")),
        }
    }
    for (name, u) in [("square", square()), ("cube", cube(3)), ("skew 3", parallelepiped(3))] {
        if sparse_vertex_witness(&u).is_some() {
            fails.push(format!("{name}: unexpected witness"));
        }
        let p = build_pscc(&u);
        for _ in 0..200 {
            let b: Vec<f64> = (0..u.len()).map(|_| rng.random_range(0.0..1.5)).collect();
            let Ok(b) = normalize_to_unit_volume(&u, &b) else { continue };
            let g = normalized_gamma(&u, &b);
            if !p.contains(&g, 1e-9) {
                fails.push(format!("{name}: gamma {g:?} outside P_scc"));
            }
        }
    }
    report(10, "sparse witnesses exist except for parallelepipeds, whose gammas lie in P_scc", &fails);
}
