use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{InverseError, InverseProblem};
use crate::matroid::MatroidData;
use crate::planar::{edge_length_forms, PlanarFan};
use crate::polytope::{cone_volume_vector, normalize_to_unit_volume, translate_to_centroid, HPolytope, NormalMatrix};
use crate::semialg::{filter_full_facet_types, sample_type_cones, FACET_TOL};

const TYPE_TRIALS: u64 = 64;
const RANK_CUTOFF: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverOptions {
    pub starts: usize,
    pub seed: u64,
    /// Euclidean norm of the residual required for convergence.
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Solutions closer than this are merged.
    pub dedupe: f64,
    /// Relative size of the random perturbation of each start.
    pub perturbation: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { starts: 20, seed: 0, residual_tol: 1e-10, max_iter: 200, dedupe: 1e-6, perturbation: 0.2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub b: Vec<f64>,
    pub residual: f64,
    /// `m` minus the numeric rank of the residual Jacobian, on the support.
    pub rank_defect: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionFamily {
    pub solutions: Vec<Solution>,
    /// Directions the problem was solved on (all of them unless the target
    /// has zero entries).
    pub support: Vec<usize>,
    /// `d - 1` for the irreducible partition of the support.
    pub expected_defect: usize,
}

/// `gamma(U, b) - target`.
pub fn residual(u: &NormalMatrix, b: &[f64], target: &[f64]) -> Result<Vec<f64>, InverseError> {
    let p = HPolytope::build(u, b)?;
    Ok(cone_volume_vector(&p).gamma.iter().zip(target).map(|(g, t)| g - t).collect())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Jacobian of `b -> gamma(U, b)`.
///
/// In the plane `gamma_i = f_i(b) b_i / 2` with `f = L b` on the current
/// type, so the derivative is exact. Elsewhere central differences are used,
/// one-sided where a coordinate is too close to zero.
pub fn jacobian(u: &NormalMatrix, b: &[f64]) -> Result<DMatrix<f64>, InverseError> {
    let m = u.len();
    if u.dim() == 2 {
        let p = HPolytope::build(u, b)?;
        let facets: Vec<usize> = (0..m).filter(|&i| p.facet_volume(i) > FACET_TOL).collect();
        if facets.len() >= 3 {
            let forms = edge_length_forms(&PlanarFan::over(u, &facets).map_err(crate::semialg::SemialgError::from)?);
            let l = forms.matrix();
            let f = forms.eval(b);
            return Ok(DMatrix::from_fn(m, m, |i, j| (l[(i, j)] * b[i] + if i == j { f[i] } else { 0.0 }) / 2.0));
        }
    }
    let gamma =
        |x: &[f64]| -> Result<Vec<f64>, InverseError> { Ok(cone_volume_vector(&HPolytope::build(u, x)?).gamma) };
    let mut jac = DMatrix::zeros(m, m);
    let mut x = b.to_vec();
    for j in 0..m {
        let h = 1e-6 * (1.0 + b[j].abs());
        let (lo, hi) = if b[j] >= h { (b[j] - h, b[j] + h) } else { (b[j], b[j] + h) };
        x[j] = hi;
        let gp = gamma(&x)?;
        x[j] = lo;
        let gm = gamma(&x)?;
        x[j] = b[j];
        for i in 0..m {
            jac[(i, j)] = (gp[i] - gm[i]) / (hi - lo);
        }
    }
    Ok(jac)
}

pub(crate) fn rank_defect(jac: &DMatrix<f64>) -> usize {
    let s = jac.clone().svd(false, false).singular_values;
    let smax = s.max();
    jac.ncols() - s.iter().filter(|&&x| x > RANK_CUTOFF * smax).count()
}

/// Regularized pseudo-solve of `J dx = rhs` with damping `mu`:
/// each singular direction is weighted by `s / (s^2 + mu)`.
fn damped_step(jac: &DMatrix<f64>, rhs: &[f64], mu: f64) -> DVector<f64> {
    let svd = jac.clone().svd(true, true);
    let (uu, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let r = DVector::from_column_slice(rhs);
    let mut dx = DVector::zeros(jac.ncols());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > 0.0 {
            dx += vt.row(k).transpose() * (uu.column(k).dot(&r) * s / (s * s + mu));
        }
    }
    dx
}

fn largest_singular_value(jac: &DMatrix<f64>) -> f64 {
    jac.clone().svd(false, false).singular_values.max()
}

struct Run {
    b: Vec<f64>,
    residual: f64,
}

/// Lowers every `b_i` to the support function of `P(U, b)` in direction
/// `u_i`. The polytope is unchanged, but a constraint that has stopped being a
/// facet now touches the polytope again, so its derivative is informative.
fn tighten(u: &NormalMatrix, b: &[f64]) -> Vec<f64> {
    match HPolytope::build(u, b) {
        Ok(p) => b
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let h = p.vertices().iter().map(|v| u.column(i).dot(v)).fold(f64::NEG_INFINITY, f64::max);
                x.min(h.max(0.0))
            })
            .collect(),
        Err(_) => b.to_vec(),
    }
}

/// Levenberg-Marquardt damping on top of an Armijo backtracking search.
/// The damping shrinks after full steps towards a floor of
/// `1e-12 sigma_max^2` and grows when the search has to cut the step.
fn newton(u: &NormalMatrix, start: Vec<f64>, target: &[f64], tol: f64, max_iter: usize) -> Run {
    let mut b = start;
    let mut r = match residual(u, &b, target) {
        Ok(r) => r,
        Err(_) => return Run { b, residual: f64::INFINITY },
    };
    let mut rn = norm(&r);
    let mut mu_rel = 1e-4;
    for _ in 0..max_iter {
        if rn <= tol {
            break;
        }
        let Ok(jac) = jacobian(u, &b) else { break };
        let smax = largest_singular_value(&jac);
        if !(smax > 0.0) {
            break;
        }
        let neg: Vec<f64> = r.iter().map(|x| -x).collect();
        let mut accepted = false;
        for _ in 0..12 {
            let dx = damped_step(&jac, &neg, mu_rel * smax * smax);
            let mut t = 1.0;
            while t > 1e-4 {
                let trial: Vec<f64> = b.iter().zip(dx.iter()).map(|(x, d)| (x + t * d).max(0.0)).collect();
                if let Ok(rt) = residual(u, &trial, target) {
                    let n = norm(&rt);
                    if n <= (1.0 - 1e-4 * t) * rn {
                        b = tighten(u, &trial);
                        r = rt;
                        rn = n;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if accepted {
                mu_rel = if t == 1.0 { (mu_rel * 0.1).max(1e-12) } else { mu_rel };
                break;
            }
            mu_rel *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    Run { b, residual: rn }
}

/// Follows `(1 - t) gamma(start) + t target` from `t = 0` to `t = 1`.
///
/// The start is first translated so that its centroid is the origin; its
/// cone-volume vector then lies in the relative interior of `P_scc`, and so
/// does the whole path when the target does.
fn continuation(u: &NormalMatrix, start: Vec<f64>, target: &[f64], opts: &SolverOptions) -> Run {
    let centered = HPolytope::build(u, &start).and_then(|p| translate_to_centroid(&p));
    let (mut b, g0) = match centered {
        Ok((b, g)) => (b, g.gamma),
        Err(_) => return newton(u, start, target, opts.residual_tol, opts.max_iter),
    };
    let (mut t, mut dt) = (0.0f64, 1.0f64);
    while t < 1.0 && dt >= 1.0 / 1024.0 {
        let next = (t + dt).min(1.0);
        let goal: Vec<f64> = g0.iter().zip(target).map(|(a, z)| (1.0 - next) * a + next * z).collect();
        let run = newton(u, b.clone(), &goal, 1e-9, 40);
        if run.residual <= 1e-9 {
            b = run.b;
            t = next;
            dt = (dt * 2.0).min(1.0);
        } else {
            dt *= 0.5;
        }
    }
    newton(u, b, target, opts.residual_tol, opts.max_iter)
}

/// Interior points of the full-facet type cones, scaled to volume one.
fn representatives(u: &NormalMatrix, seed: u64) -> Vec<Vec<f64>> {
    let reps: Vec<Vec<f64>> = filter_full_facet_types(&sample_type_cones(u, TYPE_TRIALS, seed))
        .into_iter()
        .filter_map(|t| normalize_to_unit_volume(u, &t.representative).ok())
        .collect();
    if reps.is_empty() {
        vec![vec![1.0; u.len()]]
    } else {
        reps
    }
}

fn solve_full(u: &NormalMatrix, target: &[f64], opts: &SolverOptions) -> Result<Vec<Solution>, InverseError> {
    let reps = representatives(u, opts.seed);
    let runs: Vec<Run> = (0..opts.starts.max(1))
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(s as u64));
            let base = &reps[s % reps.len()];
            let start: Vec<f64> =
                base.iter().map(|x| x * (1.0 + opts.perturbation * rng.random_range(-1.0..1.0))).collect();
            let start = normalize_to_unit_volume(u, &start).unwrap_or_else(|_| base.clone());
            continuation(u, start, target, opts)
        })
        .collect();
    let mut ok: Vec<Run> = Vec::new();
    let mut best: Option<Run> = None;
    for run in runs {
        if run.residual <= opts.residual_tol {
            ok.push(run);
        } else if best.as_ref().is_none_or(|b| run.residual < b.residual) {
            best = Some(run);
        }
    }
    if ok.is_empty() {
        let best = best.unwrap_or(Run { b: vec![], residual: f64::INFINITY });
        return Err(InverseError::NoConvergence { best_residual: best.residual, best_b: best.b });
    }
    ok.sort_by(|a, b| a.residual.total_cmp(&b.residual).then_with(|| cmp_lex(&a.b, &b.b)));
    let mut kept: Vec<Run> = Vec::new();
    for run in ok {
        let dup =
            kept.iter().any(|k| norm(&k.b.iter().zip(&run.b).map(|(x, y)| x - y).collect::<Vec<_>>()) < opts.dedupe);
        if !dup {
            kept.push(run);
        }
    }
    kept.into_iter()
        .map(|run| {
            let rank_defect = rank_defect(&jacobian(u, &run.b)?);
            Ok(Solution { b: run.b, residual: run.residual, rank_defect })
        })
        .collect()
}

fn cmp_lex(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

/// Multistart damped Newton for `gamma(U, b) = target`.
///
/// Zero entries of the target are handled by solving on the support and
/// placing the remaining hyperplanes at the support function of the
/// solution, where they touch the polytope without forming a facet.
pub fn solve(problem: &InverseProblem, opts: &SolverOptions) -> Result<SolutionFamily, InverseError> {
    let u = &problem.u;
    let support = problem.support();
    if support.len() == u.len() {
        let solutions = solve_full(u, &problem.target, opts)?;
        let expected_defect = MatroidData::new(u).d() - 1;
        return Ok(SolutionFamily { solutions, support, expected_defect });
    }
    if !u.positively_spans(&support) {
        return Err(InverseError::SupportNotSpanning);
    }
    let sub = u.restrict(&support)?;
    let sub_target: Vec<f64> = support.iter().map(|&i| problem.target[i]).collect();
    let expected_defect = MatroidData::new(&sub).d() - 1;
    let solutions = match solve_full(&sub, &sub_target, opts) {
        Ok(s) => s,
        Err(InverseError::NoConvergence { best_residual, best_b }) => {
            return Err(InverseError::NoConvergence { best_residual, best_b: lift(u, &sub, &support, &best_b)? })
        }
        Err(e) => return Err(e),
    };
    let solutions = solutions
        .into_iter()
        .map(|s| Ok(Solution { b: lift(u, &sub, &support, &s.b)?, ..s }))
        .collect::<Result<Vec<_>, InverseError>>()?;
    Ok(SolutionFamily { solutions, support, expected_defect })
}

fn lift(u: &NormalMatrix, sub: &NormalMatrix, support: &[usize], bs: &[f64]) -> Result<Vec<f64>, InverseError> {
    if bs.is_empty() {
        return Ok(vec![]);
    }
    let p = HPolytope::build(sub, bs)?;
    let mut b = vec![0.0; u.len()];
    for (j, bj) in b.iter_mut().enumerate() {
        *bj = match support.iter().position(|&i| i == j) {
            Some(k) => bs[k],
            None => p.vertices().iter().map(|v| u.column(j).dot(v)).fold(f64::NEG_INFINITY, f64::max),
        };
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> NormalMatrix {
        NormalMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap()
    }

    #[test]
    fn planar_jacobian_matches_differences() {
        let u = NormalMatrix::new(vec![
            vec![1.0, 0.0],
            vec![0.0, -1.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![std::f64::consts::FRAC_1_SQRT_2; 2],
        ])
        .unwrap();
        let b = [0.6, 0.9, 0.2, 0.6, 0.6];
        let a = jacobian(&u, &b).unwrap();
        let h = 1e-6;
        for j in 0..5 {
            let mut bp = b.to_vec();
            bp[j] += h;
            let mut bm = b.to_vec();
            bm[j] -= h;
            let gp = residual(&u, &bp, &[0.0; 5]).unwrap();
            let gm = residual(&u, &bm, &[0.0; 5]).unwrap();
            for i in 0..5 {
                assert!((a[(i, j)] - (gp[i] - gm[i]) / (2.0 * h)).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn square_family() {
        let p = InverseProblem::new(square(), vec![0.25; 4]).unwrap();
        let fam = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(fam.expected_defect, 1);
        for s in &fam.solutions {
            assert!(s.residual <= 1e-10);
            assert_eq!(s.rank_defect, 1);
            // a rectangle of area one with the origin at its center
            assert!((s.b[0] - s.b[2]).abs() < 1e-8 && (s.b[1] - s.b[3]).abs() < 1e-8);
        }
    }

    #[test]
    fn unsolvable_square_target() {
        let p = InverseProblem::new(square(), vec![0.3, 0.25, 0.3, 0.15]).unwrap();
        let opts = SolverOptions { starts: 4, ..Default::default() };
        assert!(matches!(solve(&p, &opts), Err(InverseError::NoConvergence { .. })));
    }

    #[test]
    fn validation() {
        assert!(matches!(InverseProblem::new(square(), vec![0.5; 4]), Err(InverseError::NotNormalized { .. })));
        assert!(matches!(
            InverseProblem::new(square(), vec![0.5, 0.5, 0.5, -0.5]),
            Err(InverseError::NegativeTarget { index: 3, .. })
        ));
    }
}
