use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polynomial::{monomials_of_degree, Monomial, Polynomial};
use super::types::{cone_rows_for, detect_type, relative_slack, ConeRow};
use super::SemialgError;
use crate::planar::{edge_length_forms, PlanarFan};
use crate::polytope::{HPolytope, NormalMatrix};

/// Relative residual allowed on held-out interpolation samples.
pub const HOLDOUT_TOL: f64 = 1e-7;
const HOLDOUT_POINTS: usize = 20;
const PRUNE_REL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Symbolic,
    Interpolated,
}

/// The polynomial description of one type cone:
/// `cone_rows . b > 0`, `volume_poly(b) = 1`, `g_i = facet_polys[i](b) b_i / n`.
#[derive(Clone, Debug, Serialize)]
pub struct SemialgSystem {
    pub n: usize,
    pub m: usize,
    pub type_id: String,
    /// `b1..bm` followed by `g1..gm`.
    pub variables: Vec<String>,
    pub cone_rows: Vec<ConeRow>,
    /// Polynomial in the `b` variables.
    pub volume_poly: Polynomial,
    /// One polynomial in the `b` variables per direction.
    pub facet_polys: Vec<Polynomial>,
    /// `g_i - facet_polys[i](b) b_i / n`, over all `2m` variables.
    pub coupling: Vec<Polynomial>,
    pub facets: Vec<usize>,
    pub sample: Vec<f64>,
    pub construction: Construction,
    /// Worst relative error on held-out samples (0 for symbolic systems).
    pub max_holdout_residual: f64,
}

impl SemialgSystem {
    pub fn volume(&self, b: &[f64]) -> f64 {
        self.volume_poly.eval(b)
    }

    pub fn facet_measures(&self, b: &[f64]) -> Vec<f64> {
        self.facet_polys.iter().map(|p| p.eval(b)).collect()
    }

    /// `gamma_i = f_i(b) b_i / n` (not normalized).
    pub fn gamma(&self, b: &[f64]) -> Vec<f64> {
        self.facet_measures(b).iter().zip(b).map(|(f, x)| f * x / self.n as f64).collect()
    }

    pub fn in_cone(&self, b: &[f64]) -> bool {
        self.cone_rows.iter().all(|r| r.eval(b) > 0.0)
    }

    /// Residuals of the coupling equations at `(b, gamma)`.
    pub fn coupling_residuals(&self, b: &[f64], gamma: &[f64]) -> Vec<f64> {
        let x: Vec<f64> = b.iter().chain(gamma).copied().collect();
        self.coupling.iter().map(|p| p.eval(&x)).collect()
    }

    /// Plain-text SMT-LIB rendering for external solvers.
    pub fn to_smtlib(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("; type {} (n = {}, m = {})\n", self.type_id, self.n, self.m));
        s.push_str("(set-logic QF_NRA)\n");
        for v in &self.variables {
            s.push_str(&format!("(declare-const {v} Real)\n"));
        }
        let names = &self.variables[..self.m];
        for r in &self.cone_rows {
            let p = Polynomial::linear(&r.coeffs).pruned(PRUNE_REL);
            s.push_str(&format!("(assert (> {} 0.0))\n", p.to_prefix(names)));
        }
        s.push_str(&format!("(assert (= {} 1.0))\n", self.volume_poly.to_prefix(names)));
        for c in &self.coupling {
            s.push_str(&format!("(assert (= {} 0.0))\n", c.to_prefix(&self.variables)));
        }
        s.push_str("(check-sat)\n");
        s
    }
}

fn variable_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("b{i}")).chain((1..=m).map(|i| format!("g{i}"))).collect()
}

fn coupling(n: usize, m: usize, facet_polys: &[Polynomial]) -> Vec<Polynomial> {
    facet_polys
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let fb = &f.extend_vars(2 * m) * &Polynomial::var(2 * m, i);
            &Polynomial::var(2 * m, m + i) - &fb.scale(1.0 / n as f64)
        })
        .collect()
}

/// Builds the system of the type cone containing `b_sample`.
///
/// Planar systems come straight from the edge-length forms. In higher
/// dimension the volume and facet measures are fitted by least squares on
/// homogeneous monomials and checked on held-out points.
pub fn build_system(u: &NormalMatrix, b_sample: &[f64]) -> Result<SemialgSystem, SemialgError> {
    let t = detect_type(u, b_sample)?;
    let cone_rows = cone_rows_for(u, &t)?;
    let (n, m) = (u.dim(), u.len());
    let (volume_poly, facet_polys, construction, residual) = if n == 2 {
        let (v, f) = planar_polys(u, &t.facets)?;
        (v, f, Construction::Symbolic, 0.0)
    } else {
        let (v, f, r) = interpolate(u, b_sample, &t.facets, &cone_rows)?;
        (v, f, Construction::Interpolated, r)
    };
    let coupling = coupling(n, m, &facet_polys);
    Ok(SemialgSystem {
        n,
        m,
        type_id: t.id,
        variables: variable_names(m),
        cone_rows,
        volume_poly,
        facet_polys,
        coupling,
        facets: t.facets,
        sample: b_sample.to_vec(),
        construction,
        max_holdout_residual: residual,
    })
}

fn planar_polys(u: &NormalMatrix, facets: &[usize]) -> Result<(Polynomial, Vec<Polynomial>), SemialgError> {
    let m = u.len();
    let forms = edge_length_forms(&PlanarFan::over(u, facets)?);
    let l = forms.matrix();
    let facet_polys: Vec<Polynomial> =
        (0..m).map(|i| Polynomial::linear(&l.row(i).iter().copied().collect::<Vec<_>>())).collect();
    let mut v = Polynomial::zero(m);
    for (i, f) in facet_polys.iter().enumerate() {
        v = &v + &(f * &Polynomial::var(m, i)).scale(0.5);
    }
    Ok((v, facet_polys))
}

struct Samples {
    points: Vec<Vec<f64>>,
    volume: Vec<f64>,
    facets: Vec<Vec<f64>>,
}

fn draw_samples(
    u: &NormalMatrix,
    center: &[f64],
    vars: &[usize],
    rows: &[ConeRow],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Samples, SemialgError> {
    let scale = vars.iter().map(|&i| center[i]).fold(0.0, f64::max);
    let mut radius = 0.5 * scale;
    let mut out = Samples { points: Vec::new(), volume: Vec::new(), facets: Vec::new() };
    let mut misses = 0usize;
    while out.points.len() < count {
        let mut b = center.to_vec();
        for &i in vars {
            b[i] += radius * rng.random_range(-1.0..1.0);
        }
        if b.iter().any(|&x| x < 0.0) || relative_slack(rows, &b) <= 1e-6 {
            misses += 1;
            if misses > 50 {
                radius *= 0.5;
                misses = 0;
                if radius < 1e-8 * scale {
                    return Err(SemialgError::InterpolationIllConditioned {
                        detail: "type cone too thin around the sample".into(),
                    });
                }
            }
            continue;
        }
        let p = HPolytope::build(u, &b)?;
        out.volume.push(p.volume());
        out.facets.push(p.facet_measures().to_vec());
        out.points.push(b);
    }
    Ok(out)
}

fn fit(basis: &[Monomial], points: &[Vec<f64>], values: &[f64], m: usize) -> Result<Polynomial, SemialgError> {
    let a = DMatrix::from_fn(points.len(), basis.len(), |r, c| basis[c].eval(&points[r]));
    let y = DVector::from_column_slice(values);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(SemialgError::InterpolationIllConditioned {
            detail: format!("design matrix condition {:.3e}", smax / smin),
        });
    }
    let coef =
        svd.solve(&y, 1e-14 * smax).map_err(|e| SemialgError::InterpolationIllConditioned { detail: e.to_string() })?;
    Ok(Polynomial::from_terms(m, basis.iter().cloned().zip(coef.iter().copied())))
}

fn interpolate(
    u: &NormalMatrix,
    b: &[f64],
    facets: &[usize],
    rows: &[ConeRow],
) -> Result<(Polynomial, Vec<Polynomial>, f64), SemialgError> {
    let (n, m) = (u.dim(), u.len());
    let vbasis = monomials_of_degree(m, facets, n as u32);
    let fbasis = monomials_of_degree(m, facets, n as u32 - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fit_pts = draw_samples(u, b, facets, rows, 2 * vbasis.len() + 10, &mut rng)?;
    let held = draw_samples(u, b, facets, rows, HOLDOUT_POINTS, &mut rng)?;

    let vol_scale = fit_pts.volume.iter().fold(0.0, |a: f64, x| a.max(x.abs()));
    let volume_poly = fit(&vbasis, &fit_pts.points, &fit_pts.volume, m)?.pruned(PRUNE_REL);
    let mut residual = 0.0f64;
    for (p, v) in held.points.iter().zip(&held.volume) {
        residual = residual.max((volume_poly.eval(p) - v).abs() / vol_scale);
    }
    let mut facet_polys = vec![Polynomial::zero(m); m];
    for &i in facets {
        let vals: Vec<f64> = fit_pts.facets.iter().map(|f| f[i]).collect();
        let f_scale = vals.iter().fold(0.0, |a: f64, x| a.max(x.abs()));
        let poly = fit(&fbasis, &fit_pts.points, &vals, m)?.pruned(PRUNE_REL);
        for (p, f) in held.points.iter().zip(&held.facets) {
            residual = residual.max((poly.eval(p) - f[i]).abs() / f_scale);
        }
        facet_polys[i] = poly;
    }
    if residual > HOLDOUT_TOL {
        return Err(SemialgError::InterpolationIllConditioned {
            detail: format!("held-out relative residual {residual:.3e}"),
        });
    }
    Ok((volume_poly, facet_polys, residual))
}
