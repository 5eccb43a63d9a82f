//! Levi-Civita connection, the stationary Navier-Stokes residual of a
//! vector field, and the gradient-symmetry identity of closed duals.

use rand::Rng;
use serde::Serialize;

use super::linalg::*;
use super::ops::*;
use super::{Form, FormsError, MetricField, Point, VectorField};
use crate::jet::{seed, Scalar};
use crate::sampling::{indexed_rng, sweep_max, sweep_min};

pub type Christoffel<S> = [[[S; 3]; 3]; 3];

/// `Gamma^i_{jk} = 1/2 g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk})`.
pub fn christoffel_symbols<G: MetricField, S: Scalar>(metric: &G, p: &Point<S>) -> Christoffel<S> {
    let gj = metric.eval(&seed(p));
    let g = gj.map(|r| r.map(|c| c.v));
    let dg = |l: usize, k: usize, j: usize| gj[l][k].d[j];
    let inv = inv3(&g);
    let mut lower = [[[S::zero(); 3]; 3]; 3];
    for (l, row) in lower.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                row[j][k] = (dg(l, k, j) + dg(l, j, k) - dg(j, k, l)) * 0.5;
            }
        }
    }
    let mut gamma = [[[S::zero(); 3]; 3]; 3];
    for (i, gi) in gamma.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                gi[j][k] = inv[i][0] * lower[0][j][k] + inv[i][1] * lower[1][j][k] + inv[i][2] * lower[2][j][k];
            }
        }
    }
    gamma
}

/// Christoffel symbols at a point, `Gamma[i][j][k] = Gamma^i_{jk}`.
pub fn christoffel<G: MetricField>(metric: &G, point: &[f64; 3]) -> Result<Christoffel<f64>, FormsError> {
    metric.check(point)?;
    Ok(christoffel_symbols(metric, point))
}

/// `nabla_V X = V^j d_j X + Gamma(V, X)` given the Jacobian of `X`.
pub fn covariant<S: Scalar>(gamma: &Christoffel<S>, jac: &Mat3<S>, x: &[S; 3], v: &[S; 3]) -> [S; 3] {
    let mut out = matvec(jac, v);
    for (i, o) in out.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                *o += gamma[i][j][k] * v[j] * x[k];
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NsReport {
    pub nu: f64,
    pub samples: usize,
    /// Max over samples of `|nabla_X X - nu Delta X + grad p|_g`.
    pub momentum_residual_max: f64,
    /// Max over samples of `|d* X^flat|`.
    pub divergence_max: f64,
    /// Range of the pressure `p = -1/2 g(X, X)` over the samples.
    pub pressure_range: [f64; 2],
    pub worst_point: Option<[f64; 3]>,
}

/// Pointwise pieces of the stationary momentum balance.
#[derive(Debug, Clone, Copy)]
pub struct NsTerms {
    pub metric: Mat3<f64>,
    pub advection: [f64; 3],
    pub laplacian: [f64; 3],
    pub grad_p: [f64; 3],
    pub pressure: f64,
    pub divergence: f64,
}

impl NsTerms {
    pub fn residual(&self, nu: f64) -> f64 {
        let r: [f64; 3] = [0, 1, 2].map(|i| self.advection[i] - nu * self.laplacian[i] + self.grad_p[i]);
        bilinear(&self.metric, &r, &r).max(0.0).sqrt()
    }
}

/// Evaluates `nabla_X X`, `(Delta X^flat)^sharp`, `grad p` with
/// `p = -1/2 |X|^2`, and `d* X^flat` at one point.
pub fn ns_terms<G, X>(field: &X, metric: &G, p: &[f64; 3]) -> Result<NsTerms, FormsError>
where
    G: MetricField,
    X: VectorField,
{
    metric.check(p)?;
    field.check(p)?;
    let g = metric.eval(p);
    let inv = inv3(&g);
    let gamma = christoffel_symbols(metric, p);
    let (jac, x) = jacobian(field, p);
    let advection = covariant(&gamma, &jac, &x, &x);

    let alpha = flat(metric, field);
    let lap = hodge_laplacian(metric, &alpha)?.eval(p);
    let laplacian = matvec(&inv, &lap);

    let pfield = pressure(metric, field);
    let pval = pfield.eval(p)[0];
    let dp = ExtD(pfield).eval(p);
    let grad_p = matvec(&inv, &dp);

    let divergence = codifferential(metric, &alpha)?.eval(p)[0];
    Ok(NsTerms { metric: g, advection, laplacian, grad_p, pressure: pval, divergence })
}

/// Stationary Navier-Stokes residuals for each `nu` in `nus`, sharing the
/// pointwise evaluation; the field is the same for every viscosity.
pub fn ns_residual_sweep<G, X>(field: &X, metric: &G, nus: &[f64], samples: &[[f64; 3]]) -> Result<Vec<NsReport>, FormsError>
where
    G: MetricField,
    X: VectorField,
{
    use rayon::prelude::*;
    if let Some(&nu) = nus.iter().find(|nu| !(**nu >= 0.0)) {
        return Err(FormsError::NegativeViscosity(nu));
    }
    let terms: Vec<NsTerms> = samples
        .par_iter()
        .map(|p| ns_terms(field, metric, p))
        .collect::<Result<_, _>>()?;
    let divergence = sweep_max(&terms, |t| t.divergence.abs()).0;
    let pressure_range = [sweep_min(&terms, |t| t.pressure).0, sweep_max(&terms, |t| t.pressure).0];
    Ok(nus
        .iter()
        .map(|&nu| {
            let (m, i) = sweep_max(&terms, |t| t.residual(nu));
            NsReport {
                nu,
                samples: samples.len(),
                momentum_residual_max: m,
                divergence_max: divergence,
                pressure_range,
                worst_point: i.map(|i| samples[i]),
            }
        })
        .collect())
}

/// Stationary Navier-Stokes residual at one viscosity.
pub fn ns_residual<G, X>(field: &X, metric: &G, nu: f64, samples: &[[f64; 3]]) -> Result<NsReport, FormsError>
where
    G: MetricField,
    X: VectorField,
{
    if !(nu >= 0.0) {
        return Err(FormsError::NegativeViscosity(nu));
    }
    Ok(ns_residual_sweep(field, metric, &[nu], samples)?.remove(0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub samples: usize,
    /// `max |g(nabla_Y X, Z) - g(nabla_Z X, Y)|`.
    pub symmetry_defect: f64,
    /// `max |Y(1/2 |X|^2) - g(nabla_X X, Y)|`.
    pub gradient_defect: f64,
}

/// Checks the symmetry of `nabla X` against random directions `Y, Z` in
/// `[-1, 1]^3`, drawn per sample from `seed`.
pub fn symmetry_check<G, X>(field: &X, metric: &G, samples: &[[f64; 3]], seed_value: u64) -> Result<SymmetryReport, FormsError>
where
    G: MetricField,
    X: VectorField,
{
    for p in samples {
        metric.check(p)?;
    }
    let half_norm = NormSquared { metric, field };
    let defects: Vec<(f64, f64)> = {
        use rayon::prelude::*;
        samples
            .par_iter()
            .enumerate()
            .map(|(idx, p)| {
                let mut rng = indexed_rng(seed_value, idx);
                let y: [f64; 3] = [0; 3].map(|_: u8| rng.random_range(-1.0..1.0));
                let z: [f64; 3] = [0; 3].map(|_: u8| rng.random_range(-1.0..1.0));
                let g = metric.eval(p);
                let gamma = christoffel_symbols(metric, p);
                let (jac, x) = jacobian(field, p);
                let ny = covariant(&gamma, &jac, &x, &y);
                let nz = covariant(&gamma, &jac, &x, &z);
                let nx = covariant(&gamma, &jac, &x, &x);
                let sym = (bilinear(&g, &ny, &z) - bilinear(&g, &nz, &y)).abs();
                let dnorm = ExtD(&half_norm).eval(p);
                let grad = (0.5 * dot(&dnorm, &y) - bilinear(&g, &nx, &y)).abs();
                (sym, grad)
            })
            .collect()
    };
    Ok(SymmetryReport {
        samples: samples.len(),
        symmetry_defect: sweep_max(&defects, |d| d.0).0.max(0.0),
        gradient_defect: sweep_max(&defects, |d| d.1).0.max(0.0),
    })
}

/// Central finite-difference partial `d_axis` of any form component, the
/// cross-check for jet derivatives.
pub fn finite_difference<F: Form>(form: &F, p: &[f64; 3], axis: usize, h: f64) -> [f64; 3] {
    let mut a = *p;
    let mut b = *p;
    a[axis] += h;
    b[axis] -= h;
    let (fa, fb): ([f64; 3], [f64; 3]) = (form.eval(&a), form.eval(&b));
    [0, 1, 2].map(|i| (fa[i] - fb[i]) / (2.0 * h))
}

/// Metric counterpart of [`finite_difference`].
pub fn metric_finite_difference<G: MetricField>(metric: &G, p: &[f64; 3], axis: usize, h: f64) -> Mat3<f64> {
    let mut a = *p;
    let mut b = *p;
    a[axis] += h;
    b[axis] -= h;
    let (ga, gb): (Mat3<f64>, Mat3<f64>) = (metric.eval(&a), metric.eval(&b));
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| (ga[i][j] - gb[i][j]) / (2.0 * h)))
}
