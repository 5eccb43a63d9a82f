//! Normalizing a closed 1-form cohomologous to `c dt` on a solid torus to
//! `c dt` by the map `G(q, t) = (q, t + g(q, t)/c)`.

use std::f64::consts::TAU;

use serde::Serialize;

use super::SuspensionError;
use crate::forms::*;
use crate::jet::Scalar;
use crate::profile::radial_cutoff;
use crate::quadrature::composite;
use crate::report::CheckReport;
use crate::sampling::{solid_torus, sweep_max, sweep_min};

/// The solid torus `{|q - center| <= radius} x S^1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct SolidTorus {
    pub center: [f64; 2],
    pub radius: f64,
}

impl SolidTorus {
    pub fn samples(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        solid_torus(self.center, self.radius, n, seed)
    }
}

/// `c dt + d(eps sin(2 pi t) chi(q))`, with `chi` a radial bump equal to
/// 1 near the centre and 0 at the boundary of the solid torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ManufacturedAlpha {
    pub c: f64,
    pub eps: f64,
    pub domain: SolidTorus,
}

impl ManufacturedAlpha {
    /// The potential `g` used to manufacture the form.
    pub fn generator<S: Scalar>(&self, p: &Point<S>) -> S {
        let u = p[0] - self.domain.center[0];
        let v = p[1] - self.domain.center[1];
        let r = self.domain.radius;
        (p[2] * TAU).sin() * self.eps * radial_cutoff(u * u + v * v, 0.3 * r, r)
    }
}

struct Generator<'a>(&'a ManufacturedAlpha);

impl Form for Generator<'_> {
    fn degree(&self) -> usize {
        0
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        [self.0.generator(p), S::zero(), S::zero()]
    }
}

impl Form for ManufacturedAlpha {
    fn degree(&self) -> usize {
        1
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let dg = ExtD(Generator(self)).eval(p);
        [dg[0], dg[1], dg[2] + self.c]
    }
}

/// The gauge map and its potential, reconstructed by line integrals of
/// `alpha - c dt` from `(center, 0)`: radially in `D x {0}`, then along the
/// `t`-line.
#[derive(Debug, Clone)]
pub struct GaugeMap<A> {
    pub alpha: A,
    pub c: f64,
    pub domain: SolidTorus,
    rule: Vec<(f64, f64)>,
}

impl<A: Form> GaugeMap<A> {
    pub fn new(alpha: A, c: f64, domain: SolidTorus) -> Self {
        GaugeMap { alpha, c, domain, rule: composite(10, 8) }
    }

    pub fn potential<S: Scalar>(&self, p: &Point<S>) -> S {
        let o = self.domain.center;
        let dq = [p[0] - o[0], p[1] - o[1]];
        let t = p[2] - p[2].value().floor();
        let mut g = S::zero();
        for &(s, w) in &self.rule {
            let a = self.alpha.eval(&[dq[0] * s + o[0], dq[1] * s + o[1], S::zero()]);
            g += (a[0] * dq[0] + a[1] * dq[1]) * w;
            let b = self.alpha.eval(&[p[0], p[1], t * s]);
            g += (b[2] - self.c) * t * w;
        }
        g
    }

    /// `int_0^1 alpha(dt) dt` along the circle through `q`.
    pub fn loop_integral(&self, q: [f64; 2]) -> f64 {
        self.rule.iter().map(|&(s, w)| w * self.alpha.eval(&[q[0], q[1], s])[2]).sum()
    }

    /// `G(q, t) = (q, t + g/c)`.
    pub fn apply(&self, p: &[f64; 3]) -> [f64; 3] {
        [p[0], p[1], p[2] + self.potential(p) / self.c]
    }

    /// `det DG = 1 + (dg/dt)/c`.
    pub fn det(&self, p: &[f64; 3]) -> f64 {
        1.0 + ExtD(Potential(self)).eval(p)[2] / self.c
    }

    /// `G*(c dt) - alpha = c dt + dg - alpha`, componentwise.
    pub fn pullback_defect(&self, p: &[f64; 3]) -> [f64; 3] {
        let dg = ExtD(Potential(self)).eval(p);
        let a: [f64; 3] = self.alpha.eval(p);
        [dg[0] - a[0], dg[1] - a[1], self.c + dg[2] - a[2]]
    }
}

/// The potential as a 0-form.
pub struct Potential<'a, A>(pub &'a GaugeMap<A>);

impl<A: Form> Form for Potential<'_, A> {
    fn degree(&self) -> usize {
        0
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        [self.0.potential(p), S::zero(), S::zero()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeReport {
    pub samples: usize,
    pub closedness: f64,
    pub loop_integral_error: f64,
    pub pullback_residual: f64,
    pub min_det: f64,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct GaugeTolerances {
    pub closed: f64,
    pub loop_integral: f64,
    pub pullback: f64,
}

impl Default for GaugeTolerances {
    fn default() -> Self {
        GaugeTolerances { closed: 1e-8, loop_integral: 1e-8, pullback: 1e-7 }
    }
}

/// Checks the preconditions, builds `G` and reports the residual of
/// `G*(c dt) = alpha` and the sign of `det DG` over `samples`.
pub fn gauge_normalize<A: Form>(
    alpha: A,
    c: f64,
    domain: SolidTorus,
    samples: &[[f64; 3]],
    tol: GaugeTolerances,
) -> Result<(GaugeMap<A>, GaugeReport), SuspensionError> {
    if !(c > 0.0) {
        return Err(SuspensionError::InvalidParameter(format!("c must be positive, got {c}")));
    }
    if alpha.degree() != 1 {
        return Err(FormsError::DegreeError { op: "gauge_normalize", degree: alpha.degree() }.into());
    }
    let n = samples.len();
    let pt = |i: Option<usize>| i.map(|i| &samples[i][..]);
    let (closedness, ic) = sweep_max(samples, |p| max_abs(2, &ExtD(&alpha).eval(p)));
    if !(closedness <= tol.closed) {
        return Err(SuspensionError::NonClosed { residual: closedness, tolerance: tol.closed });
    }
    let map = GaugeMap::new(alpha, c, domain);
    let (loop_err, il) = sweep_max(samples, |p| (map.loop_integral([p[0], p[1]]) - c).abs());
    if !(loop_err <= tol.loop_integral) {
        let q = il.map_or([f64::NAN; 2], |i| [samples[i][0], samples[i][1]]);
        return Err(SuspensionError::NonCohomologous { loop_integral: map.loop_integral(q), c, point: q });
    }
    let (pullback, ip) = sweep_max(samples, |p| max_abs(1, &map.pullback_defect(p)));
    let (min_det, id) = sweep_min(samples, |p| map.det(p));
    let checks = vec![
        CheckReport::below("gauge-closed", "alpha is closed on the solid torus", n, closedness, tol.closed).at(pt(ic)),
        CheckReport::below("gauge-loop", "alpha is cohomologous to c dt", n, loop_err, tol.loop_integral).at(pt(il)),
        CheckReport::below("gauge-pullback", "G*(c dt) = alpha", n, pullback, tol.pullback).at(pt(ip)),
        CheckReport::above("gauge-det", "G is an orientation-preserving local diffeomorphism", n, min_det, 0.0).at(pt(id)),
    ];
    let report = GaugeReport { samples: n, closedness, loop_integral_error: loop_err, pullback_residual: pullback, min_det, checks };
    Ok((map, report))
}
