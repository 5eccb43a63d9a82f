//! Hamiltonian isotopies of the disk, their time-one maps, and the
//! mapping-torus structure `(c dt, dx^dy + dH^dt)` whose Reeb flow returns
//! to `D x {0}` by that map after time `c`.

mod gauge;
mod isotopy;

pub use gauge::*;
pub use isotopy::*;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::*;
use crate::jet::Scalar;
use crate::ode::{self, OdeError, OdeOptions};
use crate::report::CheckReport;
use crate::sampling::{solid_torus, sweep_max, sweep_min};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuspensionError {
    #[error("invalid isotopy: {0}")]
    InvalidIsotopy(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integration failure: {0}")]
    IntegrationFailure(#[from] OdeError),
    #[error("field lost transversality at {point:?}: dt-component {dt_component} below margin {margin}")]
    TransversalityLoss { point: [f64; 3], dt_component: f64, margin: f64 },
    #[error("start point {0:?} is not on the section")]
    StartOffSection([f64; 2]),
    #[error("loop integral of alpha over the t-circle at {point:?} is {loop_integral}, expected {c}")]
    NonCohomologous { loop_integral: f64, c: f64, point: [f64; 2] },
    #[error("d alpha residual {residual:e} exceeds {tolerance:e}")]
    NonClosed { residual: f64, tolerance: f64 },
    #[error("validation failed: {}", failed_checks(.0))]
    Validation(Vec<CheckReport>),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

pub(crate) fn failed_checks(reports: &[CheckReport]) -> String {
    reports.iter().filter(|r| !r.pass).map(|r| format!("{} ({:e} vs {:e})", r.check, r.max_residual, r.tolerance)).collect::<Vec<_>>().join(", ")
}

/// `X_H = (dH/dy, -dH/dx)`, the field with `i_{X_H}(dx^dy) = d_p H`.
pub fn ham_vector_field<H: Form>(h: &H, p: &[f64; 3]) -> [f64; 2] {
    let dh = ExtD(h).eval(p);
    [dh[1], -dh[0]]
}

/// `beta = A dx^dy + dH ^ dt` with area coefficient `A = 1`:
/// components `(H_y, -H_x, 1)` in the `(dy^dt, dt^dx, dx^dy)` basis.
#[derive(Debug, Clone, Copy)]
pub struct SuspensionBeta<H> {
    pub h: H,
}

impl<H: Form> Form for SuspensionBeta<H> {
    fn degree(&self) -> usize {
        2
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let dh = ExtD(&self.h).eval(p);
        [dh[1], -dh[0], S::one()]
    }
}

/// `(1/c)(X_H + dt)`.
#[derive(Debug, Clone, Copy)]
pub struct SuspensionReeb<H> {
    pub h: H,
    pub c: f64,
}

impl<H: Form> VectorField for SuspensionReeb<H> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let dh = ExtD(&self.h).eval(p);
        let k = 1.0 / self.c;
        [dh[1] * k, dh[0] * -k, S::cst(k)]
    }
}

/// The mapping-torus structure of an isotopy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuspensionStructure {
    pub isotopy: HamiltonianIsotopy,
    pub c: f64,
}

impl SuspensionStructure {
    pub fn alpha(&self) -> ConstForm {
        ConstForm::dt(self.c)
    }

    pub fn beta(&self) -> SuspensionBeta<&HamiltonianIsotopy> {
        SuspensionBeta { h: &self.isotopy }
    }

    pub fn reeb(&self) -> SuspensionReeb<&HamiltonianIsotopy> {
        SuspensionReeb { h: &self.isotopy, c: self.c }
    }

    pub fn pair(&self) -> CosymplecticPair<ConstForm, SuspensionBeta<&HamiltonianIsotopy>> {
        CosymplecticPair { alpha: self.alpha(), omega: self.beta() }
    }

    /// Divergence of the Reeb field with respect to `alpha ^ beta`.
    pub fn reeb_divergence(&self, p: &[f64; 3]) -> f64 {
        struct Flux<'a>(&'a SuspensionStructure);
        impl Form for Flux<'_> {
            fn degree(&self) -> usize {
                2
            }
            fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
                let m = self.0.pair().volume(p);
                scale(&self.0.reeb().eval(p), m)
            }
        }
        ExtD(Flux(self)).eval(p)[0] / self.pair().volume(p)
    }

    /// Structure invariants over `samples` of `D x S^1`:
    /// `d beta = 0`, `alpha ^ beta > 0`, `beta = dx^dy` where `H = 0`,
    /// the Reeb field against the independent solve, and volume
    /// preservation.
    pub fn validate(&self, samples: &[[f64; 3]], tol: f64) -> Vec<CheckReport> {
        let n = samples.len();
        let pt = |i: Option<usize>| i.map(|i| &samples[i][..]);
        let pair = self.pair();
        let mut out = pair.validate(samples, tol);
        let outside: Vec<[f64; 3]> =
            samples.iter().copied().filter(|p| p[0].hypot(p[1]) >= self.isotopy.r_h).collect();
        let (r, i) = sweep_max(&outside, |p| {
            let b: [f64; 3] = self.beta().eval(p);
            max_abs(2, &[b[0], b[1], b[2] - 1.0])
        });
        out.push(
            CheckReport::below("beta-standard-off-support", "beta = dx^dy where H = 0", outside.len(), r.max(0.0), tol)
                .at(i.map(|i| &outside[i][..])),
        );
        let reeb = self.reeb();
        let (r, i) = sweep_max(samples, |p| {
            let y = reeb_solve(&pair, p).map_or([f64::NAN; 3], |y| y);
            let z: [f64; 3] = reeb.eval(p);
            max_abs(1, &[y[0] - z[0], y[1] - z[1], y[2] - z[2]])
        });
        out.push(CheckReport::below("reeb-closed-form", "Reeb field is (1/c)(X_H + dt)", n, r, tol).at(pt(i)));
        let (r, i) = sweep_max(samples, |p| self.reeb_divergence(p).abs());
        out.push(CheckReport::below("reeb-divergence", "Reeb flow preserves alpha ^ beta", n, r, tol).at(pt(i)));
        out
    }

    /// Default sample set on `D x S^1`.
    pub fn samples(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        solid_torus([0.0, 0.0], self.isotopy.disk_radius, n, seed)
    }
}

/// Builds and validates the suspension of `isotopy` with return time `c`.
pub fn suspend(isotopy: HamiltonianIsotopy, c: f64, samples: usize, seed: u64, tol: f64) -> Result<(SuspensionStructure, Vec<CheckReport>), SuspensionError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(SuspensionError::InvalidParameter(format!("return time c must be positive, got {c}")));
    }
    isotopy.validate()?;
    let s = SuspensionStructure { isotopy, c };
    let reports = s.validate(&s.samples(samples, seed), tol);
    if reports.iter().any(|r| !r.pass) {
        return Err(SuspensionError::Validation(reports));
    }
    Ok((s, reports))
}

/// A disk `{|p - center| <= radius} x {t0}` used as a Poincare section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SectionSpec {
    pub t0: f64,
    pub center: [f64; 2],
    pub radius: f64,
    /// Minimum admissible `dt`-component of the flow along trajectories.
    pub margin: f64,
    /// Longest flow time before giving up on a return.
    pub max_time: f64,
    pub ode: OdeOptions,
}

impl Default for SectionSpec {
    fn default() -> Self {
        SectionSpec {
            t0: 0.0,
            center: [0.0, 0.0],
            radius: 1.0,
            margin: 1e-3,
            max_time: 1e3,
            ode: OdeOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReturnHit {
    pub start: [f64; 2],
    pub point: [f64; 2],
    pub time: f64,
    pub error_estimate: f64,
    pub steps: usize,
}

/// First return of the flow of `field` from `(start, t0)` to `t = t0 + 1`.
pub fn poincare_return<V: VectorField>(field: &V, section: &SectionSpec, start: [f64; 2]) -> Result<ReturnHit, SuspensionError> {
    poincare_trajectory(field, section, start, false).map(|(h, _)| h)
}

/// [`poincare_return`] that also records `(time, x, y, t)` at accepted
/// steps.
pub fn poincare_trajectory<V: VectorField>(
    field: &V,
    section: &SectionSpec,
    start: [f64; 2],
    record: bool,
) -> Result<(ReturnHit, Vec<[f64; 4]>), SuspensionError> {
    let d = [start[0] - section.center[0], start[1] - section.center[1]];
    if !(d[0].hypot(d[1]) <= section.radius) {
        return Err(SuspensionError::StartOffSection(start));
    }
    let target = section.t0 + 1.0;
    let margin = section.margin;
    let rhs = |_: f64, y: &[f64; 3]| -> [f64; 3] { field.eval(y) };
    let check = |_: f64, y: &[f64; 3]| -> Result<(), SuspensionError> {
        let v: [f64; 3] = field.eval(y);
        if !(v[2] >= margin) {
            return Err(SuspensionError::TransversalityLoss { point: *y, dt_component: v[2], margin });
        }
        Ok(())
    };
    let y0 = [start[0], start[1], section.t0];
    let sol = ode::solve_until(rhs, 0.0, y0, section.max_time, section.ode, record, |y| y[2] - target, check)??;
    let hit = ReturnHit {
        start,
        point: [sol.y[0], sol.y[1]],
        time: sol.t,
        error_estimate: sol.error_estimate,
        steps: sol.accepted,
    };
    let trace = sol.trace.iter().map(|(s, y)| [*s, y[0], y[1], y[2]]).collect();
    Ok((hit, trace))
}

/// Agreement of a return map with a disk map over seed points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnComparison {
    pub seeds: usize,
    pub max_point_error: f64,
    pub max_time_error: f64,
    pub max_error_estimate: f64,
    pub worst_seed: Option<[f64; 2]>,
    pub hits: Vec<ReturnHit>,
}

/// Compares `poincare_return(field)` against `disk_map` at `seeds` in
/// disk coordinates relative to `section.center`.
pub fn compare_return_map<V: VectorField>(
    field: &V,
    section: &SectionSpec,
    disk: &DiskMap,
    c: f64,
    seeds: &[[f64; 2]],
) -> Result<ReturnComparison, SuspensionError> {
    use rayon::prelude::*;
    let rows: Vec<(ReturnHit, f64)> = seeds
        .par_iter()
        .map(|q| {
            let start = [section.center[0] + q[0], section.center[1] + q[1]];
            let hit = poincare_return(field, section, start)?;
            let want = disk.apply(*q)?;
            let got = [hit.point[0] - section.center[0], hit.point[1] - section.center[1]];
            Ok((hit, (got[0] - want[0]).hypot(got[1] - want[1])))
        })
        .collect::<Result<_, SuspensionError>>()?;
    let (max_point_error, worst) = sweep_max(&rows, |r| r.1);
    Ok(ReturnComparison {
        seeds: seeds.len(),
        max_point_error: max_point_error.max(0.0),
        max_time_error: sweep_max(&rows, |r| (r.0.time - c).abs()).0.max(0.0),
        max_error_estimate: sweep_max(&rows, |r| r.0.error_estimate).0.max(0.0),
        worst_seed: worst.map(|i| seeds[i]),
        hits: rows.into_iter().map(|r| r.0).collect(),
    })
}

/// The time-one map of an isotopy, by adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskMap {
    pub isotopy: HamiltonianIsotopy,
    pub ode: OdeOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaReport {
    pub samples: usize,
    pub max_det_defect: f64,
    pub worst_point: Option<[f64; 2]>,
}

pub fn disk_map(isotopy: HamiltonianIsotopy, ode: OdeOptions) -> Result<DiskMap, SuspensionError> {
    isotopy.validate()?;
    Ok(DiskMap { isotopy, ode })
}

impl DiskMap {
    pub fn apply(&self, p: [f64; 2]) -> Result<[f64; 2], SuspensionError> {
        let h = &self.isotopy;
        let f = |t: f64, y: &[f64; 2]| h.velocity(y[0], y[1], t);
        let sol = ode::solve(f, 0.0, p, 1.0, self.ode, false)?;
        Ok(sol.y)
    }

    /// Image and Jacobian `Df`, from the variational equations.
    pub fn with_jacobian(&self, p: [f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2]), SuspensionError> {
        let h = &self.isotopy;
        let f = |t: f64, y: &[f64; 6]| {
            let v = h.velocity(y[0], y[1], t);
            let a = h.velocity_jacobian(y[0], y[1], t);
            let j = [[y[2], y[3]], [y[4], y[5]]];
            let dj = |r: usize, c: usize| a[r][0] * j[0][c] + a[r][1] * j[1][c];
            [v[0], v[1], dj(0, 0), dj(0, 1), dj(1, 0), dj(1, 1)]
        };
        let sol = ode::solve(f, 0.0, [p[0], p[1], 1.0, 0.0, 0.0, 1.0], 1.0, self.ode, false)?;
        let y = sol.y;
        Ok(([y[0], y[1]], [[y[2], y[3]], [y[4], y[5]]]))
    }

    /// Max `|det Df - 1|` over `points`.
    pub fn area_report(&self, points: &[[f64; 2]]) -> Result<AreaReport, SuspensionError> {
        use rayon::prelude::*;
        let dets: Vec<f64> = points
            .par_iter()
            .map(|p| self.with_jacobian(*p).map(|(_, j)| j[0][0] * j[1][1] - j[0][1] * j[1][0]))
            .collect::<Result<_, _>>()?;
        let (m, i) = sweep_max(&dets, |d| (d - 1.0).abs());
        Ok(AreaReport { samples: points.len(), max_det_defect: m.max(0.0), worst_point: i.map(|i| points[i]) })
    }
}

/// Smallest `dt`-component of a field over samples, the transversality
/// margin actually available.
pub fn min_dt_component<V: VectorField>(field: &V, samples: &[[f64; 3]]) -> f64 {
    sweep_min(samples, |p| VectorField::eval(field, p)[2]).0
}
