//! Gluing a suspension into the flat 3-torus.
//!
//! On `T^3` with `alpha = c dt` and `beta = dx^dy`, a solid torus `T_1` of
//! radius `r_1` around `{(x_0, y_0)} x S^1` holds nested tori
//! `T_0 (r_0) < T (r_T) < T_1`. The suspension 2-form lives in `T_0` and
//! is interpolated back to `dx^dy` across `T \ T_0` by
//!
//! `beta~ = d(rho (eta - k d theta)) + beta'`,
//!
//! with `eta = r^2/2 d theta`, `k = r_0^2 / 2` and
//! `beta' = (1 - rho) dx^dy + dH^dt`. The metric `g~` is then built from
//! `(alpha, beta~)` so that `*alpha = beta~`, and `X~ = alpha^sharp` is a
//! harmonic steady Navier-Stokes flow for every viscosity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::*;
use crate::jet::Scalar;
use crate::profile::{smooth_step, smooth_step_derivative};
use crate::report::{CheckReport, Tolerances};
use crate::sampling::{annular_torus, disk, solid_torus, sweep_max, sweep_min, Chart};
use crate::suspension::{
    compare_return_map, disk_map, HamiltonianIsotopy, ReturnComparison, SectionSpec, SuspensionError,
};
use crate::ode::OdeOptions;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GluingError {
    #[error("bad radii: {0}")]
    BadRadii(String),
    #[error("isotopy support radius {r_h} exceeds the section radius {r_d0}")]
    SupportViolation { r_h: f64, r_d0: f64 },
    #[error("alpha ^ beta~ = {value} <= 0 at {point:?}")]
    PositivityFailure { point: [f64; 3], value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Suspension(#[from] SuspensionError),
}

/// The flat 3-torus with `alpha = c dt`, `beta = dx^dy` and metric
/// `diag(1, 1, c^2)`, for which `*alpha = beta` and `alpha^sharp = dt / c`
/// has unit length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientTorus {
    pub c: f64,
}

impl AmbientTorus {
    pub fn new(c: f64) -> Result<Self, GluingError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(GluingError::InvalidParameter(format!("c must be positive, got {c}")));
        }
        Ok(AmbientTorus { c })
    }

    pub fn alpha(&self) -> ConstForm {
        ConstForm::dt(self.c)
    }

    pub fn beta(&self) -> ConstForm {
        ConstForm::dx_dy(1.0)
    }

    pub fn metric(&self) -> ConstMetric {
        ConstMetric::diag([1.0, 1.0, self.c * self.c])
    }

    pub fn field(&self) -> ConstVector {
        ConstVector([0.0, 0.0, 1.0 / self.c])
    }

    /// `d alpha`, `d *alpha`, `*alpha - beta` and `|X|` over samples.
    pub fn validate(&self, samples: &[[f64; 3]]) -> Vec<CheckReport> {
        let g = self.metric();
        let n = samples.len();
        let star = hodge_star(g, self.alpha());
        let d_a = sweep_max(samples, |p| max_abs(2, &ExtD(self.alpha()).eval(p))).0;
        let d_sa = sweep_max(samples, |p| max_abs(3, &ExtD(star).eval(p))).0;
        let sb = sweep_max(samples, |p| {
            let s: [f64; 3] = star.eval(p);
            max_abs(2, &[s[0], s[1], s[2] - 1.0])
        })
        .0;
        let norm = sweep_min(samples, |p| {
            let x: [f64; 3] = self.field().eval(p);
            bilinear(&g.eval(p), &x, &x)
        })
        .0;
        vec![
            CheckReport::below("ambient-d-alpha", "alpha is closed", n, d_a, 1e-14),
            CheckReport::below("ambient-d-star-alpha", "alpha is co-closed", n, d_sa, 1e-14),
            CheckReport::below("ambient-star", "*alpha = dx^dy", n, sb, 1e-14),
            CheckReport::above("ambient-nonvanishing", "the harmonic field is nowhere zero", n, norm, 0.0),
        ]
    }
}

/// `T_0 (r_0) < T (r_T) < T_1 (r_1)` around `center x S^1`, and the
/// section disk radius `r_d0 <= r_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NestedTori {
    pub center: [f64; 2],
    pub r0: f64,
    pub r_t: f64,
    pub r1: f64,
    pub r_d0: f64,
}

impl Default for NestedTori {
    fn default() -> Self {
        NestedTori { center: [0.5, 0.5], r0: 0.15, r_t: 0.25, r1: 0.35, r_d0: 0.12 }
    }
}

impl NestedTori {
    pub fn validate(&self) -> Result<(), GluingError> {
        let NestedTori { r0, r_t, r1, r_d0, center } = *self;
        if !(0.0 < r_d0 && r_d0 <= r0 && r0 < r_t && r_t < r1) {
            return Err(GluingError::BadRadii(format!(
                "need 0 < r_d0 <= r0 < r_t < r1, got r_d0 = {r_d0}, r0 = {r0}, r_t = {r_t}, r1 = {r1}"
            )));
        }
        // Distinct periodic copies of the core circle are at distance 1.
        if !(r1 < 0.5) {
            return Err(GluingError::BadRadii(format!("r1 = {r1} makes T_1 overlap itself on the unit torus")));
        }
        if !center.iter().all(|c| c.is_finite()) {
            return Err(GluingError::BadRadii("non-finite center".into()));
        }
        Ok(())
    }

    /// Wrapped offsets `(u, v)` from the core circle.
    pub fn local<S: Scalar>(&self, p: &Point<S>) -> (S, S) {
        let w = |x: S, c: f64| {
            let d = x - c;
            d - (d.value() + 0.5).floor()
        };
        (w(p[0], self.center[0]), w(p[1], self.center[1]))
    }

    pub fn radius(&self, p: &[f64; 3]) -> f64 {
        let (u, v) = self.local(p);
        u.hypot(v)
    }

    pub fn rho<S: Scalar>(&self, r: S) -> S {
        smooth_step((r - self.r0) / (self.r_t - self.r0))
    }

    pub fn rho_prime<S: Scalar>(&self, r: S) -> S {
        smooth_step_derivative((r - self.r0) / (self.r_t - self.r0)) / (self.r_t - self.r0)
    }

    /// Samples of `T_1`.
    pub fn samples_t1(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        solid_torus(self.center, self.r1, n, seed)
    }

    /// Samples of `T^3 \ T`: the annulus `r_T <= r < r_1` and torus points
    /// beyond `T`, alternating.
    pub fn samples_outside(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        let annulus = annular_torus(self.center, self.r_t, self.r1, n.div_ceil(2), seed);
        let far = Chart::torus()
            .samples(4 * n + 16, seed ^ 0x9e37_79b9)
            .into_iter()
            .filter(|p| self.radius(p) >= self.r_t)
            .take(n / 2);
        annulus.into_iter().chain(far).map(|p| [p[0].rem_euclid(1.0), p[1].rem_euclid(1.0), p[2]]).collect()
    }
}

/// The cutoff `rho(r) = S((r - r_0)/(r_T - r_0))`.
pub fn cutoff_rho(r: f64, r0: f64, r_t: f64) -> Result<f64, GluingError> {
    if !(r0 < r_t) {
        return Err(GluingError::BadRadii(format!("cutoff needs r0 < r_t, got {r0} >= {r_t}")));
    }
    if !(r >= 0.0) {
        return Err(GluingError::InvalidParameter(format!("radius must be non-negative, got {r}")));
    }
    Ok(smooth_step((r - r0) / (r_t - r0)))
}

/// `eta = r^2/2 d theta = (u dv - v du) / 2`, smooth across `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eta {
    pub tori: NestedTori,
}

impl Form for Eta {
    fn degree(&self) -> usize {
        1
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let (u, v) = self.tori.local(p);
        [v * -0.5, u * 0.5, S::zero()]
    }
}

pub fn primitive_eta(tori: &NestedTori) -> Eta {
    Eta { tori: *tori }
}

/// `eta(d/d theta)` at `p`.
pub fn eta_theta(eta: &Eta, p: &[f64; 3]) -> f64 {
    let (u, v) = eta.tori.local(p);
    let e: [f64; 3] = eta.eval(p);
    e[0] * -v + e[1] * u
}

/// `k = min over T_1 \ T_0 of eta_theta`, evaluated on a radial grid.
/// Equals `r_0^2 / 2`.
pub fn k_constant(tori: &NestedTori) -> f64 {
    let eta = primitive_eta(tori);
    let n = 2001;
    (0..n)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .map(|(i, j)| {
            let r = tori.r0 + (tori.r1 - tori.r0) * i as f64 / (n - 1) as f64;
            let th = std::f64::consts::TAU * j as f64 / 8.0;
            eta_theta(&eta, &[tori.center[0] + r * th.cos(), tori.center[1] + r * th.sin(), 0.0])
        })
        .fold(f64::INFINITY, f64::min)
}

/// `rho (eta - k d theta) = rho (1/2 - k/r^2)(u dv - v du)`, zero on `T_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoForm {
    pub tori: NestedTori,
    pub k: f64,
}

impl Form for RhoForm {
    fn degree(&self) -> usize {
        1
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let (u, v) = self.tori.local(p);
        let r2 = u * u + v * v;
        if r2.value() <= self.tori.r0 * self.tori.r0 {
            return [S::zero(); 3];
        }
        let f = self.tori.rho(r2.sqrt()) * (S::cst(0.5) - r2.recip() * self.k);
        [v * f * -1.0, u * f, S::zero()]
    }
}

/// The isotopy's Hamiltonian placed on the core circle.
#[derive(Debug, Clone, Copy)]
pub struct PlacedHamiltonian<'a> {
    pub isotopy: &'a HamiltonianIsotopy,
    pub tori: NestedTori,
}

impl Form for PlacedHamiltonian<'_> {
    fn degree(&self) -> usize {
        0
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let (u, v) = self.tori.local(p);
        [self.isotopy.hamiltonian(u, v, p[2]), S::zero(), S::zero()]
    }
}

/// `beta' = (1 - rho) dx^dy + dH^dt`: the suspension form on `T_0`, faded
/// out across `T \ T_0`, zero outside `T`.
#[derive(Debug, Clone, Copy)]
pub struct BetaPrime<'a> {
    pub h: PlacedHamiltonian<'a>,
}

impl Form for BetaPrime<'_> {
    fn degree(&self) -> usize {
        2
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let tori = &self.h.tori;
        let (u, v) = tori.local(p);
        let r2 = u * u + v * v;
        if r2.value() >= tori.r_t * tori.r_t {
            return [S::zero(); 3];
        }
        let fade = if r2.value() <= tori.r0 * tori.r0 { S::one() } else { S::one() - tori.rho(r2.sqrt()) };
        let dh = ExtD(&self.h).eval(p);
        [dh[1], -dh[0], fade]
    }
}

pub fn beta_prime<'a>(isotopy: &'a HamiltonianIsotopy, tori: &NestedTori) -> Result<BetaPrime<'a>, GluingError> {
    tori.validate()?;
    isotopy.validate()?;
    if isotopy.r_h > tori.r_d0 {
        return Err(GluingError::SupportViolation { r_h: isotopy.r_h, r_d0: tori.r_d0 });
    }
    Ok(BetaPrime { h: PlacedHamiltonian { isotopy, tori: *tori } })
}

/// `beta~ = d(rho (eta - k d theta)) + beta'`, and exactly `dx^dy` on
/// `r >= r_T`.
#[derive(Debug, Clone, Copy)]
pub struct TildeBeta<'a> {
    pub rho_form: RhoForm,
    pub beta_prime: BetaPrime<'a>,
}

impl Form for TildeBeta<'_> {
    fn degree(&self) -> usize {
        2
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let tori = &self.rho_form.tori;
        let (u, v) = tori.local(p);
        if (u * u + v * v).value() >= tori.r_t * tori.r_t {
            return [S::zero(), S::zero(), S::one()];
        }
        let a = ExtD(&self.rho_form).eval(p);
        let b = self.beta_prime.eval(p);
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }
}

/// The three non-negative summands of `beta~_xy = alpha ^ beta~ / c`:
/// `rho'(eta_theta - k)/r`, `rho` and `1 - rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityDecomposition {
    pub samples: usize,
    pub min_collar_term: f64,
    pub min_rho: f64,
    pub min_one_minus_rho: f64,
    pub min_wedge: f64,
    /// `max |sum of terms - alpha ^ beta~ / c|`.
    pub decomposition_defect: f64,
}

pub fn positivity_decomposition(beta: &TildeBeta<'_>, c: f64, samples: &[[f64; 3]]) -> PositivityDecomposition {
    let tori = beta.rho_form.tori;
    let k = beta.rho_form.k;
    let terms: Vec<([f64; 3], f64)> = {
        use rayon::prelude::*;
        samples
            .par_iter()
            .map(|p| {
                let r = tori.radius(p);
                let rho = tori.rho(r);
                let collar = if r > 0.0 { tori.rho_prime(r) * (0.5 * r * r - k) / r } else { 0.0 };
                let wedge = c * beta.eval(p)[2];
                ([collar, rho, 1.0 - rho], wedge)
            })
            .collect()
    };
    PositivityDecomposition {
        samples: samples.len(),
        min_collar_term: sweep_min(&terms, |t| t.0[0]).0,
        min_rho: sweep_min(&terms, |t| t.0[1]).0,
        min_one_minus_rho: sweep_min(&terms, |t| t.0[2]).0,
        min_wedge: sweep_min(&terms, |t| t.1).0,
        decomposition_defect: sweep_max(&terms, |t| (t.0.iter().sum::<f64>() - t.1 / c).abs()).0.max(0.0),
    }
}

/// Builds `beta~` and checks closedness on `samples`, equality with
/// `dx^dy` on `outside` and strict positivity on `positivity`.
pub fn build_tilde_beta<'a>(
    isotopy: &'a HamiltonianIsotopy,
    tori: &NestedTori,
    c: f64,
    samples: &GluingSamples,
    tol: &Tolerances,
) -> Result<(TildeBeta<'a>, Vec<CheckReport>, PositivityDecomposition), GluingError> {
    AmbientTorus::new(c)?;
    let beta_prime = beta_prime(isotopy, tori)?;
    let k = 0.5 * tori.r0 * tori.r0;
    let beta = TildeBeta { rho_form: RhoForm { tori: *tori, k }, beta_prime };

    let alpha = ConstForm::dt(c);
    let wedge_form = Wedge(alpha, beta);
    let (min_wedge, iw) = sweep_min(&samples.positivity, |p| wedge_form.eval(p)[0]);
    if !(min_wedge > 0.0) {
        let point = iw.map_or([f64::NAN; 3], |i| samples.positivity[i]);
        return Err(GluingError::PositivityFailure { point, value: min_wedge });
    }
    let s = &samples.first_order;
    let (closed, ic) = sweep_max(s, |p| ExtD(&beta).eval(p)[0].abs());
    let (outside, io) = sweep_max(&samples.outside, |p| {
        let b: [f64; 3] = beta.eval(p);
        max_abs(2, &[b[0], b[1], b[2] - 1.0])
    });
    let pt = |set: &[[f64; 3]], i: Option<usize>| i.map(|i| set[i].to_vec());
    let decomposition = positivity_decomposition(&beta, c, &samples.positivity);
    let checks = vec![
        CheckReport::below("beta-tilde-closed", "d beta~ = 0", s.len(), closed, tol.structural)
            .at(pt(s, ic).as_deref()),
        CheckReport::below("beta-tilde-outside", "beta~ = beta on the complement of T", samples.outside.len(), outside.max(0.0), tol.locality)
            .at(pt(&samples.outside, io).as_deref()),
        CheckReport::above("beta-tilde-positive", "alpha ^ beta~ > 0", samples.positivity.len(), min_wedge, 0.0)
            .at(pt(&samples.positivity, iw).as_deref()),
    ];
    Ok((beta, checks, decomposition))
}

/// Sample sets used by a build.
#[derive(Debug, Clone, PartialEq)]
pub struct GluingSamples {
    /// `T_1`, for first-order identities.
    pub first_order: Vec<[f64; 3]>,
    /// `T_1`, for second-order (Laplacian, Navier-Stokes) checks.
    pub second_order: Vec<[f64; 3]>,
    /// `T_1`, for strict positivity.
    pub positivity: Vec<[f64; 3]>,
    /// `T^3 \ T`, for locality.
    pub outside: Vec<[f64; 3]>,
    /// Seeds in `D_0`, local coordinates.
    pub return_seeds: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleCounts {
    pub first_order: usize,
    pub second_order: usize,
    pub positivity: usize,
    pub outside: usize,
    pub return_seeds: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts { first_order: 10_000, second_order: 1_000, positivity: 100_000, outside: 1_000, return_seeds: 100 }
    }
}

impl SampleCounts {
    /// Every count scaled so the largest equals `n` (at least 1 each).
    pub fn capped(self, n: usize) -> Self {
        let f = |m: usize| m.min(n).max(1);
        SampleCounts {
            first_order: f(self.first_order),
            second_order: f(self.second_order),
            positivity: f(self.positivity),
            outside: f(self.outside),
            return_seeds: f(self.return_seeds),
        }
    }
}

impl GluingSamples {
    pub fn new(tori: &NestedTori, counts: &SampleCounts, seed: u64) -> Self {
        GluingSamples {
            first_order: tori.samples_t1(counts.first_order, seed),
            second_order: tori.samples_t1(counts.second_order, seed.wrapping_add(1)),
            positivity: tori.samples_t1(counts.positivity, seed.wrapping_add(2)),
            outside: tori.samples_outside(counts.outside, seed.wrapping_add(3)),
            // Strictly inside D_0 so starts are on the section.
            return_seeds: disk([0.0, 0.0], tori.r_d0 * (1.0 - 1e-9), counts.return_seeds, seed.wrapping_add(4)),
        }
    }
}

pub type GluedMetric<'a> = MetricFromPair<ConstForm, TildeBeta<'a>>;

/// `g~` from `(alpha, beta~)`.
pub fn extend_metric(alpha: ConstForm, beta: TildeBeta<'_>) -> Result<GluedMetric<'_>, GluingError> {
    Ok(metric_from_pair(CosymplecticPair::new(alpha, beta)?))
}

/// The glued structure and views of its fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GluedStructure {
    pub isotopy: HamiltonianIsotopy,
    pub tori: NestedTori,
    pub c: f64,
}

impl GluedStructure {
    pub fn new(isotopy: HamiltonianIsotopy, tori: NestedTori, c: f64) -> Result<Self, GluingError> {
        AmbientTorus::new(c)?;
        beta_prime(&isotopy, &tori)?;
        Ok(GluedStructure { isotopy, tori, c })
    }

    pub fn ambient(&self) -> AmbientTorus {
        AmbientTorus { c: self.c }
    }

    pub fn alpha(&self) -> ConstForm {
        ConstForm::dt(self.c)
    }

    pub fn beta_tilde(&self) -> TildeBeta<'_> {
        TildeBeta {
            rho_form: RhoForm { tori: self.tori, k: 0.5 * self.tori.r0 * self.tori.r0 },
            beta_prime: BetaPrime { h: PlacedHamiltonian { isotopy: &self.isotopy, tori: self.tori } },
        }
    }

    pub fn pair(&self) -> CosymplecticPair<ConstForm, TildeBeta<'_>> {
        CosymplecticPair { alpha: self.alpha(), omega: self.beta_tilde() }
    }

    pub fn metric(&self) -> GluedMetric<'_> {
        metric_from_pair(self.pair())
    }

    /// `X~ = alpha^sharp`, the Navier-Stokes solution.
    pub fn field(&self) -> Sharp<GluedMetric<'_>, ConstForm> {
        Sharp { metric: self.metric(), form: self.alpha() }
    }

    /// The Reeb field `X~ / g~(X~, X~)`, which returns to `D_0 x {0}` in
    /// time `c`.
    pub fn reeb(&self) -> ReebField<ConstForm, TildeBeta<'_>> {
        ReebField { alpha: self.alpha(), omega: self.beta_tilde() }
    }

    pub fn pressure(&self) -> Pressure<GluedMetric<'_>, Sharp<GluedMetric<'_>, ConstForm>> {
        pressure(self.metric(), self.field())
    }

    pub fn section(&self, ode: OdeOptions) -> SectionSpec {
        SectionSpec { t0: 0.0, center: self.tori.center, radius: self.tori.r_d0, margin: 1e-3, max_time: 100.0 * self.c, ode }
    }

    /// Values on a regular `n x n` grid of the slice `t = t0`.
    pub fn field_dump(&self, n: usize, t0: f64) -> Vec<FieldSample> {
        let g = self.metric();
        let b = self.beta_tilde();
        let x = self.field();
        let pr = self.pressure();
        (0..n * n)
            .map(|i| {
                let p = [(i % n) as f64 / n as f64, (i / n) as f64 / n as f64, t0];
                let gm: [[f64; 3]; 3] = g.eval(&p);
                let bv: [f64; 3] = b.eval(&p);
                let xv: [f64; 3] = x.eval(&p);
                FieldSample {
                    x: p[0],
                    y: p[1],
                    t: p[2],
                    r: self.tori.radius(&p),
                    beta_yt: bv[0],
                    beta_tx: bv[1],
                    beta_xy: bv[2],
                    g_xx: gm[0][0],
                    g_xy: gm[0][1],
                    g_xt: gm[0][2],
                    g_yy: gm[1][1],
                    g_yt: gm[1][2],
                    g_tt: gm[2][2],
                    field_x: xv[0],
                    field_y: xv[1],
                    field_t: xv[2],
                    pressure: pr.eval(&p)[0],
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub r: f64,
    pub beta_yt: f64,
    pub beta_tx: f64,
    pub beta_xy: f64,
    pub g_xx: f64,
    pub g_xy: f64,
    pub g_xt: f64,
    pub g_yy: f64,
    pub g_yt: f64,
    pub g_tt: f64,
    pub field_x: f64,
    pub field_y: f64,
    pub field_t: f64,
    pub pressure: f64,
}

/// Everything a build needs; the JSON form of a build request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildDescriptor {
    #[serde(default = "one")]
    pub c: f64,
    #[serde(default)]
    pub tori: NestedTori,
    pub isotopy: HamiltonianIsotopy,
    #[serde(default = "default_nus")]
    pub nu_list: Vec<f64>,
    #[serde(default)]
    pub samples: SampleCounts,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> f64 {
    1.0
}

fn default_nus() -> Vec<f64> {
    vec![0.0, 0.1, 1.0]
}

impl BuildDescriptor {
    pub fn new(isotopy: HamiltonianIsotopy) -> Self {
        BuildDescriptor {
            c: 1.0,
            tori: NestedTori::default(),
            isotopy,
            nu_list: default_nus(),
            samples: SampleCounts::default(),
            tolerances: Tolerances::default(),
            seed: 0,
        }
    }

    /// Default tori with the rotation isotopy by `omega` supported in `D_0`.
    pub fn rotation(omega: f64) -> Self {
        let t = NestedTori::default();
        Self::new(HamiltonianIsotopy::rotation(omega, 0.6 * t.r_d0, t.r_d0).with_disk_radius(t.r0))
    }
}

/// Per-check results of a build, serializable as the build report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuildReport {
    pub descriptor: BuildDescriptor,
    pub checks: Vec<CheckReport>,
    pub positivity: PositivityDecomposition,
    pub navier_stokes: Vec<NsReport>,
    pub symmetry: SymmetryReport,
    pub return_map: ReturnSummary,
    pub pass: bool,
}

/// [`ReturnComparison`] without the per-seed hits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnSummary {
    pub seeds: usize,
    pub max_point_error: f64,
    pub max_time_error: f64,
    pub max_error_estimate: f64,
    pub worst_seed: Option<[f64; 2]>,
}

impl From<&ReturnComparison> for ReturnSummary {
    fn from(r: &ReturnComparison) -> Self {
        ReturnSummary {
            seeds: r.seeds,
            max_point_error: r.max_point_error,
            max_time_error: r.max_time_error,
            max_error_estimate: r.max_error_estimate,
            worst_seed: r.worst_seed,
        }
    }
}

/// Checks of `(alpha, beta~, g~)`: `*alpha = beta~`,
/// harmonicity, normalization and locality.
pub fn metric_checks(s: &GluedStructure, samples: &GluingSamples, tol: &Tolerances) -> Result<Vec<CheckReport>, GluingError> {
    let g = s.metric();
    let alpha = s.alpha();
    let beta = s.beta_tilde();
    let x = s.field();
    let first = &samples.first_order;
    for p in first.iter().chain(&samples.outside) {
        g.check(p)?;
    }
    let pt = |set: &[[f64; 3]], i: Option<usize>| i.map(|i| set[i].to_vec());
    let star = hodge_star(&g, alpha);
    let (r_star, i_star) = sweep_max(first, |p| {
        let a: [f64; 3] = star.eval(p);
        let b: [f64; 3] = beta.eval(p);
        max_abs(2, &[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
    });
    let (r_da, i_da) = sweep_max(first, |p| max_abs(2, &ExtD(alpha).eval(p)));
    let (r_dsa, i_dsa) = sweep_max(first, |p| ExtD(&star).eval(p)[0].abs());
    let (r_norm, i_norm) = sweep_max(first, |p| {
        let xv: [f64; 3] = x.eval(p);
        let y = reeb_solve(&s.pair(), p).map_or([f64::NAN; 3], |y| y);
        let n2 = bilinear(&g.eval(p), &xv, &xv);
        // Y = X / g(X, X) and alpha(Y) = 1.
        let back = [0, 1, 2].map(|i| xv[i] / n2 - y[i]);
        (n2 - 1.0).abs().max(max_abs(1, &back)).max((s.c * y[2] - 1.0).abs())
    });
    let amb = s.ambient();
    let out = &samples.outside;
    let (r_g, i_g) = sweep_max(out, |p| {
        let a: [[f64; 3]; 3] = g.eval(p);
        let b: [[f64; 3]; 3] = amb.metric().eval(p);
        (0..9).map(|k| (a[k / 3][k % 3] - b[k / 3][k % 3]).abs()).fold(0.0, f64::max)
    });
    let (r_x, i_x) = sweep_max(out, |p| {
        let a: [f64; 3] = x.eval(p);
        let b: [f64; 3] = amb.field().eval(p);
        let pa = s.pressure().eval(p)[0];
        let pb = pressure(amb.metric(), amb.field()).eval(p)[0];
        max_abs(1, &[a[0] - b[0], a[1] - b[1], a[2] - b[2]]).max((pa - pb).abs())
    });
    Ok(vec![
        CheckReport::below("star-alpha", "*_{g~} alpha = beta~", first.len(), r_star, tol.structural).at(pt(first, i_star).as_deref()),
        CheckReport::below("d-alpha", "alpha is closed", first.len(), r_da, tol.structural).at(pt(first, i_da).as_deref()),
        CheckReport::below("d-star-alpha", "*_{g~} alpha is closed, so alpha is harmonic", first.len(), r_dsa, tol.first_order)
            .at(pt(first, i_dsa).as_deref()),
        CheckReport::below("reeb-normalization", "X~ is unit and Y = X~/g~(X~, X~) is the Reeb field", first.len(), r_norm, tol.structural)
            .at(pt(first, i_norm).as_deref()),
        CheckReport::below("metric-outside", "g~ = g on the complement of T", out.len(), r_g, tol.locality).at(pt(out, i_g).as_deref()),
        CheckReport::below("field-outside", "X~ and p agree with the ambient flow off T", out.len(), r_x, tol.locality)
            .at(pt(out, i_x).as_deref()),
    ])
}

/// Assembles the glued structure and runs every check of the build.
pub fn build_turing_flow(desc: &BuildDescriptor) -> Result<(GluedStructure, BuildReport), GluingError> {
    desc.tori.validate()?;
    let s = GluedStructure::new(desc.isotopy.clone(), desc.tori, desc.c)?;
    let tol = &desc.tolerances;
    let samples = GluingSamples::new(&desc.tori, &desc.samples, desc.seed);

    let (_, mut checks, positivity) = build_tilde_beta(&s.isotopy, &s.tori, s.c, &samples, tol)?;
    let d = &positivity;
    checks.push(CheckReport::above(
        "positivity-terms",
        "each summand rho'(eta_theta - k)/r, rho, 1 - rho is non-negative",
        d.samples,
        d.min_collar_term.min(d.min_rho).min(d.min_one_minus_rho),
        -f64::EPSILON,
    ));
    checks.push(CheckReport::below(
        "positivity-decomposition",
        "the summands add up to alpha ^ beta~ / c",
        d.samples,
        d.decomposition_defect,
        tol.structural,
    ));
    checks.extend(metric_checks(&s, &samples, tol)?);

    let field = s.field();
    let metric = s.metric();
    let second = &samples.second_order;
    let navier_stokes = ns_residual_sweep(&field, &metric, &desc.nu_list, second)?;
    for ns in &navier_stokes {
        checks.push(
            CheckReport::below(
                &format!("ns-momentum-nu-{}", ns.nu),
                "X~ is a stationary Navier-Stokes solution at this viscosity",
                ns.samples,
                ns.momentum_residual_max,
                tol.second_order,
            )
            .at(ns.worst_point.as_ref().map(|p| &p[..])),
        );
    }
    if let Some(ns) = navier_stokes.first() {
        checks.push(CheckReport::below("divergence", "X~ is divergence-free", ns.samples, ns.divergence_max, tol.divergence));
    }
    let symmetry = symmetry_check(&field, &metric, second, desc.seed)?;
    checks.push(CheckReport::below("symmetry", "g(nabla_Y X, Z) = g(nabla_Z X, Y)", symmetry.samples, symmetry.symmetry_defect, tol.symmetry));
    checks.push(CheckReport::below(
        "gradient-identity",
        "nabla_X X = grad(|X|^2 / 2)",
        symmetry.samples,
        symmetry.gradient_defect,
        tol.symmetry,
    ));

    let ode = OdeOptions::with_tol(tol.integrator);
    let section = s.section(ode);
    let disk_f = disk_map(s.isotopy.clone(), OdeOptions::with_tol(tol.integrator * 1e-2))?;
    let cmp = compare_return_map(&s.reeb(), &section, &disk_f, s.c, &samples.return_seeds)?;
    checks.push(CheckReport::below("return-map", "the return map to D_0 x {0} is the disk map", cmp.seeds, cmp.max_point_error, tol.return_map));
    checks.push(CheckReport::below("return-time", "the return time is c", cmp.seeds, cmp.max_time_error, tol.integrator));

    let pass = checks.iter().all(|c| c.pass);
    let report = BuildReport {
        descriptor: desc.clone(),
        checks,
        positivity,
        navier_stokes,
        symmetry,
        return_map: ReturnSummary::from(&cmp),
        pass,
    };
    Ok((s, report))
}
