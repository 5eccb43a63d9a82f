//! Concrete coefficient fields: constants, trigonometric and polynomial
//! series, and the metrics used as randomized test subjects.

use std::f64::consts::TAU;

use rand::Rng;

use super::linalg::*;
use super::{Form, MetricField, Point, VectorField};
use crate::jet::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstForm {
    pub degree: usize,
    pub comps: [f64; 3],
}

impl ConstForm {
    pub fn new(degree: usize, comps: [f64; 3]) -> Self {
        ConstForm { degree, comps }
    }

    /// `c dt`.
    pub fn dt(c: f64) -> Self {
        ConstForm::new(1, [0.0, 0.0, c])
    }

    /// `c dx^dy`.
    pub fn dx_dy(c: f64) -> Self {
        ConstForm::new(2, [0.0, 0.0, c])
    }
}

impl Form for ConstForm {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval<S: Scalar>(&self, _p: &Point<S>) -> [S; 3] {
        self.comps.map(S::cst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstVector(pub [f64; 3]);

impl VectorField for ConstVector {
    fn eval<S: Scalar>(&self, _p: &Point<S>) -> [S; 3] {
        self.0.map(S::cst)
    }
}

/// Constant metric; `ConstMetric::diag([1, 1, c^2])` is the ambient flat
/// metric compatible with `(c dt, dx^dy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstMetric(pub [[f64; 3]; 3]);

impl ConstMetric {
    pub fn identity() -> Self {
        ConstMetric(identity())
    }

    pub fn diag(d: [f64; 3]) -> Self {
        ConstMetric([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }
}

impl MetricField for ConstMetric {
    fn eval<S: Scalar>(&self, _p: &Point<S>) -> [[S; 3]; 3] {
        self.0.map(|r| r.map(S::cst))
    }
}

/// `amp * sin(2 pi k.p + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub amp: f64,
    pub k: [f64; 3],
    pub phase: f64,
}

impl Wave {
    pub fn eval<S: Scalar>(&self, p: &Point<S>) -> S {
        let arg = (p[0] * self.k[0] + p[1] * self.k[1] + p[2] * self.k[2]) * TAU + self.phase;
        arg.sin() * self.amp
    }

    /// Random wave with integer frequencies in `-max_k..=max_k`.
    pub fn random<R: Rng>(rng: &mut R, amp: f64, max_k: i32) -> Self {
        Wave {
            amp: amp * rng.random_range(-1.0..1.0),
            k: [0; 3].map(|_: i32| rng.random_range(-max_k..=max_k) as f64),
            phase: rng.random_range(0.0..TAU),
        }
    }
}

/// Sum of waves, periodic on the unit cube.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series {
    pub constant: f64,
    pub waves: Vec<Wave>,
}

impl Series {
    pub fn constant(c: f64) -> Self {
        Series { constant: c, waves: Vec::new() }
    }

    pub fn eval<S: Scalar>(&self, p: &Point<S>) -> S {
        self.waves.iter().fold(S::cst(self.constant), |acc, w| acc + w.eval(p))
    }

    pub fn random<R: Rng>(rng: &mut R, terms: usize, amp: f64, max_k: i32) -> Self {
        Series {
            constant: amp * rng.random_range(-1.0..1.0),
            waves: (0..terms).map(|_| Wave::random(rng, amp, max_k)).collect(),
        }
    }
}

/// A form or vector field whose components are trigonometric series.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigField {
    pub degree: usize,
    pub comps: [Series; 3],
}

impl TrigField {
    pub fn random<R: Rng>(rng: &mut R, degree: usize, terms: usize, amp: f64) -> Self {
        let mut comps = [Series::default(), Series::default(), Series::default()];
        for c in comps.iter_mut().take(super::components(degree)) {
            *c = Series::random(rng, terms, amp, 2);
        }
        TrigField { degree, comps }
    }
}

impl Form for TrigField {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        [self.comps[0].eval(p), self.comps[1].eval(p), self.comps[2].eval(p)]
    }
}

impl VectorField for TrigField {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        [self.comps[0].eval(p), self.comps[1].eval(p), self.comps[2].eval(p)]
    }
}

/// Monomial `coef * x^a y^b t^c` in component `comp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub comp: usize,
    pub coef: f64,
    pub exps: [u32; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyField {
    pub degree: usize,
    pub terms: Vec<Monomial>,
}

impl PolyField {
    pub fn random<R: Rng>(rng: &mut R, degree: usize, terms: usize, max_exp: u32) -> Self {
        let ncomp = super::components(degree);
        PolyField {
            degree,
            terms: (0..terms)
                .map(|_| Monomial {
                    comp: rng.random_range(0..ncomp),
                    coef: rng.random_range(-1.0..1.0),
                    exps: [0; 3].map(|_: u32| rng.random_range(0..=max_exp)),
                })
                .collect(),
        }
    }
}

impl Form for PolyField {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let mut out = [S::zero(); 3];
        for m in &self.terms {
            out[m.comp] += p[0].powi(m.exps[0]) * p[1].powi(m.exps[1]) * p[2].powi(m.exps[2]) * m.coef;
        }
        out
    }
}

/// `g = floor * I + B B^T` with trigonometric entries in `B`; always
/// positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigMetric {
    pub floor: f64,
    pub b: [[Series; 3]; 3],
}

impl TrigMetric {
    pub fn random<R: Rng>(rng: &mut R, terms: usize, amp: f64) -> Self {
        let mut entry = || Series::random(rng, terms, amp, 1);
        TrigMetric {
            floor: 0.5,
            b: [
                [entry(), entry(), entry()],
                [entry(), entry(), entry()],
                [entry(), entry(), entry()],
            ],
        }
    }
}

impl MetricField for TrigMetric {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3] {
        let b = [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.b[i][j].eval(p)));
        let mut g = [[S::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = dot(&b[i], &b[j]);
            }
            g[i][i] = g[i][i] + self.floor;
        }
        g
    }
}

/// `g = e^{2 phi} I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMetric {
    pub phi: Series,
}

impl MetricField for ConformalMetric {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3] {
        let f = (self.phi.eval(p) * 2.0).exp();
        let z = S::zero();
        [[f, z, z], [z, f, z], [z, z, f]]
    }
}

/// Pullback of a field by the translation `p -> p - offset`, with the
/// difference wrapped into `[-1/2, 1/2)` on periodic axes. Translations act
/// trivially on coordinate components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Translated<F> {
    pub inner: F,
    pub offset: [f64; 3],
    pub periodic: [bool; 3],
}

impl<F> Translated<F> {
    pub fn new(inner: F, offset: [f64; 3], periodic: [bool; 3]) -> Self {
        Translated { inner, offset, periodic }
    }

    pub fn local<S: Scalar>(&self, p: &Point<S>) -> Point<S> {
        std::array::from_fn(|i| {
            let d = p[i] - self.offset[i];
            if self.periodic[i] {
                d - (d.value() + 0.5).floor()
            } else {
                d
            }
        })
    }
}

impl<F: Form> Form for Translated<F> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        self.inner.eval(&self.local(p))
    }
    fn check(&self, p: &[f64; 3]) -> Result<(), super::FormsError> {
        self.inner.check(&self.local(p))
    }
}

impl<F: VectorField> VectorField for Translated<F> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        self.inner.eval(&self.local(p))
    }
    fn check(&self, p: &[f64; 3]) -> Result<(), super::FormsError> {
        self.inner.check(&self.local(p))
    }
}
