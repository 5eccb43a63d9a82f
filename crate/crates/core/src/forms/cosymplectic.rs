//! Weak cosymplectic pairs, their Reeb fields, and the two directions of the
//! correspondence with harmonic fields: `(X, g) -> (X^flat, *X^flat)` and
//! `(alpha, omega) -> g` with `*_g alpha = omega`.

use super::linalg::*;
use super::ops::*;
use super::{max_abs, Form, FormsError, MetricField, Point, VectorField};
use crate::jet::Scalar;
use crate::report::CheckReport;
use crate::sampling::{sweep_max, sweep_min};

/// Pair `(alpha, omega)` of a 1-form and a 2-form.
#[derive(Debug, Clone, Copy)]
pub struct CosymplecticPair<A, W> {
    pub alpha: A,
    pub omega: W,
}

impl<A: Form, W: Form> CosymplecticPair<A, W> {
    pub fn new(alpha: A, omega: W) -> Result<Self, FormsError> {
        if alpha.degree() != 1 {
            return Err(FormsError::DegreeError { op: "cosymplectic alpha", degree: alpha.degree() });
        }
        if omega.degree() != 2 {
            return Err(FormsError::DegreeError { op: "cosymplectic omega", degree: omega.degree() });
        }
        Ok(CosymplecticPair { alpha, omega })
    }

    /// Coefficient of `alpha ^ omega` against `dx^dy^dt`.
    pub fn volume<S: Scalar>(&self, p: &Point<S>) -> S {
        dot(&self.alpha.eval(p), &self.omega.eval(p))
    }

    pub fn reeb_field(&self) -> ReebField<&A, &W> {
        ReebField { alpha: &self.alpha, omega: &self.omega }
    }

    /// `d alpha = 0`, `d omega = 0` and `alpha ^ omega > 0` over `samples`.
    pub fn validate(&self, samples: &[[f64; 3]], closed_tol: f64) -> Vec<CheckReport> {
        let d_alpha = ExtD(&self.alpha);
        let d_omega = ExtD(&self.omega);
        let (ra, ia) = sweep_max(samples, |p| max_abs(2, &d_alpha.eval(p)));
        let (rw, iw) = sweep_max(samples, |p| max_abs(3, &d_omega.eval(p)));
        let (vmin, iv) = sweep_min(samples, |p| self.volume(p));
        let n = samples.len();
        let pt = |i: Option<usize>| i.map(|i| &samples[i][..]);
        vec![
            CheckReport::below("d-alpha", "alpha is closed", n, ra, closed_tol).at(pt(ia)),
            CheckReport::below("d-omega", "omega is closed", n, rw, closed_tol).at(pt(iw)),
            CheckReport::above("volume", "alpha ^ omega is a volume form", n, vmin, 0.0).at(pt(iv)),
        ]
    }
}

/// Reeb field `Y` of a pair: `alpha(Y) = 1`, `i_Y omega = 0`.
///
/// With `omega = i_W (dx^dy^dt)`, `i_Y omega = 0` forces `Y` parallel to `W`,
/// so `Y = W / alpha(W)` and `alpha(W)` is the volume coefficient.
#[derive(Debug, Clone, Copy)]
pub struct ReebField<A, W> {
    pub alpha: A,
    pub omega: W,
}

impl<A: Form, W: Form> VectorField for ReebField<A, W> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let w = self.omega.eval(p);
        scale(&w, dot(&self.alpha.eval(p), &w).recip())
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        let w: [f64; 3] = self.omega.eval(p);
        let a: [f64; 3] = self.alpha.eval(p);
        let vol = dot(&a, &w);
        let scale = norm(&a) * norm(&w);
        if vol.abs() <= 1e-14 * scale.max(1e-300) || !vol.is_finite() {
            return Err(FormsError::DegeneratePair(*p));
        }
        Ok(())
    }
}

fn norm(v: &[f64; 3]) -> f64 {
    dot(v, v).sqrt()
}

/// Solves `alpha(Y) = 1`, `i_Y omega = 0` at one point.
pub fn reeb_solve<A: Form, W: Form>(pair: &CosymplecticPair<A, W>, point: &[f64; 3]) -> Result<[f64; 3], FormsError> {
    pair.reeb_field().at(point)
}

/// `i_Y omega` as a 1-form value; zero for the Reeb field.
pub fn contract_two_form<S: Scalar>(y: &[S; 3], w: &[S; 3]) -> [S; 3] {
    // i_Y (i_W mu) = mu(W, Y, -) = (W x Y) . d
    cross(w, y)
}

/// Residuals of the forward correspondence over a sample set.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PairResiduals {
    pub d_alpha: f64,
    pub d_star_alpha: f64,
    /// `max |alpha ^ *alpha - g(X, X) mu|`.
    pub positivity_defect: f64,
    pub min_norm_squared: f64,
}

/// `(X, g) -> (X^flat, *X^flat)` with closedness and positivity residuals.
pub type MetricPair<G, X> = CosymplecticPair<Flat<G, X>, HodgeStar<G, Flat<G, X>>>;

pub fn pair_from_metric<G, X>(
    field: X,
    metric: G,
    samples: &[[f64; 3]],
    vanishing_tol: f64,
) -> Result<(MetricPair<G, X>, PairResiduals), FormsError>
where
    G: MetricField + Clone,
    X: VectorField + Clone,
{
    let alpha = flat(metric.clone(), field.clone());
    let pair = CosymplecticPair { alpha: alpha.clone(), omega: hodge_star(metric.clone(), alpha) };
    for p in samples {
        pair.omega.check(p)?;
        let x: [f64; 3] = field.eval(p);
        if bilinear(&metric.eval(p), &x, &x).sqrt() < vanishing_tol {
            return Err(FormsError::VanishingField(*p));
        }
    }
    let d_alpha = sweep_max(samples, |p| max_abs(2, &ExtD(&pair.alpha).eval(p))).0;
    let d_star_alpha = sweep_max(samples, |p| max_abs(3, &ExtD(&pair.omega).eval(p))).0;
    let positivity_defect = sweep_max(samples, |p| {
        let g = metric.eval(p);
        let x: [f64; 3] = field.eval(p);
        (pair.volume(p) - bilinear(&g, &x, &x) * det3(&g).sqrt()).abs()
    })
    .0;
    let min_norm_squared = sweep_min(samples, |p| {
        let x: [f64; 3] = field.eval(p);
        bilinear(&metric.eval(p), &x, &x)
    })
    .0;
    Ok((pair, PairResiduals { d_alpha, d_star_alpha, positivity_defect, min_norm_squared }))
}

/// Metric built from a non-degenerate pair.
///
/// Frame: `v_1 = dx - alpha(dx) Y`, `v_2 = dy - alpha(dy) Y` span `ker alpha`;
/// they are Gram-Schmidt orthonormalized in the coordinate inner product,
/// oriented so that `omega(e_1, e_2) > 0`, and jointly rescaled to
/// `omega(e_1, e_2) = 1`. The metric declares `(e_1, e_2, Y)` orthonormal,
/// so `Y` is unit, orthogonal to `ker alpha`, the volume is `alpha ^ omega`
/// and `*alpha = omega`.
#[derive(Debug, Clone, Copy)]
pub struct MetricFromPair<A, W> {
    pub pair: CosymplecticPair<A, W>,
}

pub fn metric_from_pair<A: Form, W: Form>(pair: CosymplecticPair<A, W>) -> MetricFromPair<A, W> {
    MetricFromPair { pair }
}

impl<A: Form, W: Form> MetricFromPair<A, W> {
    /// The orthonormal frame `[e_1, e_2, Y]` at `p`.
    pub fn frame<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3] {
        let a = self.pair.alpha.eval(p);
        let w = self.pair.omega.eval(p);
        let y = scale(&w, dot(&a, &w).recip());
        let (o, z) = (S::one(), S::zero());
        let v1 = [o - a[0] * y[0], z - a[0] * y[1], z - a[0] * y[2]];
        let v2 = [z - a[1] * y[0], o - a[1] * y[1], z - a[1] * y[2]];
        let u1 = scale(&v1, dot(&v1, &v1).sqrt().recip());
        let proj = dot(&u1, &v2);
        let r2 = [v2[0] - proj * u1[0], v2[1] - proj * u1[1], v2[2] - proj * u1[2]];
        let mut u2 = scale(&r2, dot(&r2, &r2).sqrt().recip());
        let mut s = dot(&w, &cross(&u1, &u2));
        if s.value() < 0.0 {
            u2 = u2.map(|c| -c);
            s = -s;
        }
        let k = s.sqrt().recip();
        [scale(&u1, k), scale(&u2, k), y]
    }
}

impl<A: Form, W: Form> MetricField for MetricFromPair<A, W> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3] {
        let f = self.frame(p);
        // `f` holds the frame as rows, i.e. F^T. The coframe is F^-1 and g = F^-T F^-1.
        let coframe = inv3(&transpose(&f));
        let mut g = [[S::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = coframe[0][i] * coframe[0][j] + coframe[1][i] * coframe[1][j] + coframe[2][i] * coframe[2][j];
            }
        }
        g
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.pair.reeb_field().check(p)?;
        let f: [[f64; 3]; 3] = self.frame(p);
        let d = det3(&f);
        if !d.is_finite() || d.abs() < 1e-300 || f.iter().flatten().any(|v| !v.is_finite()) {
            return Err(FormsError::DegeneratePair(*p));
        }
        Ok(())
    }
}
