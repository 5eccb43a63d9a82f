use super::linalg::*;
use super::{Form, FormsError, MetricField, Point, VectorField};
use crate::jet::{seed, Scalar};

/// Exterior derivative `d F`, evaluated by propagating jets through `F`.
#[derive(Debug, Clone, Copy)]
pub struct ExtD<F>(pub F);

pub fn ext_d<F: Form>(form: F) -> Result<ExtD<F>, FormsError> {
    if form.degree() >= 3 {
        return Err(FormsError::DegreeError { op: "d", degree: form.degree() });
    }
    Ok(ExtD(form))
}

impl<F: Form> Form for ExtD<F> {
    fn degree(&self) -> usize {
        self.0.degree() + 1
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let c = self.0.eval(&seed(p));
        let z = S::zero();
        match self.0.degree() {
            0 => c[0].d,
            // curl in the (dy^dt, dt^dx, dx^dy) basis
            1 => [
                c[2].d[1] - c[1].d[2],
                c[0].d[2] - c[2].d[0],
                c[1].d[0] - c[0].d[1],
            ],
            2 => [c[0].d[0] + c[1].d[1] + c[2].d[2], z, z],
            _ => [z; 3],
        }
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.0.check(p)
    }
}

/// Wedge product `A ^ B`.
#[derive(Debug, Clone, Copy)]
pub struct Wedge<A, B>(pub A, pub B);

pub fn wedge<A: Form, B: Form>(a: A, b: B) -> Result<Wedge<A, B>, FormsError> {
    let degree = a.degree() + b.degree();
    if degree > 3 {
        return Err(FormsError::DegreeError { op: "wedge", degree });
    }
    Ok(Wedge(a, b))
}

/// Pointwise wedge of component arrays.
pub fn wedge_values<S: Scalar>(da: usize, a: &[S; 3], db: usize, b: &[S; 3]) -> [S; 3] {
    let z = S::zero();
    match (da, db) {
        (0, _) => match db {
            0 | 3 => [a[0] * b[0], z, z],
            _ => scale(b, a[0]),
        },
        (_, 0) => match da {
            3 => [a[0] * b[0], z, z],
            _ => scale(a, b[0]),
        },
        (1, 1) => cross(a, b),
        (1, 2) | (2, 1) => [dot(a, b), z, z],
        _ => [z; 3],
    }
}

impl<A: Form, B: Form> Form for Wedge<A, B> {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        wedge_values(self.0.degree(), &self.0.eval(p), self.1.degree(), &self.1.eval(p))
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.0.check(p)?;
        self.1.check(p)
    }
}

/// Hodge star of component values under metric `g`.
pub fn star_values<S: Scalar>(g: &Mat3<S>, degree: usize, w: &[S; 3]) -> [S; 3] {
    let z = S::zero();
    let vol = det3(g).sqrt();
    match degree {
        0 => [w[0] * vol, z, z],
        // *a = i_{a#} mu
        1 => scale(&matvec(&inv3(g), w), vol),
        // w = i_W mu  =>  *w = W^flat
        2 => scale(&matvec(g, w), vol.recip()),
        _ => [w[0] / vol, z, z],
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HodgeStar<G, F> {
    pub metric: G,
    pub form: F,
}

pub fn hodge_star<G: MetricField, F: Form>(metric: G, form: F) -> HodgeStar<G, F> {
    HodgeStar { metric, form }
}

impl<G: MetricField, F: Form> Form for HodgeStar<G, F> {
    fn degree(&self) -> usize {
        3 - self.form.degree()
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        star_values(&self.metric.eval(p), self.form.degree(), &self.form.eval(p))
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.metric.check(p)?;
        self.form.check(p)
    }
}

/// `d* = (-1)^k * d *` on degree-`k` forms.
#[derive(Debug, Clone, Copy)]
pub struct Codifferential<G, F> {
    inner: HodgeStar<G, ExtD<HodgeStar<G, F>>>,
    sign: f64,
}

pub fn codifferential<G: MetricField + Clone, F: Form>(metric: G, form: F) -> Result<Codifferential<G, F>, FormsError> {
    let k = form.degree();
    if k == 0 {
        return Err(FormsError::DegreeError { op: "codifferential", degree: 0 });
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Codifferential {
        inner: hodge_star(metric.clone(), ExtD(hodge_star(metric, form))),
        sign,
    })
}

impl<G: MetricField, F: Form> Form for Codifferential<G, F> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        self.inner.eval(p).map(|c| c * self.sign)
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.inner.check(p)
    }
}

/// Sum of two forms of equal degree.
#[derive(Debug, Clone, Copy)]
pub struct Sum<A, B>(pub A, pub B);

impl<A: Form, B: Form> Form for Sum<A, B> {
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let (a, b) = (self.0.eval(p), self.1.eval(p));
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.0.check(p)?;
        self.1.check(p)
    }
}

pub fn sum<A: Form, B: Form>(a: A, b: B) -> Result<Sum<A, B>, FormsError> {
    if a.degree() != b.degree() {
        return Err(FormsError::DegreeError { op: "sum", degree: b.degree() });
    }
    Ok(Sum(a, b))
}

/// `Delta = d d* + d* d` on 1-forms.
pub type HodgeLaplacian<G, A> = Sum<ExtD<Codifferential<G, A>>, Codifferential<G, ExtD<A>>>;

pub fn hodge_laplacian<G: MetricField + Clone, A: Form + Clone>(metric: G, form: A) -> Result<HodgeLaplacian<G, A>, FormsError> {
    if form.degree() != 1 {
        return Err(FormsError::DegreeError { op: "hodge_laplacian", degree: form.degree() });
    }
    Ok(Sum(
        ExtD(codifferential(metric.clone(), form.clone())?),
        codifferential(metric, ExtD(form))?,
    ))
}

/// `X^flat = g(X, -)`.
#[derive(Debug, Clone, Copy)]
pub struct Flat<G, X> {
    pub metric: G,
    pub field: X,
}

pub fn flat<G: MetricField, X: VectorField>(metric: G, field: X) -> Flat<G, X> {
    Flat { metric, field }
}

impl<G: MetricField, X: VectorField> Form for Flat<G, X> {
    fn degree(&self) -> usize {
        1
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        matvec(&self.metric.eval(p), &self.field.eval(p))
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.metric.check(p)?;
        self.field.check(p)
    }
}

/// `alpha^sharp = g^-1 alpha`.
#[derive(Debug, Clone, Copy)]
pub struct Sharp<G, A> {
    pub metric: G,
    pub form: A,
}

pub fn sharp<G: MetricField, A: Form>(metric: G, form: A) -> Result<Sharp<G, A>, FormsError> {
    if form.degree() != 1 {
        return Err(FormsError::DegreeError { op: "sharp", degree: form.degree() });
    }
    Ok(Sharp { metric, form })
}

impl<G: MetricField, A: Form> VectorField for Sharp<G, A> {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        matvec(&inv3(&self.metric.eval(p)), &self.form.eval(p))
    }

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        self.metric.check(p)?;
        self.form.check(p)
    }
}

/// The scalar `g(X, X)`.
#[derive(Debug, Clone, Copy)]
pub struct NormSquared<G, X> {
    pub metric: G,
    pub field: X,
}

impl<G: MetricField, X: VectorField> Form for NormSquared<G, X> {
    fn degree(&self) -> usize {
        0
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let x = self.field.eval(p);
        [bilinear(&self.metric.eval(p), &x, &x), S::zero(), S::zero()]
    }
}

/// Pressure `p = -1/2 g(X, X)`.
#[derive(Debug, Clone, Copy)]
pub struct Pressure<G, X>(pub NormSquared<G, X>);

pub fn pressure<G: MetricField, X: VectorField>(metric: G, field: X) -> Pressure<G, X> {
    Pressure(NormSquared { metric, field })
}

impl<G: MetricField, X: VectorField> Form for Pressure<G, X> {
    fn degree(&self) -> usize {
        0
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        let v = self.0.eval(p);
        [v[0] * -0.5, S::zero(), S::zero()]
    }
}

/// Wraps a vector field's components as a 1-form with the same components
/// (the Euclidean dual). Used to differentiate vector fields with [`ExtD`].
#[derive(Debug, Clone, Copy)]
pub struct Components<X>(pub X);

impl<X: VectorField> Form for Components<X> {
    fn degree(&self) -> usize {
        1
    }

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        self.0.eval(p)
    }
}

/// Jacobian `J[i][j] = d_j X^i` of a vector field.
pub fn jacobian<X: VectorField, S: Scalar>(field: &X, p: &Point<S>) -> (Mat3<S>, [S; 3]) {
    let v = field.eval(&seed(p));
    (
        [v[0].d, v[1].d, v[2].d],
        [v[0].v, v[1].v, v[2].v],
    )
}
