//! Differential forms, metrics and vector fields on a 3-dimensional
//! coordinate chart `(x, y, t)`.
//!
//! Every field evaluates generically over [`Scalar`], so composite operators
//! (`d`, `*`, `d*`, the Hodge Laplacian, Christoffel symbols) are exact up to
//! roundoff: each derivative evaluates its argument on nested jets.
//!
//! Component conventions, orientation `dx^dy^dt > 0`:
//!
//! | degree | components |
//! |--------|------------|
//! | 0      | `[f, _, _]` |
//! | 1      | `[a_x, a_y, a_t]` for `a_x dx + a_y dy + a_t dt` |
//! | 2      | `[w_1, w_2, w_3]` for `w_1 dy^dt + w_2 dt^dx + w_3 dx^dy` |
//! | 3      | `[h, _, _]` for `h dx^dy^dt` |
//!
//! Unused slots are zero.

mod cosymplectic;
mod fields;
mod linalg;
mod ops;
mod riemann;

pub use cosymplectic::*;
pub use fields::*;
pub use linalg::*;
pub use ops::*;
pub use riemann::*;

use thiserror::Error;

use crate::jet::Scalar;

pub type Point<S> = [S; 3];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormsError {
    #[error("{op} is undefined on forms of degree {degree}")]
    DegreeError { op: &'static str, degree: usize },
    #[error("metric is not positive definite at {0:?}")]
    SingularMetric([f64; 3]),
    #[error("alpha ^ omega vanishes at {0:?}")]
    DegeneratePair([f64; 3]),
    #[error("vector field vanishes at {0:?}")]
    VanishingField([f64; 3]),
    #[error("viscosity must be non-negative, got {0}")]
    NegativeViscosity(f64),
}

/// A differential form of fixed degree with generic evaluation.
pub trait Form: Sync {
    fn degree(&self) -> usize;

    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3];

    /// Pointwise preconditions of the composite (metric definiteness,
    /// pair non-degeneracy), checked at the primal point.
    fn check(&self, _p: &[f64; 3]) -> Result<(), FormsError> {
        Ok(())
    }

    fn at(&self, p: &[f64; 3]) -> Result<[f64; 3], FormsError> {
        self.check(p)?;
        Ok(self.eval(p))
    }
}

pub trait VectorField: Sync {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3];

    fn check(&self, _p: &[f64; 3]) -> Result<(), FormsError> {
        Ok(())
    }

    fn at(&self, p: &[f64; 3]) -> Result<[f64; 3], FormsError> {
        self.check(p)?;
        Ok(self.eval(p))
    }
}

/// Symmetric positive-definite bilinear form field.
pub trait MetricField: Sync {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3];

    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        if is_positive_definite(&self.eval(p)) {
            Ok(())
        } else {
            Err(FormsError::SingularMetric(*p))
        }
    }

    fn at(&self, p: &[f64; 3]) -> Result<[[f64; 3]; 3], FormsError> {
        self.check(p)?;
        Ok(self.eval(p))
    }
}

impl<F: Form + ?Sized> Form for &F {
    fn degree(&self) -> usize {
        (**self).degree()
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        (**self).eval(p)
    }
    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        (**self).check(p)
    }
}

impl<V: VectorField + ?Sized> VectorField for &V {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        (**self).eval(p)
    }
    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        (**self).check(p)
    }
}

impl<G: MetricField + ?Sized> MetricField for &G {
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [[S; 3]; 3] {
        (**self).eval(p)
    }
    fn check(&self, p: &[f64; 3]) -> Result<(), FormsError> {
        (**self).check(p)
    }
}

/// Number of independent components of a degree-`k` form in 3D.
pub fn components(degree: usize) -> usize {
    match degree {
        0 | 3 => 1,
        _ => 3,
    }
}

/// Largest absolute component of a form value.
pub fn max_abs(degree: usize, v: &[f64; 3]) -> f64 {
    v[..components(degree)].iter().fold(0.0, |m, x| m.max(x.abs()))
}
