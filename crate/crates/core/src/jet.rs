//! Forward-mode derivative propagation in three variables.
//!
//! [`Jet<S>`] carries a value and its three partial derivatives. Because the
//! components are themselves any [`Scalar`], jets nest: `Jet<Jet<f64>>`
//! carries exact second derivatives, `Jet<Jet<Jet<f64>>>` third, and so on.
//! Field code is written once, generic over `S: Scalar`, and every
//! exterior derivative evaluates its argument one nesting level deeper.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    fn cst(v: f64) -> Self;
    /// The primal value, with all derivative parts dropped.
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn atan2(self, x: Self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }

    fn one() -> Self {
        Self::cst(1.0)
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<S> {
    pub v: S,
    pub d: [S; 3],
}

impl<S: Scalar> Jet<S> {
    pub fn constant(v: S) -> Self {
        Jet { v, d: [S::zero(); 3] }
    }

    /// The coordinate function `x_i` evaluated at `v`.
    pub fn variable(v: S, i: usize) -> Self {
        let mut d = [S::zero(); 3];
        d[i] = S::one();
        Jet { v, d }
    }

    fn chain(self, v: S, dv: S) -> Self {
        Jet { v, d: self.d.map(|di| di * dv) }
    }
}

/// Lifts a point so that each coordinate carries a unit derivative.
pub fn seed<S: Scalar>(p: &[S; 3]) -> [Jet<S>; 3] {
    [Jet::variable(p[0], 0), Jet::variable(p[1], 1), Jet::variable(p[2], 2)]
}

/// Lifts a point as constants (no derivative dependence).
pub fn lift<S: Scalar>(p: &[S; 3]) -> [Jet<S>; 3] {
    p.map(Jet::constant)
}

impl<S: Scalar> Add for Jet<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet { v: self.v + o.v, d: [self.d[0] + o.d[0], self.d[1] + o.d[1], self.d[2] + o.d[2]] }
    }
}

impl<S: Scalar> Sub for Jet<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet { v: self.v - o.v, d: [self.d[0] - o.d[0], self.d[1] - o.d[1], self.d[2] - o.d[2]] }
    }
}

impl<S: Scalar> Mul for Jet<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Jet {
            v: self.v * o.v,
            d: [
                self.d[0] * o.v + self.v * o.d[0],
                self.d[1] * o.v + self.v * o.d[1],
                self.d[2] * o.v + self.v * o.d[2],
            ],
        }
    }
}

impl<S: Scalar> Div for Jet<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.v.recip();
        let q = self.v * inv;
        Jet {
            v: q,
            d: [
                (self.d[0] - q * o.d[0]) * inv,
                (self.d[1] - q * o.d[1]) * inv,
                (self.d[2] - q * o.d[2]) * inv,
            ],
        }
    }
}

impl<S: Scalar> Neg for Jet<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { v: -self.v, d: self.d.map(|x| -x) }
    }
}

impl<S: Scalar> Add<f64> for Jet<S> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Jet { v: self.v + o, d: self.d }
    }
}

impl<S: Scalar> Sub<f64> for Jet<S> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Jet { v: self.v - o, d: self.d }
    }
}

impl<S: Scalar> Mul<f64> for Jet<S> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Jet { v: self.v * o, d: self.d.map(|x| x * o) }
    }
}

impl<S: Scalar> Div<f64> for Jet<S> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        self * (1.0 / o)
    }
}

impl<S: Scalar> AddAssign for Jet<S> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Scalar> SubAssign for Jet<S> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<S: Scalar> MulAssign for Jet<S> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<S: Scalar> Scalar for Jet<S> {
    fn cst(v: f64) -> Self {
        Jet::constant(S::cst(v))
    }

    fn value(self) -> f64 {
        self.v.value()
    }

    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }

    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }

    fn ln(self) -> Self {
        self.chain(self.v.ln(), self.v.recip())
    }

    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, (r * 2.0).recip())
    }

    fn atan2(self, x: Self) -> Self {
        // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
        let y = self;
        let inv = (x.v * x.v + y.v * y.v).recip();
        Jet {
            v: y.v.atan2(x.v),
            d: [
                (x.v * y.d[0] - y.v * x.d[0]) * inv,
                (x.v * y.d[1] - y.v * x.d[1]) * inv,
                (x.v * y.d[2] - y.v * x.d[2]) * inv,
            ],
        }
    }
}

/// Gradient of a scalar function at `p`.
pub fn gradient<F>(f: F, p: [f64; 3]) -> [f64; 3]
where
    F: Fn(&[Jet<f64>; 3]) -> Jet<f64>,
{
    f(&seed(&p)).d
}

/// Hessian of a scalar function at `p` via second-order jets.
pub fn hessian<F>(f: F, p: [f64; 3]) -> [[f64; 3]; 3]
where
    F: Fn(&[Jet<Jet<f64>>; 3]) -> Jet<Jet<f64>>,
{
    let inner = seed(&p);
    let outer = seed(&inner);
    let r = f(&outer);
    [r.d[0].d, r.d[1].d, r.d[2].d]
}
