//! C-infinity cutoff profiles built from `e^{-1/u}`.

use crate::jet::{Jet, Scalar};

/// Below this argument `e^{-1/u}` underflows relative to `e^{-1}`, so the
/// profile is returned as an exact constant.
const FLAT: f64 = 1.0 / 700.0;

/// `S(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)})`: 0 for `u <= 0`, 1 for
/// `u >= 1`, monotone, `S(1/2) = 1/2`, `S(1 - u) = 1 - S(u)`.
pub fn smooth_step<S: Scalar>(u: S) -> S {
    let v = u.value();
    if v <= FLAT {
        S::zero()
    } else if v >= 1.0 - FLAT {
        S::one()
    } else {
        let a = (u.recip() * -1.0).exp();
        let b = ((S::one() - u).recip() * -1.0).exp();
        a / (a + b)
    }
}

/// `S'(u)`, by one extra jet level.
pub fn smooth_step_derivative<S: Scalar>(u: S) -> S {
    smooth_step(Jet::variable(u, 0)).d[0]
}

/// Normalized temporal bump on `(a, b)`: `tau(t) = d/dt S((t - a)/(b - a))`,
/// so `int_0^1 tau = 1` exactly. Periodic in `t` with period 1.
pub fn time_bump<S: Scalar>(t: S, a: f64, b: f64) -> S {
    let w = t - t.value().floor();
    smooth_step_derivative((w - a) / (b - a)) / (b - a)
}

/// `int_0^t tau` for `t` in `[0, 1)`: the time reparametrization of the
/// isotopy.
pub fn time_bump_integral(t: f64, a: f64, b: f64) -> f64 {
    smooth_step((t - t.floor() - a) / (b - a))
}

/// Radial cutoff equal to 1 on `|p|^2 <= inner^2` and 0 on
/// `|p|^2 >= outer^2`, written in `r^2` so it is smooth at the origin.
pub fn radial_cutoff<S: Scalar>(r2: S, inner: f64, outer: f64) -> S {
    S::one() - smooth_step((r2 - inner * inner) / (outer * outer - inner * inner))
}
