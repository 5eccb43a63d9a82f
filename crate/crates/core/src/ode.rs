//! Dormand-Prince 5(4) integrator with step-size control and
//! Hairer-style continuous output.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step budget of {0} exhausted")]
    TooManySteps(usize),
    #[error("non-finite state at t = {0}")]
    NonFinite(f64),
    #[error("no event found before t = {0}")]
    NoEvent(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rtol: 1e-9, atol: 1e-9, h_init: 1e-2, h_max: 0.02, max_steps: 200_000 }
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions { rtol: tol, atol: tol, ..Self::default() }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// One accepted step with the data needed for continuous output.
#[derive(Debug, Clone, Copy)]
pub struct Step<const N: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    /// Max-norm of the embedded local error estimate.
    pub error: f64,
    cont: [[f64; N]; 4],
}

impl<const N: usize> Step<N> {
    /// Continuous 4th-order interpolant on `[t0, t0 + h]`.
    pub fn interpolate(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.cont;
        std::array::from_fn(|i| self.y0[i] + th * (r[0][i] + th1 * (r[1][i] + th * (r[2][i] + th1 * r[3][i]))))
    }
}

/// Result of an integration over a fixed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub accepted: usize,
    pub rejected: usize,
    /// Sum of local error estimates, a rough global error bound.
    pub error_estimate: f64,
    /// `(t, y)` at each accepted step when recording.
    pub trace: Vec<(f64, [f64; N])>,
}

struct Stepper<const N: usize, F> {
    f: F,
    opts: OdeOptions,
    t: f64,
    y: [f64; N],
    k1: [f64; N],
    h: f64,
    accepted: usize,
    rejected: usize,
    error_estimate: f64,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, ks: &[[f64; N]], w: &[f64]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * ks.iter().zip(w).map(|(k, w)| w * k[i]).sum::<f64>())
}

impl<const N: usize, F: FnMut(f64, &[f64; N]) -> [f64; N]> Stepper<N, F> {
    fn new(mut f: F, t0: f64, y0: [f64; N], opts: OdeOptions) -> Self {
        let k1 = f(t0, &y0);
        Stepper { f, opts, t: t0, y: y0, k1, h: opts.h_init, accepted: 0, rejected: 0, error_estimate: 0.0 }
    }

    /// Attempts steps until one is accepted, never passing `t_stop`.
    fn step(&mut self, t_stop: f64) -> Result<Step<N>, OdeError> {
        loop {
            if self.accepted + self.rejected >= self.opts.max_steps {
                return Err(OdeError::TooManySteps(self.opts.max_steps));
            }
            let mut h = self.h.min(self.opts.h_max).min(t_stop - self.t);
            if h <= 1e-14 * self.t.abs().max(1.0) {
                if t_stop - self.t <= 1e-14 * self.t.abs().max(1.0) {
                    h = t_stop - self.t;
                } else {
                    return Err(OdeError::StepUnderflow { t: self.t, h });
                }
            }
            let (t, y) = (self.t, self.y);
            let mut k = [[0.0; N]; 7];
            k[0] = self.k1;
            for s in 1..6 {
                let ys = axpy(&y, h, &k[..s], &A[s][..s]);
                k[s] = (self.f)(t + C[s] * h, &ys);
            }
            let y1 = axpy(&y, h, &k[..6], &A[6][..6]);
            k[6] = (self.f)(t + h, &y1);

            let mut err = 0.0f64;
            let mut err_abs = 0.0f64;
            for i in 0..N {
                let e = h * (0..7).map(|s| E[s] * k[s][i]).sum::<f64>();
                let sc = self.opts.atol + self.opts.rtol * y[i].abs().max(y1[i].abs());
                err = err.max((e / sc).abs());
                err_abs = err_abs.max(e.abs());
            }
            if !err.is_finite() || y1.iter().any(|v| !v.is_finite()) {
                if h < 1e-12 {
                    return Err(OdeError::NonFinite(t));
                }
                self.h = h * 0.1;
                self.rejected += 1;
                continue;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                let mut cont = [[0.0; N]; 4];
                for i in 0..N {
                    let ydiff = y1[i] - y[i];
                    let bspl = h * k[0][i] - ydiff;
                    cont[0][i] = ydiff;
                    cont[1][i] = bspl;
                    cont[2][i] = ydiff - h * k[6][i] - bspl;
                    cont[3][i] = h * (0..7).map(|s| D[s] * k[s][i]).sum::<f64>();
                }
                self.t = t + h;
                self.y = y1;
                self.k1 = k[6];
                self.h = h * fac;
                self.accepted += 1;
                self.error_estimate += err_abs;
                return Ok(Step { t0: t, h, y0: y, y1, error: err_abs, cont });
            }
            self.h = h * fac.min(1.0);
            self.rejected += 1;
        }
    }

    fn solution(&self, trace: Vec<(f64, [f64; N])>) -> Solution<N> {
        Solution {
            t: self.t,
            y: self.y,
            accepted: self.accepted,
            rejected: self.rejected,
            error_estimate: self.error_estimate,
            trace,
        }
    }
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 > t0`.
pub fn solve<const N: usize, F>(f: F, t0: f64, y0: [f64; N], t1: f64, opts: OdeOptions, record: bool) -> Result<Solution<N>, OdeError>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let mut st = Stepper::new(f, t0, y0, opts);
    let mut trace = if record { vec![(t0, y0)] } else { Vec::new() };
    while st.t < t1 {
        let s = st.step(t1)?;
        if record {
            trace.push((s.t0 + s.h, s.y1));
        }
    }
    st.t = t1;
    Ok(st.solution(trace))
}

/// Integrates until `event(y)` first changes sign from negative to
/// non-negative, or fails at `t_max`. The crossing is located on the
/// continuous output by bisection-secant, then recomputed with one
/// explicit step from the last accepted point so the returned state has
/// full step accuracy. `check` runs at every accepted state and can abort.
#[allow(clippy::too_many_arguments)]
pub fn solve_until<const N: usize, F, G, K, Er>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t_max: f64,
    opts: OdeOptions,
    record: bool,
    event: G,
    mut check: K,
) -> Result<Result<Solution<N>, Er>, OdeError>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    G: Fn(&[f64; N]) -> f64,
    K: FnMut(f64, &[f64; N]) -> Result<(), Er>,
{
    let mut st = Stepper::new(f, t0, y0, opts);
    let mut trace = if record { vec![(t0, y0)] } else { Vec::new() };
    if let Err(e) = check(t0, &y0) {
        return Ok(Err(e));
    }
    while st.t < t_max {
        let s = st.step(t_max)?;
        if let Err(e) = check(s.t0 + s.h, &s.y1) {
            return Ok(Err(e));
        }
        let (g0, g1) = (event(&s.y0), event(&s.y1));
        if g0 < 0.0 && g1 >= 0.0 {
            let (mut a, mut b) = (s.t0, s.t0 + s.h);
            let (mut ga, mut gb) = (g0, g1);
            for _ in 0..200 {
                let mut m = a - ga * (b - a) / (gb - ga);
                if !(m > a && m < b) || (b - a) < 1e-3 * s.h {
                    m = 0.5 * (a + b);
                }
                let gm = event(&s.interpolate(m));
                if gm < 0.0 {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                    gb = gm;
                }
                if (b - a) <= 4.0 * f64::EPSILON * b.abs().max(1.0) || gm.abs() < 1e-15 {
                    break;
                }
            }
            let t_hit = if ga.abs() < gb.abs() { a } else { b };
            // Re-step exactly to the crossing from the last accepted state.
            let mut exact = Stepper::new(&mut st.f, s.t0, s.y0, OdeOptions { h_init: t_hit - s.t0, ..opts });
            let y_hit = if t_hit > s.t0 {
                exact.step(t_hit)?;
                exact.y
            } else {
                s.y0
            };
            let extra = exact.accepted + exact.rejected;
            if record {
                trace.push((t_hit, y_hit));
            }
            let mut sol = st.solution(trace);
            sol.t = t_hit;
            sol.y = y_hit;
            sol.accepted += extra;
            return Ok(Ok(sol));
        }
        if record {
            trace.push((s.t0 + s.h, s.y1));
        }
    }
    Err(OdeError::NoEvent(t_max))
}
