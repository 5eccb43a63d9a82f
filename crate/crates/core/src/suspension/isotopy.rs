use serde::{Deserialize, Serialize};

use super::SuspensionError;
use crate::forms::{Form, Point};
use crate::jet::{seed, Scalar};
use crate::profile::{radial_cutoff, time_bump, time_bump_integral};

/// Spatial shape `P(x, y)` of a Hamiltonian `H = tau(t) P(x, y) chi(r^2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case")]
pub enum Profile {
    Zero,
    /// `P = omega r^2 / 2`: rotation by `-omega` on `|p| < r_a`.
    Rotation { omega: f64 },
    /// `P = sigma y^2 / 2`: the shear `(x, y) -> (x + sigma y, y)` on
    /// `|p| < r_a`.
    Shear { sigma: f64 },
    /// `P = sum coef x^a y^b`.
    CustomPolynomial { terms: Vec<PolyTerm> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coef: f64,
    pub powers: [u32; 2],
}

fn default_window() -> [f64; 2] {
    [0.2, 0.8]
}

fn default_disk() -> f64 {
    1.0
}

/// Compactly supported Hamiltonian isotopy on the disk of radius
/// `disk_radius`, in coordinates centred on the disk.
///
/// `H(x, y, t) = tau(t) P(x, y) chi(x^2 + y^2)` where `tau` is the
/// normalized bump on `t_window` and `chi` drops from 1 at `r_a` to 0 at
/// `r_h`. So `H = 0` for `|p| >= r_h` and for `t` near the seam.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianIsotopy {
    #[serde(flatten)]
    pub profile: Profile,
    pub r_a: f64,
    pub r_h: f64,
    #[serde(default = "default_window")]
    pub t_window: [f64; 2],
    #[serde(default = "default_disk")]
    pub disk_radius: f64,
}

impl HamiltonianIsotopy {
    pub fn new(profile: Profile, r_a: f64, r_h: f64) -> Self {
        HamiltonianIsotopy { profile, r_a, r_h, t_window: default_window(), disk_radius: default_disk() }
    }

    pub fn zero() -> Self {
        Self::new(Profile::Zero, 0.5, 0.9)
    }

    pub fn rotation(omega: f64, r_a: f64, r_h: f64) -> Self {
        Self::new(Profile::Rotation { omega }, r_a, r_h)
    }

    pub fn shear(sigma: f64, r_a: f64, r_h: f64) -> Self {
        Self::new(Profile::Shear { sigma }, r_a, r_h)
    }

    pub fn with_disk_radius(mut self, r: f64) -> Self {
        self.disk_radius = r;
        self
    }

    pub fn validate(&self) -> Result<(), SuspensionError> {
        let bad = |m: String| Err(SuspensionError::InvalidIsotopy(m));
        let [ta, tb] = self.t_window;
        if !(0.0 < ta && ta < tb && tb < 1.0) {
            return bad(format!("temporal window {:?} must satisfy 0 < t_a < t_b < 1", self.t_window));
        }
        if !(0.0 < self.r_a && self.r_a < self.r_h && self.r_h < self.disk_radius) {
            return bad(format!(
                "radii must satisfy 0 < r_a < r_h < disk radius, got {}, {}, {}",
                self.r_a, self.r_h, self.disk_radius
            ));
        }
        let finite = match &self.profile {
            Profile::Zero => true,
            Profile::Rotation { omega } => omega.is_finite(),
            Profile::Shear { sigma } => sigma.is_finite(),
            Profile::CustomPolynomial { terms } => terms.iter().all(|t| t.coef.is_finite()),
        };
        if !finite {
            return bad("non-finite profile parameter".into());
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        match &self.profile {
            Profile::Zero => true,
            Profile::Rotation { omega } => *omega == 0.0,
            Profile::Shear { sigma } => *sigma == 0.0,
            Profile::CustomPolynomial { terms } => terms.iter().all(|t| t.coef == 0.0),
        }
    }

    fn shape<S: Scalar>(&self, x: S, y: S) -> S {
        match &self.profile {
            Profile::Zero => S::zero(),
            Profile::Rotation { omega } => (x * x + y * y) * (0.5 * omega),
            Profile::Shear { sigma } => y * y * (0.5 * sigma),
            Profile::CustomPolynomial { terms } => {
                terms.iter().fold(S::zero(), |acc, t| acc + x.powi(t.powers[0]) * y.powi(t.powers[1]) * t.coef)
            }
        }
    }

    pub fn hamiltonian<S: Scalar>(&self, x: S, y: S, t: S) -> S {
        if self.is_zero() {
            return S::zero();
        }
        let r2 = x * x + y * y;
        if r2.value() >= self.r_h * self.r_h {
            return S::zero();
        }
        let tau = time_bump(t, self.t_window[0], self.t_window[1]);
        tau * self.shape(x, y) * radial_cutoff(r2, self.r_a, self.r_h)
    }

    /// `X_H(x, y, t)`.
    pub fn velocity(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let d = seed(&[x, y, t]);
        let h = self.hamiltonian(d[0], d[1], d[2]);
        [h.d[1], -h.d[0]]
    }

    /// `D X_H` in the plane variables.
    pub fn velocity_jacobian(&self, x: f64, y: f64, t: f64) -> [[f64; 2]; 2] {
        let d = seed(&seed(&[x, y, t]));
        let h = self.hamiltonian(d[0], d[1], d[2]);
        let hxx = h.d[0].d[0];
        let hxy = h.d[0].d[1];
        let hyy = h.d[1].d[1];
        [[hxy, hyy], [-hxx, -hxy]]
    }

    /// The time-one map in closed form where it is known: everywhere for
    /// radial profiles, and for shears whose whole orbit stays in
    /// `|p| < r_a`.
    pub fn closed_form_map(&self, p: [f64; 2]) -> Option<[f64; 2]> {
        let r2 = p[0] * p[0] + p[1] * p[1];
        if self.is_zero() || r2 >= self.r_h * self.r_h {
            return Some(p);
        }
        match &self.profile {
            Profile::Rotation { omega } => {
                // H = tau h(r^2), X_H = 2 tau h'(r^2) (y, -x).
                let d = crate::jet::Jet::variable(r2, 0);
                let hr = d * (0.5 * omega) * radial_cutoff(d, self.r_a, self.r_h);
                let angle = -2.0 * hr.d[0];
                let (s, c) = angle.sin_cos();
                Some([c * p[0] - s * p[1], s * p[0] + c * p[1]])
            }
            Profile::Shear { sigma } => {
                let q = [p[0] + sigma * p[1], p[1]];
                let inside = |v: [f64; 2]| v[0].hypot(v[1]) < self.r_a;
                (inside(p) && inside(q)).then_some(q)
            }
            _ => None,
        }
    }

    /// `f_t` in closed form on the rotation core, for trajectory checks.
    pub fn closed_form_flow(&self, p: [f64; 2], t: f64) -> Option<[f64; 2]> {
        let s = time_bump_integral(t, self.t_window[0], self.t_window[1]);
        match &self.profile {
            Profile::Rotation { omega } if p[0].hypot(p[1]) < self.r_a => {
                let (sn, cs) = (-omega * s).sin_cos();
                Some([cs * p[0] - sn * p[1], sn * p[0] + cs * p[1]])
            }
            _ => None,
        }
    }
}

/// `H` as a 0-form on `(x, y, t)`.
impl Form for HamiltonianIsotopy {
    fn degree(&self) -> usize {
        0
    }
    fn eval<S: Scalar>(&self, p: &Point<S>) -> [S; 3] {
        [self.hamiltonian(p[0], p[1], p[2]), S::zero(), S::zero()]
    }
}
