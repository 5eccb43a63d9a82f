use serde::Serialize;

/// Outcome of one sampled residual check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// The property this check certifies.
    pub certifies: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<Vec<f64>>,
}

impl CheckReport {
    /// Passes when `max_residual < tolerance`.
    pub fn below(check: &str, certifies: &str, samples: usize, max_residual: f64, tolerance: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            certifies: certifies.to_string(),
            samples,
            max_residual,
            tolerance,
            pass: max_residual < tolerance,
            worst_point: None,
        }
    }

    /// Passes when the sampled minimum `min_value` exceeds `floor`. The
    /// minimum is stored in `max_residual` with `tolerance = floor`.
    pub fn above(check: &str, certifies: &str, samples: usize, min_value: f64, floor: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            certifies: certifies.to_string(),
            samples,
            max_residual: min_value,
            tolerance: floor,
            pass: min_value > floor,
            worst_point: None,
        }
    }

    pub fn at(mut self, p: Option<&[f64]>) -> Self {
        self.worst_point = p.map(|p| p.to_vec());
        self
    }
}

/// Tolerance ladder: one order of magnitude per derivative level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub structural: f64,
    pub first_order: f64,
    pub second_order: f64,
    pub divergence: f64,
    pub symmetry: f64,
    pub locality: f64,
    pub return_map: f64,
    pub integrator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-10,
            first_order: 1e-7,
            second_order: 1e-6,
            divergence: 1e-8,
            symmetry: 1e-8,
            locality: 1e-12,
            return_map: 1e-6,
            integrator: 1e-9,
        }
    }
}
