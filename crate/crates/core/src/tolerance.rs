//! Numerical tolerances and the three-way direction classification.
//!
//! Bodies are closed polytopes standing in for open convex sets. A direction
//! counts as transversal only when its depth clears `tau`, as
//! non-transversal when it is below `-tau`, and as ambiguous in between.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Openness threshold on signed depth.
    pub tau: f64,
    /// Separators with margin at or below this are rejected.
    pub tau_sep: f64,
    /// Line-to-body incidence threshold.
    pub tau_line: f64,
    /// Looser depth threshold for parametric probes along a known curve of
    /// directions.
    pub tau_curve: f64,
}

impl Tolerances {
    pub const TAU_FACTOR: f64 = 1e-7;
    pub const TAU_CURVE_FACTOR: f64 = 1e-4;

    /// Defaults scaled by the scene diameter.
    pub fn for_diameter(diameter: f64) -> Self {
        let d = if diameter.is_finite() && diameter > 0.0 {
            diameter
        } else {
            1.0
        };
        let tau = Self::TAU_FACTOR * d;
        Tolerances {
            tau,
            tau_sep: tau,
            tau_line: tau,
            tau_curve: Self::TAU_CURVE_FACTOR * d,
        }
    }

    /// Replaces `tau` and the tolerances that default to it.
    pub fn with_tau(self, tau: f64) -> Self {
        Tolerances {
            tau,
            tau_sep: tau,
            tau_line: tau,
            ..self
        }
    }

    pub fn classify(&self, depth: f64) -> DirectionClass {
        if depth > self.tau {
            DirectionClass::Transversal
        } else if depth < -self.tau {
            DirectionClass::NonTransversal
        } else {
            DirectionClass::Ambiguous
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DirectionClass {
    Transversal,
    NonTransversal,
    Ambiguous,
}
