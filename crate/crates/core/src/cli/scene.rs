//! The JSON scene format read and written by the command line tool.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{cantor_family, CantorSpec, ConstructionError};
use crate::convex::{BodyError, ConvexBody, Vec3, DEFAULT_BALL_FACETS};
use crate::tolerance::Tolerances;
use crate::transversal::{Family, FamilyError};

pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("malformed scene: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported scene version {0}, expected {SCENE_VERSION}")]
    Version(u32),
    #[error(transparent)]
    Body(#[from] BodyError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("tolerance `{name}` must be positive and finite, got {value}")]
    BadTolerance { name: &'static str, value: f64 },
    #[error("cantor block does not match the bodies: {0}")]
    Cantor(#[from] ConstructionError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: u32,
    pub bodies: Vec<SceneBody>,
    #[serde(default, skip_serializing_if = "ToleranceOverrides::is_empty")]
    pub tolerances: ToleranceOverrides,
    /// Present on scenes written by `construct cantor`; lets `probe-curve`
    /// pick its tolerance and cluster gap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cantor: Option<CantorBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SceneBody {
    Polytope {
        label: String,
        vertices: Vec<[f64; 3]>,
    },
    Ball {
        label: String,
        center: [f64; 3],
        radius: f64,
        #[serde(default = "default_facets")]
        facets: usize,
    },
}

fn default_facets() -> usize {
    DEFAULT_BALL_FACETS
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_sep: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_line: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_curve: Option<f64>,
}

impl ToleranceOverrides {
    pub fn is_empty(&self) -> bool {
        *self == ToleranceOverrides::default()
    }

    /// Applies the overrides on top of `base`. An overridden `tau` also
    /// moves `tau_sep` and `tau_line` unless those are given explicitly.
    pub fn apply(&self, base: Tolerances) -> Result<Tolerances, SceneError> {
        for (name, value) in [
            ("tau", self.tau),
            ("tau_sep", self.tau_sep),
            ("tau_line", self.tau_line),
            ("tau_curve", self.tau_curve),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(SceneError::BadTolerance { name, value: v });
                }
            }
        }
        let mut t = match self.tau {
            Some(tau) => base.with_tau(tau),
            None => base,
        };
        t.tau_sep = self.tau_sep.unwrap_or(t.tau_sep);
        t.tau_line = self.tau_line.unwrap_or(t.tau_line);
        t.tau_curve = self.tau_curve.unwrap_or(t.tau_curve);
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CantorBlock {
    pub stage: u32,
    pub samples_per_interval: usize,
}

impl CantorBlock {
    pub fn spec(&self) -> Result<CantorSpec, ConstructionError> {
        CantorSpec::new(self.stage as i64, self.samples_per_interval)
    }
}

impl SceneBody {
    pub fn label(&self) -> &str {
        match self {
            SceneBody::Polytope { label, .. } | SceneBody::Ball { label, .. } => label,
        }
    }

    pub fn to_body(&self) -> Result<ConvexBody, BodyError> {
        match self {
            SceneBody::Polytope { label, vertices } => ConvexBody::new(
                label.clone(),
                vertices.iter().map(|&a| Vec3::from(a)).collect(),
            ),
            SceneBody::Ball {
                label,
                center,
                radius,
                facets,
            } => ConvexBody::ball(label.clone(), Vec3::from(*center), *radius, *facets),
        }
    }

    pub fn from_body(body: &ConvexBody) -> Self {
        SceneBody::Polytope {
            label: body.label.clone(),
            vertices: body.vertices().iter().map(|v| v.to_array()).collect(),
        }
    }
}

impl SceneFile {
    pub fn from_family(family: &Family) -> Self {
        SceneFile {
            version: SCENE_VERSION,
            bodies: family.bodies().iter().map(SceneBody::from_body).collect(),
            tolerances: ToleranceOverrides::default(),
            cantor: None,
        }
    }

    /// Scene of `cantor_family(spec)` with its generating parameters.
    pub fn cantor(spec: &CantorSpec) -> Result<Self, ConstructionError> {
        let mut scene = SceneFile::from_family(&cantor_family(spec)?);
        scene.cantor = Some(CantorBlock {
            stage: spec.stage,
            samples_per_interval: spec.samples_per_interval,
        });
        Ok(scene)
    }

    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        let scene: SceneFile = serde_json::from_str(text)?;
        if scene.version != SCENE_VERSION {
            return Err(SceneError::Version(scene.version));
        }
        Ok(scene)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenes serialize");
        s.push('\n');
        s
    }

    /// Builds the family, with tolerances scaled to the scene diameter and
    /// then overridden by the scene's `tolerances` block and `tau`, in that
    /// order.
    pub fn to_family(&self, tau: Option<f64>) -> Result<Family, SceneError> {
        let bodies = self
            .bodies
            .iter()
            .map(SceneBody::to_body)
            .collect::<Result<Vec<_>, _>>()?;
        let base = Tolerances::for_diameter(crate::convex::scene_diameter(&bodies));
        let mut tol = self.tolerances.apply(base)?;
        if let Some(t) = tau {
            tol = ToleranceOverrides {
                tau: Some(t),
                ..Default::default()
            }
            .apply(tol)?;
        }
        Ok(Family::with_tolerances(bodies, tol)?)
    }
}
