//! JSON scene files and the JSON form of a solve.
//!
//! ```json
//! {"circles":[{"cx":0,"cy":0,"r":0.1}, ...],"weights":[1, ...],"mode":"curve","tolerance":1e-10}
//! ```
//!
//! `mode` and `tolerance` are optional. A scene may also carry a `point`
//! (`{"x":..,"y":..}`), which is what `inverse` reads; the output of
//! `solve --json` is itself a valid scene with a point.

use std::fs;
use std::path::Path;

use ftplast_core::solver::certificate_residuals;
use ftplast_core::{
    CaseTag, Circle, Configuration, DistanceMode, Point2, SolveResult, DEFAULT_TOLERANCE,
};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleJson {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub x: f64,
    pub y: f64,
}

impl From<Point2> for PointJson {
    fn from(p: Point2) -> Self {
        Self { x: p.x, y: p.y }
    }
}

impl From<PointJson> for Point2 {
    fn from(p: PointJson) -> Self {
        Point2::new(p.x, p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    #[default]
    Curve,
    Set,
}

impl From<ModeJson> for DistanceMode {
    fn from(m: ModeJson) -> Self {
        match m {
            ModeJson::Curve => DistanceMode::ToCurve,
            ModeJson::Set => DistanceMode::ToSet,
        }
    }
}

impl From<DistanceMode> for ModeJson {
    fn from(m: DistanceMode) -> Self {
        match m {
            DistanceMode::ToCurve => ModeJson::Curve,
            DistanceMode::ToSet => ModeJson::Set,
        }
    }
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub circles: Vec<CircleJson>,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub mode: ModeJson,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointJson>,
}

impl Scene {
    pub fn from_json(text: &str) -> AppResult<Self> {
        let scene: Scene =
            serde_json::from_str(text).map_err(|e| AppError::Scene(e.to_string()))?;
        if scene.circles.len() != scene.weights.len() {
            return Err(AppError::Scene(format!(
                "{} circles but {} weights",
                scene.circles.len(),
                scene.weights.len()
            )));
        }
        Ok(scene)
    }

    pub fn read(path: &Path) -> AppResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn from_configuration(config: &Configuration) -> Self {
        Self {
            circles: config
                .circles()
                .iter()
                .map(|c| CircleJson {
                    cx: c.center.x,
                    cy: c.center.y,
                    r: c.radius,
                })
                .collect(),
            weights: config.weights().to_vec(),
            mode: config.mode().into(),
            tolerance: config.tolerance(),
            point: None,
        }
    }

    pub fn configuration(&self) -> AppResult<Configuration> {
        let circles = self
            .circles
            .iter()
            .map(|c| Circle::new(Point2::new(c.cx, c.cy), c.r))
            .collect();
        Ok(Configuration::with_options(
            circles,
            self.weights.clone(),
            self.tolerance,
            self.mode.into(),
        )?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }
}

/// Everything `solve` knows, in a fixed key order. Angles are in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveJson {
    pub circles: Vec<CircleJson>,
    pub weights: Vec<f64>,
    pub mode: ModeJson,
    pub tolerance: f64,
    pub point: PointJson,
    pub projections: Vec<PointJson>,
    pub distances: Vec<f64>,
    /// Zero-based circle indices counter-clockwise around the point.
    pub cyclic_order: Vec<usize>,
    pub sector_angles: Vec<f64>,
    pub objective: f64,
    /// `"floating"` or `"absorbed"`.
    pub case: String,
    /// Zero-based index of the absorbing circle, if any.
    pub absorbed_index: Option<usize>,
    pub equilibrium_residual: f64,
    /// Weighted cosine residuals, one per circle (floating case only).
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl SolveJson {
    pub fn new(config: &Configuration, result: &SolveResult) -> Self {
        let scene = Scene::from_configuration(config);
        let (case, absorbed_index) = match result.case {
            CaseTag::Floating => ("floating", None),
            CaseTag::AbsorbedAt(m) => ("absorbed", Some(m)),
        };
        Self {
            circles: scene.circles,
            weights: scene.weights,
            mode: scene.mode,
            tolerance: scene.tolerance,
            point: result.point.into(),
            projections: result.projections.iter().map(|&p| p.into()).collect(),
            distances: result.distances.clone(),
            cyclic_order: result.cyclic_order.clone(),
            sector_angles: result.sector_angles.clone(),
            objective: result.objective,
            case: case.into(),
            absorbed_index,
            equilibrium_residual: result.equilibrium_residual,
            residuals: certificate_residuals(result, config).unwrap_or_default(),
            iterations: result.iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optional_fields_default() {
        let s = Scene::from_json(r#"{"circles":[{"cx":0,"cy":0,"r":0.1}],"weights":[2]}"#).unwrap();
        assert_eq!(s.mode, ModeJson::Curve);
        assert_eq!(s.tolerance, DEFAULT_TOLERANCE);
        assert!(s.point.is_none());
    }

    #[test]
    fn length_mismatch_rejected() {
        let e = Scene::from_json(r#"{"circles":[{"cx":0,"cy":0,"r":0.1}],"weights":[1,2]}"#)
            .unwrap_err();
        assert_eq!(e.code(), "invalid_scene");
    }

    #[test]
    fn set_mode_parses() {
        let s = Scene::from_json(r#"{"circles":[],"weights":[],"mode":"set"}"#).unwrap();
        assert_eq!(DistanceMode::from(s.mode), DistanceMode::ToSet);
        assert!(Scene::from_json(r#"{"circles":[],"weights":[],"mode":"edge"}"#).is_err());
    }
}
