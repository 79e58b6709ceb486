use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{distance_to_circle, Circle, DistanceMode, Point2};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A problem instance: weighted, pairwise disjoint circles.
///
/// Construction validates every invariant, so a `Configuration` in hand is
/// always well formed: at least three circles, matching weight count,
/// strictly positive finite weights and radii, and `|A_i - A_j| > r_i + r_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    circles: Vec<Circle>,
    weights: Vec<f64>,
    tolerance: f64,
    mode: DistanceMode,
}

impl Configuration {
    pub fn new(circles: Vec<Circle>, weights: Vec<f64>) -> Result<Self> {
        Self::with_options(circles, weights, DEFAULT_TOLERANCE, DistanceMode::ToCurve)
    }

    pub fn with_options(
        circles: Vec<Circle>,
        weights: Vec<f64>,
        tolerance: f64,
        mode: DistanceMode,
    ) -> Result<Self> {
        let invalid = |why: alloc::string::String| Err(Error::InvalidConfiguration(why));
        if circles.len() < 3 {
            return invalid(format!("need at least 3 circles, got {}", circles.len()));
        }
        if circles.len() != weights.len() {
            return invalid(format!(
                "{} circles but {} weights",
                circles.len(),
                weights.len()
            ));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return invalid(format!("tolerance must be positive, got {tolerance}"));
        }
        for (i, c) in circles.iter().enumerate() {
            if !c.is_valid() {
                return invalid(format!("circle {} has a bad center or radius", i + 1));
            }
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return invalid(format!("weight {} must be positive, got {w}", i + 1));
            }
        }
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                if !circles[i].is_disjoint_from(&circles[j]) {
                    return invalid(format!("circles {} and {} overlap", i + 1, j + 1));
                }
            }
        }
        Ok(Self {
            circles,
            weights,
            tolerance,
            mode,
        })
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn centers(&self) -> Vec<Point2> {
        self.circles.iter().map(|c| c.center).collect()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Weights scaled to sum to one.
    pub fn normalized_weights(&self) -> Vec<f64> {
        let total = self.total_weight();
        self.weights.iter().map(|w| w / total).collect()
    }

    /// `Σ w_i d(p, γ_i)` under this configuration's distance mode.
    pub fn objective(&self, p: Point2) -> f64 {
        self.objective_with_mode(p, self.mode)
    }

    pub fn objective_with_mode(&self, p: Point2, mode: DistanceMode) -> f64 {
        self.circles
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| w * distance_to_circle(p, c, mode))
            .sum()
    }

    /// Index of the first disk that strictly contains `p`.
    pub fn disk_containing(&self, p: Point2) -> Option<usize> {
        self.circles.iter().position(|c| c.contains_strictly(p))
    }

    /// Same centers and options, new weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        Self::with_options(self.circles.clone(), weights, self.tolerance, self.mode)
    }

    /// Same weights and options, new circles.
    pub fn with_circles(&self, circles: Vec<Circle>) -> Result<Self> {
        Self::with_options(circles, self.weights.clone(), self.tolerance, self.mode)
    }

    pub fn with_mode(mut self, mode: DistanceMode) -> Self {
        self.mode = mode;
        self
    }
}
