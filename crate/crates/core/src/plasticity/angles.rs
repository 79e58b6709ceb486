use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{angle_between_units, Point2};
use crate::math::{self, PI, TAU};
use crate::solver::SolveResult;

const GAP_SUM_TOLERANCE: f64 = 1e-10;
const DEGENERATE_SINE: f64 = 1e-12;

/// Directions of the rays from the F-T point toward the projections, indexed
/// by role. No two rays coincide, so every pairwise angle lies in `(0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorAngles {
    units: Vec<Point2>,
}

impl SectorAngles {
    /// Rays given by their polar angles, in role order.
    pub fn from_directions(directions: &[f64]) -> Result<Self> {
        Self::from_units(directions.iter().map(|&t| Point2::from_polar(t)).collect())
    }

    /// Rays given as consecutive counter-clockwise sector angles; role `k`
    /// starts at polar angle `Σ_{m<k} gaps[m]`.
    pub fn from_sector_gaps(gaps: &[f64]) -> Result<Self> {
        let total: f64 = gaps.iter().sum();
        if math::abs(total - TAU) > GAP_SUM_TOLERANCE {
            return Err(Error::InvalidAngles(format!(
                "sector angles sum to {total}, expected 2π"
            )));
        }
        let mut acc = 0.0;
        let dirs: Vec<f64> = gaps
            .iter()
            .map(|g| {
                let d = acc;
                acc += g;
                d
            })
            .collect();
        Self::from_directions(&dirs)
    }

    /// Rays of a floating solution with roles assigned counter-clockwise,
    /// starting from the ray with the smallest polar angle. Also returns the
    /// labeling: `labels[role]` is the circle index.
    pub fn from_solution(result: &SolveResult) -> Result<(Self, Vec<usize>)> {
        let labels = result.cyclic_order.clone();
        Ok((Self::from_solution_labeled(result, &labels)?, labels))
    }

    /// Rays of a floating solution with an explicit labeling.
    pub fn from_solution_labeled(result: &SolveResult, labels: &[usize]) -> Result<Self> {
        if !result.case.is_floating() {
            return Err(Error::PreconditionViolated(
                "plasticity needs a floating solution".into(),
            ));
        }
        let units = labels
            .iter()
            .map(|&i| {
                result
                    .rays
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::InvalidAngles(format!("label {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_units(units)
    }

    fn from_units(units: Vec<Point2>) -> Result<Self> {
        if units.len() < 4 {
            return Err(Error::InvalidAngles(format!(
                "need at least 4 rays, got {}",
                units.len()
            )));
        }
        if units.iter().any(|u| !u.is_finite()) {
            return Err(Error::InvalidAngles("non-finite direction".into()));
        }
        for i in 0..units.len() {
            for j in i + 1..units.len() {
                let (u, v) = (units[i], units[j]);
                if math::abs(u.cross(v)) <= DEGENERATE_SINE && u.dot(v) > 0.0 {
                    return Err(Error::InvalidAngles(format!(
                        "rays {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { units })
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn unit(&self, role: usize) -> Point2 {
        self.units[role]
    }

    /// Unsigned `∠A_i' P A_j'` in `(0, π]`.
    pub fn angle(&self, i: usize, j: usize) -> f64 {
        angle_between_units(self.units[i], self.units[j])
    }

    /// Sine of the counter-clockwise angle from ray `i` to ray `j`.
    pub fn signed_sine(&self, i: usize, j: usize) -> f64 {
        self.units[i].cross(self.units[j])
    }

    /// Counter-clockwise angle from ray `i` to ray `j`, in `[0, 2π)`.
    pub fn ccw_gap(&self, i: usize, j: usize) -> f64 {
        math::wrap_tau(self.units[j].polar_angle() - self.units[i].polar_angle())
    }

    /// Roles rearranged: new role `k` is old role `order[k]`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        Self {
            units: order.iter().map(|&k| self.units[k]).collect(),
        }
    }

    /// True when the roles run around the point in order (either
    /// orientation) and no sector reaches `π`.
    pub fn is_cyclic(&self) -> bool {
        let n = self.len();
        let winds = |gaps: &[f64]| math::abs(gaps.iter().sum::<f64>() - TAU) < 1e-9;
        let ccw: Vec<f64> = (0..n).map(|k| self.ccw_gap(k, (k + 1) % n)).collect();
        if winds(&ccw) {
            return ccw.iter().all(|&g| g < PI);
        }
        let cw: Vec<f64> = (0..n).map(|k| self.ccw_gap((k + 1) % n, k)).collect();
        winds(&cw) && cw.iter().all(|&g| g < PI)
    }

    /// True when the point lies strictly inside the triangle of the three
    /// projections, which depends only on the ray directions.
    pub fn triangle_contains_point(&self, i: usize, j: usize, k: usize) -> bool {
        let s = [
            self.signed_sine(i, j),
            self.signed_sine(j, k),
            self.signed_sine(k, i),
        ];
        s.iter().all(|&x| x > 0.0) || s.iter().all(|&x| x < 0.0)
    }

    /// Four-ray hypothesis of the dynamic plasticity equations: the point is
    /// inside triangles 123 and 124 and outside triangle 134.
    pub fn satisfies_four_ray_hypothesis(&self) -> bool {
        self.len() == 4
            && self.triangle_contains_point(0, 1, 2)
            && self.triangle_contains_point(0, 1, 3)
            && !self.triangle_contains_point(0, 2, 3)
    }

    /// Cyclic rotation `r` such that `self.relabel(&r)` satisfies the
    /// four-ray hypothesis, if one exists.
    pub fn four_ray_rotation(&self) -> Option<[usize; 4]> {
        if self.len() != 4 || !self.is_cyclic() {
            return None;
        }
        (0..4)
            .map(|s| [s, (s + 1) % 4, (s + 2) % 4, (s + 3) % 4])
            .find(|r| self.relabel(r).satisfies_four_ray_hypothesis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps_must_close() {
        assert!(SectorAngles::from_sector_gaps(&[1.0, 1.0, 1.0, 1.0]).is_err());
        let q = PI / 2.0;
        let s = SectorAngles::from_sector_gaps(&[q, q, q, q]).unwrap();
        assert!((s.angle(0, 1) - q).abs() < 1e-15);
        assert!(s.is_cyclic());
    }

    #[test]
    fn coincident_rays_rejected() {
        assert!(SectorAngles::from_directions(&[0.0, 1.0, TAU, 4.0]).is_err());
        assert!(SectorAngles::from_directions(&[0.0, 1.0, PI, 4.0]).is_ok());
    }

    #[test]
    fn rotation_found_for_generic_fan() {
        let s = SectorAngles::from_sector_gaps(&[0.5, 1.4, 2.3, TAU - 4.2]).unwrap();
        let r = s.four_ray_rotation().unwrap();
        assert!(s.relabel(&r).satisfies_four_ray_hypothesis());
        // exactly one rotation works
        let hits = (0..4)
            .filter(|&k| {
                s.relabel(&[k, (k + 1) % 4, (k + 2) % 4, (k + 3) % 4])
                    .satisfies_four_ray_hypothesis()
            })
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn clockwise_roles_are_cyclic() {
        let s = SectorAngles::from_directions(&[0.0, -1.0, -2.5, -4.0]).unwrap();
        assert!(s.is_cyclic());
        let t = SectorAngles::from_directions(&[0.0, 2.5, 1.0, 4.0]).unwrap();
        assert!(!t.is_cyclic());
    }
}
