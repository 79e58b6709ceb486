//! Growth of five circles around a fixed F-T point.
//!
//! The centers and the point stay put; weights move along the plasticity
//! family and every radius is the same multiple of its weight. Two regimes:
//!
//! * Type A: branches 4 and 5 grow together inside the sector from ray 3 back
//!   to ray 1 (cyclic order 1, 2, 3, 4, 5).
//! * Type B: branch 4 (between rays 3 and 1) and branch 5 (between rays 1
//!   and 2) grow in alternate steps (cyclic order 1, 5, 2, 3, 4). A branch-5
//!   step merges rays 3 and 4 into one composite ray and works on the reduced
//!   quadrilateral 2, 34, 1, 5.
//!
//! A trace stops when circles touch, the point falls inside a disk, a weight
//! stops being positive, or the schedule runs out.

use alloc::format;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geom::{Circle, Point2};
use crate::math;
use crate::plasticity::{
    corollary_coefficients, PlasticityCoefficients, SectorAngles, TriangleRatios,
};
use crate::solver::{self, SolveResult};

/// Weight changes at or below this fraction of the total count as unchanged.
const TREND_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionType {
    TypeA,
    TypeB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increased,
    Decreased,
    Unchanged,
}

impl Trend {
    fn between(before: f64, after: f64, total: f64) -> Self {
        let d = after - before;
        if math::abs(d) <= TREND_TOLERANCE * math::abs(total) {
            Trend::Unchanged
        } else if d > 0.0 {
            Trend::Increased
        } else {
            Trend::Decreased
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Trend::Increased => '+',
            Trend::Decreased => '-',
            Trend::Unchanged => '=',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActiveBranches {
    /// The starting state.
    Initial,
    /// Type A: branches 4 and 5 by the given amounts.
    Both {
        dw4: f64,
        dw5: f64,
    },
    Branch4(f64),
    Branch5(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionStep {
    pub step: usize,
    pub weights: [f64; 5],
    pub radii: [f64; 5],
    pub active: ActiveBranches,
    /// Change of each weight relative to the previous step.
    pub pattern: [Trend; 5],
    /// `|w3 u3 + w4 u4|` for Type B traces.
    pub composite_weight: Option<f64>,
    /// Whether `pattern` agrees with the expected pattern for this kind of
    /// step. Steps that grow nothing are trivially consistent.
    pub pattern_matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    ScheduleExhausted,
    /// Circles `i` and `j` would touch or overlap at `step`.
    Overlap {
        step: usize,
        i: usize,
        j: usize,
    },
    PointInsideDisk {
        step: usize,
        index: usize,
    },
    NonPositiveWeight {
        step: usize,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    pub type_tag: EvolutionType,
    pub centers: [Point2; 5],
    pub point: Point2,
    pub scale: f64,
    pub total: f64,
    pub steps: Vec<EvolutionStep>,
    pub termination: Termination,
}

impl EvolutionTrace {
    /// Largest deviation of a step's weight sum from the trace total.
    pub fn sum_drift(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| math::abs(s.weights.iter().sum::<f64>() - self.total))
            .fold(0.0, f64::max)
    }

    /// Steps (after the initial one) whose pattern disagrees with the
    /// expected pattern.
    pub fn pattern_violations(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| !s.pattern_matches)
            .map(|s| s.step)
            .collect()
    }

    /// Length of the longest run of consecutive growth steps that match.
    pub fn longest_matching_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for s in self.steps.iter().skip(1) {
            if s.pattern_matches {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }

    /// Configuration realizing the given step.
    pub fn configuration_at(&self, step: usize) -> Result<Configuration> {
        let s = &self.steps[step];
        let circles = (0..5)
            .map(|i| Circle::new(self.centers[i], s.radii[i]))
            .collect();
        Configuration::new(circles, s.weights.to_vec())
    }

    /// Re-solves the step's configuration and recovers its weights from the
    /// new point's rays with `w4, w5` and the total pinned.
    pub fn self_consistency(&self, step: usize) -> Result<StepConsistency> {
        let config = self.configuration_at(step)?;
        let result = solver::solve(&config)?;
        let labels = [0, 1, 2, 3, 4];
        let fan = SectorAngles::from_solution_labeled(&result, &labels)?;
        let coeffs = corollary_coefficients(&TriangleRatios::from_angles(&fan)?, 5)?;
        let w = &self.steps[step].weights;
        let recovered = coeffs.evaluate(&w[3..], self.total)?;
        let weight_error = (0..5)
            .map(|i| math::abs(recovered[i] - w[i]))
            .fold(0.0, f64::max);
        Ok(StepConsistency {
            point_shift: result.point.distance(self.point),
            weight_error,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConsistency {
    pub point_shift: f64,
    pub weight_error: f64,
}

/// Resultant of two weighted rays: `(|w3 u3 + w4 u4|, direction)`. The
/// direction is `None` when the two cancel.
pub fn compose_rays(w3: f64, u3: Point2, w4: f64, u4: Point2) -> (f64, Option<Point2>) {
    let v = u3 * w3 + u4 * w4;
    (v.norm(), v.unit())
}

/// Radius per unit weight making the largest initial radius a tenth of the
/// smallest center distance.
pub fn default_scale(config: &Configuration) -> f64 {
    let c = config.centers();
    let mut dmin = f64::INFINITY;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            dmin = dmin.min(c[i].distance(c[j]));
        }
    }
    let wmax = config.weights().iter().fold(0.0, |m: f64, &w| m.max(w));
    0.1 * dmin / wmax
}

/// `δ · 0.9^k` for `k = 0..steps` with `δ = 0.01 Σw`.
pub fn default_schedule(config: &Configuration, steps: usize) -> Vec<f64> {
    let delta = 0.01 * config.total_weight();
    let mut d = delta;
    (0..steps)
        .map(|_| {
            let x = d;
            d *= 0.9;
            x
        })
        .collect()
}

/// Type A: per step, `w4` and `w5` grow by the given amounts and `w1..w3`
/// follow from the affine plasticity form with the total held fixed.
pub fn evolve_type_a(
    config: &Configuration,
    increments: &[(f64, f64)],
    scale: Option<f64>,
) -> Result<EvolutionTrace> {
    let setup = Setup::new(config, EvolutionType::TypeA, scale)?;
    let coeffs = setup.coefficients()?;
    let total = setup.total;
    let w0 = config.weights();
    let mut free = [w0[3], w0[4]];
    let start = to5(&coeffs.evaluate(&free, total)?);
    let mut trace = setup.into_trace(start)?;
    for &(d4, d5) in increments {
        free[0] += d4;
        free[1] += d5;
        let w = to5(&coeffs.evaluate(&free, total)?);
        let expected = if d4 > 0.0 && d5 > 0.0 {
            Some([
                Trend::Decreased,
                Trend::Increased,
                Trend::Decreased,
                Trend::Increased,
                Trend::Increased,
            ])
        } else {
            None
        };
        if !trace.push(w, ActiveBranches::Both { dw4: d4, dw5: d5 }, None, expected) {
            return Ok(trace);
        }
    }
    trace.termination = Termination::ScheduleExhausted;
    Ok(trace)
}

/// Type B: even steps (counting from zero) grow branch 4, odd steps grow
/// branch 5, by the scheduled amounts.
pub fn evolve_type_b(
    config: &Configuration,
    schedule: &[f64],
    scale: Option<f64>,
) -> Result<EvolutionTrace> {
    let setup = Setup::new(config, EvolutionType::TypeB, scale)?;
    let coeffs = setup.coefficients()?;
    let total = setup.total;
    let fan = setup.fan.clone();
    let w0 = config.weights();
    let mut w = to5(&coeffs.evaluate(&[w0[3], w0[4]], total)?);
    let composite = |w: &[f64; 5]| compose_rays(w[2], fan.unit(2), w[3], fan.unit(3)).0;
    let c0 = composite(&w);
    let mut trace = setup.into_trace(w)?;
    trace.steps[0].composite_weight = Some(c0);
    for (k, &delta) in schedule.iter().enumerate() {
        let (next, active, expected) = if k % 2 == 0 {
            let next = to5(&coeffs.evaluate(&[w[3] + delta, w[4]], total)?);
            let exp = [
                Trend::Decreased,
                Trend::Increased,
                Trend::Decreased,
                Trend::Increased,
                Trend::Unchanged,
            ];
            (next, ActiveBranches::Branch4(delta), exp)
        } else {
            let next = grow_branch_5(&fan, &w, delta, total)?;
            let exp = [
                Trend::Decreased,
                Trend::Decreased,
                Trend::Increased,
                Trend::Increased,
                Trend::Increased,
            ];
            (next, ActiveBranches::Branch5(delta), exp)
        };
        let expected = (delta > 0.0).then_some(expected);
        if !trace.push(next, active, Some(composite(&next)), expected) {
            return Ok(trace);
        }
        w = next;
    }
    trace.termination = Termination::ScheduleExhausted;
    Ok(trace)
}

/// One branch-5 step on the reduced quadrilateral with roles
/// (ray 2, composite ray 34, ray 1, ray 5).
///
/// The quadrilateral family is `r = a w5 + S_q t` with `Σ t = 1`, but the
/// five-circle total counts the composite weight as `w3 + w4 = k w34`, so
/// `S_q` is chosen to keep `w1 + w2 + k w34 + w5` fixed.
fn grow_branch_5(fan: &SectorAngles, w: &[f64; 5], delta: f64, total: f64) -> Result<[f64; 5]> {
    let (w34, dir) = compose_rays(w[2], fan.unit(2), w[3], fan.unit(3));
    let u34 = dir.ok_or_else(|| Error::PreconditionViolated("rays 3 and 4 cancel".into()))?;
    let k = (w[2] + w[3]) / w34;
    let quad = SectorAngles::from_directions(&[
        fan.unit(1).polar_angle(),
        u34.polar_angle(),
        fan.unit(0).polar_angle(),
        fan.unit(4).polar_angle(),
    ])?;
    let qc = corollary_coefficients(&TriangleRatios::from_angles(&quad)?, 4)?;
    let c = [1.0, k, 1.0];
    let a: [f64; 3] = [qc.get(1, 4), qc.get(2, 4), qc.get(3, 4)];
    let t: [f64; 3] = [qc.get(1, 5), qc.get(2, 5), qc.get(3, 5)];
    let ca: f64 = (0..3).map(|i| c[i] * a[i]).sum();
    let ct: f64 = (0..3).map(|i| c[i] * t[i]).sum();
    let w5 = w[4] + delta;
    let sq = (total - w5 * (1.0 + ca)) / ct;
    let r: [f64; 3] = core::array::from_fn(|i| a[i] * w5 + sq * t[i]);
    let ratio = r[1] / w34;
    Ok([r[2], r[0], w[2] * ratio, w[3] * ratio, w5])
}

fn to5(v: &[f64]) -> [f64; 5] {
    [v[0], v[1], v[2], v[3], v[4]]
}

fn is_convex_polygon(pts: &[Point2]) -> bool {
    let n = pts.len();
    let turns: Vec<f64> = (0..n)
        .map(|k| {
            let (a, b, c) = (pts[k], pts[(k + 1) % n], pts[(k + 2) % n]);
            (b - a).cross(c - b)
        })
        .collect();
    turns.iter().all(|&t| t > 0.0) || turns.iter().all(|&t| t < 0.0)
}

struct Setup {
    type_tag: EvolutionType,
    centers: [Point2; 5],
    result: SolveResult,
    fan: SectorAngles,
    scale: f64,
    total: f64,
}

impl Setup {
    fn new(config: &Configuration, type_tag: EvolutionType, scale: Option<f64>) -> Result<Self> {
        if config.len() != 5 {
            return Err(Error::PreconditionViolated(format!(
                "evolution needs five circles, got {}",
                config.len()
            )));
        }
        let scale = scale.unwrap_or_else(|| default_scale(config));
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::PreconditionViolated(format!(
                "scale must be positive, got {scale}"
            )));
        }
        let result = solver::solve(config)?;
        if !result.case.is_floating() {
            return Err(Error::PreconditionViolated(
                "the F-T point must be floating".into(),
            ));
        }
        let fan = SectorAngles::from_solution_labeled(&result, &[0, 1, 2, 3, 4])?;
        let order: [usize; 5] = match type_tag {
            EvolutionType::TypeA => [0, 1, 2, 3, 4],
            EvolutionType::TypeB => [0, 4, 1, 2, 3],
        };
        if !fan.relabel(&order).is_cyclic() {
            let expected = match type_tag {
                EvolutionType::TypeA => "1, 2, 3, 4, 5",
                EvolutionType::TypeB => "1, 5, 2, 3, 4",
            };
            return Err(Error::PreconditionViolated(format!(
                "rays must run around the point in the order {expected}"
            )));
        }
        let projections: Vec<Point2> = order.iter().map(|&i| result.projections[i]).collect();
        if !is_convex_polygon(&projections) {
            return Err(Error::PreconditionViolated(
                "projections are not in convex position".into(),
            ));
        }
        let c = config.centers();
        Ok(Self {
            type_tag,
            centers: [c[0], c[1], c[2], c[3], c[4]],
            total: config.total_weight(),
            result,
            fan,
            scale,
        })
    }

    fn coefficients(&self) -> Result<PlasticityCoefficients> {
        corollary_coefficients(&TriangleRatios::from_angles(&self.fan)?, 5)
    }

    fn into_trace(self, start: [f64; 5]) -> Result<EvolutionTrace> {
        let mut trace = EvolutionTrace {
            type_tag: self.type_tag,
            centers: self.centers,
            point: self.result.point,
            scale: self.scale,
            total: self.total,
            steps: Vec::new(),
            termination: Termination::ScheduleExhausted,
        };
        if let Some(t) = trace.validate(&start, 0) {
            return Err(Error::PreconditionViolated(format!(
                "initial state is already invalid: {t:?}"
            )));
        }
        trace.steps.push(EvolutionStep {
            step: 0,
            weights: start,
            radii: start.map(|w| w * self.scale),
            active: ActiveBranches::Initial,
            pattern: [Trend::Unchanged; 5],
            composite_weight: None,
            pattern_matches: true,
        });
        Ok(trace)
    }
}

impl EvolutionTrace {
    fn validate(&self, w: &[f64; 5], step: usize) -> Option<Termination> {
        if let Some(index) = w.iter().position(|&x| x.is_nan() || x <= 0.0) {
            return Some(Termination::NonPositiveWeight { step, index });
        }
        let circles: Vec<Circle> = (0..5)
            .map(|i| Circle::new(self.centers[i], w[i] * self.scale))
            .collect();
        if let Some(index) = circles.iter().position(|c| c.contains_strictly(self.point)) {
            return Some(Termination::PointInsideDisk { step, index });
        }
        for i in 0..5 {
            for j in i + 1..5 {
                if !circles[i].is_disjoint_from(&circles[j]) {
                    return Some(Termination::Overlap { step, i, j });
                }
            }
        }
        None
    }

    /// Appends a step, or records the termination and returns `false`.
    fn push(
        &mut self,
        w: [f64; 5],
        active: ActiveBranches,
        composite_weight: Option<f64>,
        expected: Option<[Trend; 5]>,
    ) -> bool {
        let step = self.steps.len();
        if let Some(t) = self.validate(&w, step) {
            self.termination = t;
            return false;
        }
        let prev = self.steps[step - 1].weights;
        let pattern: [Trend; 5] =
            core::array::from_fn(|i| Trend::between(prev[i], w[i], self.total));
        self.steps.push(EvolutionStep {
            step,
            weights: w,
            radii: w.map(|x| x * self.scale),
            active,
            pattern,
            composite_weight,
            pattern_matches: expected.is_none_or(|e| e == pattern),
        });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, sin, sqrt, PI};
    use alloc::vec;

    /// Regular pentagon of unit circumradius; `labels[k]` is the circle at
    /// the k-th vertex counter-clockwise.
    fn pentagon(labels: [usize; 5]) -> Configuration {
        let mut centers = [Point2::ORIGIN; 5];
        for (k, &l) in labels.iter().enumerate() {
            let t = PI / 2.0 + 2.0 * PI * k as f64 / 5.0;
            centers[l] = Point2::new(cos(t), sin(t));
        }
        let circles = centers.iter().map(|&c| Circle::new(c, 0.05)).collect();
        Configuration::new(circles, vec![1.0; 5]).unwrap()
    }

    #[test]
    fn zero_increments_repeat_the_state() {
        let cfg = pentagon([0, 1, 2, 3, 4]);
        let trace = evolve_type_a(&cfg, &[(0.0, 0.0); 4], None).unwrap();
        assert_eq!(trace.steps.len(), 5);
        for s in &trace.steps[1..] {
            assert_eq!(s.weights, trace.steps[0].weights);
            assert_eq!(s.pattern, [Trend::Unchanged; 5]);
        }
        assert_eq!(trace.termination, Termination::ScheduleExhausted);
    }

    #[test]
    fn type_a_pentagon_pattern() {
        let cfg = pentagon([0, 1, 2, 3, 4]);
        let sched: Vec<(f64, f64)> = default_schedule(&cfg, 12).iter().map(|&d| (d, d)).collect();
        let trace = evolve_type_a(&cfg, &sched, None).unwrap();
        assert_eq!(trace.steps.len(), 13);
        assert!(trace.pattern_violations().is_empty());
        assert!(trace.sum_drift() < 1e-10);
        for k in [1, 6, 12] {
            let c = trace.self_consistency(k).unwrap();
            assert!(c.point_shift < 1e-8 && c.weight_error < 1e-6, "{c:?}");
        }
    }

    #[test]
    fn type_b_pentagon_pattern() {
        let cfg = pentagon([0, 4, 1, 2, 3]);
        let trace = evolve_type_b(&cfg, &default_schedule(&cfg, 12), None).unwrap();
        assert_eq!(trace.steps.len(), 13);
        assert!(trace.pattern_violations().is_empty(), "{:?}", trace.steps);
        assert!(trace.sum_drift() < 1e-10);
        for k in [1, 2, 11] {
            let c = trace.self_consistency(k).unwrap();
            assert!(c.point_shift < 1e-8 && c.weight_error < 1e-6, "{c:?}");
        }
    }

    #[test]
    fn wrong_labeling_rejected() {
        let cfg = pentagon([0, 4, 1, 2, 3]);
        assert!(matches!(
            evolve_type_a(&cfg, &[(0.1, 0.1)], None),
            Err(Error::PreconditionViolated(_))
        ));
        let cfg = pentagon([0, 1, 2, 3, 4]);
        assert!(matches!(
            evolve_type_b(&cfg, &[0.1], None),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn growth_ends_at_first_touch() {
        let cfg = pentagon([0, 1, 2, 3, 4]);
        let scale = 0.5;
        let trace = evolve_type_a(&cfg, &[(0.02, 0.02); 40], Some(scale)).unwrap();
        let Termination::Overlap { step, .. } = trace.termination else {
            panic!("{:?}", trace.termination);
        };
        assert_eq!(step, trace.steps.len());
        // independent check: every recorded state is strictly disjoint, and
        // the rejected one has some pair with |A_i - A_j| <= r_i + r_j
        let touches = |w: &[f64; 5]| {
            (0..5).any(|i| {
                (i + 1..5)
                    .any(|j| trace.centers[i].distance(trace.centers[j]) <= scale * (w[i] + w[j]))
            })
        };
        assert!(trace.steps.iter().all(|s| !touches(&s.weights)));
        let coeffs = corollary_coefficients(
            &TriangleRatios::from_angles(
                &SectorAngles::from_directions(
                    &trace.centers.map(|c| (c - trace.point).polar_angle()),
                )
                .unwrap(),
            )
            .unwrap(),
            5,
        )
        .unwrap();
        let last = trace.steps.last().unwrap().weights;
        let next = coeffs
            .evaluate(&[last[3] + 0.02, last[4] + 0.02], trace.total)
            .unwrap();
        assert!(touches(&to5(&next)));
    }

    #[test]
    fn composition_degenerate_cases() {
        let (w, d) = compose_rays(3.0, Point2::new(1.0, 0.0), 1.0, Point2::new(-1.0, 0.0));
        assert!((w - 2.0).abs() < 1e-15);
        assert!((d.unwrap().x - 1.0).abs() < 1e-15);
        let (w, d) = compose_rays(1.0, Point2::new(1.0, 0.0), 1.0, Point2::new(0.0, 1.0));
        assert!((w - sqrt(2.0)).abs() < 1e-15);
        let d = d.unwrap();
        assert!((d.x - d.y).abs() < 1e-15 && d.x > 0.0);
        assert!(
            compose_rays(1.0, Point2::new(1.0, 0.0), 1.0, Point2::new(-1.0, 0.0))
                .1
                .is_none()
        );
    }
}
