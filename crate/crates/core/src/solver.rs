//! Forward problem: the weighted F-T point of a set of circles.
//!
//! In the floating case the minimizer of `Σ w_i (|P - A_i| - r_i)` over the
//! region outside the disks coincides with the weighted F-T point of the
//! centers, because the radii only shift the objective by a constant there.
//! The point is found with Weiszfeld's fixed-point iteration on the centers
//! and then certified against the circles.

use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geom::{
    distance_to_circle, project_onto_circle, sector_angles, DistanceMode, Point2, COINCIDENCE_EPS,
};

pub const DEFAULT_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// The minimizer lies in the open region between the circles.
    Floating,
    /// One weight dominates and the minimizer collapses onto this center.
    AbsorbedAt(usize),
}

impl CaseTag {
    pub fn is_floating(self) -> bool {
        matches!(self, CaseTag::Floating)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub max_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

/// The F-T point together with its geometric certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub point: Point2,
    /// `A_i'`, the projections of the point onto each circle. In the absorbed
    /// case the absorbing circle's entry is its own center, whose projection
    /// is not unique.
    pub projections: Vec<Point2>,
    /// `d(P, γ_i)` under the configuration's distance mode.
    pub distances: Vec<f64>,
    /// Unit vectors from the point toward each projection (floating case only).
    pub rays: Vec<Point2>,
    /// Circle indices in counter-clockwise order around the point.
    pub cyclic_order: Vec<usize>,
    /// `sector_angles[k]` is the angle from ray `cyclic_order[k]` to the next
    /// one counter-clockwise. Empty in the absorbed case.
    pub sector_angles: Vec<f64>,
    pub objective: f64,
    pub case: CaseTag,
    /// `|Σ w_i u(P, A_i')|`; in the absorbed case the norm of the resultant
    /// of the other weights at the absorbing center.
    pub equilibrium_residual: f64,
    pub iterations: usize,
}

impl SolveResult {
    /// Unsigned angle `∠A_i' P A_j'`.
    pub fn angle_between(&self, i: usize, j: usize) -> Result<f64> {
        if !self.case.is_floating() {
            return Err(absorbed_error(self.case));
        }
        Ok(crate::geom::angle_between_units(self.rays[i], self.rays[j]))
    }
}

fn absorbed_error(case: CaseTag) -> Error {
    match case {
        CaseTag::AbsorbedAt(m) => Error::CalledOnAbsorbed(m),
        CaseTag::Floating => unreachable!(),
    }
}

/// `Σ_{j≠i} w_j u(A_i, A_j)`: the pull of the other weights felt at center `i`.
pub fn resultant_at(config: &Configuration, i: usize) -> Point2 {
    let centers = config.centers();
    let a = centers[i];
    centers
        .iter()
        .zip(config.weights())
        .enumerate()
        .filter(|(j, _)| *j != i)
        .fold(Point2::ORIGIN, |acc, (_, (&b, &w))| {
            // disjoint circles guarantee distinct centers
            acc + (b - a).unit().unwrap_or_default() * w
        })
}

/// Floating if every center is out-pulled by the others, otherwise absorbed
/// at the first center whose own weight wins.
pub fn classify_case(config: &Configuration) -> CaseTag {
    for (i, &w) in config.weights().iter().enumerate() {
        if resultant_at(config, i).norm() <= w {
            return CaseTag::AbsorbedAt(i);
        }
    }
    CaseTag::Floating
}

/// `|Σ w_i u(p, A_i)|`.
pub fn equilibrium_residual(config: &Configuration, p: Point2) -> f64 {
    config
        .circles()
        .iter()
        .zip(config.weights())
        .fold(Point2::ORIGIN, |acc, (c, &w)| {
            acc + (c.center - p).unit().unwrap_or_default() * w
        })
        .norm()
}

pub fn solve(config: &Configuration) -> Result<SolveResult> {
    solve_with(config, &SolverOptions::default())
}

pub fn solve_with(config: &Configuration, opts: &SolverOptions) -> Result<SolveResult> {
    let start = weighted_centroid(config);
    solve_from(config, start, opts)
}

/// Same as [`solve`] but starts the iteration at `start`.
pub fn solve_from(
    config: &Configuration,
    start: Point2,
    opts: &SolverOptions,
) -> Result<SolveResult> {
    match classify_case(config) {
        CaseTag::AbsorbedAt(m) => Ok(absorbed_result(config, m)),
        CaseTag::Floating => {
            let (point, iterations) = weiszfeld(config, start, opts.max_iters)?;
            if let Some(i) = config.disk_containing(point) {
                return Err(Error::SolutionInsideDisk(i));
            }
            floating_result(config, point, iterations)
        }
    }
}

fn weighted_centroid(config: &Configuration) -> Point2 {
    let total = config.total_weight();
    config
        .circles()
        .iter()
        .zip(config.weights())
        .fold(Point2::ORIGIN, |acc, (c, &w)| acc + c.center * (w / total))
}

fn weiszfeld(config: &Configuration, start: Point2, max_iters: usize) -> Result<(Point2, usize)> {
    let centers = config.centers();
    let weights = config.weights();
    let tol = config.tolerance();
    let mut p = start;

    for iter in 0..max_iters {
        if let Some(i) = centers
            .iter()
            .position(|a| a.distance(p) <= COINCIDENCE_EPS)
        {
            // Iterate sits on a center: either it is optimal there or we move
            // off along the steepest descent direction.
            let pull = resultant_at(config, i);
            let strength = pull.norm();
            if strength <= weights[i] {
                return Ok((centers[i], iter));
            }
            let curvature: f64 = centers
                .iter()
                .zip(weights)
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (b, w))| w / b.distance(centers[i]))
                .sum();
            p = centers[i] + pull * ((strength - weights[i]) / (strength * curvature));
            continue;
        }

        let mut num = Point2::ORIGIN;
        let mut den = 0.0;
        for (a, &w) in centers.iter().zip(weights) {
            let k = w / a.distance(p);
            num += *a * k;
            den += k;
        }
        let next = num * (1.0 / den);
        let step = next.distance(p);
        p = next;
        if step < tol && equilibrium_residual(config, p) < 10.0 * tol {
            return Ok((p, iter + 1));
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iters,
        residual: equilibrium_residual(config, p),
    })
}

fn floating_result(
    config: &Configuration,
    point: Point2,
    iterations: usize,
) -> Result<SolveResult> {
    let circles = config.circles();
    let projections = circles
        .iter()
        .map(|c| project_onto_circle(point, c))
        .collect::<Result<Vec<_>>>()?;
    let distances: Vec<f64> = circles
        .iter()
        .map(|c| distance_to_circle(point, c, config.mode()))
        .collect();
    // Directions are taken toward the centers: identical to the projection
    // directions outside the disks, and still defined on a circle boundary.
    let rays = circles
        .iter()
        .map(|c| (c.center - point).unit().ok_or(Error::DegenerateProjection))
        .collect::<Result<Vec<_>>>()?;
    let targets: Vec<Point2> = rays.iter().map(|&u| point + u).collect();
    let (cyclic_order, sectors) = sector_angles(point, &targets)?;
    let objective = distances
        .iter()
        .zip(config.weights())
        .map(|(d, w)| d * w)
        .sum();
    Ok(SolveResult {
        point,
        projections,
        distances,
        rays,
        cyclic_order,
        sector_angles: sectors,
        objective,
        case: CaseTag::Floating,
        equilibrium_residual: equilibrium_residual(config, point),
        iterations,
    })
}

fn absorbed_result(config: &Configuration, m: usize) -> SolveResult {
    let circles = config.circles();
    let point = circles[m].center;
    let projections = circles
        .iter()
        .map(|c| project_onto_circle(point, c).unwrap_or(point))
        .collect();
    let distances: Vec<f64> = circles
        .iter()
        .enumerate()
        .map(|(i, c)| match (i == m, config.mode()) {
            (true, DistanceMode::ToCurve) => c.radius,
            (true, DistanceMode::ToSet) => 0.0,
            (false, mode) => distance_to_circle(point, c, mode),
        })
        .collect();
    let objective = distances
        .iter()
        .zip(config.weights())
        .map(|(d, w)| d * w)
        .sum();
    SolveResult {
        point,
        projections,
        distances,
        rays: Vec::new(),
        cyclic_order: Vec::new(),
        sector_angles: Vec::new(),
        objective,
        case: CaseTag::AbsorbedAt(m),
        equilibrium_residual: resultant_at(config, m).norm(),
        iterations: 0,
    }
}

/// Weighted cosine residuals `w_i + Σ_{j≠i} w_j cos∠A_i'PA_j'`, one per circle.
/// They all vanish at the floating F-T point.
pub fn certificate_residuals(result: &SolveResult, config: &Configuration) -> Result<Vec<f64>> {
    if !result.case.is_floating() {
        return Err(absorbed_error(result.case));
    }
    let w = config.weights();
    let u = &result.rays;
    Ok((0..u.len())
        .map(|i| {
            w[i] + (0..u.len())
                .filter(|&j| j != i)
                .map(|j| w[j] * u[i].dot(u[j]))
                .sum::<f64>()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Circle;
    use crate::math::{sqrt, PI};
    use alloc::vec;

    fn equilateral(r: f64, w: [f64; 3]) -> Configuration {
        let s3 = sqrt(3.0);
        let circles = vec![
            Circle::new(Point2::new(0.0, 1.0 / s3), r),
            Circle::new(Point2::new(-0.5, -0.5 / s3), r),
            Circle::new(Point2::new(0.5, -0.5 / s3), r),
        ];
        Configuration::new(circles, w.to_vec()).unwrap()
    }

    #[test]
    fn equilateral_centroid() {
        let config = equilateral(0.1, [1.0; 3]);
        let res = solve(&config).unwrap();
        assert!(res.point.norm() < 1e-9);
        let expected = 3.0 * (1.0 / sqrt(3.0) - 0.1);
        assert!((res.objective - expected).abs() < 1e-9);
        assert!((res.objective - 1.43205).abs() < 1e-5);
        for s in &res.sector_angles {
            assert!((s - 2.0 * PI / 3.0).abs() < 1e-9);
        }
        for r in certificate_residuals(&res, &config).unwrap() {
            assert!(r.abs() < 1e-9);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_case(&equilateral(0.1, [1.0; 3])),
            CaseTag::Floating
        );
        assert_eq!(
            classify_case(&equilateral(0.1, [10.0, 1.0, 1.0])),
            CaseTag::AbsorbedAt(0)
        );
        let right = Configuration::new(
            vec![
                Circle::new(Point2::new(0.0, 0.0), 0.1),
                Circle::new(Point2::new(1.0, 0.0), 0.1),
                Circle::new(Point2::new(0.0, 1.0), 0.1),
            ],
            vec![1.0; 3],
        )
        .unwrap();
        let at0 = resultant_at(&right, 0).norm();
        let at1 = resultant_at(&right, 1).norm();
        assert!((at0 - sqrt(2.0)).abs() < 1e-12);
        assert!(at1 > 1.0);
        assert_eq!(classify_case(&right), CaseTag::Floating);
    }

    #[test]
    fn absorbed_result_sits_on_center() {
        let config = equilateral(0.1, [10.0, 1.0, 1.0]);
        let res = solve(&config).unwrap();
        assert_eq!(res.case, CaseTag::AbsorbedAt(0));
        assert_eq!(res.point, config.circles()[0].center);
        assert_eq!(res.distances[0], 0.1);
        assert!((res.distances[1] - 0.9).abs() < 1e-12);
        assert!(res.sector_angles.is_empty());
        assert_eq!(
            certificate_residuals(&res, &config),
            Err(Error::CalledOnAbsorbed(0))
        );

        let set = config.clone().with_mode(DistanceMode::ToSet);
        let res = solve(&set).unwrap();
        assert_eq!(res.distances[0], 0.0);
    }

    #[test]
    fn big_disk_swallows_the_point() {
        let s3 = sqrt(3.0);
        let circles = vec![
            Circle::new(Point2::new(0.0, 1.0 / s3), 0.4),
            Circle::new(Point2::new(-0.5, -0.5 / s3), 0.1),
            Circle::new(Point2::new(0.5, -0.5 / s3), 0.1),
        ];
        let config = Configuration::new(circles, vec![1.0; 3]).unwrap();
        // centroid sits at distance 1/√3 ≈ 0.577 > 0.4, so this one is fine
        assert!(solve(&config).is_ok());

        let circles = vec![
            Circle::new(Point2::new(0.0, 0.0), 0.3),
            Circle::new(Point2::new(2.0, 0.0), 0.1),
            Circle::new(Point2::new(1.0, 1.0), 0.6),
        ];
        let config = Configuration::new(circles, vec![1.0; 3]).unwrap();
        assert_eq!(solve(&config).unwrap_err(), Error::SolutionInsideDisk(2));
    }

    #[test]
    fn starting_on_a_center_steps_off() {
        let config = equilateral(0.1, [1.0; 3]);
        let start = config.circles()[1].center;
        let res = solve_from(&config, start, &SolverOptions::default()).unwrap();
        assert!(res.point.norm() < 1e-9);
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let config = equilateral(0.1, [1.0, 1.3, 0.8]);
        let err = solve_with(&config, &SolverOptions { max_iters: 2 }).unwrap_err();
        assert_eq!(err.code(), "non_convergence");
    }
}
