//! Brute-force reference answers: a grid search refined by Nelder–Mead, and
//! finite-difference derivatives of the objective.
//!
//! Nothing here shares code with the solver beyond the objective itself.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geom::{Circle, DistanceMode, Point2};

pub const DEFAULT_GRID_CELLS: usize = 400;
pub const DEFAULT_REFINE_ITERS: usize = 200;
pub const MIN_GRID_CELLS: usize = 100;

const MIN_STEP: f64 = 1e-8;
const MAX_STEP: f64 = 1e-4;

/// Objective with disk interiors excluded in curve mode.
fn masked_objective(config: &Configuration, p: Point2) -> f64 {
    if config.mode() == DistanceMode::ToCurve && config.disk_containing(p).is_some() {
        return f64::INFINITY;
    }
    config.objective(p)
}

/// Minimizes the objective over the bounding box of the centers inflated by
/// the largest radius. `grid_cells` is clamped to at least 100 per axis.
pub fn oracle_minimize(config: &Configuration, grid_cells: usize, refine_iters: usize) -> Point2 {
    let cells = grid_cells.max(MIN_GRID_CELLS);
    let rmax = config
        .circles()
        .iter()
        .fold(0.0, |m: f64, c| m.max(c.radius));
    let centers = config.centers();
    let (mut lo, mut hi) = (centers[0], centers[0]);
    for c in &centers {
        lo = Point2::new(lo.x.min(c.x), lo.y.min(c.y));
        hi = Point2::new(hi.x.max(c.x), hi.y.max(c.y));
    }
    lo = lo - Point2::new(rmax, rmax);
    hi += Point2::new(rmax, rmax);
    let hx = (hi.x - lo.x) / cells as f64;
    let hy = (hi.y - lo.y) / cells as f64;

    let mut best = (f64::INFINITY, lo);
    for i in 0..cells {
        for j in 0..cells {
            let p = Point2::new(lo.x + (i as f64 + 0.5) * hx, lo.y + (j as f64 + 0.5) * hy);
            let f = masked_objective(config, p);
            if f < best.0 {
                best = (f, p);
            }
        }
    }
    nelder_mead(
        |p| masked_objective(config, p),
        best.1,
        hx.max(hy),
        refine_iters,
    )
}

/// Two-dimensional Nelder–Mead with the standard coefficients.
fn nelder_mead(f: impl Fn(Point2) -> f64, start: Point2, size: f64, iters: usize) -> Point2 {
    let mut s = [
        (f(start), start),
        {
            let p = start + Point2::new(size, 0.0);
            (f(p), p)
        },
        {
            let p = start + Point2::new(0.0, size);
            (f(p), p)
        },
    ];
    for _ in 0..iters {
        s.sort_by(|a, b| a.0.total_cmp(&b.0));
        let centroid = s[0].1.midpoint(s[1].1);
        let worst = s[2];
        let reflect = centroid + (centroid - worst.1);
        let fr = f(reflect);
        if fr < s[0].0 {
            let expand = centroid + (centroid - worst.1) * 2.0;
            let fe = f(expand);
            s[2] = if fe < fr { (fe, expand) } else { (fr, reflect) };
        } else if fr < s[1].0 {
            s[2] = (fr, reflect);
        } else {
            let contract = if fr < worst.0 {
                centroid + (reflect - centroid) * 0.5
            } else {
                centroid + (worst.1 - centroid) * 0.5
            };
            let fc = f(contract);
            if fc < worst.0.min(fr) {
                s[2] = (fc, contract);
            } else {
                let b = s[0].1;
                for v in s.iter_mut().skip(1) {
                    let p = b + (v.1 - b) * 0.5;
                    *v = (f(p), p);
                }
            }
        }
    }
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    s[0].1
}

fn check_step(h: f64) -> Result<()> {
    if h.is_nan() || h < MIN_STEP {
        return Err(Error::StepTooSmall(h));
    }
    if h > MAX_STEP {
        return Err(Error::StepTooLarge(h));
    }
    Ok(())
}

/// Central-difference gradient of the objective at `p`, which must lie
/// outside every disk.
pub fn finite_difference_gradient(config: &Configuration, p: Point2, h: f64) -> Result<Point2> {
    check_step(h)?;
    if let Some(i) = config.disk_containing(p) {
        return Err(Error::PreconditionViolated(alloc::format!(
            "point lies inside disk {}",
            i + 1
        )));
    }
    let f = |q: Point2| config.objective(q);
    let dx = (f(p + Point2::new(h, 0.0)) - f(p - Point2::new(h, 0.0))) / (2.0 * h);
    let dy = (f(p + Point2::new(0.0, h)) - f(p - Point2::new(0.0, h))) / (2.0 * h);
    Ok(Point2::new(dx, dy))
}

/// Central difference of `l(p) = |p - A| - r` along the unit direction `v`.
pub fn distance_directional_derivative(
    circle: &Circle,
    p: Point2,
    v: Point2,
    h: f64,
) -> Result<f64> {
    check_step(h)?;
    let l = |q: Point2| q.distance(circle.center) - circle.radius;
    Ok((l(p + v * h) - l(p - v * h)) / (2.0 * h))
}

/// Cosine of the angle between `-v` and the segment from `p` to the nearest
/// point of the circle: the predicted rate of change of `l` along `v`.
pub fn first_variation_cosine(circle: &Circle, p: Point2, v: Point2) -> Result<f64> {
    let projection = crate::geom::project_onto_circle(p, circle)?;
    let to_proj = projection - p;
    let len = to_proj.norm() * v.norm();
    if len == 0.0 {
        return Err(Error::DegenerateAngle);
    }
    Ok((-v).dot(to_proj) / len)
}

/// `f(midpoint) - (f(p) + f(q)) / 2` when the segment `pq` avoids every disk
/// interior, `None` otherwise. Convexity means the value is never positive.
pub fn midpoint_convexity_gap(config: &Configuration, p: Point2, q: Point2) -> Option<f64> {
    let clear = config
        .circles()
        .iter()
        .all(|c| segment_distance(c.center, p, q) >= c.radius);
    clear.then(|| {
        config.objective(p.midpoint(q)) - 0.5 * (config.objective(p) + config.objective(q))
    })
}

fn segment_distance(x: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((x - a).dot(ab) / len2).clamp(0.0, 1.0)
    };
    x.distance(a + ab * t)
}
