//! Plane primitives: points, circles, radial projections and angles at an apex.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math;

/// Two points closer than this are treated as coincident.
pub const COINCIDENCE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at polar angle `theta`.
    pub fn from_polar(theta: f64) -> Self {
        Self::new(math::cos(theta), math::sin(theta))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; the sine of the signed angle
    /// from `self` to `other` when both are unit vectors.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// `None` for vectors shorter than [`COINCIDENCE_EPS`].
    pub fn unit(self) -> Option<Self> {
        let n = self.norm();
        (n > COINCIDENCE_EPS).then(|| self * (1.0 / n))
    }

    /// Polar angle in `[0, 2π)`.
    pub fn polar_angle(self) -> f64 {
        math::wrap_tau(math::atan2(self.y, self.x))
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn midpoint(self, other: Self) -> Self {
        Self::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, rhs: Self) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Self {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

/// Which distance from a point to a circle the objective sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMode {
    /// Distance to the curve: `| |p - A| - r |`.
    #[default]
    ToCurve,
    /// Distance to the closed disk: `max(|p - A| - r, 0)`.
    ToSet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub const fn new(center: Point2, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn is_valid(&self) -> bool {
        self.center.is_finite() && self.radius.is_finite() && self.radius > 0.0
    }

    /// True when `p` lies strictly inside the open disk.
    pub fn contains_strictly(&self, p: Point2) -> bool {
        p.distance(self.center) < self.radius
    }

    /// Disks are disjoint: `|A_i - A_j| > r_i + r_j`.
    pub fn is_disjoint_from(&self, other: &Circle) -> bool {
        self.center.distance(other.center) > self.radius + other.radius
    }
}

/// Nearest point of the circle to `p`, reached along the radius through `p`.
pub fn project_onto_circle(p: Point2, c: &Circle) -> Result<Point2> {
    let dir = (p - c.center).unit().ok_or(Error::DegenerateProjection)?;
    Ok(c.center + dir * c.radius)
}

pub fn distance_to_circle(p: Point2, c: &Circle, mode: DistanceMode) -> f64 {
    let d = p.distance(c.center) - c.radius;
    match mode {
        DistanceMode::ToCurve => math::abs(d),
        DistanceMode::ToSet => d.max(0.0),
    }
}

/// Unsigned angle `∠a apex b` in `[0, π]`.
pub fn angle_at(apex: Point2, a: Point2, b: Point2) -> Result<f64> {
    let ua = (a - apex).unit().ok_or(Error::DegenerateAngle)?;
    let ub = (b - apex).unit().ok_or(Error::DegenerateAngle)?;
    Ok(angle_between_units(ua, ub))
}

/// Unsigned angle between two unit vectors, clamped before `acos`.
pub fn angle_between_units(ua: Point2, ub: Point2) -> f64 {
    math::acos(ua.dot(ub).clamp(-1.0, 1.0))
}

/// Indices of `points` sorted counter-clockwise by polar angle around `apex`,
/// starting with the smallest polar angle in `[0, 2π)`.
pub fn cyclic_order(apex: Point2, points: &[Point2]) -> Result<Vec<usize>> {
    let mut keyed = Vec::with_capacity(points.len());
    for (i, &q) in points.iter().enumerate() {
        let d = q - apex;
        if d.norm() <= COINCIDENCE_EPS {
            return Err(Error::DegenerateAngle);
        }
        keyed.push((d.polar_angle(), i));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, i)| i).collect())
}

/// Consecutive counter-clockwise sector angles at `apex` between the rays to
/// `points`, in the order given by [`cyclic_order`]. The result sums to 2π.
pub fn sector_angles(apex: Point2, points: &[Point2]) -> Result<(Vec<usize>, Vec<f64>)> {
    let order = cyclic_order(apex, points)?;
    let polar: Vec<f64> = order
        .iter()
        .map(|&i| (points[i] - apex).polar_angle())
        .collect();
    let n = polar.len();
    let sectors = (0..n)
        .map(|k| {
            if k + 1 < n {
                polar[k + 1] - polar[k]
            } else {
                polar[0] + math::TAU - polar[k]
            }
        })
        .collect();
    Ok((order, sectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;

    fn unit_circle() -> Circle {
        Circle::new(Point2::ORIGIN, 1.0)
    }

    #[test]
    fn projection_examples() {
        let p = project_onto_circle(Point2::new(2.0, 0.0), &unit_circle()).unwrap();
        assert_eq!(p, Point2::new(1.0, 0.0));
        let p = project_onto_circle(Point2::new(0.0, 3.0), &unit_circle()).unwrap();
        assert_eq!(p, Point2::new(0.0, 1.0));
        let c = Circle::new(Point2::ORIGIN, 2.0);
        let p = project_onto_circle(Point2::new(3.0, 4.0), &c).unwrap();
        assert!((p.x - 1.2).abs() < 1e-15 && (p.y - 1.6).abs() < 1e-15);
    }

    #[test]
    fn projection_of_center_is_degenerate() {
        let err = project_onto_circle(Point2::new(1e-13, 0.0), &unit_circle()).unwrap_err();
        assert_eq!(err, Error::DegenerateProjection);
    }

    #[test]
    fn distance_examples() {
        let c = unit_circle();
        assert_eq!(
            distance_to_circle(Point2::new(2.0, 0.0), &c, DistanceMode::ToCurve),
            1.0
        );
        let inside = Point2::new(0.5, 0.0);
        assert_eq!(distance_to_circle(inside, &c, DistanceMode::ToCurve), 0.5);
        assert_eq!(distance_to_circle(inside, &c, DistanceMode::ToSet), 0.0);
        let c2 = Circle::new(Point2::ORIGIN, 2.0);
        for mode in [DistanceMode::ToCurve, DistanceMode::ToSet] {
            assert_eq!(distance_to_circle(Point2::new(3.0, 4.0), &c2, mode), 3.0);
        }
    }

    #[test]
    fn angle_examples() {
        let o = Point2::ORIGIN;
        let a = Point2::new(1.0, 0.0);
        assert!((angle_at(o, a, Point2::new(0.0, 1.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((angle_at(o, a, Point2::new(-1.0, 0.0)).unwrap() - PI).abs() < 1e-15);
        assert!((angle_at(o, a, Point2::new(1.0, 1.0)).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(angle_at(o, o, a), Err(Error::DegenerateAngle));
    }

    #[test]
    fn sectors_sum_to_full_turn() {
        let apex = Point2::new(0.1, -0.2);
        let pts = [
            Point2::new(3.0, 1.0),
            Point2::new(-2.0, 0.5),
            Point2::new(0.3, -4.0),
            Point2::new(0.0, 2.0),
        ];
        let (order, sectors) = sector_angles(apex, &pts).unwrap();
        assert_eq!(order, [0, 3, 1, 2]);
        let total: f64 = sectors.iter().sum();
        assert!((total - 2.0 * PI).abs() < 1e-12);
        assert!(sectors.iter().all(|&s| s > 0.0));
    }
}
