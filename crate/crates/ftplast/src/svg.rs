//! Deterministic SVG diagrams. Element order is fixed (circles in input
//! order with their center marks, then segments to the projections, angle
//! arcs, and finally the point) and every number is printed with a fixed
//! precision, so equal inputs give byte-identical files.

use std::fmt::Write as _;

use ftplast_core::{Configuration, Point2, SolveResult};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min: Point2,
    max_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn new(config: &Configuration, extra: Option<Point2>) -> Self {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for c in config.circles() {
            lo = Point2::new(
                lo.x.min(c.center.x - c.radius),
                lo.y.min(c.center.y - c.radius),
            );
            hi = Point2::new(
                hi.x.max(c.center.x + c.radius),
                hi.y.max(c.center.y + c.radius),
            );
        }
        if let Some(p) = extra {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span_x = (hi.x - lo.x).max(1e-9);
        let span_y = (hi.y - lo.y).max(1e-9);
        let scale = (WIDTH - 2.0 * MARGIN) / span_x;
        Self {
            min: lo,
            max_y: hi.y,
            scale,
            height: span_y * scale + 2.0 * MARGIN,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale,
            MARGIN + (self.max_y - p.y) * self.scale,
        )
    }
}

/// Circles and, when given, the solution: segments from the point to each
/// projection, the angle arcs between consecutive rays, and the point.
pub fn render(config: &Configuration, result: Option<&SolveResult>) -> String {
    let frame = Frame::new(config, result.map(|r| r.point));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
        WIDTH, frame.height, WIDTH, frame.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (i, c) in config.circles().iter().enumerate() {
        let (x, y) = frame.map(c.center);
        let _ = writeln!(
            s,
            r#"<circle id="c{}" cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
            i + 1,
            c.radius * frame.scale
        );
        let _ = writeln!(
            s,
            r#"<path d="M {:.3} {y:.3} H {:.3} M {x:.3} {:.3} V {:.3}" stroke="gray" stroke-width="1"/>"#,
            x - 3.0,
            x + 3.0,
            y - 3.0,
            y + 3.0
        );
    }

    let Some(result) = result else {
        s.push_str("</svg>\n");
        return s;
    };
    let (px, py) = frame.map(result.point);
    for (i, q) in result.projections.iter().enumerate() {
        let (qx, qy) = frame.map(*q);
        let _ = writeln!(
            s,
            r#"<line id="s{}" x1="{px:.3}" y1="{py:.3}" x2="{qx:.3}" y2="{qy:.3}" stroke="steelblue" stroke-width="1.5"/>"#,
            i + 1
        );
    }
    if result.case.is_floating() {
        let reach = result
            .projections
            .iter()
            .map(|q| q.distance(result.point))
            .fold(f64::INFINITY, f64::min);
        let rho = 0.3 * reach * frame.scale;
        let n = result.cyclic_order.len();
        for k in 0..n {
            let (a, b) = (result.cyclic_order[k], result.cyclic_order[(k + 1) % n]);
            let gap = result.sector_angles[k];
            let ua = result.rays[a];
            let ub = result.rays[b];
            let start = (px + rho * ua.x, py - rho * ua.y);
            let end = (px + rho * ub.x, py - rho * ub.y);
            let large = u8::from(gap > std::f64::consts::PI);
            let _ = writeln!(
                s,
                r#"<path d="M {:.3} {:.3} A {rho:.3} {rho:.3} 0 {large} 0 {:.3} {:.3}" fill="none" stroke="darkorange" stroke-width="1"/>"#,
                start.0, start.1, end.0, end.1
            );
            let mid = ua.polar_angle() + gap / 2.0;
            let (lx, ly) = (px + 1.6 * rho * mid.cos(), py - 1.6 * rho * mid.sin());
            let _ = writeln!(
                s,
                r#"<text x="{lx:.3}" y="{ly:.3}" font-size="10" text-anchor="middle" fill="darkorange">{:.2}°</text>"#,
                gap.to_degrees()
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<circle id="P" cx="{px:.3}" cy="{py:.3}" r="3" fill="crimson"/>"#
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ftplast_core::{solve, Circle};

    #[test]
    fn element_order_and_determinism() {
        let circles = vec![
            Circle::new(Point2::new(0.0, 0.0), 0.1),
            Circle::new(Point2::new(1.0, 0.0), 0.2),
            Circle::new(Point2::new(0.4, 1.0), 0.1),
        ];
        let cfg = Configuration::new(circles, vec![1.0, 1.2, 0.9]).unwrap();
        let r = solve(&cfg).unwrap();
        let a = render(&cfg, Some(&r));
        assert_eq!(a, render(&cfg, Some(&r)));
        let pos = |needle: &str| a.find(needle).unwrap();
        assert!(pos(r#"id="c1""#) < pos(r#"id="c2""#));
        assert!(pos(r#"id="c3""#) < pos(r#"id="s1""#));
        assert!(pos(r#"id="s3""#) < pos(r#"id="P""#));
        assert_eq!(a.matches("<text").count(), 3);
    }
}
