use alloc::format;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geom::{Circle, Point2};
use crate::solver::{classify_case, solve, CaseTag};

/// Displacement below which the F-T point counts as unchanged.
pub const PRESERVATION_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricCheck {
    pub original: Point2,
    pub shifted: Point2,
    pub displacement: f64,
    pub shifted_config: Configuration,
}

impl GeometricCheck {
    pub fn preserved(&self) -> bool {
        self.displacement < PRESERVATION_TOLERANCE
    }
}

/// Moves every center along its own ray from the F-T point (`radial_shifts[i]`
/// outward, negative toward the point), optionally resizes the circles, then
/// re-solves and measures how far the F-T point moved.
pub fn verify_geometric_plasticity(
    config: &Configuration,
    radial_shifts: &[f64],
    new_radii: Option<&[f64]>,
) -> Result<GeometricCheck> {
    let n = config.len();
    if radial_shifts.len() != n || new_radii.is_some_and(|r| r.len() != n) {
        return Err(Error::ShiftedConfigInvalid(format!(
            "expected {n} shifts (and radii, if given)"
        )));
    }
    let base = solve(config)?;
    if !base.case.is_floating() {
        return Err(Error::PreconditionViolated(
            "geometric plasticity needs a floating configuration".into(),
        ));
    }
    let p = base.point;
    let circles: Vec<Circle> = config
        .circles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let radius = new_radii.map_or(c.radius, |r| r[i]);
            Circle::new(c.center + base.rays[i] * radial_shifts[i], radius)
        })
        .collect();

    for (i, c) in circles.iter().enumerate() {
        // the new center must stay on the same side of P
        if (c.center - p).dot(base.rays[i]) <= 0.0 {
            return Err(Error::ShiftedConfigInvalid(format!(
                "center {} moved through the F-T point",
                i + 1
            )));
        }
        if c.contains_strictly(p) || c.center.distance(p) <= c.radius {
            return Err(Error::ShiftedConfigInvalid(format!(
                "F-T point lies in shifted disk {}",
                i + 1
            )));
        }
    }
    let shifted_config = config
        .with_circles(circles)
        .map_err(|e| Error::ShiftedConfigInvalid(format!("{e}")))?;
    if let CaseTag::AbsorbedAt(m) = classify_case(&shifted_config) {
        return Err(Error::ShiftedConfigInvalid(format!(
            "shifted configuration is absorbed at circle {}",
            m + 1
        )));
    }
    let shifted = solve(&shifted_config)
        .map_err(|e| Error::ShiftedConfigInvalid(format!("{e}")))?
        .point;
    Ok(GeometricCheck {
        original: p,
        shifted,
        displacement: p.distance(shifted),
        shifted_config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn quad() -> Configuration {
        Configuration::new(
            vec![
                Circle::new(Point2::new(0.0, 0.0), 0.1),
                Circle::new(Point2::new(2.0, 0.1), 0.15),
                Circle::new(Point2::new(2.2, 1.9), 0.1),
                Circle::new(Point2::new(-0.1, 1.7), 0.2),
            ],
            vec![1.0, 1.2, 0.9, 1.1],
        )
        .unwrap()
    }

    #[test]
    fn zero_shift_is_identity() {
        let check = verify_geometric_plasticity(&quad(), &[0.0; 4], None).unwrap();
        assert!(check.preserved());
    }

    #[test]
    fn radial_shift_keeps_point() {
        let check = verify_geometric_plasticity(
            &quad(),
            &[0.3, -0.2, 0.5, 0.1],
            Some(&[0.2, 0.1, 0.3, 0.05]),
        )
        .unwrap();
        assert!(check.preserved(), "moved {}", check.displacement);
    }

    #[test]
    fn collapsing_shift_rejected() {
        let err = verify_geometric_plasticity(&quad(), &[-5.0, 0.0, 0.0, 0.0], None).unwrap_err();
        assert_eq!(err.code(), "shifted_config_invalid");
    }
}
