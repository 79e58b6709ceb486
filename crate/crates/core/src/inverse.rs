//! Three-circle angle/weight correspondence.
//!
//! Labeling convention used throughout: `phi[q]` is the angle at the F-T point
//! between the rays toward the two projections other than `q`, i.e. the angle
//! opposite `A_q'`.

use crate::error::{Error, Result};
use crate::math::{self, TAU};
use crate::solver::SolveResult;

const SUM_TOLERANCE: f64 = 1e-10;
const SINE_FLOOR: f64 = 1e-12;

/// Angles at the F-T point, each opposite the projection with the same index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple {
    phi: [f64; 3],
}

impl AngleTriple {
    pub fn new(phi1: f64, phi2: f64, phi3: f64) -> Result<Self> {
        let phi = [phi1, phi2, phi3];
        if phi
            .iter()
            .any(|p| !(p.is_finite() && *p > 0.0 && *p < math::PI))
        {
            return Err(Error::InvalidAngles(alloc::format!(
                "each angle must lie in (0, π): {phi:?}"
            )));
        }
        let sum: f64 = phi.iter().sum();
        if math::abs(sum - TAU) > SUM_TOLERANCE {
            return Err(Error::InvalidAngles(alloc::format!(
                "angles sum to {sum}, expected 2π"
            )));
        }
        Ok(Self { phi })
    }

    /// Reads the three opposite angles off a floating three-circle solution.
    pub fn from_solution(result: &SolveResult) -> Result<Self> {
        if result.rays.len() != 3 {
            return Err(Error::InvalidAngles(alloc::format!(
                "need a floating three-circle solution, got {} rays",
                result.rays.len()
            )));
        }
        let phi = |q: usize| result.angle_between((q + 1) % 3, (q + 2) % 3);
        Self::new(phi(0)?, phi(1)?, phi(2)?)
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.phi
    }
}

/// Angles at the F-T point of three weighted sites:
/// `cos φ_i = (w_i² - w_j² - w_k²) / (2 w_j w_k)`.
pub fn angles_from_weights(w1: f64, w2: f64, w3: f64) -> Result<AngleTriple> {
    let w = [w1, w2, w3];
    if w.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::InvalidAngles(alloc::format!(
            "weights must be positive: {w:?}"
        )));
    }
    let mut phi = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if w[i] >= w[j] + w[k] {
            return Err(Error::AbsorbedWeights);
        }
        let cos = (w[i] * w[i] - w[j] * w[j] - w[k] * w[k]) / (2.0 * w[j] * w[k]);
        if !(cos > -1.0 && cos < 1.0) {
            return Err(Error::AbsorbedWeights);
        }
        phi[i] = math::acos(cos);
    }
    AngleTriple::new(phi[0], phi[1], phi[2])
}

/// Normalized weights reproducing the given angles: `w_q ∝ sin φ_q`,
/// scaled to sum to one.
pub fn weights_from_angles(angles: &AngleTriple) -> Result<[f64; 3]> {
    let s = angles.phi.map(math::sin);
    if s.iter().any(|&x| x <= SINE_FLOOR) {
        return Err(Error::DegenerateAngles);
    }
    let mut w = s;
    crate::math::normalize_sum(&mut w);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{sqrt, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn equal_weights_give_120_degrees() {
        let a = angles_from_weights(1.0, 1.0, 1.0).unwrap().as_array();
        for phi in a {
            assert!(close(phi, 2.0 * PI / 3.0, 1e-15));
        }
    }

    #[test]
    fn three_four_five() {
        let a = angles_from_weights(3.0, 4.0, 5.0).unwrap().as_array();
        // cosines -0.8, -0.6, 0 by direct evaluation
        assert!(close(a[0], math::acos(-0.8), 1e-15));
        assert!(close(a[1], math::acos(-0.6), 1e-15));
        assert!(close(a[2], PI / 2.0, 1e-15));
        assert!(close(a[0], 2.4981, 1e-4) && close(a[1], 2.2143, 1e-4));
        assert!(close(a.iter().sum(), 2.0 * PI, 1e-12));

        let w = weights_from_angles(&AngleTriple::new(a[0], a[1], a[2]).unwrap()).unwrap();
        assert!(close(w[0], 0.25, 1e-14));
        assert!(close(w[1], 1.0 / 3.0, 1e-14));
        assert!(close(w[2], 5.0 / 12.0, 1e-14));
    }

    #[test]
    fn boundary_weights_are_absorbed() {
        assert_eq!(
            angles_from_weights(1.0, 1.0, 2.0),
            Err(Error::AbsorbedWeights)
        );
        assert_eq!(
            angles_from_weights(5.0, 1.0, 1.0),
            Err(Error::AbsorbedWeights)
        );
    }

    #[test]
    fn inverse_examples() {
        let t = 2.0 * PI / 3.0;
        let w = weights_from_angles(&AngleTriple::new(t, t, t).unwrap()).unwrap();
        for x in w {
            assert!(close(x, 1.0 / 3.0, 1e-15));
        }
        let q = 3.0 * PI / 4.0;
        let w = weights_from_angles(&AngleTriple::new(PI / 2.0, q, q).unwrap()).unwrap();
        let r2 = sqrt(2.0);
        assert!(close(w[0], 1.0 / (1.0 + r2), 1e-15));
        assert!(close(w[1], r2 / (2.0 + 2.0 * r2), 1e-15));
        assert!(close(w[2], r2 / (2.0 + 2.0 * r2), 1e-15));
        assert_eq!(w.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn angle_triple_validation() {
        assert!(AngleTriple::new(PI, PI / 2.0, PI / 2.0).is_err());
        assert!(AngleTriple::new(2.0, 2.0, 2.0).is_err());
        assert!(AngleTriple::new(2.0, 2.0, TAU - 4.0).is_ok());
    }
}
