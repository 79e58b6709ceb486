use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{SectorAngles, TriangleRatios};
use crate::error::{Error, Result};
use crate::linalg;
use crate::math::{self, cos, sin};

/// Cosine residuals above this mean the angles admit no equilibrium weights.
const CONSISTENCY_TOLERANCE: f64 = 1e-8;

/// `w_i + Σ_{j≠i} w_j cos∠A_i'PA_j'` for every ray.
pub fn cosine_residuals(angles: &SectorAngles, weights: &[f64]) -> Vec<f64> {
    let n = angles.len();
    (0..n)
        .map(|i| {
            weights[i]
                + (0..n)
                    .filter(|&j| j != i)
                    .map(|j| weights[j] * cos(angles.angle(i, j)))
                    .sum::<f64>()
        })
        .collect()
}

/// The three weighted sine equations of the four-ray configuration, in the
/// unsigned-angle form that holds when the point is inside triangles 123 and
/// 124 and outside 134:
///
/// ```text
/// -w1 sin∠21 + w3 sin∠23 + w4 sin∠24
/// -w2 sin∠12 + w3 sin∠13 + w4 sin∠14
/// -w1 sin∠31 + w2 sin∠32 - w4 sin∠34
/// ```
pub fn sine_residuals(angles: &SectorAngles, weights: &[f64; 4]) -> Result<[f64; 3]> {
    if !angles.satisfies_four_ray_hypothesis() {
        return Err(Error::GeometryPreconditionViolated(
            "sine equations need the point inside triangles 123, 124 and outside 134".into(),
        ));
    }
    let s = |i: usize, j: usize| sin(angles.angle(i - 1, j - 1));
    let [w1, w2, w3, w4] = *weights;
    Ok([
        -w1 * s(2, 1) + w3 * s(2, 3) + w4 * s(2, 4),
        -w2 * s(1, 2) + w3 * s(1, 3) + w4 * s(1, 4),
        -w1 * s(3, 1) + w2 * s(3, 2) - w4 * s(3, 4),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosineSystemSolution {
    /// Weights summing to one.
    pub weights: [f64; 4],
    /// Numerical rank of the assembled system.
    pub rank: usize,
    /// Largest absolute cosine-equation residual at `weights`.
    pub residual: f64,
    /// Post-hoc positivity; negative entries mean no interior F-T point
    /// carries these angles with this pin.
    pub all_positive: bool,
}

/// Solves the three weighted cosine equations of rays 1..3 together with
/// `Σ w = 1`.
///
/// For four rays those equations have rank two (they are projections of the
/// two-dimensional equilibrium), so the solution is a one-parameter family.
/// With `pin = Some(ρ)` the extra row `w4 = ρ w1` selects a single member;
/// without a pin the minimum-norm member is returned.
pub fn cosine_system_weights(
    angles: &SectorAngles,
    pin: Option<f64>,
) -> Result<CosineSystemSolution> {
    if angles.len() != 4 {
        return Err(Error::InvalidAngles(format!(
            "cosine system is for four rays, got {}",
            angles.len()
        )));
    }
    let mut rows: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            (0..4)
                .map(|j| if i == j { 1.0 } else { cos(angles.angle(i, j)) })
                .collect()
        })
        .collect();
    let mut rhs = vec![0.0; 3];
    rows.push(vec![1.0; 4]);
    rhs.push(1.0);
    if let Some(rho) = pin {
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(Error::InvalidAngles(format!(
                "w4/w1 pin must be >= 0, got {rho}"
            )));
        }
        rows.push(vec![-rho, 0.0, 0.0, 1.0]);
        rhs.push(0.0);
    }
    let expected_rank = if pin.is_some() { 4 } else { 3 };
    let (x, rank) = linalg::lstsq_min_norm(&rows, &rhs, 1e-12);
    if rank < expected_rank {
        return Err(Error::SingularSystem);
    }
    let mut weights = [x[0], x[1], x[2], x[3]];
    let residual = cosine_residuals(angles, &weights)
        .into_iter()
        .fold(0.0, |m: f64, r| m.max(math::abs(r)));
    if residual > CONSISTENCY_TOLERANCE {
        return Err(Error::SingularSystem);
    }
    let all_positive = weights.iter().all(|&w| w > 0.0);
    math::normalize_sum(&mut weights);
    Ok(CosineSystemSolution {
        weights,
        rank,
        residual,
        all_positive,
    })
}

/// Four-ray dynamic plasticity: given `w4/w1` and the total weight, the
/// remaining ratios follow from the triangle sub-ratios,
///
/// ```text
/// (w2/w1) = (w2/w1)_123 [1 - (w4/w1)(w1/w4)_134]
/// (w3/w1) = (w3/w1)_123 [1 - (w4/w1)(w1/w4)_124]
/// ```
///
/// and the total closes the system.
pub fn plasticity_4(angles: &SectorAngles, w4_over_w1: f64, total: f64) -> Result<[f64; 4]> {
    if !angles.satisfies_four_ray_hypothesis() {
        return Err(Error::GeometryPreconditionViolated(
            "point must be inside triangles 123 and 124 and outside 134".into(),
        ));
    }
    let w = plasticity_n(angles, &[w4_over_w1], total)?;
    Ok([w[0], w[1], w[2], w[3]])
}

/// General dynamic plasticity for `n ≥ 4` rays in cyclic order: the free
/// ratios `w_j/w_1` for `j = 4..n` determine
///
/// ```text
/// (w2/w1) = (w2/w1)_123 [1 - Σ_j (w_j/w_1)(w1/wj)_13j]
/// (w3/w1) = (w3/w1)_123 [1 - Σ_j (w_j/w_1)(w1/wj)_12j]
/// ```
///
/// and the total fixes the scale.
pub fn plasticity_n(angles: &SectorAngles, free_ratios: &[f64], total: f64) -> Result<Vec<f64>> {
    let n = angles.len();
    if free_ratios.len() != n - 3 {
        return Err(Error::InvalidAngles(format!(
            "expected {} free ratios, got {}",
            n - 3,
            free_ratios.len()
        )));
    }
    if !angles.is_cyclic() {
        return Err(Error::GeometryPreconditionViolated(
            "rays must be labeled in cyclic order with every sector below π".into(),
        ));
    }
    let t = TriangleRatios::from_angles(angles)?;
    let mut c13 = 1.0;
    let mut c12 = 1.0;
    for (k, &r) in free_ratios.iter().enumerate() {
        let j = k + 4;
        c13 -= r * t.w1_over_wj_13j(j)?;
        c12 -= r * t.w1_over_wj_12j(j)?;
    }
    let r2 = t.w2_over_w1_123()? * c13;
    let r3 = t.w3_over_w1_123()? * c12;
    let w1 = total / (1.0 + r2 + r3 + free_ratios.iter().sum::<f64>());
    let mut w = vec![w1, r2 * w1, r3 * w1];
    w.extend(free_ratios.iter().map(|r| r * w1));
    Ok(w)
}
