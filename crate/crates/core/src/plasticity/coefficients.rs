use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::SectorAngles;
use crate::error::{Error, Result};
use crate::math;

/// Weight ratios of the three-ray sub-problems, read off the sector angles.
///
/// Each ratio is a quotient of signed sines (`σ(i, j)` = sine of the
/// counter-clockwise angle from ray `i` to ray `j`):
///
/// ```text
/// (w2/w1)_123 =  σ(3,1) / σ(2,3)      (w3/w1)_123 = σ(1,2) / σ(2,3)
/// (w1/wj)_13j = -σ(3,j) / σ(3,1)      (w1/wj)_12j = σ(2,j) / σ(1,2)
/// ```
///
/// When the point lies inside triangles 123 and 12j with ray `j` in the sector
/// from ray 3 to ray 1, every signed sine here equals the unsigned sine of the
/// corresponding angle, and `(w1/wj)_13j` carries the minus sign of the
/// reflected vertex. The signed form keeps the identities exact for any
/// placement of the rays. All ratios are invariant under reversing the
/// orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleRatios {
    n: usize,
    w2_over_w1_123: Option<f64>,
    w3_over_w1_123: Option<f64>,
    // index j - 4 (one-based j)
    w1_over_wj_13j: Vec<Option<f64>>,
    w1_over_wj_12j: Vec<Option<f64>>,
}

const SINE_FLOOR: f64 = 1e-12;

impl TriangleRatios {
    /// Empty table for `n` rays; fill with the setters.
    pub fn empty(n: usize) -> Self {
        let free = n.saturating_sub(3);
        Self {
            n,
            w2_over_w1_123: None,
            w3_over_w1_123: None,
            w1_over_wj_13j: vec![None; free],
            w1_over_wj_12j: vec![None; free],
        }
    }

    pub fn from_angles(angles: &SectorAngles) -> Result<Self> {
        let n = angles.len();
        let s = |i: usize, j: usize| angles.signed_sine(i - 1, j - 1);
        let (s12, s23, s31) = (s(1, 2), s(2, 3), s(3, 1));
        if [s12, s23, s31].iter().any(|x| math::abs(*x) <= SINE_FLOOR) {
            return Err(Error::DegenerateAngles);
        }
        let mut t = Self::empty(n);
        t.w2_over_w1_123 = Some(s31 / s23);
        t.w3_over_w1_123 = Some(s12 / s23);
        for j in 4..=n {
            t.w1_over_wj_13j[j - 4] = Some(-s(3, j) / s31);
            t.w1_over_wj_12j[j - 4] = Some(s(2, j) / s12);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_w2_over_w1_123(&mut self, v: f64) {
        self.w2_over_w1_123 = Some(v);
    }

    pub fn set_w3_over_w1_123(&mut self, v: f64) {
        self.w3_over_w1_123 = Some(v);
    }

    /// `(w1/wj)_13j` for one-based `j ≥ 4`.
    pub fn set_w1_over_wj_13j(&mut self, j: usize, v: f64) {
        self.w1_over_wj_13j[j - 4] = Some(v);
    }

    /// `(w1/wj)_12j` for one-based `j ≥ 4`.
    pub fn set_w1_over_wj_12j(&mut self, j: usize, v: f64) {
        self.w1_over_wj_12j[j - 4] = Some(v);
    }

    pub fn w2_over_w1_123(&self) -> Result<f64> {
        self.w2_over_w1_123
            .ok_or_else(|| Error::MissingRatio("(w2/w1)_123".into()))
    }

    pub fn w3_over_w1_123(&self) -> Result<f64> {
        self.w3_over_w1_123
            .ok_or_else(|| Error::MissingRatio("(w3/w1)_123".into()))
    }

    pub fn w1_over_wj_13j(&self, j: usize) -> Result<f64> {
        self.w1_over_wj_13j
            .get(j.wrapping_sub(4))
            .copied()
            .flatten()
            .ok_or_else(|| Error::MissingRatio(format!("(w1/w{j})_13{j}")))
    }

    pub fn w1_over_wj_12j(&self, j: usize) -> Result<f64> {
        self.w1_over_wj_12j
            .get(j.wrapping_sub(4))
            .copied()
            .flatten()
            .ok_or_else(|| Error::MissingRatio(format!("(w1/w{j})_12{j}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// Affine form of the plasticity family:
/// `w_i = Σ_{j=4..n} a[i][j] w_j + a[i][n+1] · total` for `i = 1, 2, 3`.
///
/// The constant column holds the three-ray sub-problem weights `(w_i)_123`
/// normalized to a unit total, so every member of the family carries the
/// same total weight as the triangle sub-problem.
#[derive(Debug, Clone, PartialEq)]
pub struct PlasticityCoefficients {
    n: usize,
    rows: [Vec<f64>; 3],
}

/// Outcome of evaluating the affine form against known weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryCheck {
    /// `w_1..w_3` predicted from the instance's own `w_4..w_n`.
    pub predicted: [f64; 3],
    pub max_weight_error: f64,
    /// `|Σ w - assumed total|`: how far the instance is from the equal-sum
    /// hypothesis the constant column encodes.
    pub sum_discrepancy: f64,
}

pub fn corollary_coefficients(ratios: &TriangleRatios, n: usize) -> Result<PlasticityCoefficients> {
    if n < 4 || ratios.n() != n {
        return Err(Error::MissingRatio(format!(
            "ratio table is for n = {}, requested n = {n}",
            ratios.n()
        )));
    }
    let r2 = ratios.w2_over_w1_123()?;
    let r3 = ratios.w3_over_w1_123()?;
    let denom = 1.0 + r2 + r3;
    let mut rows: [Vec<f64>; 3] = Default::default();
    for j in 4..=n {
        let q13 = ratios.w1_over_wj_13j(j)?;
        let q12 = ratios.w1_over_wj_12j(j)?;
        let a1 = (q13 * r2 + q12 * r3 - 1.0) / denom;
        rows[0].push(a1);
        rows[1].push(a1 * r2 - q13 * r2);
        rows[2].push(a1 * r3 - q12 * r3);
    }
    rows[0].push(1.0 / denom);
    rows[1].push(r2 / denom);
    rows[2].push(r3 / denom);
    Ok(PlasticityCoefficients { n, rows })
}

impl PlasticityCoefficients {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_{i,j}` with one-based `i ∈ 1..=3` and `j ∈ 4..=n+1`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i - 1][j - 4]
    }

    /// Coefficient rows, each `[a_{i,4}, ..., a_{i,n}, a_{i,n+1}]`.
    pub fn rows(&self) -> &[Vec<f64>; 3] {
        &self.rows
    }

    /// Full weight vector from the free weights `w_4..w_n` and the total.
    pub fn evaluate(&self, free: &[f64], total: f64) -> Result<Vec<f64>> {
        if free.len() != self.n - 3 {
            return Err(Error::InvalidAngles(format!(
                "expected {} free weights, got {}",
                self.n - 3,
                free.len()
            )));
        }
        let mut w = Vec::with_capacity(self.n);
        for row in &self.rows {
            let (coeffs, constant) = row.split_at(self.n - 3);
            let lin: f64 = coeffs.iter().zip(free).map(|(a, x)| a * x).sum();
            w.push(lin + constant[0] * total);
        }
        w.extend_from_slice(free);
        Ok(w)
    }

    /// Signs of `(a_{1,j}, a_{2,j}, a_{3,j})` for each free weight `j`.
    pub fn sign_pattern(&self) -> Vec<[Sign; 3]> {
        (0..self.n - 3)
            .map(|c| [0, 1, 2].map(|i| Sign::of(self.rows[i][c])))
            .collect()
    }

    /// Evaluates the affine form on a known weight vector whose total is
    /// assumed to be `assumed_total`, and reports how well it reproduces the
    /// first three weights.
    pub fn check_against(&self, weights: &[f64], assumed_total: f64) -> Result<CorollaryCheck> {
        if weights.len() != self.n {
            return Err(Error::InvalidAngles(format!(
                "expected {} weights, got {}",
                self.n,
                weights.len()
            )));
        }
        let w = self.evaluate(&weights[3..], assumed_total)?;
        let predicted = [w[0], w[1], w[2]];
        let max_weight_error = (0..3)
            .map(|i| math::abs(predicted[i] - weights[i]))
            .fold(0.0, f64::max);
        let sum_discrepancy = math::abs(weights.iter().sum::<f64>() - assumed_total);
        Ok(CorollaryCheck {
            predicted,
            max_weight_error,
            sum_discrepancy,
        })
    }
}
