//! Reproducible random scenes. Every scene comes from a ChaCha8 stream seeded
//! with a caller-chosen `u64`; invalid draws are rejected and redrawn from the
//! same stream.

use std::f64::consts::TAU;

use ftplast_core::solver::classify_case;
use ftplast_core::{solve, CaseTag, Circle, Configuration, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AppError, AppResult};

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenOptions {
    /// Centers on an ellipse, in counter-clockwise index order.
    pub convex: bool,
    /// All weights 1.
    pub equal_weights: bool,
    /// Weights drawn uniformly from this range otherwise.
    pub weight_range: (f64, f64),
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            convex: false,
            equal_weights: false,
            weight_range: (0.5, 2.0),
        }
    }
}

pub struct SceneGenerator {
    rng: ChaCha8Rng,
}

impl SceneGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn centers(&mut self, n: usize, convex: bool) -> Option<Vec<Point2>> {
        let pts: Vec<Point2> = if convex {
            let mut t: Vec<f64> = (0..n).map(|_| self.rng.gen_range(0.0..TAU)).collect();
            t.sort_by(f64::total_cmp);
            let min_gap = (0..n)
                .map(|k| {
                    if k + 1 < n {
                        t[k + 1] - t[k]
                    } else {
                        t[0] + TAU - t[k]
                    }
                })
                .fold(f64::INFINITY, f64::min);
            if min_gap < 0.3 {
                return None;
            }
            let b = self.rng.gen_range(0.6..1.0);
            t.iter()
                .map(|&a| Point2::new(a.cos(), b * a.sin()))
                .collect()
        } else {
            (0..n)
                .map(|_| Point2::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0)))
                .collect()
        };
        let too_close = (0..n).any(|i| (i + 1..n).any(|j| pts[i].distance(pts[j]) < 0.2));
        (!too_close).then_some(pts)
    }

    /// Radii up to 40% of each center's nearest-neighbor distance, so the
    /// circles are always disjoint.
    fn radii(&mut self, centers: &[Point2]) -> Vec<f64> {
        centers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let d = centers
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, o)| c.distance(*o))
                    .fold(f64::INFINITY, f64::min);
                self.rng.gen_range(0.02..0.4 * d)
            })
            .collect()
    }

    /// A floating configuration whose F-T point lies outside every disk.
    pub fn floating(&mut self, n: usize, opts: &GenOptions) -> AppResult<Configuration> {
        if n < 3 {
            return Err(AppError::Usage(format!("need at least 3 circles, got {n}")));
        }
        for _ in 0..MAX_ATTEMPTS {
            let Some(centers) = self.centers(n, opts.convex) else {
                continue;
            };
            let radii = self.radii(&centers);
            let weights: Vec<f64> = (0..n)
                .map(|_| {
                    if opts.equal_weights {
                        1.0
                    } else {
                        self.rng.gen_range(opts.weight_range.0..opts.weight_range.1)
                    }
                })
                .collect();
            let circles = centers
                .iter()
                .zip(&radii)
                .map(|(&c, &r)| Circle::new(c, r))
                .collect();
            let Ok(config) = Configuration::new(circles, weights) else {
                continue;
            };
            if classify_case(&config) != CaseTag::Floating {
                continue;
            }
            if solve(&config).is_ok() {
                return Ok(config);
            }
        }
        Err(AppError::Usage(format!(
            "no valid {n}-circle scene after {MAX_ATTEMPTS} draws"
        )))
    }

    /// Tiny circles with circle `dominant` outweighing all others together,
    /// which forces the minimizer onto its center.
    pub fn absorbed(&mut self, n: usize, dominant: usize) -> AppResult<Configuration> {
        for _ in 0..MAX_ATTEMPTS {
            let Some(centers) = self.centers(n, false) else {
                continue;
            };
            let mut weights: Vec<f64> = (0..n).map(|_| self.rng.gen_range(0.5..2.0)).collect();
            let others: f64 = weights
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != dominant)
                .map(|(_, w)| w)
                .sum();
            weights[dominant] = others * self.rng.gen_range(1.1..3.0);
            let circles = centers.iter().map(|&c| Circle::new(c, 1e-5)).collect();
            if let Ok(config) = Configuration::new(circles, weights) {
                return Ok(config);
            }
        }
        Err(AppError::Usage("no valid absorbed scene".into()))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One floating scene from a seed.
pub fn random_scene(seed: u64, n: usize, opts: &GenOptions) -> AppResult<Configuration> {
    SceneGenerator::new(seed).floating(n, opts)
}
