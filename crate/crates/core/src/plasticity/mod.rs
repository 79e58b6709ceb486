//! Plasticity of the weighted F-T tree.
//!
//! With the F-T point and its rays held fixed, the weights that keep the point
//! in equilibrium form an affine family: `n` rays give `n - 2` degrees of
//! freedom, one of which is fixed by the total weight. This module evaluates
//! that family through the sine/cosine equations, the triangle sub-ratios and
//! the affine coefficient form, and checks the complementary geometric
//! statement that radial moves of the circles leave the point in place.
//!
//! Rays are addressed by role `0..n` (role `k` is ray `k + 1` in the usual
//! one-based notation). [`SectorAngles::from_solution`] assigns roles by
//! counter-clockwise order around the point.

mod angles;
mod coefficients;
mod geometric;
mod systems;

pub use angles::SectorAngles;
pub use coefficients::{
    corollary_coefficients, CorollaryCheck, PlasticityCoefficients, Sign, TriangleRatios,
};
pub use geometric::{verify_geometric_plasticity, GeometricCheck};
pub use systems::{
    cosine_residuals, cosine_system_weights, plasticity_4, plasticity_n, sine_residuals,
    CosineSystemSolution,
};
