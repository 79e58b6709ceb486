//! Weighted Fermat–Torricelli points of non-overlapping circles in the plane.
//!
//! The crate solves the forward problem (find the point minimizing the
//! weighted sum of distances to the circles), the inverse problem (recover
//! weights from the angles at the point), and the plasticity family (how all
//! weights may co-vary while the point stays fixed), plus a five-circle growth
//! simulation built on it and brute-force reference routines for testing.
//!
//! `no_std` with `alloc`; floating-point functions come from `libm`.

#![no_std]

extern crate alloc;

pub mod config;
pub mod error;
pub mod evolution;
pub mod geom;
pub mod inverse;
pub mod linalg;
pub mod math;
pub mod oracle;
pub mod plasticity;
pub mod solver;

pub use config::{Configuration, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use geom::{Circle, DistanceMode, Point2};
pub use inverse::{angles_from_weights, weights_from_angles, AngleTriple};
pub use solver::{classify_case, solve, CaseTag, SolveResult, SolverOptions};
