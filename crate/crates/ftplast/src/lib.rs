//! Files, diagrams and the command line around `ftplast-core`.

pub mod cli;
pub mod error;
pub mod generate;
pub mod scene;
pub mod svg;
pub mod trace;

pub use error::{AppError, AppResult};
