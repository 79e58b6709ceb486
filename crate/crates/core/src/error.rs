use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration failed validation (non-overlap, weights, sizes, ...).
    InvalidConfiguration(String),
    /// Projection of a circle's own center onto it is not unique.
    DegenerateProjection,
    /// One of the rays of an angle has zero length.
    DegenerateAngle,
    /// The F-T point of the centers lies strictly inside this disk.
    SolutionInsideDisk(usize),
    NonConvergence {
        iterations: usize,
        residual: f64,
    },
    /// A floating-case certificate was requested for an absorbed solution.
    CalledOnAbsorbed(usize),
    /// Weight triple violates the strict triangle inequality.
    AbsorbedWeights,
    /// Some angle has a vanishing sine.
    DegenerateAngles,
    /// Angle data violates its invariants (sum, range, count).
    InvalidAngles(String),
    SingularSystem,
    GeometryPreconditionViolated(String),
    MissingRatio(String),
    ShiftedConfigInvalid(String),
    PreconditionViolated(String),
    StepTooSmall(f64),
    StepTooLarge(f64),
}

impl Error {
    /// Short machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidConfiguration(_) => "invalid_configuration",
            Error::DegenerateProjection => "degenerate_projection",
            Error::DegenerateAngle => "degenerate_angle",
            Error::SolutionInsideDisk(_) => "solution_inside_disk",
            Error::NonConvergence { .. } => "non_convergence",
            Error::CalledOnAbsorbed(_) => "called_on_absorbed",
            Error::AbsorbedWeights => "absorbed_weights",
            Error::DegenerateAngles => "degenerate_angles",
            Error::InvalidAngles(_) => "invalid_angles",
            Error::SingularSystem => "singular_system",
            Error::GeometryPreconditionViolated(_) => "geometry_precondition_violated",
            Error::MissingRatio(_) => "missing_ratio",
            Error::ShiftedConfigInvalid(_) => "shifted_config_invalid",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::StepTooSmall(_) => "step_too_small",
            Error::StepTooLarge(_) => "step_too_large",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfiguration(why) => write!(f, "invalid configuration: {why}"),
            Error::DegenerateProjection => f.write_str("point coincides with circle center"),
            Error::DegenerateAngle => f.write_str("ray endpoint coincides with apex"),
            Error::SolutionInsideDisk(i) => {
                write!(f, "F-T point lies strictly inside disk {}", i + 1)
            }
            Error::NonConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "no convergence after {iterations} iterations (residual {residual:e})"
            ),
            Error::CalledOnAbsorbed(i) => {
                write!(f, "solution is absorbed at circle {}", i + 1)
            }
            Error::AbsorbedWeights => f.write_str("weights violate the strict triangle inequality"),
            Error::DegenerateAngles => f.write_str("angle with vanishing sine"),
            Error::InvalidAngles(why) => write!(f, "invalid angles: {why}"),
            Error::SingularSystem => f.write_str("singular linear system"),
            Error::GeometryPreconditionViolated(why) => {
                write!(f, "geometry precondition violated: {why}")
            }
            Error::MissingRatio(which) => write!(f, "missing triangle ratio {which}"),
            Error::ShiftedConfigInvalid(why) => write!(f, "shifted configuration invalid: {why}"),
            Error::PreconditionViolated(why) => write!(f, "precondition violated: {why}"),
            Error::StepTooSmall(h) => write!(f, "finite-difference step {h:e} below 1e-8"),
            Error::StepTooLarge(h) => write!(f, "finite-difference step {h:e} above 1e-4"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
