use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] ftplast_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad scene: {0}")]
    Scene(String),
    #[error("{0}")]
    Usage(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            AppError::Core(e) => e.code(),
            AppError::Io { .. } => "io",
            AppError::Scene(_) => "invalid_scene",
            AppError::Usage(_) => "usage",
            AppError::Csv(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(ftplast_core::Error::NonConvergence { .. }) => 2,
            _ => 1,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
