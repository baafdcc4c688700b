use std::path::PathBuf;

use homotopy_lift::LiftError;
use resolution::ResolutionError;
use secondary_lift::SecondaryError;
use thiserror::Error;

use crate::module_file::ModuleFileError;
use crate::TokenError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error(transparent)]
    ModuleFile(#[from] ModuleFileError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Secondary(#[from] SecondaryError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("stopped after stem {0}; checkpoint saved")]
    Interrupted(i32),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    /// 1 for bad input, 2 for failures during the computation or its output.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Token(_) | CliError::ModuleFile(_) => 1,
            _ => 2,
        }
    }
}
