//! File formats and the command-line driver for `axial-core`.

pub mod algebra_file;
pub mod args;
pub mod cli;
pub mod group_file;

use axial_core::algebra::AlgebraError;
use axial_core::catalog::CatalogError;
use axial_core::decompose::DecomposeError;
use axial_core::forms::FormError;
use axial_core::fusion::FusionError;
use axial_core::groups::GroupError;
use axial_core::idempotents::IdempotentError;

pub use algebra_file::{AlgebraFile, FormatError};
pub use cli::{run, Report};
pub use group_file::GroupFileError;

/// Everything a command can fail with. `Verify` maps to exit code 1, all
/// other variants to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("cannot read `{0}`: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    GroupFile(#[from] GroupFileError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            _ => 2,
        }
    }
}
