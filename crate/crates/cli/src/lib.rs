//! Library side of the `dccodes` command-line tool: descriptors, word files,
//! command implementations and the acceptance criteria run by `selftest`.

pub mod commands;
pub mod criteria;
pub mod descriptor;
pub mod words;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Code(#[from] dccodes::code::CodeError),
    #[error(transparent)]
    Design(#[from] dccodes::design_dc::DesignError),
    #[error(transparent)]
    CycDC(#[from] dccodes::cyc_dc::CycDCError),
    #[error(transparent)]
    Weldon(#[from] dccodes::weldon::WeldonError),
    #[error(transparent)]
    Algebra(#[from] dccodes::algebra::AlgebraError),
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Error = 1,
    DecodeFail = 2,
}
