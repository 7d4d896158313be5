use thiserror::Error;

use crate::word::GeneratorId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("{what} {value} out of range 1..={max}")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("no image given for generator {0}")]
    MissingImage(GeneratorId),
    #[error("path endpoints must satisfy start < end, got {start} -> {end}")]
    InvalidPath { start: usize, end: usize },
    #[error("{0} is not a singularity of this complex")]
    UnknownSingularity(String),
    #[error("word is not in the kernel of psi (image {0})")]
    NotInKernel(String),
    #[error("enumerating {cosets} cosets exceeds the budget of {budget}")]
    Budget { cosets: u128, budget: u128 },
    #[error("generator {0} outside the surface alphabet")]
    WrongNamespace(GeneratorId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
