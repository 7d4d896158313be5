//! Decision procedures for the presentations built by `galcov-core`:
//! abelianization by exact Smith normal form, Todd–Coxeter coset
//! enumeration and the explicit model groups `(L ⊕ L) ⋊ S_2n`.

pub mod abelian;
pub mod coset;
pub mod model;

use galcov_core::GeneratorId;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] galcov_core::Error),
    #[error("relator uses undeclared generator {0}")]
    UnknownGenerator(GeneratorId),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub use abelian::{abelianize, smith_normal_form, IntegerMatrix, SnfResult};
pub use coset::{todd_coxeter, CosetTable, Strategy, TcConfig, TcStatus};
pub use model::{finite_quotient_presentation, model_hom_check, ModelCheck, ModelGroup};
