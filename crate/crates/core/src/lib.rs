//! Combinatorial pipeline for the fundamental group of the Galois cover of
//! `CP¹ × T`: degeneration data, regenerated braid monodromy, presentations
//! of the curve complement, the sheet monodromy `ψ` with its splitting `φ`,
//! and the Reidemeister–Schreier presentation of `Ker ψ`.

pub mod braid;
pub mod degeneration;
pub mod error;
pub mod monodromy;
pub mod perm_monodromy;
pub mod permutation;
pub mod presentation;
pub mod schreier;
pub mod word;

pub use error::{Error, Result};
pub use word::{FreeWord, GeneratorId, Letter, Namespace};
