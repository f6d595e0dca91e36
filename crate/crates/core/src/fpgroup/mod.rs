//! Finitely presented groups and coset enumeration over the trivial
//! subgroup.

mod coset;
mod presentation;

pub use coset::{table_to_permgroup, todd_coxeter, CosetTable, TableStatus, DEFAULT_MAX_COSETS};
pub use presentation::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpGroupError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("empty relator")]
    EmptyRelator,
    #[error("letter {0} refers to a missing generator")]
    GeneratorOutOfRange(i32),
    #[error("coset enumeration did not close within {limit} cosets")]
    CosetLimitExceeded { limit: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table entries are inconsistent")]
    MalformedTable,
}
