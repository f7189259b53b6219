use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ideal is not squarefree (generator {0})")]
    NotSquarefree(String),

    #[error("zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("unit ideal is not allowed here")]
    UnitIdeal,

    #[error("void complex has no homology convention here")]
    VoidComplex,

    #[error("complex is not pure")]
    NonPure,

    #[error("complex is not minimal: {0}")]
    NonMinimal(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(what: &'static str, needed: usize, limit: usize) -> Self {
        Error::BudgetExceeded {
            what,
            needed,
            limit,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
