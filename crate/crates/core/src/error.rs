use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),
    #[error("language error: {0}")]
    Language(String),
    #[error("pool budget exceeded: more than {cap} {what}")]
    PoolBudgetExceeded { what: &'static str, cap: usize },
    #[error("enumeration budget exceeded: {names} valued names, cap is {cap}")]
    EnumerationBudgetExceeded { names: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}
