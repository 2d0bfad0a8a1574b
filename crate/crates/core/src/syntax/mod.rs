//! Object-language syntax, the system DSL and pool generation.

mod ast;
mod parse;
mod print;
mod system;

pub use ast::{substitute, Formula, Language, Term};
pub use system::{
    deep_atoms, deep_has_det, deep_language, dependency_closure, Denotation, NameDef, OpenFormula, PoolConfig,
    SentenceSystem,
};
