//! Kripkean fixed points, classical closures and axiom-schema checking for
//! a self-referential truth language over a finite syntax fragment.

pub mod error;
pub mod closure;
pub mod exec;
pub mod scenarios;
pub mod schemas;
pub mod syntax;
pub mod translations;
pub mod valuation;

pub use error::{Error, Result};
