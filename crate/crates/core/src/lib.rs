//! Coded dilators over a closed expression grammar, the functor J
//! with its variants, and Bachmann-Howard collapse term orders.

pub mod cli;
pub mod element;
pub mod error;
pub mod expr;
pub mod jfunctor;
pub mod ordinal;
pub mod psi;
pub mod suites;
pub mod symbolic;
pub mod validate;

pub use error::{Error, Result};
pub use expr::DilatorExpr;
pub use ordinal::Ordinal;
