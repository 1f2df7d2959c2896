//! A small combinator language with typing, interpretation and a symbolic derivative.

mod derive;
mod generate;
mod interpret;
mod syntax;
mod types;

pub use derive::{check_symbolic_derivative, derive_n, rewriter_oracle, OracleSummary, normalize, symbolic_derive};
pub use generate::{random_term, Shape, TermGenerator};
pub use interpret::{interpret, interpret_at};
pub use syntax::{parse, Term};
pub use types::{annotate, typecheck, TypedTerm};
