//! The difference kernel: infinitesimal extensions, difference operators and their laws.

mod axioms;
mod model;
mod predicates;
mod tag;

pub use axioms::{check_axiom, check_in, right_injectivity, run_suite, AxiomId, Base, DifferenceCategory};
pub use axioms::law_report;
pub use model::Model;
pub use predicates::{check_flatness, is_additive, is_epsilon_linear, is_epsilon_vanishing, is_linear};
pub use tag::{ModelTag, DEFAULT_MODULE_SCALAR, DEFAULT_STREAM_LENGTH};
