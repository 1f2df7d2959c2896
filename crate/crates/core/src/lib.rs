//! Executable Cartesian difference categories.
//!
//! The crate provides four concrete models of generalized differentiation
//! (finite differences, smooth maps, module maps and causal streams), the
//! combinators shared between them, law checkers for every axiom, the tangent
//! bundle monad and its Kleisli category, the closed structure on finite
//! models and a small term language with a symbolic derivative.
//!
//! ```
//! use diffkit::{Element, Model, Space};
//!
//! let model = Model::findiff();
//! let z = Space::bounded(-100, 100);
//! let sq = model.primitives(&z).unwrap().get("sq").unwrap().clone();
//! let d = model.derivative(&sq).unwrap();
//! assert_eq!(d.eval(&Element::ints(&[3, 2])), Element::int(16));
//! ```

pub mod change_action;
pub mod dual;
pub mod element;
pub mod equality;
pub mod error;
pub mod kernel;
pub mod lambda;
pub mod models;
pub mod morphism;
pub mod report;
pub mod space;
pub mod tangent;
pub mod term;

pub use change_action::ChangeAction;
pub use dual::DualNumber;
pub use element::{Element, Scalar};
pub use equality::{morphisms_equal, Counterexample, EqualityReport, EqualityStrategy, Mode};
pub use error::{Error, Result};
pub use kernel::{check_axiom, run_suite, AxiomId, DifferenceCategory, Model, ModelTag};
pub use models::Registry;
pub use morphism::Morphism;
pub use report::{LawReport, Verdict};
pub use space::Space;
