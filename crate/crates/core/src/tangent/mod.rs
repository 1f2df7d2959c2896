//! The tangent monad, its Kleisli category and its linear algebras.

mod algebra;
mod kleisli;
mod monad;

pub use algebra::{check_linear_algebra, findiff_decomposition, AlgebraCandidate};
pub use kleisli::{
    check_kleisli_cdc, check_kleisli_compose, check_sharp, kleisli_add, kleisli_compose,
    kleisli_compose_closed, kleisli_compose_definitional, kleisli_compose_with, kleisli_derivative, kleisli_epsilon,
    kleisli_identity, kleisli_is_linear, kleisli_pair, oracle_strategy, random_kleisli, sharp, Kleisli, KleisliMap,
    ORACLE_POINTS,
};
pub use monad::{
    check_monad_laws, check_tangent_identities, interchange, interchange_inverse, multiplication, tangent_map,
    tangent_space, unit,
};
