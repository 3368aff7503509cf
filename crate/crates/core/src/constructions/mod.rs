//! Concrete families of groups, their automorphisms, and matrices over
//! finite fields.

mod automorphism;
mod families;
mod field;
mod matrix;
mod selector;

pub use automorphism::{AutKind, AutLabel, AutRealization};
pub use families::{
    alternating_generators, make_alternating, make_pgl2, make_psl2, make_psl3, make_symmetric,
    Construction,
};
pub use field::{prime_power, FiniteField, FqElement, MAX_FIELD_ORDER};
pub use matrix::{
    companion, nu, nu_ratio_bound, primitive_polynomial, singer_matrix, transvection, MatrixFq,
};
pub use selector::{AutSelector, GroupSpec};
