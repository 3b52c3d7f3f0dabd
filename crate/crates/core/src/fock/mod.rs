//! Fermionic and truncated bosonic Fock spaces with explicit sparse field
//! operators.

mod fields;
mod operator;
mod oracle;
mod space;

pub use fields::{annihilator, apply_creator, creator, field_op, mode_op, wedge_state, FieldPair};
pub use operator::{distance_to_scalar, FockOperator, FockVector};
pub use oracle::wedge_inner_oracle;
pub(crate) use space::Step;
pub use space::{make_fock, Budget, FockSpace, Statistics, BUDGET_ENV, DEFAULT_BUDGET};

#[cfg(test)]
mod tests;
