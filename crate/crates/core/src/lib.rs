//! Finite-dimensional second quantization.
//!
//! One-particle operators on lattice Hilbert spaces are lifted to fermionic and
//! truncated bosonic Fock spaces, where quasi-free representations, normal
//! ordered bilinears, Schwinger terms and Bogoliubov diagonalization become
//! exactly checkable matrix identities.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod linalg;
pub mod oneparticle;
pub mod par;
pub mod physics;
pub mod secondquant;
pub mod sampling;

pub use error::{Error, Result};
