//! Exact-arithmetic algebraicity checks for matrix Lie algebras over Q.
//!
//! The crate computes Chevalley-Jordan decompositions `X = X_s + X_n`, the
//! replica algebra `g(X)` of a single matrix (the smallest algebraic Lie
//! algebra containing it), and uses them to refute algebraicity of a Lie
//! subalgebra of `gl(n)` by an explicit witness, or to build its algebraic
//! hull. Everything is exact; there are no tolerances.

pub mod algebraicity;
pub mod catalog;
pub mod error;
pub mod jordan;
pub mod liealg;
pub mod ratlinalg;
pub mod replica;
pub mod reproduce;

pub use error::{Error, Result};
pub use ratlinalg::{QMatrix, QPoly, Rational, Subspace};
