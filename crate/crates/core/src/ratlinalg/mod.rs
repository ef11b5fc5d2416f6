//! Exact linear algebra over the rationals.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod rref;
pub mod subspace;

pub use lattice::{integer_kernel, IntegerLattice};
pub use matrix::QMatrix;
pub use poly::{charpoly, minpoly, QPoly};
pub use rational::Rational;
pub use rref::{kernel, rref, Rref};
pub use subspace::{span_contains, subspace_equal, subspace_sum, Subspace};
