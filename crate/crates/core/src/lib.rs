//! Exact-arithmetic geometry of numbers at desk scale.
//!
//! Everything in this crate computes over arbitrary-precision rationals:
//! lattice point counts, polytope volumes, Minkowski sums, polar duals,
//! Davenport-style volume decompositions, and a battery of certified
//! inequality checks, plus an exhaustive unimodular classification search
//! for small centrally symmetric lattice polytopes.

pub mod bounds;
pub mod classify;
pub mod corpus;
pub mod davenport;
mod error;
pub mod exact;
pub mod io;
pub mod lattice;
pub mod polytope;

pub use error::{Error, Result};
pub use exact::{IntMatrix, PiScaled, Rational};
pub use polytope::{HPolytope, VPolytope};
