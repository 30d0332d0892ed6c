//! Combinatorics and analysis of the parenthesized braid operad.
//!
//! The crate is organised bottom-up:
//!
//! * [`tree`] and [`perm`]: labeled binary trees, the magma operad and the
//!   permutation operad.
//! * [`braid`]: braid words, exact equality, cabling, parenthesized braids
//!   and coherence checks.
//! * [`coeff`]: exact coefficients in cyclotomic fields adjoined a symbol
//!   for `iπ`.
//! * [`series`]: truncated multivariate log-Puiseux series.
//! * [`config`]: rational functions on configuration space and their
//!   expansions in tree coordinates.
//! * [`transform`]: the action of the braid generators on expansions and
//!   numeric analytic continuation.
//! * [`frobenius`]: series solutions of regular singular equations.

pub mod braid;
pub mod coeff;
pub mod config;
pub mod error;
pub mod frobenius;
pub mod par;
pub mod perm;
pub mod random;
pub mod series;
pub mod transform;
pub mod tree;

pub use error::{Error, Result};
