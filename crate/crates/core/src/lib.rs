//! Exact multidegrees, Segre numbers and mixed volumes for the standard
//! Cremona transformation of projective space.
//!
//! Everything is computed over arbitrary-precision rationals. The multidegrees
//! `d_k` of `S_n` are obtained three ways (binomial closed form, polarization
//! of mixed volumes of `±δ_n`, and coefficient extraction from the volume
//! polynomial of `aδ_n + b(-δ_n)`), and converted to and from Segre numbers by
//! a lower-triangular binomial matrix. A small exact simplex solver backs the
//! polyhedral predicates (extremality, full-dimensionality, vertex
//! enumeration) used by the polytope and fan code.
//!
//! Data-parallel loops (inclusion–exclusion terms, sweeps over `(a, b, n)`,
//! fan pair tests, per-row minors) go through [`Execution`]. With the default
//! `parallel` feature they run on rayon; without it every strategy is
//! sequential.

pub mod cli;
pub mod cremona;
mod error;
pub mod exact;
mod exec;
pub mod fan;
mod guard;
pub mod json;
pub mod lp;
pub mod mixed_volume;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{BivariatePolynomial, Rational, RationalMatrix};
pub use exec::Execution;
pub use guard::DeskGuards;
