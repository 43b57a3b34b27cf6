//! Exact-arithmetic verification engine for Rogers-Ramanujan type q-series
//! identities and their partition-theoretic counterparts.
//!
//! Everything is computed over arbitrary-precision rationals as truncated
//! formal Laurent series in `q` (or series in `q` with polynomial
//! coefficients in a second variable `a`). There is no floating point
//! anywhere: a verification either matches coefficient-by-coefficient
//! through the requested order or reports the first mismatching exponent.
//!
//! Module map:
//! - [`series`]: truncated Laurent series arithmetic with explicit
//!   exactness-window bookkeeping.
//! - [`bivariate`]: series in `q` whose coefficients are Laurent
//!   polynomials in `a`, plus specialization `a := q^m`.
//! - [`qblocks`]: q-Pochhammer symbols, Gaussian polynomials, the mod-3
//!   character, theta sums/products, and a basic hypergeometric evaluator.
//! - [`partitions`]: brute-force partition enumeration under gap and
//!   congruence constraints, residue-class counting, generating functions.
//! - [`bailey`]: Bailey pairs as first-class values, the defining-relation
//!   check, two limiting-case lemmas, and Bailey-chain iteration.
//! - [`catalog`]: named builders for both sides of every identity in the
//!   catalog; the verification entry point.

pub mod bailey;
pub mod bivariate;
pub mod catalog;
pub mod partitions;
pub mod qblocks;
pub mod series;

pub use series::{Coefficient, LaurentSeries, SeriesError};
