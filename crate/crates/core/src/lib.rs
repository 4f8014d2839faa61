//! Arithmetic of overpartition pairs.
//!
//! The crate is organized bottom-up:
//!
//! - [`series`]: exact truncated power series over `Z`, `Z/MZ` and `Z[z, 1/z]`
//! - [`special`]: Euler products, eta quotients, theta functions, Lambert series
//!   and the named generating functions built from them
//! - [`combinat`]: explicit overpartitions, overpartition pairs and their ranks
//! - [`arith`]: factorization and closed-form representation counts
//! - [`verify`]: a registry of named identity and congruence checks

pub mod arith;
pub mod combinat;
pub mod series;
pub mod special;
pub mod verify;

pub use series::{
    CoefficientRing, Integers, IntegersMod, LaurentIntPoly, LaurentPoly, Ring, SeriesError,
    TruncatedSeries,
};
