//! Exact multivariate polynomials over `GF(p)` and `QQ`.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{determinant, rank};
pub use monomial::{Monomial, MAX_VARS};
pub use order::MonomialOrder;
pub use parse::{format_polynomial, parse_polynomial};
pub use poly::{random_bihomogeneous, BidegreeError, Grading, Polynomial, Ring, RingExt};
