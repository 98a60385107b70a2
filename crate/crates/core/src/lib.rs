//! Exact computations with Milnor algebras of projective hypersurfaces.

#![allow(clippy::type_complexity, clippy::wrong_self_convention)]

pub mod bigraded;
pub mod error;
pub mod families;
pub mod groebner;
pub mod hilbert;
pub mod milnor;
pub mod polyring;
pub mod resolution;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/milnor.md")]
    mod milnor {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/bigraded.md")]
    mod bigraded {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
