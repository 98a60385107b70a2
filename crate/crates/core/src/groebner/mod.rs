//! Gröbner bases of ideals and submodules of free modules.

pub mod engine;
pub mod ideal;
pub mod module;

pub use engine::{groebner_basis, Buchberger};
pub use ideal::{
    buchberger, buchberger_capped, colon_by_poly, colon_ideal, gcd, intersect, lead_ideal, minimal_generators,
    minimal_generators_vec, normal_form, saturate_irrelevant, GroebnerBasis, Ideal,
};
pub use module::{CompInfo, FreeModule, Term, VecOps, Vector};
