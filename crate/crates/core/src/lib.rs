//! Permutation polynomials of finite fields built from rational maps that
//! permute the roots of unity μ_{q+1}, together with exhaustive verifiers.
//!
//! Layers, bottom up: [`field`] (table-driven F_{p^m}), [`poly`]
//! (polynomials and rational maps), [`association`] and [`mu_maps`]
//! (relations and bijections on μ_D), [`families`] (constructions) and
//! [`verify`] (brute-force permutation checks).

pub mod association;
pub mod cli;
pub mod error;
pub mod families;
pub mod field;
pub mod mu_maps;
pub mod numtheory;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use poly::{Polynomial, ProjValue, RationalMap};
