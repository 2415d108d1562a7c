//! Exact differential algebra over fields of positive characteristic.
//!
//! The coefficient fields are the purely transcendental presentations
//! `GF(p)(c1,...,cm)(t)` with `δci = 0` and `δt = 1` (or the zero derivation).
//! On top of them the crate provides the differential polynomial ring
//! `K{x}`, Ritt reduction with checkable certificates, membership in the
//! saturated ideals `[f]:s_f^∞`, arithmetic in their generic-solution fields,
//! differential p-bases with λ-functions, and prolongation equations.

pub mod diffpoly;
pub mod error;
pub mod field;
pub mod prolongation;
pub mod pstructure;
pub mod quotient;
pub mod reduction;
pub mod sample;

pub use diffpoly::{DerivVar, DiffPoly, DiffRing, Rank, Ring};
pub use error::{Error, Result};
pub use field::{Field, FieldPresentation, RationalFunction};
