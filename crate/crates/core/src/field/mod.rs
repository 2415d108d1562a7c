//! The coefficient field `K = GF(p)(c1..cm)(t)`: exact arithmetic, the
//! derivation, Frobenius, and linear algebra over `K^p`.

pub mod pcoords;
pub mod poly;
mod presentation;
mod rational;

pub use pcoords::{
    independent_over_pth_powers, p_coordinates, rank_over_pth_powers, solve_over_pth_powers,
    standard_basis, LinearSolve, PCoordinates,
};
pub use presentation::{make_presentation, Field, FieldPresentation, DIFF_GEN};
pub use rational::RationalFunction;

pub(crate) use presentation::validate_name;

/// `δa` for an element of `K`.
pub fn derive(a: &RationalFunction) -> RationalFunction {
    a.derive()
}
