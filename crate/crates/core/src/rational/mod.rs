//! Exact one-variable laboratory: Gaussian-rational polynomials, the field
//! ℂ(x) with its coefficient-conjugation involution, and the symbolic
//! derivation family that separates local triple derivations from triple
//! derivations there.  No floating point and no tolerances — every equality
//! in this tree is coefficient-exact.

pub mod example;
pub mod gaussian;
pub mod poly;
pub mod ratfunc;

pub use example::{
    alpha, counterexample_certificate, delta_uv, is_triple_derivation_rf, solve_local_witness,
    triple_product_rf, DerivationVerdict, WitnessOutcome,
};
pub use gaussian::Gaussian;
pub use poly::Poly;
pub use ratfunc::RationalFunction;
