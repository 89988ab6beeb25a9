//! A desk-scale laboratory for finite-dimensional Jordan triple systems.
//!
//! The crate represents a triple system through its dense structure tensor,
//! builds the standard finite-dimensional factors (rectangular matrices, full
//! C*-algebras, hermitian Jordan algebras, Hilbert spaces, direct sums), and
//! mechanically checks the calculus that lives on top of them: Peirce
//! decompositions, triple derivations and their inner/characterization
//! descriptions, derivation pairs, and local triple derivations.  A separate
//! exact module over Gaussian-rational functions carries the one-variable
//! counterexample material.

pub mod derivations;
pub mod error;
pub mod factories;
pub mod linalg;
pub mod local;
pub mod pairs;
pub mod peirce;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod triple;

pub use error::{Error, Result};
pub use report::{CheckReport, Witness};
pub use sampling::Sampler;
pub use triple::{RealLinearMap, TripleSystem, UnitalStarAlgebra};
