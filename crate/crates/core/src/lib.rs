//! Balanced labellings of affine permutation diagrams.
//!
//! Affine permutations are handled in window notation. Their diagrams carry
//! balanced labellings (encoding reduced words) and set-valued balanced
//! labellings (encoding nilHecke words), whose generating functions give
//! affine Stanley symmetric functions, affine stable Grothendieck
//! polynomials, Grothendieck and Schubert polynomials. Permutation diagrams
//! are recognized among all periodic diagrams through content maps and
//! wiring diagrams.

pub mod affine;
pub mod cli;
pub mod content;
pub mod diagram;
pub mod error;
pub mod factorization;
pub mod labelling;
pub mod selftest;
pub mod set_valued;
pub mod symfunc;
pub mod universe;
pub mod wiring;

pub use affine::{AffinePermutation, NilHeckeWord, ReducedWord};
pub use diagram::{AffineDiagram, Cell};
pub use error::{Error, Result};
pub use labelling::Labelling;
pub use set_valued::SetValuedLabelling;
pub use symfunc::SparsePolynomial;
