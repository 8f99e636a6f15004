//! Exact computer algebra for small connected Hopf algebras in positive
//! characteristic: finite fields, a Diamond-Lemma rewriting engine for
//! three-generator presentations, Hopf structure verification, coradical
//! filtrations, Hochschild cohomology of coalgebras, restricted Lie
//! algebras, and a catalog of the algebras of dimension p^3 together with
//! the isomorphism checks that separate them.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod hopf;
pub mod lie;
pub mod linalg;
pub mod rewrite;
pub mod tensor;

pub use error::{Error, Result};
