//! Exact checks for total positivity, total nonnegativity and sign
//! regularity of fully specified and partial matrices.
//!
//! * [`dodgson`]: cubic-time total positivity test by condensation.
//! * [`oracle`]: brute force over every specified minor; the reference all
//!   other checkers are tested against.
//! * [`partial`] and [`biclique`]: partial-matrix checkers that reduce to
//!   fully specified subproblems.
//! * [`generator`]: sign-regular matrices for any signature.
//! * [`reduction`]: the balanced-biclique gadget and its verifier.

pub mod bench;
pub mod biclique;
pub mod checker;
pub mod det;
pub mod document;
pub mod dodgson;
pub mod error;
pub mod generator;
pub mod matrix;
pub mod oracle;
pub mod partial;
pub mod reduction;
pub mod report;
pub mod signature;

pub use biclique::{BipartiteGraph, Biclique};
pub use checker::{check, Method, Property};
pub use error::{Error, Result};
pub use matrix::{parse_partial_matrix, IndexSet, Matrix, PartialMatrix, Rational};
pub use oracle::PropertySpec;
pub use report::{CheckReport, Counters, MinorWitness, Verdict};
pub use signature::{Sign, Signature};
