//! Exact computation with hyperelliptic genus-3 curves in the standard form
//! `y² = (x⁴ − ax² + 1)(x⁴ − bx² + 1)` over small finite fields of odd
//! characteristic.
//!
//! The crate provides:
//!
//! - deterministic towers `F_p ⊂ F_{p²} ⊂ F_{p⁴} ⊂ F_{p⁸}` with exact
//!   arithmetic, square roots, and embeddings ([`field`]);
//! - supersingularity and superspeciality tests: the Deuring polynomial,
//!   Hasse invariants of quartic models, and the 3×3 Cartier–Manin matrix
//!   of the standard octic ([`supersingular`]);
//! - the fiber-product constructions behind the standard form: genus
//!   classification, the λ₃ formula, and both hyperellipticity criteria
//!   ([`howe`]);
//! - transforms between the standard form, its three elliptic quotients,
//!   and Legendre parameters, including the inverse map ([`standard_form`]);
//! - brute-force point counting over `F_{p^{2e}}` with maximal/minimal
//!   verdicts and twist analysis ([`point_count`]);
//! - geometric isomorphism testing via Möbius equivalence of branch loci
//!   and automorphism-group labeling ([`classify`]);
//! - exhaustive enumeration of superspecial curves per prime, deduplicated
//!   up to geometric isomorphism ([`enumerate`]).
//!
//! All arithmetic is exact; there are no floating-point operations anywhere.
//! Every public operation is deterministic: the same inputs produce
//! bit-identical outputs across runs and machines.
//!
//! The crate is `no_std` (it requires `alloc`); IO, serialization, and the
//! command-line interface live in the companion `howe-cli` crate.

#![no_std]

extern crate alloc;

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod howe;
pub mod point_count;
pub mod poly;
pub mod standard_form;
pub mod supersingular;

#[cfg(test)]
mod testutil;

pub use error::{DomainError, Error, InternalError, Result};
pub use field::{FieldCtx, FieldElem, Tower};
