//! Binary code engine and F₂⟨g⟩ module machinery for the exhaustive search
//! for an extremal self-dual doubly-even `[72,36,16]` code admitting an
//! automorphism of order 6.
//!
//! Layers, bottom-up:
//! - [`gf2linalg`]: packed vectors and matrices over GF(2).
//! - [`codes`]: linear codes, duals, low-weight search, block projections.
//! - [`perms`]: coordinate permutations, fixed and even-orbit subcodes,
//!   Schreier–Sims stabilizer chains.
//! - [`groupalg`]: the group algebra F₂⟨g⟩ for `g` of order 6 and its
//!   cyclic modules, socles and the `H_p` sets.
//! - [`equivalence`]: canonical labeling, automorphism groups, subcode search.
//! - [`codedata`]: reference codes, code stores and checkpoints.
//! - [`searchpipeline`]: the staged search from fixed codes to the sieve.
//! - [`lemmas`]: brute-force verification of the module-theoretic facts
//!   the search relies on, at scaled sizes.

// Codes key ordered maps by basis; their cached enumerator does not affect
// ordering. Addition in F2<g> is XOR.
#![allow(clippy::manual_is_multiple_of, clippy::mutable_key_type, clippy::suspicious_arithmetic_impl)]

pub mod codedata;
pub mod codes;
pub mod equivalence;
pub mod error;
pub mod gf2linalg;
pub mod groupalg;
pub mod lemmas;
pub mod perms;
pub mod searchpipeline;

pub use codes::LinearCode;
pub use error::{Error, Result};
pub use gf2linalg::{BitMatrix, BitVector};
pub use perms::Permutation;
