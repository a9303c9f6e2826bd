//! Bit-packed linear algebra over GF(2).

mod matrix;
mod vector;

pub use matrix::{intersection, sum_and_intersection, BitMatrix, Echelon, IncrementalEchelon};
pub use vector::BitVector;
pub(crate) use vector::words_for;
