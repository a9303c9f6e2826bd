//! Block layouts of F₂^{6m} under the standard order-6 permutation.
//!
//! Coordinates split into `m` blocks of six. Inside a block the orbits of
//! `g` are the whole block, the orbits of `g²` are `{0,2,4}` and `{1,3,5}`,
//! and the orbits of `g³` are `{0,3}`, `{1,4}` and `{2,5}` (0-based offsets).
//! Each embedding below writes one value per orbit; its projection reads
//! the first coordinate of each orbit after checking constancy.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::BitVector;

/// Which orbit structure a projection or embedding refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockMap {
    /// Orbits of `g`: one value per block (F₂^m ↔ F₂^{6m}).
    Pi12,
    /// Orbits of `g²`: two values per block (F₂^{2m} ↔ F₂^{6m}).
    Pi24,
    /// Orbits of `g³`: three values per block (F₂^{3m} ↔ F₂^{6m}).
    Pi36,
}

impl BlockMap {
    /// Number of values stored per block.
    pub fn per_block(self) -> usize {
        match self {
            BlockMap::Pi12 => 1,
            BlockMap::Pi24 => 2,
            BlockMap::Pi36 => 3,
        }
    }

    /// Index in the short vector that coordinate `i` of the long one reads.
    #[inline]
    fn source(self, i: usize) -> usize {
        let (b, o) = (i / 6, i % 6);
        let s = self.per_block();
        b * s + o % s
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockMap::Pi12 => "pi12",
            BlockMap::Pi24 => "pi24",
            BlockMap::Pi36 => "pi36",
        }
    }
}

fn blocks_of(len: usize) -> Result<usize> {
    if len % 6 != 0 {
        return Err(Error::structural(format!("length {len} is not a multiple of 6")));
    }
    Ok(len / 6)
}

/// Inverse image of a short vector under the projection `map`.
pub fn embed_vector(v: &BitVector, map: BlockMap) -> Result<BitVector> {
    let s = map.per_block();
    if v.len() % s != 0 {
        return Err(Error::Dimension {
            expected: v.len().next_multiple_of(s),
            found: v.len(),
        });
    }
    let m = v.len() / s;
    Ok(BitVector::from_indices(6 * m, (0..6 * m).filter(|&i| v.get(map.source(i)))))
}

/// Projection of an orbit-constant vector of length `6m`.
pub fn project_vector(v: &BitVector, map: BlockMap) -> Result<BitVector> {
    let m = blocks_of(v.len())?;
    let s = map.per_block();
    let mut out = BitVector::zeros(s * m);
    for i in 0..6 * m {
        let src = map.source(i);
        let first = (i / 6) * 6 + i % 6 % s;
        if v.get(i) != v.get(first) {
            let orbit: Vec<String> = (0..6 / s).map(|t| (first + t * s + 1).to_string()).collect();
            return Err(Error::structural(format!(
                "{}: vector is not constant on the orbit {{{}}}",
                map.name(),
                orbit.join(",")
            )));
        }
        if i % 6 < s && v.get(i) {
            out.set(src, true);
        }
    }
    Ok(out)
}

/// Sum of the six coordinates of each block.
pub fn phi_vector(v: &BitVector) -> Result<BitVector> {
    let m = blocks_of(v.len())?;
    Ok(BitVector::from_indices(
        m,
        (0..m).filter(|&b| (0..6).filter(|&o| v.get(6 * b + o)).count() % 2 == 1),
    ))
}

/// `map⁻¹(c)` as a code of length `6m`.
pub fn block_embed(c: &LinearCode, map: BlockMap) -> Result<LinearCode> {
    let rows = c.basis().rows().iter().map(|r| embed_vector(r, map)).collect::<Result<Vec<_>>>()?;
    LinearCode::from_generators(6 * (c.n() / map.per_block()), rows)
}

/// Checks the pattern length expected by the 72-coordinate layouts.
pub fn block_embed_72(c: &LinearCode, map: BlockMap) -> Result<LinearCode> {
    let expected = 12 * map.per_block();
    if c.n() != expected {
        return Err(Error::Dimension {
            expected,
            found: c.n(),
        });
    }
    block_embed(c, map)
}

/// Projection of an orbit-constant code; every codeword must be constant
/// on the orbits of `map`, otherwise a structural error names the orbit.
pub fn block_project(c: &LinearCode, map: BlockMap) -> Result<LinearCode> {
    let m = blocks_of(c.n())?;
    let rows = c.basis().rows().iter().map(|r| project_vector(r, map)).collect::<Result<Vec<_>>>()?;
    LinearCode::from_generators(m * map.per_block(), rows)
}

pub fn phi(c: &LinearCode) -> Result<LinearCode> {
    let m = blocks_of(c.n())?;
    let rows = c.basis().rows().iter().map(phi_vector).collect::<Result<Vec<_>>>()?;
    LinearCode::from_generators(m, rows)
}
