//! Generators of the modules in `H_p` and their classes modulo a socle.
//!
//! For `p = ⟨v⟩` of type I, every `h ∈ H_p` has a unique generator `z` with
//! `z(1+g³) = v`, and `h = ⟨z, zg²⟩`. The admissible `z` form the coset
//! `z₀ + V₂(g³)`, solved block by block. Two modules give the same
//! `S + h` exactly when their generators differ by an element of `S`, so a
//! complement `U` of `S` in `V₂(g³)` indexes the classes by `z₀ + U`.

use super::{AlgebraElement, CyclicModule, Layout, ModuleType};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::{BitVector, IncrementalEchelon};

/// The four possible restrictions of a `g³`-fixed vector of `V₂` to one
/// block, labelled A–D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockPattern {
    A,
    B,
    C,
    D,
}

pub const BLOCK_PATTERNS: [BlockPattern; 4] = [BlockPattern::A, BlockPattern::B, BlockPattern::C, BlockPattern::D];

impl BlockPattern {
    pub fn bits(self) -> u8 {
        // bit i = coordinate i of the block
        match self {
            BlockPattern::A => 0b000000,
            BlockPattern::B => 0b011011,
            BlockPattern::C => 0b110110,
            BlockPattern::D => 0b101101,
        }
    }

    pub fn vector(self) -> BitVector {
        BitVector::from_words(6, vec![self.bits() as u64])
    }

    pub fn from_bits(bits: u8) -> Option<Self> {
        BLOCK_PATTERNS.into_iter().find(|p| p.bits() == bits)
    }
}

fn block_bits(v: &BitVector, b: usize) -> u8 {
    (0..6).filter(|&o| v.get(6 * b + o)).map(|o| 1u8 << o).sum()
}

fn even_on_g2_orbits(z: u8) -> bool {
    (z & 0b010101).count_ones() % 2 == 0 && (z & 0b101010).count_ones() % 2 == 0
}

fn times_one_plus_g3(z: u8) -> u8 {
    z ^ ((z << 3 | z >> 3) & 0x3f)
}

/// All 6-bit `z`, even on both `g²`-orbits, with `z(1+g³)` equal to the
/// pattern; found by scanning the 64 block vectors. Sorted.
pub fn block_solutions(pattern: BlockPattern) -> Vec<BitVector> {
    let mut out: Vec<BitVector> = (0u8..64)
        .filter(|&z| even_on_g2_orbits(z) && times_one_plus_g3(z) == pattern.bits())
        .map(|z| BitVector::from_words(6, vec![z as u64]))
        .collect();
    out.sort();
    out
}

/// Which code must stay doubly-even when a module from `H_p` is adjoined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DoublyEvenFilter {
    /// `⟨L, z, zg²⟩` for the candidate code `L` being extended.
    #[default]
    AmbientCode,
    /// `⟨S, z, zg²⟩` for the socle `S` alone.
    SocleOnly,
    /// No filtering.
    Off,
}

impl DoublyEvenFilter {
    pub fn name(self) -> &'static str {
        match self {
            DoublyEvenFilter::AmbientCode => "ambient",
            DoublyEvenFilter::SocleOnly => "socle",
            DoublyEvenFilter::Off => "off",
        }
    }
}

impl std::str::FromStr for DoublyEvenFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambient" => Ok(Self::AmbientCode),
            "socle" => Ok(Self::SocleOnly),
            "off" => Ok(Self::Off),
            _ => Err(Error::contract(format!("unknown doubly-even filter {s:?}"))),
        }
    }
}

/// Class representatives of `H_p` modulo a socle `S ⊇ p`.
#[derive(Clone, Debug)]
pub struct HpClasses {
    v: BitVector,
    z0: BitVector,
    kernel: LinearCode,
    socle: LinearCode,
    complement: Vec<BitVector>,
    g2: crate::perms::Permutation,
}

impl HpClasses {
    pub fn new(layout: &Layout, p: &CyclicModule, socle: &LinearCode) -> Result<Self> {
        if p.module_type != ModuleType::I {
            return Err(Error::contract("H_p is defined for irreducible (type I) p"));
        }
        if !p.span.is_subcode_of(socle) {
            return Err(Error::contract("p is not contained in the socle"));
        }
        let kernel = layout.socle_ambient().clone();
        if !socle.is_subcode_of(&kernel) {
            return Err(Error::contract("socle is not contained in V2(g^3)"));
        }
        let v = p.generator.clone();
        let mut z0 = BitVector::zeros(layout.n());
        for b in 0..layout.blocks() {
            let pat = BlockPattern::from_bits(block_bits(&v, b))
                .ok_or_else(|| Error::structural(format!("block {} of the socle generator is not of type A-D", b + 1)))?;
            let sol = &block_solutions(pat)[0];
            for o in sol.iter_ones() {
                z0.set(6 * b + o, true);
            }
        }
        debug_assert_eq!(layout.apply(&z0, AlgebraElement::one_plus_g3())?, v);
        let mut inc = IncrementalEchelon::from_matrix(socle.basis());
        let mut complement = Vec::new();
        for r in kernel.basis().rows() {
            if inc.push(r.clone()) {
                complement.push(r.clone());
            }
        }
        Ok(Self {
            v,
            z0,
            kernel,
            socle: socle.clone(),
            complement,
            g2: layout.g_pow(2).clone(),
        })
    }

    /// The socle generator `v` that every `z` maps to.
    pub fn target(&self) -> &BitVector {
        &self.v
    }

    /// Dimension of the affine space of all generators (`log₂ |H_p|`).
    pub fn solution_dim(&self) -> usize {
        self.kernel.k()
    }

    /// `log₂` of the class size.
    pub fn class_size_log2(&self) -> usize {
        self.socle.k()
    }

    /// `log₂` of the number of classes.
    pub fn class_count_log2(&self) -> usize {
        self.complement.len()
    }

    pub fn class_count(&self) -> u64 {
        1u64 << self.class_count_log2()
    }

    /// Representative number `index`: `z₀` plus the complement vectors
    /// selected by the bits of `index`.
    pub fn representative(&self, index: u64) -> BitVector {
        let mut z = self.z0.clone();
        for (i, u) in self.complement.iter().enumerate() {
            if index >> i & 1 == 1 {
                z ^= u;
            }
        }
        z
    }

    pub fn representatives(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.class_count()).map(|i| self.representative(i))
    }

    pub fn same_class(&self, z1: &BitVector, z2: &BitVector) -> bool {
        self.socle.contains(&(z1 ^ z2))
    }

    /// Is `z` a generator of some module of `H_p`?
    pub fn is_generator(&self, z: &BitVector) -> bool {
        self.kernel.contains(&(z ^ &self.z0))
    }

    /// Basis `(z, zg²)` of the module `h` generated by `z`.
    pub fn module_basis(&self, z: &BitVector) -> [BitVector; 2] {
        [z.clone(), self.g2.act_vector(z).expect("length")]
    }

    /// Representatives passing the doubly-even filter, in index order,
    /// paired with their index.
    pub fn doubly_even_representatives(
        &self,
        ambient: &LinearCode,
        mode: DoublyEvenFilter,
    ) -> Result<Vec<(u64, BitVector)>> {
        let base = match mode {
            DoublyEvenFilter::AmbientCode => Some(ambient),
            DoublyEvenFilter::SocleOnly => Some(&self.socle),
            DoublyEvenFilter::Off => None,
        };
        if let Some(b) = base {
            if !b.is_doubly_even() {
                return Err(Error::contract("doubly-even filter base code is not doubly-even"));
            }
        }
        let mut out = Vec::new();
        for i in 0..self.class_count() {
            let z = self.representative(i);
            if base.is_none_or(|b| self.keeps_doubly_even(b, &z)) {
                out.push((i, z));
            }
        }
        Ok(out)
    }

    /// Whether `⟨base, z, zg²⟩` is doubly-even, for doubly-even `base`.
    pub fn keeps_doubly_even(&self, base: &LinearCode, z: &BitVector) -> bool {
        let [a, b] = self.module_basis(z);
        a.weight() % 4 == 0
            && b.weight() % 4 == 0
            && !a.dot(&b)
            && base.basis().rows().iter().all(|r| !r.dot(&a) && !r.dot(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(strs: &[&str]) -> Vec<BitVector> {
        let mut v: Vec<BitVector> = strs.iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn patterns_render() {
        assert_eq!(BlockPattern::B.vector().to_string(), "110110");
        assert_eq!(BlockPattern::C.vector().to_string(), "011011");
        assert_eq!(BlockPattern::D.vector().to_string(), "101101");
    }

    #[test]
    fn block_tables() {
        assert_eq!(block_solutions(BlockPattern::A), set(&["000000", "110110", "011011", "101101"]));
        assert_eq!(block_solutions(BlockPattern::B), set(&["100010", "010100", "111001", "001111"]));
        assert_eq!(block_solutions(BlockPattern::C), set(&["010001", "001010", "111100", "100111"]));
        assert_eq!(block_solutions(BlockPattern::D), set(&["101000", "000101", "011110", "110011"]));
    }
}
