//! The group algebra F₂⟨g⟩ for `g` of order 6 acting on F₂^{6m}, and its
//! submodules: the idempotent split `V = V₁ ⊕ V₂`, cyclic modules, socles
//! and the sets `H_p`.

mod hp;
mod oracle;

use std::fmt;
use std::ops::{Add, Mul};

pub use hp::{block_solutions, BlockPattern, DoublyEvenFilter, HpClasses, BLOCK_PATTERNS};
pub use oracle::{
    ideal_structure_check, invariant_subspaces, submodule_lattice, type_ii_modules, IdealReport, SubmoduleInfo,
    SubmoduleKind, BRUTE_FORCE_MAX_DIM,
};

use crate::codes::LinearCode;
use crate::error::{check_len, Error, Result};
use crate::gf2linalg::BitVector;
use crate::perms::{even_orbit_subcode, orbit_space, standard_g, Permutation};

/// `Σ aᵢ gⁱ` with bit `i` holding `aᵢ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlgebraElement(u8);

impl AlgebraElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn from_coeffs(c: [bool; 6]) -> Self {
        Self(c.iter().enumerate().map(|(i, &b)| (b as u8) << i).sum())
    }

    pub fn from_mask(mask: u8) -> Self {
        Self(mask & 0x3f)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// `gⁱ`.
    pub fn g_pow(i: usize) -> Self {
        Self(1 << (i % 6))
    }

    pub fn coeff(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// `f₁ = 1 + g² + g⁴`.
    pub fn f1() -> Self {
        Self(0b010101)
    }

    /// `f₂ = g² + g⁴`.
    pub fn f2() -> Self {
        Self(0b010100)
    }

    /// `1 + g³`.
    pub fn one_plus_g3() -> Self {
        Self(0b001001)
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 ^ o.0)
    }
}

impl Mul for AlgebraElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut r = 0u8;
        for i in 0..6 {
            if self.coeff(i) {
                r ^= (((o.0 as u16) << i | (o.0 as u16) >> (6 - i)) & 0x3f) as u8;
            }
        }
        Self(r)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..6)
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Action data for `m` blocks of six coordinates.
#[derive(Clone, Debug)]
pub struct Layout {
    m: usize,
    g_pows: Vec<Permutation>,
    v1: LinearCode,
    v2: LinearCode,
    k: LinearCode,
}

impl Layout {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "at least one block");
        let g = standard_g(m);
        let g_pows: Vec<Permutation> = (0..6).map(|i| g.pow(i)).collect();
        let v1 = orbit_space(&g_pows[2]);
        let v2 = v1.dual();
        let k = v2.intersection(&orbit_space(&g_pows[3])).expect("same length");
        Self { m, g_pows, v1, v2, k }
    }

    pub fn blocks(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        6 * self.m
    }

    pub fn g(&self) -> &Permutation {
        &self.g_pows[1]
    }

    pub fn g_pow(&self, i: usize) -> &Permutation {
        &self.g_pows[i % 6]
    }

    /// `V₁ = V f₁`, the `g²`-fixed vectors.
    pub fn v1(&self) -> &LinearCode {
        &self.v1
    }

    /// `V₂ = V f₂`, the vectors of even weight on every `g²`-orbit.
    pub fn v2(&self) -> &LinearCode {
        &self.v2
    }

    /// `V₂(g³)`, the `g³`-fixed part of `V₂`.
    pub fn socle_ambient(&self) -> &LinearCode {
        &self.k
    }

    pub fn apply(&self, v: &BitVector, a: AlgebraElement) -> Result<BitVector> {
        check_len(self.n(), v.len())?;
        let mut out = BitVector::zeros(v.len());
        for i in 0..6 {
            if a.coeff(i) {
                out ^= &self.g_pows[i].act_vector(v)?;
            }
        }
        Ok(out)
    }

    pub fn is_g_invariant(&self, c: &LinearCode) -> bool {
        c.n() == self.n() && crate::perms::is_automorphism(c, self.g())
    }

    /// `C·f` for a `g`-invariant code `C`.
    pub fn project_idempotent(&self, c: &LinearCode, which: Idempotent) -> Result<LinearCode> {
        if !self.is_g_invariant(c) {
            return Err(Error::contract("idempotent projection needs a g-invariant code"));
        }
        let f = match which {
            Idempotent::F1 => AlgebraElement::f1(),
            Idempotent::F2 => AlgebraElement::f2(),
        };
        let rows = c.basis().rows().iter().map(|r| self.apply(r, f)).collect::<Result<Vec<_>>>()?;
        LinearCode::from_generators(c.n(), rows)
    }

    /// `C(g²)` and `E(g²)` of a `g`-invariant code.
    pub fn fixed_and_even(&self, c: &LinearCode) -> Result<(LinearCode, LinearCode)> {
        let g2 = self.g_pow(2);
        Ok((crate::perms::fixed_subcode(c, g2)?, even_orbit_subcode(c, g2)?))
    }

    /// `soc(M) = M ∩ V₂(g³)` for a `g`-invariant `M ⊆ V₂`.
    pub fn socle(&self, m: &LinearCode) -> Result<LinearCode> {
        if !m.is_subcode_of(&self.v2) {
            return Err(Error::contract("socle needs a submodule of V2"));
        }
        if !self.is_g_invariant(m) {
            return Err(Error::contract("socle needs a g-invariant space"));
        }
        m.intersection(&self.k)
    }

    /// `(C₂ + C₃) ∩ V₂` for `C₂` fixed by `g²` and `C₃` fixed by `g³`.
    pub fn socle_of_e(&self, c2: &LinearCode, c3: &LinearCode) -> Result<LinearCode> {
        check_len(self.n(), c2.n())?;
        check_len(self.n(), c3.n())?;
        if !c2.is_subcode_of(&orbit_space(self.g_pow(2))) {
            return Err(Error::contract("first code is not fixed word by word by g^2"));
        }
        if !c3.is_subcode_of(&orbit_space(self.g_pow(3))) {
            return Err(Error::contract("second code is not fixed word by word by g^3"));
        }
        c2.sum(c3)?.intersection(&self.v2)
    }

    /// The cyclic module generated by a nonzero `v ∈ V₂`.
    pub fn cyclic_module(&self, v: &BitVector) -> Result<CyclicModule> {
        check_len(self.n(), v.len())?;
        if v.is_zero() || !self.v2.contains(v) {
            return Err(Error::contract("cyclic module generator must be a nonzero vector of V2"));
        }
        let span = LinearCode::from_generators(v.len(), (0..6).map(|i| self.g_pows[i].act_vector(v).expect("length")))?;
        let fixed_by_g3 = self.g_pows[3].act_vector(v)? == *v;
        let module_type = match (span.k(), fixed_by_g3) {
            (2, true) => ModuleType::I,
            (4, false) => ModuleType::II,
            (k, f) => {
                return Err(Error::structural(format!(
                    "cyclic module of dimension {k} (g3-fixed: {f}) is neither type I nor type II"
                )))
            }
        };
        let socle = span.intersection(&self.k)?;
        Ok(CyclicModule {
            generator: v.clone(),
            module_type,
            span,
            socle,
        })
    }

    /// Splits a socle of dimension `2r` into `r` type-I summands.
    pub fn decompose_socle(&self, s: &LinearCode) -> Result<Vec<CyclicModule>> {
        if s.k() % 2 != 0 {
            return Err(Error::contract(format!("socle dimension {} is odd", s.k())));
        }
        if !s.is_subcode_of(&self.k) || !self.is_g_invariant(s) {
            return Err(Error::contract("decomposition needs a g-invariant subspace of V2(g^3)"));
        }
        let mut acc = LinearCode::zero(s.n());
        let mut parts = Vec::new();
        for v in s.basis().rows() {
            if acc.contains(v) {
                continue;
            }
            let p = self.cyclic_module(v)?;
            debug_assert_eq!(p.module_type, ModuleType::I);
            acc = acc.sum(&p.span)?;
            parts.push(p);
        }
        debug_assert_eq!(acc, *s);
        Ok(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Idempotent {
    F1,
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleType {
    /// Irreducible, dimension 2, fixed by `g³`.
    I,
    /// Indecomposable, dimension 4, with a 2-dimensional socle.
    II,
}

#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub generator: BitVector,
    pub module_type: ModuleType,
    pub span: LinearCode,
    pub socle: LinearCode,
}

impl CyclicModule {
    pub fn dim(&self) -> usize {
        self.span.k()
    }

    pub fn elements(&self) -> Vec<BitVector> {
        self.span.codewords().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_identities() {
        let (f1, f2) = (AlgebraElement::f1(), AlgebraElement::f2());
        assert_eq!(f1 * f1, f1);
        assert_eq!(f2 * f2, f2);
        assert_eq!(f1 * f2, AlgebraElement::ZERO);
        assert_eq!(f1 + f2, AlgebraElement::ONE);
        assert_eq!(AlgebraElement::g_pow(4) * AlgebraElement::g_pow(5), AlgebraElement::g_pow(3));
    }

    #[test]
    fn apply_examples() {
        let lay = Layout::new(12);
        let e1 = BitVector::unit(72, 0);
        assert_eq!(lay.apply(&e1, AlgebraElement::ONE).unwrap(), e1);
        let f1e1 = lay.apply(&e1, AlgebraElement::f1()).unwrap();
        assert_eq!(f1e1, BitVector::from_indices(72, [0, 2, 4]));
    }

    #[test]
    fn ambient_dimensions() {
        let lay = Layout::new(12);
        assert_eq!(lay.v1().k(), 24);
        assert_eq!(lay.v2().k(), 48);
        assert_eq!(lay.socle_ambient().k(), 24);
        let full = LinearCode::full(72);
        assert_eq!(lay.project_idempotent(&full, Idempotent::F1).unwrap().k(), 24);
        assert_eq!(lay.project_idempotent(&full, Idempotent::F2).unwrap().k(), 48);
        let zero = LinearCode::zero(72);
        assert_eq!(lay.project_idempotent(&zero, Idempotent::F2).unwrap().k(), 0);
    }

    #[test]
    fn cyclic_module_types() {
        let lay = Layout::new(1);
        // 110110 is g3-fixed and even on both g2-orbits.
        let p = lay.cyclic_module(&"110110".parse().unwrap()).unwrap();
        assert_eq!((p.module_type, p.dim()), (ModuleType::I, 2));
        let q = lay.cyclic_module(&"100010".parse().unwrap()).unwrap();
        assert_eq!((q.module_type, q.dim(), q.socle.k()), (ModuleType::II, 4, 2));
        assert!(lay.cyclic_module(&"100000".parse().unwrap()).is_err());
    }

    #[test]
    fn socle_of_e_degenerate() {
        let lay = Layout::new(2);
        let c2 = orbit_space(lay.g_pow(2));
        let c3 = orbit_space(lay.g());
        assert_eq!(lay.socle_of_e(&c2, &c3).unwrap().k(), 0);
    }
}
