//! Exhaustive enumeration of invariant subspaces, used as an independent
//! check of the module-theoretic counting facts at small sizes.

use std::collections::BTreeSet;

use super::{AlgebraElement, CyclicModule, Layout, ModuleType};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::BitVector;
use crate::perms::Permutation;

/// Largest space dimension the brute-force routines accept (2⁸ elements).
pub const BRUTE_FORCE_MAX_DIM: usize = 8;

fn check_cap(space: &LinearCode) -> Result<()> {
    if space.k() > BRUTE_FORCE_MAX_DIM {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << space.k(),
            budget: 1u128 << BRUTE_FORCE_MAX_DIM,
        });
    }
    Ok(())
}

/// Smallest subspace containing `x` and closed under `gens`.
fn closure(x: &BitVector, gens: &[Permutation]) -> LinearCode {
    let n = x.len();
    let mut code = LinearCode::from_generators(n, [x.clone()]).expect("length");
    loop {
        let images: Vec<BitVector> = code
            .basis()
            .rows()
            .iter()
            .flat_map(|r| gens.iter().map(move |g| g.act_vector(r).expect("length")))
            .collect();
        let next = code.extend(images).expect("length");
        if next.k() == code.k() {
            return code;
        }
        code = next;
    }
}

/// Every subspace of `space` invariant under `gens`, sorted by dimension
/// then by basis.
pub fn invariant_subspaces(space: &LinearCode, gens: &[Permutation]) -> Result<Vec<LinearCode>> {
    check_cap(space)?;
    for g in gens {
        if !crate::perms::is_automorphism(space, g) {
            return Err(Error::contract("space is not invariant under the given generators"));
        }
    }
    let cyclic: BTreeSet<LinearCode> = space.codewords().filter(|x| !x.is_zero()).map(|x| closure(&x, gens)).collect();
    let mut found: BTreeSet<LinearCode> = BTreeSet::new();
    let mut frontier = vec![LinearCode::zero(space.n())];
    found.insert(frontier[0].clone());
    while let Some(w) = frontier.pop() {
        for c in &cyclic {
            if c.is_subcode_of(&w) {
                continue;
            }
            let s = w.sum(c)?;
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut out: Vec<LinearCode> = found.into_iter().collect();
    out.sort_by(|a, b| a.k().cmp(&b.k()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubmoduleKind {
    Zero,
    /// Irreducible (type I cyclic).
    Irreducible,
    /// Cyclic of type II.
    TypeII,
    /// Neither cyclic of type I nor of type II.
    Other,
}

#[derive(Clone, Debug)]
pub struct SubmoduleInfo {
    pub code: LinearCode,
    pub kind: SubmoduleKind,
    pub socle_dim: usize,
}

/// All `g`-invariant subspaces of a `g`-invariant `space ⊆ V₂`, tagged.
pub fn submodule_lattice(layout: &Layout, space: &LinearCode) -> Result<Vec<SubmoduleInfo>> {
    if !space.is_subcode_of(layout.v2()) {
        return Err(Error::contract("lattice enumeration needs a subspace of V2"));
    }
    let subs = invariant_subspaces(space, &[layout.g().clone()])?;
    let cyclic: BTreeSet<LinearCode> = type_ii_modules(layout, space)?.into_iter().map(|q| q.span).collect();
    subs.into_iter()
        .map(|code| {
            let socle_dim = code.intersection(layout.socle_ambient())?.k();
            let kind = match code.k() {
                0 => SubmoduleKind::Zero,
                2 if socle_dim == 2 => SubmoduleKind::Irreducible,
                4 if cyclic.contains(&code) => SubmoduleKind::TypeII,
                _ => SubmoduleKind::Other,
            };
            Ok(SubmoduleInfo { code, kind, socle_dim })
        })
        .collect()
}

/// Distinct type-II cyclic submodules of a `g`-invariant `space ⊆ V₂`,
/// found by generating from every element.
pub fn type_ii_modules(layout: &Layout, space: &LinearCode) -> Result<Vec<CyclicModule>> {
    check_cap(space)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in space.codewords() {
        if x.is_zero() {
            continue;
        }
        let m = layout.cyclic_module(&x)?;
        if m.module_type == ModuleType::II && seen.insert(m.span.clone()) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Structure of the ideal `𝓘 = (f₂)` of F₂⟨g⟩.
#[derive(Clone, Debug)]
pub struct IdealReport {
    pub ideal_dim: usize,
    pub ideal_size: usize,
    /// Nonzero proper ideals contained in `𝓘`.
    pub proper_subideals: Vec<LinearCode>,
    /// `𝓙 = 𝓘(1+g³)`.
    pub j: LinearCode,
    pub j_annihilated: bool,
    /// Irreducible F₂⟨g²⟩-submodules of `𝓘`, `𝓙` among them.
    pub irreducible_g2: Vec<LinearCode>,
    /// Every one other than `𝓙` maps onto `𝓙` under `1+g³` and complements it.
    pub others_complement_j: bool,
}

impl IdealReport {
    pub fn holds(&self) -> bool {
        self.ideal_dim == 4
            && self.ideal_size == 16
            && self.proper_subideals.len() == 1
            && self.proper_subideals[0] == self.j
            && self.j.k() == 2
            && self.j_annihilated
            && self.irreducible_g2.len() == 5
            && self.irreducible_g2.contains(&self.j)
            && self.others_complement_j
    }
}

/// Enumerates `(f₂)` inside F₂⟨g⟩, identified with F₂⁶ where `g` acts as
/// the 6-cycle (the regular module).
pub fn ideal_structure_check() -> Result<IdealReport> {
    let lay = Layout::new(1);
    let alg: Vec<BitVector> = (0u64..64).map(|a| BitVector::from_words(6, vec![a])).collect();
    let ideal = LinearCode::from_generators(
        6,
        alg.iter().map(|a| lay.apply(a, AlgebraElement::f2())).collect::<Result<Vec<_>>>()?,
    )?;
    let ideal_size = ideal.codewords().count();
    let times = |c: &LinearCode| -> Result<LinearCode> {
        let rows = c.basis().rows().iter().map(|r| lay.apply(r, AlgebraElement::one_plus_g3())).collect::<Result<Vec<_>>>()?;
        LinearCode::from_generators(6, rows)
    };
    let j = times(&ideal)?;
    let j_annihilated = times(&j)?.k() == 0;
    let proper_subideals: Vec<LinearCode> = invariant_subspaces(&ideal, &[lay.g().clone()])?
        .into_iter()
        .filter(|s| s.k() > 0 && s.k() < ideal.k())
        .collect();
    let g2_subs = invariant_subspaces(&ideal, &[lay.g_pow(2).clone()])?;
    let irreducible_g2: Vec<LinearCode> = g2_subs
        .iter()
        .filter(|s| s.k() > 0 && !g2_subs.iter().any(|t| t.k() > 0 && t.k() < s.k() && t.is_subcode_of(s)))
        .cloned()
        .collect();
    let mut others_complement_j = true;
    for l in irreducible_g2.iter().filter(|l| **l != j) {
        let ok = times(l)? == j && l.intersection(&j)?.k() == 0 && l.sum(&j)? == ideal;
        others_complement_j &= ok;
    }
    Ok(IdealReport {
        ideal_dim: ideal.k(),
        ideal_size,
        proper_subideals,
        j,
        j_annihilated,
        irreducible_g2,
        others_complement_j,
    })
}
