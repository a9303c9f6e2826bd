//! Permutation equivalence of binary codes: automorphism groups, canonical
//! labelings and keys, constrained subcode search and code orbits.
//!
//! Codes are turned into a bipartite structure of coordinates against the
//! lowest weight layers that span each code. Colors are refined to an
//! equitable partition after each individualized coordinate; leaves are
//! compared through the reduced echelon form of the relabeled codes, so a
//! reported equivalence or automorphism is always checked exactly.

mod group;
mod refine;
mod search;
mod subcodes;

use std::collections::{BTreeMap, VecDeque};

pub use group::GroupDescription;
pub use subcodes::{subcodes_equivalent_to, SubcodeMatch, SubcodeSearch};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::perms::Permutation;

/// Resource caps for the backtracking searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Search-tree nodes before the search gives up.
    pub max_nodes: u64,
    /// Codewords allowed in the incidence structure.
    pub max_words: usize,
    /// Codes allowed in one orbit enumeration.
    pub max_orbit: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: 1_000_000_000,
            max_words: 200_000,
            max_orbit: 2_000_000,
        }
    }
}

/// A labeling that takes each code of a tuple to its canonical form.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub labeling: Permutation,
    pub key: Vec<u8>,
    pub group: GroupDescription,
}

pub fn automorphism_group(c: &LinearCode) -> Result<GroupDescription> {
    automorphism_group_of(std::slice::from_ref(c), SearchLimits::default())
}

/// Permutations preserving every code of the tuple simultaneously.
pub fn automorphism_group_of(codes: &[LinearCode], limits: SearchLimits) -> Result<GroupDescription> {
    let s = refine::Structure::new(codes, limits.max_words)?;
    let aut = search::Searcher::new(&s, limits.max_nodes).automorphisms()?;
    Ok(GroupDescription::new(s.n, aut.generators, aut.order))
}

pub fn canonical_form_of(codes: &[LinearCode], limits: SearchLimits) -> Result<Canonical> {
    let s = refine::Structure::new(codes, limits.max_words)?;
    let mut searcher = search::Searcher::new(&s, limits.max_nodes);
    let aut = searcher.automorphisms()?;
    let canon = searcher.canonical(&aut)?;
    Ok(Canonical {
        labeling: canon.labeling,
        key: canon.certificate,
        group: GroupDescription::new(s.n, aut.generators, aut.order),
    })
}

pub fn canonical_form(c: &LinearCode) -> Result<Canonical> {
    canonical_form_of(std::slice::from_ref(c), SearchLimits::default())
}

/// Bytes that agree exactly for equivalent codes: the canonical generator
/// matrix with its length and dimension.
pub fn canonical_key(c: &LinearCode) -> Result<Vec<u8>> {
    Ok(canonical_form(c)?.key)
}

/// A verified permutation mapping `a` onto `b`, if one exists.
pub fn is_equivalent(a: &LinearCode, b: &LinearCode) -> Result<Option<Permutation>> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    if a.k() != b.k() {
        return Ok(None);
    }
    let ca = canonical_form(a)?;
    let cb = canonical_form(b)?;
    if ca.key != cb.key {
        return Ok(None);
    }
    let w = ca.labeling.compose(&cb.labeling.inverse());
    if w.act_code(a)? != *b {
        return Err(Error::structural("equal canonical keys but the witness does not map a onto b"));
    }
    Ok(Some(w))
}

/// The orbit of `c` under the group generated by `gens`, by breadth-first
/// search; refuses once more than `cap` codes have been found.
pub fn code_orbit(c: &LinearCode, gens: &[Permutation], cap: usize) -> Result<Vec<LinearCode>> {
    Ok(orbit_with_transversal(c, gens, cap)?.into_iter().map(|(m, _)| m).collect())
}

/// Orbit of `c` as pairs `(m, t)` with `m = c^t`, sorted by code.
pub(crate) fn orbit_with_transversal(c: &LinearCode, gens: &[Permutation], cap: usize) -> Result<Vec<(LinearCode, Permutation)>> {
    if gens.iter().any(|g| g.degree() != c.n()) {
        return Err(Error::contract("group degree differs from code length"));
    }
    let mut seen = BTreeMap::from([(c.clone(), Permutation::identity(c.n()))]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(x) = queue.pop_front() {
        let tx = seen[&x].clone();
        for g in gens {
            let y = g.act_code(&x)?;
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), tx.compose(g));
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded {
                        needed: seen.len() as u128,
                        budget: cap as u128,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        LinearCode::parse(n, &rows.join("\n")).unwrap()
    }

    #[test]
    fn repetition_groups() {
        assert_eq!(automorphism_group(&LinearCode::repetition(2)).unwrap().order(), &BigUint::from(2u32));
        assert_eq!(automorphism_group(&LinearCode::repetition(4)).unwrap().order(), &BigUint::from(24u32));
        assert_eq!(automorphism_group(&LinearCode::zero(5)).unwrap().order(), &BigUint::from(120u32));
    }

    #[test]
    fn small_group_matches_enumeration() {
        let c = code(6, &["110000", "001100", "000011"]);
        let g = automorphism_group(&c).unwrap();
        assert_eq!(g.order(), &BigUint::from(48u32));
        let all = g.elements(1000).unwrap();
        assert_eq!(all.len(), 48);
        assert!(all.iter().all(|p| crate::perms::is_automorphism(&c, p)));
    }

    #[test]
    fn equivalence_witness() {
        let a = code(6, &["111000", "000111"]);
        let p = Permutation::parse(6, "(1,4,2)(3,6)").unwrap();
        let b = p.act_code(&a).unwrap();
        let w = is_equivalent(&a, &b).unwrap().unwrap();
        assert_eq!(w.act_code(&a).unwrap(), b);
        let other = code(6, &["110000", "001111"]);
        assert!(is_equivalent(&a, &other).unwrap().is_none());
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn orbit_of_pair_code() {
        let c = code(4, &["1100"]);
        let s4 = [Permutation::parse(4, "(1,2,3,4)").unwrap(), Permutation::parse(4, "(1,2)").unwrap()];
        assert_eq!(code_orbit(&c, &s4, 100).unwrap().len(), 6);
        assert_eq!(code_orbit(&c, &[], 100).unwrap(), vec![c.clone()]);
        assert!(code_orbit(&c, &s4, 3).is_err());
    }
}
