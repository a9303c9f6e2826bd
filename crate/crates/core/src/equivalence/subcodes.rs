//! All subcodes of a host code that are permutation equivalent to a pattern.
//!
//! A linear map from the pattern into the host that preserves every weight
//! extends to a coordinate permutation (MacWilliams), and its image is then
//! equivalent to the pattern. The search fixes a basis of low-weight pattern
//! words and backtracks over host images of equal weight, checking the
//! weight of every partial sum. The first two levels are reduced by the
//! automorphism group of the host, and the hits are expanded back along its
//! orbits.

use std::collections::{BTreeMap, HashMap};

use super::{automorphism_group_of, canonical_form_of, orbit_with_transversal, SearchLimits};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::{BitVector, IncrementalEchelon};
use crate::perms::{fixed_subcode, Permutation};

#[derive(Clone, Debug)]
pub struct SubcodeMatch {
    pub code: LinearCode,
    /// Maps `code` onto the pattern.
    pub witness: Permutation,
}

#[derive(Clone, Debug)]
pub struct SubcodeSearch {
    /// Sorted by code.
    pub found: Vec<SubcodeMatch>,
    /// False when a resource cap stopped the search; `found` may then miss
    /// subcodes.
    pub complete: bool,
    pub nodes: u64,
}

/// Basis of `pattern` made of words of least possible weight, with the
/// weights of all subset sums (indexed by subset bit mask).
fn light_basis(pattern: &LinearCode, max_words: usize) -> Result<(Vec<BitVector>, Vec<usize>)> {
    let words = super::refine::spanning_words(pattern, max_words)?;
    let mut inc = IncrementalEchelon::new(pattern.n());
    let mut basis = Vec::new();
    for w in words {
        if inc.push(w.clone()) {
            basis.push(w);
        }
    }
    let k = basis.len();
    let mut sums = vec![BitVector::zeros(pattern.n()); 1 << k];
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] ^ &basis[low];
    }
    Ok((basis, sums.iter().map(BitVector::weight).collect()))
}

/// Indices of one word per orbit of the group on `words` (a set closed under
/// the group).
fn word_orbit_reps(words: &[BitVector], gens: &[Permutation]) -> Result<Vec<usize>> {
    let index: HashMap<&BitVector, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut seen = vec![false; words.len()];
    let mut reps = Vec::new();
    for s in 0..words.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        reps.push(s);
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for g in gens {
                let y = g.act_vector(&words[i])?;
                let j = *index
                    .get(&y)
                    .ok_or_else(|| Error::structural("word set is not closed under the group"))?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(reps)
}

struct Backtrack<'a> {
    weights: &'a [usize],
    by_weight: &'a BTreeMap<usize, Vec<BitVector>>,
    basis_wt: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    hits: Vec<LinearCode>,
}

impl Backtrack<'_> {
    /// `sums[mask]` holds the image of the pattern subset sum for masks below
    /// `1 << level`.
    fn run(&mut self, sums: &mut Vec<BitVector>, level: usize, first: Option<&[usize]>) -> bool {
        let k = self.basis_wt.len();
        if level == k {
            let rows = (0..k).map(|i| sums[1 << i].clone());
            self.hits.push(LinearCode::from_generators(sums[0].len(), rows).expect("equal lengths"));
            return true;
        }
        let Some(cands) = self.by_weight.get(&self.basis_wt[level]) else {
            return true;
        };
        let half = 1usize << level;
        let picks: Vec<usize> = match first {
            Some(f) => f.to_vec(),
            None => (0..cands.len()).collect(),
        };
        for ci in picks {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return false;
            }
            let v = &cands[ci];
            let ok = (0..half).all(|m| sums[m].xor_weight(v) == self.weights[half | m]);
            if !ok {
                continue;
            }
            for m in 0..half {
                let s = &sums[m] ^ v;
                sums.push(s);
            }
            let cont = self.run(sums, level + 1, None);
            sums.truncate(half);
            if !cont {
                return false;
            }
        }
        true
    }
}

/// Every subcode of `host` (restricted to the words fixed by `word_fix` when
/// given) equivalent to `pattern`, each with a verified witness.
pub fn subcodes_equivalent_to(
    host: &LinearCode,
    pattern: &LinearCode,
    word_fix: Option<&Permutation>,
    limits: SearchLimits,
) -> Result<SubcodeSearch> {
    if host.n() != pattern.n() {
        return Err(Error::Dimension {
            expected: host.n(),
            found: pattern.n(),
        });
    }
    let host = match word_fix {
        Some(h) => fixed_subcode(host, h)?,
        None => host.clone(),
    };
    if pattern.k() > host.k() {
        return Ok(SubcodeSearch {
            found: Vec::new(),
            complete: true,
            nodes: 0,
        });
    }
    let n = host.n();
    if pattern.k() == 0 {
        return Ok(SubcodeSearch {
            found: vec![SubcodeMatch {
                code: pattern.clone(),
                witness: Permutation::identity(n),
            }],
            complete: true,
            nodes: 0,
        });
    }
    let (basis, weights) = light_basis(pattern, limits.max_words)?;
    let basis_wt: Vec<usize> = basis.iter().map(BitVector::weight).collect();
    let top = *basis_wt.iter().max().expect("nonempty basis");
    let mut by_weight: BTreeMap<usize, Vec<BitVector>> = BTreeMap::new();
    let host_words = host.words_below(top + 1);
    if host_words.len() > limits.max_words {
        return Err(Error::Incomplete(format!(
            "{} host words of weight <= {top} exceed the cap of {}",
            host_words.len(),
            limits.max_words
        )));
    }
    for w in host_words {
        by_weight.entry(w.weight()).or_default().push(w);
    }
    let Some(first_words) = by_weight.get(&basis_wt[0]).cloned() else {
        return Ok(SubcodeSearch {
            found: Vec::new(),
            complete: true,
            nodes: 0,
        });
    };

    let aut = automorphism_group_of(std::slice::from_ref(&host), limits)?;
    let mut bt = Backtrack {
        weights: &weights,
        by_weight: &by_weight,
        basis_wt,
        nodes: 0,
        max_nodes: limits.max_nodes,
        hits: Vec::new(),
    };
    let mut complete = true;
    for r in word_orbit_reps(&first_words, aut.generators())? {
        let v1 = first_words[r].clone();
        let mut sums = vec![BitVector::zeros(n), v1.clone()];
        if bt.basis_wt.len() == 1 {
            complete &= bt.run(&mut sums, 1, None);
            continue;
        }
        // Second level: one word per orbit of the stabilizer of v1.
        let line = LinearCode::from_generators(n, [v1.clone()])?;
        let stab = automorphism_group_of(&[host.clone(), line], limits)?;
        let second = &by_weight[&bt.basis_wt[1]];
        let reps: Vec<usize> = word_orbit_reps(second, stab.generators())?;
        complete &= bt.run(&mut sums, 1, Some(&reps));
        if !complete {
            break;
        }
    }
    let nodes = bt.nodes;
    let mut seeds = bt.hits;
    seeds.sort();
    seeds.dedup();

    let pattern_canon = canonical_form_of(std::slice::from_ref(pattern), limits)?;
    let mut found: BTreeMap<LinearCode, Permutation> = BTreeMap::new();
    for seed in seeds {
        if found.contains_key(&seed) {
            continue;
        }
        let seed_canon = canonical_form_of(std::slice::from_ref(&seed), limits)?;
        if seed_canon.key != pattern_canon.key {
            return Err(Error::structural("weight-preserving image is not equivalent to the pattern"));
        }
        let h0 = seed_canon.labeling.compose(&pattern_canon.labeling.inverse());
        for (m, t) in orbit_with_transversal(&seed, aut.generators(), limits.max_orbit)? {
            let h = t.inverse().compose(&h0);
            found.entry(m).or_insert(h);
        }
    }
    let mut out = Vec::with_capacity(found.len());
    for (code, witness) in found {
        if witness.act_code(&code)? != *pattern {
            return Err(Error::structural("subcode witness does not map onto the pattern"));
        }
        out.push(SubcodeMatch { code, witness });
    }
    Ok(SubcodeSearch {
        found: out,
        complete,
        nodes,
    })
}
