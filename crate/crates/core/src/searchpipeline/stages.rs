//! Construction of the candidate set: Golay codes containing ℱ⊗⟨(1,1)⟩,
//! aligned `[36,18,8]` codes, their sums, and the aligned order-6 pairs.

use std::collections::BTreeMap;

use log::info;
use rayon::prelude::*;

use super::RunConfig;
use crate::codedata::{code_f, golay24, CodeRecord};
use crate::codes::{block_embed, BlockMap, LinearCode};
use crate::equivalence::{
    automorphism_group, automorphism_group_of, canonical_form_of, code_orbit, subcodes_equivalent_to, GroupDescription,
    SubcodeMatch,
};
use crate::error::{Error, Result};
use crate::groupalg::Layout;
use crate::perms::{conjugator, fixed_subcode, gbar36, is_automorphism, normalize_commuting, standard_g, Permutation};

/// ℱ⊗⟨(1,1)⟩ in F₂²⁴.
pub fn pattern24() -> LinearCode {
    code_f().replicate(2)
}

/// ℱ⊗⟨(1,1,1)⟩ in F₂³⁶.
pub fn pattern36() -> LinearCode {
    code_f().replicate(3)
}

#[derive(Clone, Debug)]
pub struct AgStage {
    pub golay: LinearCode,
    /// The subcodes `M_i ≅ ℱ⊗⟨(1,1)⟩` of the chosen Golay code, each with
    /// `h_i` mapping it onto the pattern.
    pub subcodes: Vec<SubcodeMatch>,
    /// `AF = Aut(ℱ⊗⟨(1,1)⟩)`.
    pub af: GroupDescription,
    /// The orbit of `G_1 = G^{h_1}` under `AF`, sorted.
    pub members: Vec<LinearCode>,
    /// Whether every `G_i = G^{h_i}` lies in the orbit.
    pub closure_holds: bool,
}

/// Builds the set of all Golay codes containing ℱ⊗⟨(1,1)⟩.
pub fn build_ag(cfg: &RunConfig) -> Result<AgStage> {
    let golay = golay24();
    let pattern = pattern24();
    let search = subcodes_equivalent_to(&golay, &pattern, None, cfg.limits)?;
    if !search.complete {
        return Err(Error::Incomplete(format!(
            "subcode search in the Golay code stopped after {} nodes",
            search.nodes
        )));
    }
    let subcodes = search.found;
    info!("AG: {} subcodes of the Golay code equivalent to F(x)(1,1)", subcodes.len());
    let first = subcodes.first().ok_or_else(|| Error::structural("the Golay code has no subcode equivalent to F(x)(1,1)"))?;
    let af = automorphism_group(&pattern)?;
    info!("AG: |AF| = {}", af.order());
    let g1 = first.witness.act_code(&golay)?;
    let members = code_orbit(&g1, af.generators(), cfg.limits.max_orbit)?;
    info!("AG: |AG| = {}", members.len());
    for c in &members {
        let flags = c.classify();
        if !(flags.self_dual && flags.doubly_even && c.k() == 12 && pattern.is_subcode_of(c)) {
            return Err(Error::structural("AG member is not a self-dual doubly-even code containing the pattern"));
        }
    }
    let mut closure_holds = true;
    for s in &subcodes {
        let gi = s.witness.act_code(&golay)?;
        closure_holds &= members.binary_search(&gi).is_ok();
    }
    Ok(AgStage {
        golay,
        subcodes,
        af,
        members,
        closure_holds,
    })
}

#[derive(Clone, Debug)]
pub struct EligibleCode {
    pub name: String,
    pub aut_order: num_bigint::BigUint,
    /// Representatives of the Aut-classes of order-3 elements moving all
    /// 36 points.
    pub automorphisms: Vec<Permutation>,
}

#[derive(Clone, Debug)]
pub struct C36Member {
    /// `D^{h l}`.
    pub code: LinearCode,
    pub source: String,
    /// The automorphism `e` of the source with `h⁻¹ e h = ḡ₃₆`.
    pub e: Permutation,
    pub h: Permutation,
    /// Commutes with `ḡ₃₆` and maps the fixed subcode found onto the pattern.
    pub l: Permutation,
}

#[derive(Clone, Debug)]
pub struct C36Stage {
    pub eligible: Vec<EligibleCode>,
    /// Distinct codes, sorted.
    pub members: Vec<C36Member>,
}

/// Aligns every order-3 fixed-point-free automorphism of the classified
/// codes to `ḡ₃₆` and every word-wise fixed copy of ℱ⊗⟨(1,1,1)⟩ to the
/// pattern.
pub fn build_c36(classification: &[CodeRecord], cfg: &RunConfig) -> Result<C36Stage> {
    let gb = gbar36(12);
    let pattern = pattern36();
    let mut eligible = Vec::new();
    let mut members: BTreeMap<LinearCode, C36Member> = BTreeMap::new();
    for rec in classification {
        let aut = automorphism_group_of(std::slice::from_ref(&rec.code), cfg.limits)?;
        let autos = aut.elements_of_type(3, 36, cfg.element_cap)?;
        if autos.is_empty() {
            continue;
        }
        info!("C36: {} has |Aut| = {} and {} class(es) of order-3 fixed-point-free automorphisms", rec.name, aut.order(), autos.len());
        for e in &autos {
            let h = conjugator(e, &gb).ok_or_else(|| Error::structural("order-3 element not conjugate to gbar36"))?;
            if e.conjugate_by(&h) != gb {
                return Err(Error::structural("conjugator check failed"));
            }
            let dij = h.act_code(&rec.code)?;
            let search = subcodes_equivalent_to(&dij, &pattern, Some(&gb), cfg.limits)?;
            if !search.complete {
                return Err(Error::Incomplete(format!("fixed subcode search in {} stopped", rec.name)));
            }
            for found in search.found {
                let l = normalize_commuting(&found.witness, &pattern)?;
                if !l.commutes_with(&gb) || l.act_code(&found.code)? != pattern {
                    return Err(Error::structural("aligning permutation failed its checks"));
                }
                let code = l.act_code(&dij)?;
                if !is_automorphism(&code, &gb) || !pattern.is_subcode_of(&code) || !pattern.is_subcode_of(&fixed_subcode(&code, &gb)?) {
                    return Err(Error::structural("C36 member fails its invariants"));
                }
                members.entry(code.clone()).or_insert(C36Member {
                    code,
                    source: rec.name.clone(),
                    e: e.clone(),
                    h: h.clone(),
                    l,
                });
            }
        }
        eligible.push(EligibleCode {
            name: rec.name.clone(),
            aut_order: aut.order().clone(),
            automorphisms: autos,
        });
    }
    info!("C36: {} eligible codes, {} aligned codes", eligible.len(), members.len());
    Ok(C36Stage {
        eligible,
        members: members.into_values().collect(),
    })
}

#[derive(Clone, Debug)]
pub struct LMember {
    pub code: LinearCode,
    /// Index into the AG members.
    pub b3: usize,
    /// Index into the C36 members.
    pub b2: usize,
    pub key: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct LStage {
    /// One per equivalence class, sorted by canonical key.
    pub members: Vec<LMember>,
    pub pairs: usize,
    pub rejected_dimension: usize,
    pub rejected_distance: usize,
}

fn pair_sum(b3: &LinearCode, b2: &LinearCode) -> Result<LinearCode> {
    block_embed(b3, BlockMap::Pi24)?.sum(&block_embed(b2, BlockMap::Pi36)?)
}

/// All sums `π₂₄⁻¹(B₃) + π₃₆⁻¹(B₂)` of dimension 24 without words of weight
/// below the threshold, one per equivalence class.
pub fn build_l(ag: &[LinearCode], c36: &[LinearCode], cfg: &RunConfig) -> Result<LStage> {
    let pairs: Vec<(usize, usize)> = (0..ag.len()).flat_map(|i| (0..c36.len()).map(move |j| (i, j))).collect();
    enum Outcome {
        Dim,
        Dist,
        Keep(LMember),
    }
    let outcomes: Vec<Outcome> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Outcome> {
            let code = pair_sum(&ag[i], &c36[j])?;
            if !code.is_self_orthogonal() || !code.is_doubly_even() {
                return Err(Error::structural(format!("sum of AG {i} and C36 {j} is not self-orthogonal doubly-even")));
            }
            if code.k() != 24 {
                return Ok(Outcome::Dim);
            }
            if code.min_weight_below(cfg.threshold).is_some() {
                return Ok(Outcome::Dist);
            }
            let key = canonical_form_of(std::slice::from_ref(&code), cfg.limits)?.key;
            Ok(Outcome::Keep(LMember { code, b3: i, b2: j, key }))
        })
        .collect::<Result<_>>()?;
    let mut stage = LStage {
        members: Vec::new(),
        pairs: pairs.len(),
        rejected_dimension: 0,
        rejected_distance: 0,
    };
    let mut classes: BTreeMap<Vec<u8>, LMember> = BTreeMap::new();
    for o in outcomes {
        match o {
            Outcome::Dim => stage.rejected_dimension += 1,
            Outcome::Dist => stage.rejected_distance += 1,
            Outcome::Keep(m) => {
                classes.entry(m.key.clone()).or_insert(m);
            }
        }
    }
    stage.members = classes.into_values().collect();
    info!(
        "L: {} pairs, {} of wrong dimension, {} below distance {}, {} classes",
        stage.pairs, stage.rejected_dimension, stage.rejected_distance, cfg.threshold, stage.members.len()
    );
    Ok(stage)
}

/// A `[6m, 2m]` candidate with the standard `g` as an automorphism.
#[derive(Clone, Debug)]
pub struct CandidateL {
    /// `L^r`; fixed by `g`.
    pub code: LinearCode,
    /// Index of the source code in the input list.
    pub source: usize,
    /// The order-6 automorphism of the source with `r⁻¹ a r = g`.
    pub a: Permutation,
    pub r: Permutation,
}

/// Checks the conditions the sieve relies on for a candidate with `g`.
pub fn check_candidate(code: &LinearCode) -> Result<()> {
    let n = code.n();
    if n % 6 != 0 {
        return Err(Error::contract(format!("candidate length {n} is not a multiple of 6")));
    }
    let layout = Layout::new(n / 6);
    let g = layout.g();
    if !is_automorphism(code, g) {
        return Err(Error::contract("g is not an automorphism of the candidate"));
    }
    let l2 = fixed_subcode(code, layout.g_pow(2))?;
    let l3 = fixed_subcode(code, layout.g_pow(3))?;
    if l2.sum(&l3)? != *code {
        return Err(Error::contract("candidate is not L(g^2) + L(g^3)"));
    }
    Ok(())
}

/// For each code, the Aut-classes of fixed-point-free order-6 automorphisms
/// `a` with `L = L(a²) + L(a³)`, each conjugated to the standard `g`.
pub fn refine_lprime(codes: &[LinearCode], cfg: &RunConfig) -> Result<Vec<CandidateL>> {
    let mut out = Vec::new();
    for (idx, code) in codes.iter().enumerate() {
        let n = code.n();
        if n % 6 != 0 {
            return Err(Error::contract(format!("code {idx} has length {n}, not a multiple of 6")));
        }
        let g = standard_g(n / 6);
        let aut = automorphism_group_of(std::slice::from_ref(code), cfg.limits)?;
        let autos = aut.class_representatives(cfg.element_cap, |p| {
            p.order() == 6 && p.cycle_type().get(&6) == Some(&(n / 6))
        })?;
        let mut kept = 0;
        for a in autos {
            let a2 = fixed_subcode(code, &a.pow(2))?;
            let a3 = fixed_subcode(code, &a.pow(3))?;
            if a2.sum(&a3)? != *code {
                continue;
            }
            let r = conjugator(&a, &g).ok_or_else(|| Error::structural("order-6 element not conjugate to g"))?;
            let aligned = r.act_code(code)?;
            check_candidate(&aligned)?;
            kept += 1;
            out.push(CandidateL {
                code: aligned,
                source: idx,
                a,
                r,
            });
        }
        info!("L': code {idx} has |Aut| = {} and gives {kept} aligned pair(s)", aut.order());
    }
    Ok(out)
}
