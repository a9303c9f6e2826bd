//! The distance sieve over the `H_p` class representatives of one
//! candidate.

use rayon::prelude::*;

use super::StageOrder;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::BitVector;
use crate::groupalg::{CyclicModule, DoublyEvenFilter, HpClasses, Layout};

/// A tuple of candidate indices, one per set processed so far.
pub type Tuple = Vec<u32>;

/// `⟨base, rows…⟩` has no nonzero word of weight below `threshold`.
pub fn passes(base: &LinearCode, rows: impl IntoIterator<Item = BitVector>, threshold: usize) -> bool {
    base.extend(rows).expect("lengths match").min_weight_below(threshold).is_none()
}

fn accumulate(base: &LinearCode, sets: &[Vec<Vec<BitVector>>], order: &[usize], t: &[u32]) -> LinearCode {
    let rows = t.iter().enumerate().flat_map(|(pos, &c)| sets[order[pos]][c as usize].iter().cloned());
    base.extend(rows).expect("lengths match")
}

/// Extends every surviving tuple over `order[..prev_len]` by each candidate
/// of the set `order[prev_len]`, keeping the extensions whose accumulated
/// code still passes. Output order is lexicographic in the tuple.
pub fn extend_stage(
    base: &LinearCode,
    sets: &[Vec<Vec<BitVector>>],
    order: &[usize],
    prev: &[Tuple],
    threshold: usize,
) -> Vec<Tuple> {
    let pos = prev.first().map_or(0, Vec::len);
    let next = &sets[order[pos]];
    prev.par_iter()
        .flat_map_iter(|t| {
            let acc = accumulate(base, sets, order, t);
            next.iter()
                .enumerate()
                .filter(move |(_, rows)| passes(&acc, rows.iter().cloned(), threshold))
                .map(|(c, _)| {
                    let mut u = t.clone();
                    u.push(c as u32);
                    u
                })
        })
        .collect()
}

/// The order in which the sets are combined.
pub fn stage_order(sizes: &[usize], mode: StageOrder) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    if mode == StageOrder::SmallestFirst {
        order.sort_by_key(|&j| (sizes[j], j));
    }
    order
}

/// Every stage of the sieve: stage `k` holds the tuples over the first
/// `k + 1` sets (in `order`) whose accumulated code passes. Stage 0 filters
/// the sets one by one.
pub fn staged_sieve(base: &LinearCode, sets: &[Vec<Vec<BitVector>>], order: &[usize], threshold: usize) -> Vec<Vec<Tuple>> {
    let mut stages: Vec<Vec<Tuple>> = Vec::new();
    if order.is_empty() {
        return stages;
    }
    let first: Vec<Tuple> = sets[order[0]]
        .par_iter()
        .enumerate()
        .filter(|(_, rows)| passes(base, rows.iter().cloned(), threshold))
        .map(|(c, _)| vec![c as u32])
        .collect();
    stages.push(first);
    for _ in 1..order.len() {
        let next = extend_stage(base, sets, order, stages.last().expect("nonempty"), threshold);
        stages.push(next);
    }
    stages
}

/// The fixed data of one candidate: `L`, its socle decomposition and the
/// `H_p` class structures, in decomposition order.
#[derive(Clone, Debug)]
pub struct SieveSetup {
    pub layout: Layout,
    pub base: LinearCode,
    pub socle: LinearCode,
    pub modules: Vec<CyclicModule>,
    pub classes: Vec<HpClasses>,
}

impl SieveSetup {
    pub fn new(candidate: &LinearCode) -> Result<Self> {
        super::check_candidate(candidate)?;
        let layout = Layout::new(candidate.n() / 6);
        let socle = candidate.intersection(layout.v2())?;
        if socle.k() != layout.blocks() {
            return Err(Error::contract(format!(
                "L ∩ V2 has dimension {}, expected {}",
                socle.k(),
                layout.blocks()
            )));
        }
        let modules = layout.decompose_socle(&socle)?;
        let classes = modules
            .iter()
            .map(|p| HpClasses::new(&layout, p, &socle))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            layout,
            base: candidate.clone(),
            socle,
            modules,
            classes,
        })
    }

    /// `H'_j`: doubly-even class representatives of `H_{p_j}` whose module
    /// keeps the distance of `L`. Returns `(index, z)` in index order,
    /// truncated to `cap` entries when given.
    pub fn hprime(&self, j: usize, filter: DoublyEvenFilter, threshold: usize, cap: Option<usize>) -> Result<Vec<(u64, BitVector)>> {
        let hc = &self.classes[j];
        let reps = hc.doubly_even_representatives(&self.base, filter)?;
        let keep = |r: &(u64, BitVector)| passes(&self.base, hc.module_basis(&r.1), threshold);
        let Some(cap) = cap else {
            return Ok(reps.into_par_iter().filter(|r| keep(r)).collect());
        };
        // The first `cap` members in index order, filtered chunk by chunk.
        let mut kept = Vec::with_capacity(cap);
        for chunk in reps.chunks(64) {
            let part: Vec<(u64, BitVector)> = chunk.par_iter().filter(|r| keep(r)).cloned().collect();
            kept.extend(part);
            if kept.len() >= cap {
                kept.truncate(cap);
                break;
            }
        }
        Ok(kept)
    }

    /// Rows `(z, zg²)` of each representative of `H'_j`.
    pub fn module_rows(&self, j: usize, reps: &[(u64, BitVector)]) -> Vec<Vec<BitVector>> {
        reps.iter().map(|(_, z)| self.classes[j].module_basis(z).to_vec()).collect()
    }
}

/// The code `L + S₁ + … + S_r` of a full tuple, if it is self-dual,
/// doubly-even and has minimum distance at least `threshold`.
pub fn completed_code(
    base: &LinearCode,
    sets: &[Vec<Vec<BitVector>>],
    order: &[usize],
    t: &[u32],
    threshold: usize,
) -> Option<LinearCode> {
    let c = accumulate(base, sets, order, t);
    let flags = c.classify();
    (flags.self_dual && flags.doubly_even && c.min_weight_below(threshold).is_none()).then_some(c)
}
