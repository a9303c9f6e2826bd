//! Low-weight codeword search by information-set enumeration.
//!
//! The generator matrix is brought into systematic form on a sequence of
//! disjoint column sets (full information sets first, then a partial one).
//! Round `w` enumerates every combination of `w` rows of every systematic
//! matrix. After round `w` any codeword not yet seen has weight at least
//! `Σ_j max(0, w + 1 - (k - r_j))`, where `r_j` is the rank of set `j`;
//! once that bound reaches the threshold the search is finished.

use std::collections::BTreeSet;

use crate::gf2linalg::{words_for, BitVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Stop at the first codeword of weight below the threshold.
    FirstBelow(usize),
    /// Collect every codeword of weight below the threshold.
    CollectBelow(usize),
    /// Exact minimum weight.
    Minimum,
}

#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub words: Vec<BitVector>,
    pub minimum: Option<usize>,
}

pub(crate) fn search(n: usize, basis: &[BitVector], mode: Mode) -> Outcome {
    if basis.is_empty() {
        return Outcome::default();
    }
    match words_for(n) {
        1 => run::<1>(n, basis, mode),
        2 => run::<2>(n, basis, mode),
        3 => run::<3>(n, basis, mode),
        4 => run::<4>(n, basis, mode),
        w => panic!("low-weight search supports lengths up to 256 (got {w} words)"),
    }
}

struct Systematic<const W: usize> {
    rows: Vec<[u64; W]>,
    /// Number of rows whose pivot lies in this set's fresh columns.
    rank: usize,
}

fn to_arr<const W: usize>(v: &BitVector) -> [u64; W] {
    let mut a = [0u64; W];
    a[..v.words().len()].copy_from_slice(v.words());
    a
}

#[inline]
fn get<const W: usize>(a: &[u64; W], i: usize) -> bool {
    (a[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
fn weight<const W: usize>(a: &[u64; W]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn xor<const W: usize>(a: &mut [u64; W], b: &[u64; W]) {
    for i in 0..W {
        a[i] ^= b[i];
    }
}

/// Gaussian elimination choosing pivots in `order`; returns the reduced
/// rows and the pivot columns picked, row `i` owning pivot `i`.
fn eliminate<const W: usize>(rows: &[[u64; W]], order: &[usize]) -> (Vec<[u64; W]>, Vec<usize>) {
    let mut m: Vec<[u64; W]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| get(&m[i], c)) else {
            continue;
        };
        m.swap(r, sel);
        let pr = m[r];
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && get(row, c) {
                xor(row, &pr);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn info_sets<const W: usize>(n: usize, basis: &[[u64; W]]) -> Vec<Systematic<W>> {
    let k = basis.len();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let fresh: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
        let stale: Vec<usize> = (0..n).filter(|&c| used[c]).collect();
        let order: Vec<usize> = fresh.iter().chain(&stale).copied().collect();
        let (rows, pivots) = eliminate(basis, &order);
        debug_assert_eq!(pivots.len(), k);
        let rank = pivots.iter().filter(|&&p| !used[p]).count();
        if rank == 0 {
            break;
        }
        for &p in &pivots {
            used[p] = true;
        }
        sets.push(Systematic { rows, rank });
        if rank < k {
            break;
        }
    }
    sets
}

fn lower_bound<const W: usize>(sets: &[Systematic<W>], k: usize, w: usize) -> usize {
    sets.iter().map(|s| (w + 1).saturating_sub(k - s.rank)).sum()
}

struct Walker<'a, const W: usize> {
    rows: &'a [[u64; W]],
    threshold: usize,
    mode: Mode,
    found: BTreeSet<[u64; W]>,
    best: Option<([u64; W], usize)>,
    stop: bool,
}

impl<const W: usize> Walker<'_, W> {
    fn visit(&mut self, acc: &[u64; W]) {
        let wt = weight(acc);
        if wt == 0 || wt >= self.threshold {
            return;
        }
        match self.mode {
            Mode::FirstBelow(_) => {
                self.best = Some((*acc, wt));
                self.stop = true;
            }
            Mode::CollectBelow(_) => {
                self.found.insert(*acc);
            }
            Mode::Minimum => {
                self.best = Some((*acc, wt));
                self.threshold = wt;
            }
        }
    }

    /// All sums of exactly `left` rows with index `>= start`, added to `acc`.
    fn combos(&mut self, start: usize, left: usize, acc: [u64; W]) {
        if self.stop {
            return;
        }
        if left == 0 {
            self.visit(&acc);
            return;
        }
        let k = self.rows.len();
        for i in start..=(k - left) {
            let mut next = acc;
            xor(&mut next, &self.rows[i]);
            self.combos(i + 1, left - 1, next);
            if self.stop {
                return;
            }
        }
    }
}

fn run<const W: usize>(n: usize, basis: &[BitVector], mode: Mode) -> Outcome {
    let rows: Vec<[u64; W]> = basis.iter().map(to_arr::<W>).collect();
    let k = rows.len();
    let sets = info_sets(n, &rows);
    let mut threshold = match mode {
        Mode::FirstBelow(t) | Mode::CollectBelow(t) => t,
        Mode::Minimum => n + 1,
    };
    let mut found = BTreeSet::new();
    let mut best: Option<([u64; W], usize)> = None;
    for w in 1..=k {
        for set in &sets {
            let mut walker = Walker {
                rows: &set.rows,
                threshold,
                mode,
                found: std::mem::take(&mut found),
                best,
                stop: false,
            };
            walker.combos(0, w, [0u64; W]);
            found = walker.found;
            best = walker.best;
            threshold = walker.threshold;
            if walker.stop {
                let (v, wt) = best.expect("stop implies a witness");
                return Outcome {
                    words: vec![BitVector::from_words(n, v.to_vec())],
                    minimum: Some(wt),
                };
            }
        }
        if lower_bound(&sets, k, w) >= threshold {
            break;
        }
    }
    match mode {
        Mode::FirstBelow(_) => Outcome::default(),
        Mode::CollectBelow(_) => Outcome {
            minimum: found.iter().map(weight).min(),
            words: found.into_iter().map(|v| BitVector::from_words(n, v.to_vec())).collect(),
        },
        Mode::Minimum => Outcome {
            words: best.iter().map(|(v, _)| BitVector::from_words(n, v.to_vec())).collect(),
            minimum: best.map(|(_, wt)| wt),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min(n: usize, basis: &[BitVector]) -> Option<usize> {
        let k = basis.len();
        let mut best = None;
        for mask in 1u64..(1 << k) {
            let mut v = BitVector::zeros(n);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v ^= b;
                }
            }
            let w = v.weight();
            if w > 0 && best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
        best
    }

    #[test]
    fn repetition_code() {
        let basis = vec![BitVector::ones(7)];
        let out = search(7, &basis, Mode::Minimum);
        assert_eq!(out.minimum, Some(7));
        assert!(search(7, &basis, Mode::FirstBelow(7)).words.is_empty());
        assert_eq!(search(7, &basis, Mode::FirstBelow(8)).words.len(), 1);
    }

    #[test]
    fn matches_brute_force_on_a_few_codes() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..40 {
            let n = 10 + trial % 30;
            let k = 1 + (trial % 9);
            let mut inc = crate::gf2linalg::IncrementalEchelon::new(n);
            for _ in 0..k {
                inc.push(BitVector::from_words(n, vec![next()]));
            }
            let basis = inc.rows().to_vec();
            let out = search(n, &basis, Mode::Minimum);
            assert_eq!(out.minimum, brute_min(n, &basis), "trial {trial}");
        }
    }
}
