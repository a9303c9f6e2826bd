//! Colored incidence structure of coordinates against low-weight codewords,
//! and its label-invariant color refinement.

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::{BitVector, IncrementalEchelon};
use crate::perms::Permutation;

#[inline]
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Lowest weight layers of `c` whose union spans `c`.
pub(crate) fn spanning_words(c: &LinearCode, max_words: usize) -> Result<Vec<BitVector>> {
    if c.k() == 0 {
        return Ok(Vec::new());
    }
    let d = c.minimum_distance().expect("nonzero code").0;
    let mut t = d;
    loop {
        let words = c.words_below(t + 1);
        if words.len() > max_words {
            return Err(Error::Incomplete(format!(
                "{} codewords of weight <= {t} exceed the cap of {max_words}",
                words.len()
            )));
        }
        let mut inc = IncrementalEchelon::new(c.n());
        for w in &words {
            inc.push(w.clone());
        }
        if inc.rank() == c.k() {
            return Ok(words);
        }
        t += 1;
    }
}

pub(crate) struct Structure {
    pub n: usize,
    pub codes: Vec<LinearCode>,
    word_pts: Vec<Vec<u16>>,
    pt_words: Vec<Vec<u32>>,
    word_class: Vec<u32>,
}

impl Structure {
    pub fn new(codes: &[LinearCode], max_words: usize) -> Result<Self> {
        let n = codes.first().map(|c| c.n()).ok_or_else(|| Error::contract("no codes given"))?;
        if codes.iter().any(|c| c.n() != n) {
            return Err(Error::contract("codes of different lengths"));
        }
        let mut word_pts = Vec::new();
        let mut keys = Vec::new();
        for (ci, c) in codes.iter().enumerate() {
            for w in spanning_words(c, max_words)? {
                keys.push((ci as u64) << 32 | w.weight() as u64);
                word_pts.push(w.iter_ones().map(|i| i as u16).collect::<Vec<_>>());
            }
        }
        let mut distinct = keys.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let word_class = keys.iter().map(|k| distinct.binary_search(k).expect("present") as u32).collect();
        let mut pt_words = vec![Vec::new(); n];
        for (w, pts) in word_pts.iter().enumerate() {
            for &p in pts {
                pt_words[p as usize].push(w as u32);
            }
        }
        Ok(Self {
            n,
            codes: codes.to_vec(),
            word_pts,
            pt_words,
            word_class,
        })
    }

    pub fn initial(&self) -> (Coloring, u64) {
        let mut col = Coloring {
            pc: vec![0; self.n],
            wc: self.word_class.clone(),
            np: usize::from(self.n > 0),
            nw: 0,
        };
        col.nw = {
            let mut d = col.wc.clone();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        let t = self.refine(&mut col);
        (col, t)
    }

    /// Refines to an equitable coloring; returns a trace hash of the process.
    pub fn refine(&self, col: &mut Coloring) -> u64 {
        let mut trace = mix(col.np as u64 ^ (col.nw as u64) << 20);
        loop {
            let (np0, nw0) = (col.np, col.nw);
            let wsig: Vec<u64> = self
                .word_pts
                .iter()
                .map(|pts| pts.iter().fold(0u64, |a, &p| a.wrapping_add(mix(col.pc[p as usize] as u64))))
                .collect();
            let (wc, nw, tw) = rerank(&col.wc, &wsig);
            col.wc = wc;
            col.nw = nw;
            let psig: Vec<u64> = self
                .pt_words
                .iter()
                .map(|ws| ws.iter().fold(0u64, |a, &w| a.wrapping_add(mix(col.wc[w as usize] as u64 | 1 << 40))))
                .collect();
            let (pc, np, tp) = rerank(&col.pc, &psig);
            col.pc = pc;
            col.np = np;
            trace = mix(trace ^ tw).wrapping_add(mix(tp));
            if col.np == np0 && col.nw == nw0 {
                return trace;
            }
        }
    }

    /// Individualizes point `x` and refines.
    pub fn individualize(&self, col: &Coloring, x: usize) -> (Coloring, u64) {
        let sig: Vec<u64> = (0..self.n).map(|p| u64::from(p != x)).collect();
        let (pc, np, _) = rerank(&col.pc, &sig);
        let mut child = Coloring {
            pc,
            np,
            wc: col.wc.clone(),
            nw: col.nw,
        };
        let t = self.refine(&mut child);
        (child, mix(t ^ col.pc[x] as u64))
    }

    /// Relabeled codes in reduced echelon form, serialized.
    pub fn certificate(&self, lab: &Permutation) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        out.extend_from_slice(&(self.codes.len() as u32).to_le_bytes());
        for c in &self.codes {
            let img = lab.act_code(c).expect("degree matches");
            out.extend_from_slice(&(img.k() as u32).to_le_bytes());
            for r in img.basis().rows() {
                for w in r.words() {
                    out.extend_from_slice(&w.to_le_bytes());
                }
            }
        }
        out
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        self.codes.iter().all(|c| crate::perms::is_automorphism(c, p))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Coloring {
    pub pc: Vec<u32>,
    pub wc: Vec<u32>,
    pub np: usize,
    pub nw: usize,
}

impl Coloring {
    /// Smallest non-singleton cell (lowest color on ties), sorted.
    pub fn target_cell(&self) -> Option<Vec<usize>> {
        let mut size = vec![0usize; self.np];
        for &c in &self.pc {
            size[c as usize] += 1;
        }
        let best = (0..self.np).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
        Some((0..self.pc.len()).filter(|&p| self.pc[p] as usize == best).collect())
    }

    /// Point `p` goes to position `color(p)`; only for discrete colorings.
    pub fn labeling(&self) -> Permutation {
        Permutation::from_images(self.pc.iter().map(|&c| c as usize).collect()).expect("discrete coloring")
    }
}

/// New colors = ranks of the distinct `(old, sig)` pairs; the trace hash
/// covers the sorted pairs and their multiplicities.
fn rerank(old: &[u32], sig: &[u64]) -> (Vec<u32>, usize, u64) {
    let mut keyed: Vec<(u32, u64, u32)> = old.iter().zip(sig).enumerate().map(|(i, (&o, &s))| (o, s, i as u32)).collect();
    keyed.sort_unstable();
    let mut out = vec![0u32; old.len()];
    let mut rank = 0u32;
    let mut trace = 0u64;
    let mut run = 0u64;
    for i in 0..keyed.len() {
        if i > 0 && (keyed[i].0, keyed[i].1) != (keyed[i - 1].0, keyed[i - 1].1) {
            trace = mix(trace ^ mix(keyed[i - 1].1 ^ (keyed[i - 1].0 as u64) << 32) ^ run);
            rank += 1;
            run = 0;
        }
        run += 1;
        out[keyed[i].2 as usize] = rank;
    }
    if let Some(last) = keyed.last() {
        trace = mix(trace ^ mix(last.1 ^ (last.0 as u64) << 32) ^ run);
    }
    let cells = if keyed.is_empty() { 0 } else { rank as usize + 1 };
    (out, cells, trace)
}
