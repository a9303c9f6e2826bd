//! Individualization-refinement search: automorphism group generators and
//! a canonical labeling.

use num_bigint::BigUint;

use super::refine::{Coloring, Structure};
use crate::error::{Error, Result};
use crate::perms::{orbit_labels, Permutation, StabChain};

pub(crate) struct Searcher<'a> {
    s: &'a Structure,
    max_nodes: u64,
    nodes: u64,
}

pub(crate) struct AutResult {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
}

pub(crate) struct CanonResult {
    pub labeling: Permutation,
    pub certificate: Vec<u8>,
}

impl<'a> Searcher<'a> {
    pub fn new(s: &'a Structure, max_nodes: u64) -> Self {
        Self { s, max_nodes, nodes: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Incomplete(format!("search exceeded {} nodes", self.max_nodes)));
        }
        Ok(())
    }

    pub fn automorphisms(&mut self) -> Result<AutResult> {
        let (root, t0) = self.s.initial();
        let mut path: Vec<(Coloring, Vec<usize>)> = Vec::new();
        let mut traces = vec![t0];
        let mut cur = root;
        while let Some(cell) = cur.target_cell() {
            self.tick()?;
            let (child, t) = self.s.individualize(&cur, cell[0]);
            path.push((cur, cell));
            traces.push(t);
            cur = child;
        }
        let leaf0 = cur.labeling();
        let cert0 = self.s.certificate(&leaf0);
        let leaf0_inv = leaf0.inverse();
        let n = self.s.n;
        let mut gens: Vec<Permutation> = Vec::new();
        let mut order = BigUint::from(1u32);
        for level in (0..path.len()).rev() {
            let (col, cell) = &path[level];
            let x = cell[0];
            let mut labels = orbit_labels(n, &gens);
            let mut failed: Vec<usize> = Vec::new();
            for &y in &cell[1..] {
                if labels[y] == labels[x] || failed.iter().any(|&f| labels[f] == labels[y]) {
                    continue;
                }
                self.tick()?;
                let (child, t) = self.s.individualize(col, y);
                let found = if t == traces[level + 1] {
                    self.find_match(&child, level + 1, &traces, &cert0)?
                } else {
                    None
                };
                match found {
                    Some(lab) => {
                        let gamma = lab.compose(&leaf0_inv);
                        if !self.s.is_automorphism(&gamma) {
                            return Err(Error::structural("certificate match did not yield an automorphism"));
                        }
                        gens.push(gamma);
                        labels = orbit_labels(n, &gens);
                    }
                    None => failed.push(y),
                }
            }
            let size = cell.iter().filter(|&&y| labels[y] == labels[x]).count();
            order *= BigUint::from(size);
        }
        Ok(AutResult { generators: gens, order })
    }

    /// DFS below `col` for a leaf with certificate `cert0`, following the
    /// first path's traces.
    fn find_match(&mut self, col: &Coloring, depth: usize, traces: &[u64], cert0: &[u8]) -> Result<Option<Permutation>> {
        let Some(cell) = col.target_cell() else {
            let lab = col.labeling();
            return Ok((self.s.certificate(&lab) == cert0).then_some(lab));
        };
        if depth + 1 >= traces.len() {
            return Ok(None);
        }
        for &z in &cell {
            self.tick()?;
            let (child, t) = self.s.individualize(col, z);
            if t != traces[depth + 1] {
                continue;
            }
            if let Some(l) = self.find_match(&child, depth + 1, traces, cert0)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }

    /// Least leaf by (trace sequence, certificate), pruning children by
    /// orbits of the stabilizer of the individualized points.
    pub fn canonical(&mut self, aut: &AutResult) -> Result<CanonResult> {
        let (root, t0) = self.s.initial();
        let mut best: Option<(Vec<u64>, Vec<u8>, Permutation)> = None;
        let mut traces = vec![t0];
        self.canon_dfs(&root, &mut traces, &aut.generators, &aut.order, &mut best)?;
        let (_, certificate, labeling) = best.expect("at least one leaf");
        Ok(CanonResult { labeling, certificate })
    }

    fn canon_dfs(
        &mut self,
        col: &Coloring,
        traces: &mut Vec<u64>,
        gens: &[Permutation],
        order: &BigUint,
        best: &mut Option<(Vec<u64>, Vec<u8>, Permutation)>,
    ) -> Result<()> {
        let depth = traces.len() - 1;
        if let Some((bt, _, _)) = best.as_ref() {
            let m = bt.len().min(depth + 1);
            match traces[..m].cmp(&bt[..m]) {
                std::cmp::Ordering::Greater => return Ok(()),
                std::cmp::Ordering::Equal if bt.len() <= depth => return Ok(()),
                _ => {}
            }
        }
        let Some(cell) = col.target_cell() else {
            let lab = col.labeling();
            let cert = self.s.certificate(&lab);
            let replace = match best.as_ref() {
                None => true,
                Some((bt, bc, _)) => (traces.as_slice(), cert.as_slice()) < (bt.as_slice(), bc.as_slice()),
            };
            if replace {
                *best = Some((traces.clone(), cert, lab));
            }
            return Ok(());
        };
        let labels = orbit_labels(self.s.n, gens);
        let mut seen_orbits: Vec<usize> = Vec::new();
        for &y in &cell {
            if seen_orbits.contains(&labels[y]) {
                continue;
            }
            seen_orbits.push(labels[y]);
            self.tick()?;
            let (child, t) = self.s.individualize(col, y);
            let (sub_gens, sub_order) = if gens.is_empty() {
                (Vec::new(), BigUint::from(1u32))
            } else {
                let chain = StabChain::with_known_order(self.s.n, gens, &[y], order);
                let orbit = chain.basic_orbit(0).len();
                (chain.stabilizer_generators(1).to_vec(), order / BigUint::from(orbit))
            };
            traces.push(t);
            let r = self.canon_dfs(&child, traces, &sub_gens, &sub_order, best);
            traces.pop();
            r?;
        }
        Ok(())
    }
}
