//! Stabilizer chains (Schreier–Sims) for small permutation groups.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut l = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; n],
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.base] = Some(Permutation::identity(n));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.transversal[x].clone().expect("orbit point has a transversal");
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(ux.compose(g));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier–Sims. The base starts with `prefix`, so level
    /// `i` describes the pointwise stabilizer of `prefix[..i]`.
    pub fn with_base(n: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = Self::skeleton(n, gens, prefix);
        chain.complete_deterministic();
        chain
    }

    pub fn new(n: usize, gens: &[Permutation]) -> Self {
        Self::with_base(n, gens, &[])
    }

    /// Randomized Schreier–Sims stopped once the chain reaches `order`,
    /// which must be the true group order. Seeded, so reproducible.
    pub fn with_known_order(n: usize, gens: &[Permutation], prefix: &[usize], order: &BigUint) -> Self {
        let mut chain = Self::skeleton(n, gens, prefix);
        if chain.gens.is_empty() {
            return chain;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        let mut pool: Vec<Permutation> = chain.gens.clone();
        while pool.len() < 10 {
            pool.push(chain.gens[pool.len() % chain.gens.len()].clone());
        }
        let mut acc = Permutation::identity(n);
        let mut misses = 0usize;
        while &chain.order() < order {
            let (i, j) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
            if i != j {
                pool[i] = pool[i].compose(&pool[j]);
                acc = acc.compose(&pool[i]);
            }
            if chain.sift_and_add(&acc, 0) {
                misses = 0;
            } else {
                misses += 1;
                if misses > 2000 {
                    // The claimed order is unreachable; fall back to the exact method.
                    chain.complete_deterministic();
                    break;
                }
            }
        }
        chain
    }

    fn skeleton(n: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push((0..n).find(|&x| g.apply(x) != x).expect("non-identity"));
            }
        }
        let levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut l = Level::new(n, b);
                l.gens = gens.iter().filter(|g| base[..i].iter().all(|&p| g.apply(p) == p)).cloned().collect();
                l.rebuild(n);
                l
            })
            .collect();
        StabChain { n, gens, levels }
    }

    /// Sifts `h` from `start`; returns the residue and the level it stopped at.
    fn strip(&self, h: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = h.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base);
            match &level.transversal[beta] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    /// Adds the sift residue of `h` (if nontrivial) as a strong generator.
    fn sift_and_add(&mut self, h: &Permutation, start: usize) -> bool {
        let (res, j) = self.strip(h, start);
        if j == self.levels.len() && res.is_identity() {
            return false;
        }
        if j == self.levels.len() {
            let b = (0..self.n).find(|&x| res.apply(x) != x).expect("non-identity");
            self.levels.push(Level::new(self.n, b));
        }
        let lo = if j == 0 { 0 } else { start.max(1) };
        for l in lo..=j {
            self.levels[l].gens.push(res.clone());
            self.levels[l].rebuild(self.n);
        }
        true
    }

    fn complete_deterministic(&mut self) {
        let n = self.n;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut added = None;
            'scan: for &beta in &self.levels[iu].orbit {
                let ub = self.levels[iu].transversal[beta].clone().expect("orbit");
                for x in &self.levels[iu].gens {
                    let y = x.apply(beta);
                    let uy = self.levels[iu].transversal[y].as_ref().expect("orbit closed");
                    let h = ub.compose(x).compose(&uy.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.strip(&h, iu + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        added = Some((res, j));
                        break 'scan;
                    }
                }
            }
            match added {
                Some((res, j)) => {
                    if j == self.levels.len() {
                        let b = (0..n).find(|&x| res.apply(x) != x).expect("non-identity");
                        self.levels.push(Level::new(n, b));
                    }
                    for l in iu + 1..=j {
                        self.levels[l].gens.push(res.clone());
                        self.levels[l].rebuild(n);
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (res, j) = self.strip(p, 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Orbit of the `depth`-th base point under the stabilizer of the
    /// earlier base points.
    pub fn basic_orbit(&self, depth: usize) -> &[usize] {
        &self.levels[depth].orbit
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> &[Permutation] {
        match self.levels.get(depth) {
            Some(l) => &l.gens,
            None => &[],
        }
    }

    /// Orbit labels (least point) of the stabilizer of the first `depth`
    /// base points.
    pub fn stabilizer_orbits(&self, depth: usize) -> Vec<usize> {
        orbit_labels(self.n, self.stabilizer_generators(depth))
    }

    /// Every group element, in a fixed order. Intended for small groups.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        let k = self.levels.len();
        let mut idx = vec![0usize; k];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut g = Permutation::identity(self.n);
            for l in (0..k).rev() {
                let beta = self.levels[l].orbit[idx[l]];
                g = g.compose(self.levels[l].transversal[beta].as_ref().expect("orbit"));
            }
            done = true;
            #[allow(clippy::needless_range_loop)]
            for l in 0..k {
                idx[l] += 1;
                if idx[l] < self.levels[l].orbit.len() {
                    done = false;
                    break;
                }
                idx[l] = 0;
            }
            Some(g)
        })
    }
}

/// Orbit labels of the group generated by `gens`: each point maps to the
/// least point of its orbit.
pub fn orbit_labels(n: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = s;
                    stack.push(y);
                }
            }
        }
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        let gens = [p(5, "(1,2,3,4,5)"), p(5, "(1,2)")];
        let c = StabChain::new(5, &gens);
        assert_eq!(c.order(), BigUint::from(120u32));
        assert_eq!(c.elements().count(), 120);
        assert!(c.contains(&p(5, "(2,4)")));
    }

    #[test]
    fn alternating_group_membership() {
        let gens = [p(5, "(1,2,3)"), p(5, "(3,4,5)"), p(5, "(1,2)(4,5)")];
        let c = StabChain::new(5, &gens);
        assert_eq!(c.order(), BigUint::from(60u32));
        assert!(!c.contains(&p(5, "(1,2)")));
    }

    #[test]
    fn base_prefix_is_respected() {
        let gens = [p(6, "(1,2,3,4,5,6)"), p(6, "(1,2)")];
        let c = StabChain::with_base(6, &gens, &[5, 4]);
        assert_eq!(&c.base()[..2], &[5, 4]);
        assert_eq!(c.order(), BigUint::from(720u32));
        let orbits = c.stabilizer_orbits(2);
        assert_eq!(orbits[5], 5);
        assert_eq!(orbits[4], 4);
        assert!(orbits[..4].iter().all(|&x| x == 0));
    }

    #[test]
    fn known_order_matches_deterministic() {
        let gens = [p(8, "(1,2,3,4,5,6,7,8)"), p(8, "(1,3)(2,4)")];
        let exact = StabChain::new(8, &gens);
        let fast = StabChain::with_known_order(8, &gens, &[], &exact.order());
        assert_eq!(fast.order(), exact.order());
        let elems: std::collections::BTreeSet<_> = exact.elements().collect();
        assert_eq!(BigUint::from(elems.len()), exact.order());
    }

    #[test]
    fn trivial_group() {
        let c = StabChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(c.order(), BigUint::from(1u32));
        assert_eq!(c.elements().count(), 1);
    }
}
