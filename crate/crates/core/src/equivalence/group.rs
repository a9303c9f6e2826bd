//! Permutation groups given by generators and an exactly known order.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perms::{Permutation, StabChain};

#[derive(Clone, Debug)]
pub struct GroupDescription {
    degree: usize,
    generators: Vec<Permutation>,
    order: BigUint,
    chain: OnceLock<StabChain>,
}

impl GroupDescription {
    pub fn new(degree: usize, generators: Vec<Permutation>, order: BigUint) -> Self {
        Self {
            degree,
            generators,
            order,
            chain: OnceLock::new(),
        }
    }

    /// The group generated by `generators`, with its order computed by
    /// deterministic Schreier–Sims.
    pub fn generated_by(degree: usize, generators: Vec<Permutation>) -> Self {
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        let g = Self::new(degree, generators, order);
        let _ = g.chain.set(chain);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::with_known_order(self.degree, &self.generators, &[], &self.order))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let order = u128::try_from(&self.order).unwrap_or(u128::MAX);
        match order <= cap as u128 {
            true => Ok(()),
            false => Err(Error::BudgetExceeded {
                needed: order,
                budget: cap as u128,
            }),
        }
    }

    /// Every element; refused when the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.check_cap(cap)?;
        Ok(self.chain().elements().collect())
    }

    /// Representatives, one per conjugacy class, of the elements that satisfy
    /// `keep`. `keep` must be constant on conjugacy classes. Each class is
    /// represented by its least element, and the output is sorted.
    pub fn class_representatives(&self, cap: usize, keep: impl Fn(&Permutation) -> bool) -> Result<Vec<Permutation>> {
        self.check_cap(cap)?;
        let mut pool: BTreeSet<Permutation> = self.chain().elements().filter(|p| keep(p)).collect();
        let mut reps = Vec::new();
        while let Some(first) = pool.pop_first() {
            let mut class = vec![first.clone()];
            let mut least = first;
            let mut i = 0;
            while i < class.len() {
                for g in &self.generators {
                    let y = class[i].conjugate_by(g);
                    if pool.remove(&y) {
                        if y < least {
                            least = y.clone();
                        }
                        class.push(y);
                    }
                }
                i += 1;
            }
            reps.push(least);
        }
        reps.sort();
        Ok(reps)
    }

    /// Conjugacy class representatives of the elements of the given order
    /// moving exactly `moved` points.
    pub fn elements_of_type(&self, order: u128, moved: usize, cap: usize) -> Result<Vec<Permutation>> {
        self.class_representatives(cap, |p| p.order() == order && p.support_size() == moved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_classes() {
        let gens = vec![Permutation::parse(4, "(1,2,3,4)").unwrap(), Permutation::parse(4, "(1,2)").unwrap()];
        let g = GroupDescription::generated_by(4, gens);
        assert_eq!(g.order(), &BigUint::from(24u32));
        assert_eq!(g.class_representatives(100, |_| true).unwrap().len(), 5);
        assert_eq!(g.elements_of_type(2, 4, 100).unwrap().len(), 1);
        assert_eq!(g.elements_of_type(3, 3, 100).unwrap().len(), 1);
        assert!(g.elements(10).is_err());
        assert!(g.contains(&Permutation::parse(4, "(1,3)").unwrap()));
    }
}
