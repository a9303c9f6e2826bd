//! Binary linear codes.

pub mod blocks;
mod mindist;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

pub use blocks::{block_embed, block_embed_72, block_project, embed_vector, phi, phi_vector, project_vector, BlockMap};

use crate::error::{check_len, Error, Result};
use crate::gf2linalg::{sum_and_intersection, BitMatrix, BitVector, Echelon, IncrementalEchelon};

/// Default cap on the number of codewords a full enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 28;

/// A subspace of F₂ⁿ, stored by its reduced echelon basis.
///
/// Two codes are equal exactly when their bases are bitwise equal.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    echelon: Echelon,
    enumerator: OnceLock<Vec<u64>>,
}

/// Classification flags of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeFlags {
    pub even: bool,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub doubly_even: bool,
    /// `4·⌊n/24⌋ + 4`, the largest minimum distance a self-dual
    /// doubly-even code of this length can have.
    pub extremal_bound: usize,
}

/// Upper bound on the minimum distance of a self-dual doubly-even code.
pub fn extremal_bound(n: usize) -> usize {
    4 * (n / 24) + 4
}

impl LinearCode {
    pub fn from_generators(n: usize, rows: impl IntoIterator<Item = BitVector>) -> Result<Self> {
        let mut inc = IncrementalEchelon::new(n);
        for r in rows {
            check_len(n, r.len())?;
            inc.push(r);
        }
        Ok(Self::from_echelon(n, inc.into_echelon()))
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        Self::from_echelon(m.n_cols(), m.rref())
    }

    fn from_echelon(n: usize, echelon: Echelon) -> Self {
        Self {
            n,
            echelon,
            enumerator: OnceLock::new(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::new(n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::identity(n))
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generators(n, [BitVector::ones(n)]).expect("consistent length")
    }

    /// Rows of 0/1 characters, one generator per line.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Ok(Self::from_matrix(&BitMatrix::parse_rows(n, text)?))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.echelon.rank
    }

    /// Canonical (reduced echelon) generator matrix.
    pub fn basis(&self) -> &BitMatrix {
        &self.echelon.matrix
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.echelon.contains(v)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.basis().rows().iter().all(|r| other.contains(r))
    }

    /// The code spanned by `self` and the given vectors.
    pub fn extend(&self, extra: impl IntoIterator<Item = BitVector>) -> Result<LinearCode> {
        let mut inc = IncrementalEchelon::from_matrix(self.basis());
        for v in extra {
            check_len(self.n, v.len())?;
            inc.push(v);
        }
        Ok(Self::from_echelon(self.n, inc.into_echelon()))
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        check_len(self.n, other.n)?;
        self.extend(other.basis().rows().iter().cloned())
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        let (_, meet) = sum_and_intersection(self.basis(), other.basis())?;
        Ok(Self::from_matrix(&meet))
    }

    pub fn dual(&self) -> LinearCode {
        Self::from_matrix(&self.basis().kernel())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.basis().rows();
        rows.iter().enumerate().all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Generator weights mod 4 plus pairwise orthogonality; together they
    /// force every codeword weight to be divisible by 4.
    pub fn is_doubly_even(&self) -> bool {
        self.basis().rows().iter().all(|r| r.weight() % 4 == 0) && self.is_self_orthogonal()
    }

    pub fn is_even(&self) -> bool {
        self.basis().rows().iter().all(|r| r.weight() % 2 == 0)
    }

    pub fn classify(&self) -> CodeFlags {
        let self_orthogonal = self.is_self_orthogonal();
        CodeFlags {
            even: self.is_even(),
            self_orthogonal,
            self_dual: self_orthogonal && 2 * self.k() == self.n,
            doubly_even: self_orthogonal && self.basis().rows().iter().all(|r| r.weight() % 4 == 0),
            extremal_bound: extremal_bound(self.n),
        }
    }

    /// Some nonzero codeword of weight `< t`, if one exists.
    pub fn min_weight_below(&self, t: usize) -> Option<BitVector> {
        let out = mindist::search(self.n, self.basis().rows(), mindist::Mode::FirstBelow(t));
        let w = out.words.into_iter().next();
        debug_assert!(w.as_ref().is_none_or(|w| self.contains(w) && !w.is_zero() && w.weight() < t));
        w
    }

    /// Exact minimum distance with a witness; `None` for the zero code.
    pub fn minimum_distance(&self) -> Option<(usize, BitVector)> {
        let out = mindist::search(self.n, self.basis().rows(), mindist::Mode::Minimum);
        out.minimum.zip(out.words.into_iter().next())
    }

    /// Every nonzero codeword of weight `< t`, sorted.
    pub fn words_below(&self, t: usize) -> Vec<BitVector> {
        let mut words = mindist::search(self.n, self.basis().rows(), mindist::Mode::CollectBelow(t)).words;
        words.sort();
        words
    }

    /// Every nonzero codeword of weight exactly `w`.
    pub fn words_of_weight(&self, w: usize) -> Vec<BitVector> {
        self.words_below(w + 1).into_iter().filter(|v| v.weight() == w).collect()
    }

    /// Iterates over all `2^k` codewords in Gray-code order.
    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        let rows = self.basis().rows();
        let k = rows.len();
        assert!(k < 64, "refusing to enumerate 2^{k} codewords");
        let mut cur = BitVector::zeros(self.n);
        let mut i: u64 = 0;
        std::iter::from_fn(move || {
            if i >= (1u64 << k) {
                return None;
            }
            if i > 0 {
                cur ^= &rows[i.trailing_zeros() as usize];
            }
            i += 1;
            Some(cur.clone())
        })
    }

    /// `A_0 … A_n`, by full enumeration within `budget` codewords.
    pub fn weight_enumerator(&self, budget: u128) -> Result<&[u64]> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e);
        }
        let needed = 1u128 << self.k();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut counts = vec![0u64; self.n + 1];
        let rows = self.basis().rows();
        let k = rows.len();
        if self.n <= 128 {
            let packed: Vec<u128> = rows.iter().map(|r| r.to_u128().expect("n <= 128")).collect();
            let mut cur = 0u128;
            counts[0] = 1;
            for i in 1u64..(1u64 << k) {
                cur ^= packed[i.trailing_zeros() as usize];
                counts[cur.count_ones() as usize] += 1;
            }
        } else {
            for w in self.codewords() {
                counts[w.weight()] += 1;
            }
        }
        Ok(self.enumerator.get_or_init(|| counts))
    }

    /// Every coordinate expanded into `m` equal consecutive coordinates.
    pub fn replicate(&self, m: usize) -> LinearCode {
        assert!(m >= 1);
        let rows = self
            .basis()
            .rows()
            .iter()
            .map(|r| BitVector::from_indices(self.n * m, r.iter_ones().flat_map(|i| (i * m)..(i * m + m))));
        Self::from_generators(self.n * m, rows).expect("consistent length")
    }

    /// Repeatedly adjoins the first even vector of the dual not yet in the
    /// code until the code is self-dual.
    pub fn selfdual_closure(&self) -> Result<LinearCode> {
        if !self.is_self_orthogonal() {
            return Err(Error::contract("self-dual closure needs a self-orthogonal code"));
        }
        if self.n % 2 != 0 {
            return Err(Error::contract(format!("no self-dual code has odd length {}", self.n)));
        }
        let mut cur = self.clone();
        while 2 * cur.k() < cur.n {
            let even_dual = cur.extend([BitVector::ones(cur.n)])?.dual();
            let v = even_dual
                .basis()
                .rows()
                .iter()
                .find(|v| !cur.contains(v))
                .cloned()
                .ok_or_else(|| Error::contract("no even dual vector outside the code"))?;
            cur = cur.extend([v])?;
        }
        debug_assert!(cur.classify().self_dual);
        Ok(cur)
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.echelon.matrix == other.echelon.matrix
    }
}

impl Eq for LinearCode {}

impl Hash for LinearCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.echelon.matrix.hash(state);
    }
}

impl PartialOrd for LinearCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.basis().rows()).cmp(&(other.n, other.basis().rows()))
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}] {:?}", self.n, self.k(), self.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        LinearCode::parse(n, &rows.join("\n")).unwrap()
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        assert_eq!(LinearCode::full(5).dual(), LinearCode::zero(5));
        assert_eq!(LinearCode::zero(5).dual(), LinearCode::full(5));
    }

    #[test]
    fn repetition_2_is_self_dual() {
        let r = LinearCode::repetition(2);
        assert_eq!(r.dual(), r);
        assert!(r.classify().self_dual);
    }

    #[test]
    fn extremal_bounds() {
        assert_eq!(extremal_bound(72), 16);
        assert_eq!(extremal_bound(24), 8);
        assert_eq!(extremal_bound(48), 12);
    }

    #[test]
    fn weight_enumerator_small() {
        assert_eq!(LinearCode::zero(3).weight_enumerator(DEFAULT_ENUM_BUDGET).unwrap(), &[1, 0, 0, 0]);
        assert_eq!(LinearCode::repetition(2).weight_enumerator(DEFAULT_ENUM_BUDGET).unwrap(), &[1, 0, 1]);
        assert!(matches!(
            LinearCode::full(20).weight_enumerator(1 << 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn replicate_examples() {
        assert_eq!(LinearCode::full(1).replicate(3), LinearCode::repetition(3));
        let c = code(4, &["1100", "0011"]);
        assert_eq!(c.replicate(1), c);
        assert_eq!(c.replicate(2), code(8, &["11110000", "00001111"]));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(LinearCode::zero(2).selfdual_closure().unwrap(), LinearCode::repetition(2));
        let c = code(4, &["1100"]);
        let s = c.selfdual_closure().unwrap();
        assert!(s.classify().self_dual);
        assert!(c.is_subcode_of(&s));
        assert!(code(3, &["110"]).selfdual_closure().is_err());
        assert!(code(4, &["1000"]).selfdual_closure().is_err());
    }

    #[test]
    fn min_weight_below_on_zero_code() {
        assert!(LinearCode::zero(8).min_weight_below(5).is_none());
        assert!(LinearCode::zero(8).minimum_distance().is_none());
    }

    #[test]
    fn codewords_iterates_span() {
        let c = code(4, &["1100", "0011"]);
        let mut all: Vec<String> = c.codewords().map(|v| v.to_string()).collect();
        all.sort();
        assert_eq!(all, vec!["0000", "0011", "1100", "1111"]);
    }
}
