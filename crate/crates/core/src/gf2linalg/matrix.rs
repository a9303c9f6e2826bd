use std::fmt;

use super::BitVector;
use crate::error::{check_len, Error, Result};

/// An ordered list of rows in F₂ⁿ. Mostly used as a spanning set for a
/// row space; [`BitMatrix::rref`] gives the canonical basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form: rows sorted by pivot, each pivot column
/// zero in every other row. Equal row spaces give bitwise-equal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn new(n_cols: usize) -> Self {
        Self { n_cols, rows: Vec::new() }
    }

    pub fn from_rows(n_cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(n_cols, r.len())?;
        }
        Ok(Self { n_cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Parses rows of 0/1 characters, skipping blank lines.
    pub fn parse_rows(n_cols: usize, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BitVector>>>()?;
        Self::from_rows(n_cols, rows)
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        check_len(self.n_cols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.n_cols, other.n_cols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix { n_cols: self.n_cols, rows })
    }

    pub fn rref(&self) -> Echelon {
        let mut inc = IncrementalEchelon::new(self.n_cols);
        for r in &self.rows {
            inc.push(r.clone());
        }
        inc.into_echelon()
    }

    pub fn rank(&self) -> usize {
        let mut inc = IncrementalEchelon::new(self.n_cols);
        for r in &self.rows {
            inc.push(r.clone());
        }
        inc.rank()
    }

    /// Basis (in reduced echelon form) of `{x : m·xᵀ = 0}`.
    pub fn kernel(&self) -> BitMatrix {
        let ech = self.rref();
        let n = self.n_cols;
        let mut is_pivot = vec![false; n];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(n - ech.rank);
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut x = BitVector::unit(n, f);
            for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            basis.push(x);
        }
        BitMatrix { n_cols: n, rows: basis }.rref().matrix
    }

    /// `m · vᵀ`, one bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.n_cols, v.len())?;
        Ok(BitVector::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>()))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut cols = vec![BitVector::zeros(self.rows.len()); self.n_cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                cols[j].set(i, true);
            }
        }
        BitMatrix {
            n_cols: self.rows.len(),
            rows: cols,
        }
    }

    /// Whether every row of `self` lies in the row space of `other`.
    pub fn row_space_within(&self, other: &BitMatrix) -> Result<bool> {
        check_len(other.n_cols, self.n_cols)?;
        let ech = other.rref();
        Ok(self.rows.iter().all(|r| ech.contains(r)))
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> Result<bool> {
        check_len(other.n_cols, self.n_cols)?;
        Ok(self.rref().matrix == other.rref().matrix)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.n_cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl Echelon {
    /// Eliminates the pivots of this form from `v`.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (row, &p) in self.matrix.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.matrix.n_cols && self.reduce(v).is_zero()
    }
}

/// Echelon basis that grows one row at a time.
///
/// Rows are kept fully reduced against each other, so `push` costs one
/// reduction pass plus one back-substitution, and the basis can be read off
/// in canonical form at any point.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon {
    n_cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl IncrementalEchelon {
    pub fn new(n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut inc = Self::new(m.n_cols);
        for r in m.rows() {
            inc.push(r.clone());
        }
        inc
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn push(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.n_cols, "row length mismatch");
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                *row ^= &v;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix {
            n_cols: self.n_cols,
            rows: self.rows.clone(),
        }
    }

    pub fn into_echelon(self) -> Echelon {
        let rank = self.rows.len();
        Echelon {
            matrix: BitMatrix {
                n_cols: self.n_cols,
                rows: self.rows,
            },
            rank,
            pivots: self.pivots,
        }
    }
}

/// Sum and intersection of two row spaces (Zassenhaus).
///
/// Rows `[a | a]` and `[b | 0]` are reduced together; rows whose left half
/// vanishes carry the intersection in their right half.
pub fn sum_and_intersection(a: &BitMatrix, b: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    if a.n_cols() != b.n_cols() {
        return Err(Error::Dimension {
            expected: a.n_cols(),
            found: b.n_cols(),
        });
    }
    let n = a.n_cols();
    let zero = BitVector::zeros(n);
    let mut inc = IncrementalEchelon::new(2 * n);
    for r in a.rows() {
        inc.push(r.concat(r));
    }
    for r in b.rows() {
        inc.push(r.concat(&zero));
    }
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    let mut sum = BitMatrix::new(n);
    let mut meet = BitMatrix::new(n);
    for (row, &p) in inc.rows.iter().zip(&inc.pivots) {
        if p < n {
            sum.rows.push(row.select(&left));
        } else {
            meet.rows.push(row.select(&right));
        }
    }
    Ok((sum.rref().matrix, meet.rref().matrix))
}

/// Intersection only; see [`sum_and_intersection`].
pub fn intersection(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    sum_and_intersection(a, b).map(|(_, m)| m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(n, rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn rref_zero_matrix() {
        let z = BitMatrix::from_rows(5, vec![BitVector::zeros(5); 3]).unwrap();
        let e = z.rref();
        assert_eq!(e.rank, 0);
        assert!(e.pivots.is_empty());
    }

    #[test]
    fn rref_identity() {
        let e = BitMatrix::identity(4).rref();
        assert_eq!(e.rank, 4);
        assert_eq!(e.pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(4, &["1100", "0110", "0011"]);
        let b = m(4, &["1010", "0011", "1111", "0110"]);
        assert_eq!(a.rref().matrix, b.rref().matrix);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(5).kernel().n_rows(), 0);
        let k = m(2, &["11"]).kernel();
        assert_eq!(k.rows(), &["11".parse::<BitVector>().unwrap()]);
    }

    #[test]
    fn sum_meet_small() {
        let a = m(2, &["10"]);
        let b = m(2, &["01"]);
        let (s, i) = sum_and_intersection(&a, &b).unwrap();
        assert_eq!(s.n_rows(), 2);
        assert_eq!(i.n_rows(), 0);
        let (s, i) = sum_and_intersection(&a, &a).unwrap();
        assert_eq!(s, a.rref().matrix);
        assert_eq!(i, a.rref().matrix);
    }

    #[test]
    fn sum_meet_rejects_width_mismatch() {
        assert!(matches!(
            sum_and_intersection(&BitMatrix::new(3), &BitMatrix::new(4)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn incremental_push_reports_dependence() {
        let mut inc = IncrementalEchelon::new(3);
        assert!(inc.push("110".parse().unwrap()));
        assert!(inc.push("011".parse().unwrap()));
        assert!(!inc.push("101".parse().unwrap()));
        assert_eq!(inc.pivots(), &[0, 1]);
    }
}
