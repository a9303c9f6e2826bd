//! Coordinate permutations and their action on vectors and codes.
//!
//! Points are 0-based internally and 1-based in cycle notation. A
//! permutation `p` moves the bit at position `i` to position `p(i)`, so
//! `v^p = (v_{p⁻¹(1)}, …, v_{p⁻¹(n)})`. Products compose left to right:
//! `(pq)(i) = q(p(i))`, which makes `v^{pq} = (v^p)^q`.

mod layout;
mod schreier;
mod subcodes;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use layout::{conjugator, gbar24, gbar36, lift36_to_72, normalize_commuting, orbit_swap, standard_g};
pub use schreier::{orbit_labels, StabChain};
pub use subcodes::{even_orbit_subcode, fixed_subcode, huffman_check, is_automorphism, orbit_space, HuffmanSplit};

use crate::codes::LinearCode;
use crate::error::{check_len, Error, Result};
use crate::gf2linalg::BitVector;

/// A bijection of `{0, …, n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u16::MAX as usize + 1);
        Self {
            img: (0..n as u32).map(|i| i as u16).collect(),
        }
    }

    /// From 0-based images; rejects anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::contract(format!("image table is not a permutation of 0..{n}")));
            }
        }
        Ok(Self {
            img: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// From cycles of 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::contract(format!("point {x} outside 1..{n}")));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::contract(format!("point {x} appears twice")));
                }
                img[x - 1] = cyc[(i + 1) % cyc.len()] - 1;
            }
        }
        Self::from_images(img)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: format!("{msg} in permutation {text:?}"),
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = body[..close].trim();
            if !inner.is_empty() {
                let pts = inner
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(pts);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            img: self.img.iter().map(|&x| other.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0u16; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Permutation { img }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `x⁻¹ self x`: every cycle `(a b …)` becomes `(x(a) x(b) …)`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().compose(self).compose(x)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by least point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Nontrivial cycles (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle length → multiplicity, fixed points counted as length 1.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut t = BTreeMap::new();
        for c in self.all_cycles() {
            *t.entry(c.len()).or_insert(0) += 1;
        }
        t
    }

    pub fn order(&self) -> u128 {
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_type().keys().fold(1u128, |acc, &l| acc / gcd(acc, l as u128) * l as u128)
    }

    pub fn support_size(&self) -> usize {
        self.img.iter().enumerate().filter(|(i, &x)| *i != x as usize).count()
    }

    pub fn act_vector(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.degree(), v.len())?;
        Ok(BitVector::from_indices(v.len(), v.iter_ones().map(|i| self.apply(i))))
    }

    pub fn act_code(&self, c: &LinearCode) -> Result<LinearCode> {
        check_len(self.degree(), c.n())?;
        let rows = c.basis().rows().iter().map(|r| self.act_vector(r)).collect::<Result<Vec<_>>>()?;
        LinearCode::from_generators(c.n(), rows)
    }

    /// The `p-(c,f)` type when the order is prime.
    pub fn prime_type(&self) -> Option<PrimeType> {
        let ord = self.order();
        if !is_prime(ord) {
            return None;
        }
        let t = self.cycle_type();
        Some(PrimeType {
            p: ord as usize,
            cycles: t.get(&(ord as usize)).copied().unwrap_or(0),
            fixed: t.get(&1).copied().unwrap_or(0),
        })
    }
}

fn is_prime(x: u128) -> bool {
    x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
}

/// Type `p-(c,f)`: `cycles` cycles of length `p` and `fixed` fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeType {
    pub p: usize,
    pub cycles: usize,
    pub fixed: usize,
}

impl fmt::Display for PrimeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{})", self.p, self.cycles, self.fixed)
    }
}

/// Prime-order types an automorphism of a self-dual doubly-even
/// `[72,36,16]` code can have.
pub const ALLOWED_TYPES_72: [PrimeType; 3] = [
    PrimeType { p: 2, cycles: 36, fixed: 0 },
    PrimeType { p: 3, cycles: 24, fixed: 0 },
    PrimeType { p: 5, cycles: 14, fixed: 2 },
];

/// Outcome of [`validate_prime_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeCheck {
    Accepted(PrimeType),
    /// Prime order, but the type is excluded for length 72.
    Excluded(PrimeType),
    NotPrimeOrder(u128),
}

/// Checks a permutation against the admissible prime types. The table only
/// constrains degree 72; at other degrees every prime-order element passes.
pub fn validate_prime_type(p: &Permutation) -> TypeCheck {
    match p.prime_type() {
        None => TypeCheck::NotPrimeOrder(p.order()),
        Some(t) if p.degree() != 72 || ALLOWED_TYPES_72.contains(&t) => TypeCheck::Accepted(t),
        Some(t) => TypeCheck::Excluded(t),
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}] {}", self.degree(), self)
    }
}

/// Parses `n:(cycles)`, the self-describing form used in data files.
impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, cyc) = s.split_once(':').ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("expected 'degree:(cycles)', got {s:?}"),
        })?;
        let n = n.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad degree in {s:?}"),
        })?;
        Self::parse(n, cyc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        let p = Permutation::parse(7, "(1,2,3)(5,7)").unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(5,7)");
        assert_eq!(Permutation::parse(4, "()").unwrap(), Permutation::identity(4));
        assert!(Permutation::parse(3, "(1,2,4)").is_err());
        assert!(Permutation::parse(3, "(1,2)(2,3)").is_err());
        assert_eq!("7:(1,2,3)(5,7)".parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::parse(3, "(1,2)").unwrap();
        let q = Permutation::parse(3, "(2,3)").unwrap();
        // 1 -p-> 2 -q-> 3
        assert_eq!(p.compose(&q).apply(0), 2);
        let v = BitVector::unit(3, 0);
        let lhs = p.compose(&q).act_vector(&v).unwrap();
        let rhs = q.act_vector(&p.act_vector(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let a = Permutation::parse(4, "(1,2,3)").unwrap();
        let x = Permutation::parse(4, "(3,4)").unwrap();
        assert_eq!(a.conjugate_by(&x).to_string(), "(1,2,4)");
    }

    #[test]
    fn orders_and_types() {
        let p = Permutation::parse(7, "(1,2,3)(4,5)").unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.prime_type().is_none());
        assert_eq!(p.pow(6), Permutation::identity(7));
        assert_eq!(p.pow(-1), p.inverse());
        let t = Permutation::parse(72, "(1,2)").unwrap();
        assert_eq!(
            validate_prime_type(&t),
            TypeCheck::Excluded(PrimeType { p: 2, cycles: 1, fixed: 70 })
        );
    }
}
