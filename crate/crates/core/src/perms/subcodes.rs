//! Fixed subcodes `C(h)`, even-orbit subcodes `E(h)` and the splitting
//! `C = C(h) ⊕ E(h)` for automorphisms of odd order.

use super::Permutation;
use crate::codes::LinearCode;
use crate::error::{check_len, Error, Result};
use crate::gf2linalg::BitVector;

pub fn is_automorphism(c: &LinearCode, h: &Permutation) -> bool {
    h.degree() == c.n() && c.basis().rows().iter().all(|r| c.contains(&h.act_vector(r).expect("degree checked")))
}

/// Vectors constant on every orbit of `h`.
pub fn orbit_space(h: &Permutation) -> LinearCode {
    let n = h.degree();
    LinearCode::from_generators(n, h.all_cycles().into_iter().map(|c| BitVector::from_indices(n, c)))
        .expect("consistent length")
}

/// `C(h)`: the words of `c` fixed by `h`.
pub fn fixed_subcode(c: &LinearCode, h: &Permutation) -> Result<LinearCode> {
    check_len(c.n(), h.degree())?;
    c.intersection(&orbit_space(h))
}

/// `E(h)`: the words of `c` with even weight on every orbit of `h`.
pub fn even_orbit_subcode(c: &LinearCode, h: &Permutation) -> Result<LinearCode> {
    check_len(c.n(), h.degree())?;
    if h.order() % 2 == 0 {
        return Err(Error::contract(format!("even-orbit splitting needs odd order, got {}", h.order())));
    }
    c.intersection(&orbit_space(h).dual())
}

#[derive(Clone, Debug)]
pub struct HuffmanSplit {
    pub fixed: LinearCode,
    pub even: LinearCode,
}

/// Computes `C(h)` and `E(h)` and checks that they form a direct sum equal
/// to `c`.
pub fn huffman_check(c: &LinearCode, h: &Permutation) -> Result<HuffmanSplit> {
    let even = even_orbit_subcode(c, h)?;
    if !is_automorphism(c, h) {
        return Err(Error::contract("permutation is not an automorphism of the code"));
    }
    let fixed = fixed_subcode(c, h)?;
    let meet = fixed.intersection(&even)?;
    let sum = fixed.sum(&even)?;
    if meet.k() != 0 || sum != *c {
        return Err(Error::structural(format!(
            "C(h) + E(h) is not a direct sum equal to C: dims {} + {} vs {}, meet {}",
            fixed.k(),
            even.k(),
            c.k(),
            meet.k()
        )));
    }
    Ok(HuffmanSplit { fixed, even })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_everything() {
        let c = LinearCode::parse(4, "1100\n0110").unwrap();
        let id = Permutation::identity(4);
        assert_eq!(fixed_subcode(&c, &id).unwrap(), c);
        let s = huffman_check(&c, &id).unwrap();
        assert_eq!(s.even.k(), 0);
    }

    #[test]
    fn six_cycle_on_full_space() {
        let h = Permutation::parse(6, "(1,2,3,4,5,6)").unwrap();
        assert_eq!(fixed_subcode(&LinearCode::full(6), &h).unwrap(), LinearCode::repetition(6));
        assert!(even_orbit_subcode(&LinearCode::full(6), &h).is_err());
    }

    #[test]
    fn repetition_under_three_cycle() {
        let h = Permutation::parse(3, "(1,2,3)").unwrap();
        let c = LinearCode::repetition(3);
        let s = huffman_check(&c, &h).unwrap();
        assert_eq!(s.fixed, c);
        assert_eq!(s.even.k(), 0);
    }
}
