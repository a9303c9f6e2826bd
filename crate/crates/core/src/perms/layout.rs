//! The standard order-6 permutation, its induced actions on the orbit
//! spaces, conjugators, and the lift from degree `3m` to degree `6m`.

use super::subcodes::is_automorphism;
use super::Permutation;
use crate::codes::LinearCode;
use crate::error::{Error, Result};

fn block_cycles(m: usize, len: usize) -> Permutation {
    let mut img = Vec::with_capacity(m * len);
    for b in 0..m {
        for o in 0..len {
            img.push(b * len + (o + 1) % len);
        }
    }
    Permutation::from_images(img).expect("block rotation is a bijection")
}

/// `g = (1,…,6)(7,…,12)…` on `m` blocks of six.
pub fn standard_g(m: usize) -> Permutation {
    block_cycles(m, 6)
}

/// Action of `g` on the `2m` orbits of `g²`: `(1,2)(3,4)…`.
pub fn gbar24(m: usize) -> Permutation {
    block_cycles(m, 2)
}

/// Action of `g` on the `3m` orbits of `g³`: `(1,2,3)(4,5,6)…`.
pub fn gbar36(m: usize) -> Permutation {
    block_cycles(m, 3)
}

/// `s = (2,3)(5,6)…`: swaps the last two points of each orbit of `ḡ₃₆`, so
/// `s⁻¹ ḡ₃₆⁻¹ s = ḡ₃₆`.
pub fn orbit_swap(m: usize) -> Permutation {
    let img = (0..3 * m)
        .map(|j| match j % 3 {
            0 => j,
            1 => j + 1,
            _ => j - 1,
        })
        .collect();
    Permutation::from_images(img).expect("orbit swap is a bijection")
}

fn canonical_cycles(p: &Permutation) -> Vec<Vec<usize>> {
    let mut cycles = p.all_cycles();
    cycles.sort_by_key(|c| (c.len(), c[0]));
    cycles
}

/// Some `p` with `p⁻¹ a p = b`, or `None` when the cycle types differ.
///
/// Cycles of each permutation are sorted by (length, least point) and
/// started at their least point; `p` maps them onto each other in order.
pub fn conjugator(a: &Permutation, b: &Permutation) -> Option<Permutation> {
    if a.degree() != b.degree() || a.cycle_type() != b.cycle_type() {
        return None;
    }
    let mut img = vec![0usize; a.degree()];
    for (ca, cb) in canonical_cycles(a).iter().zip(canonical_cycles(b).iter()) {
        for (&x, &y) in ca.iter().zip(cb) {
            img[x] = y;
        }
    }
    let p = Permutation::from_images(img).expect("cycle alignment is a bijection");
    debug_assert_eq!(&a.conjugate_by(&p), b);
    Some(p)
}

/// Turns `l` with `l⁻¹ ḡ₃₆ l = ḡ₃₆^{±1}` into one that commutes with `ḡ₃₆`,
/// by appending [`orbit_swap`] in the inverting case. `pattern` is the code
/// `l` maps onto; the swap must be one of its automorphisms.
pub fn normalize_commuting(l: &Permutation, pattern: &LinearCode) -> Result<Permutation> {
    let n = l.degree();
    if n % 3 != 0 || pattern.n() != n {
        return Err(Error::Dimension {
            expected: pattern.n(),
            found: n,
        });
    }
    let gb = gbar36(n / 3);
    let conj = gb.conjugate_by(l);
    if conj == gb {
        return Ok(l.clone());
    }
    if conj != gb.inverse() {
        return Err(Error::structural(format!(
            "l⁻¹ ḡ l = {conj} is neither ḡ nor ḡ⁻¹"
        )));
    }
    let s = orbit_swap(n / 3);
    if !is_automorphism(pattern, &s) {
        return Err(Error::structural("orbit swap is not an automorphism of the pattern code"));
    }
    let r = l.compose(&s);
    debug_assert_eq!(gb.conjugate_by(&r), gb);
    Ok(r)
}

/// Lifts `t̄` acting on the `3m` pairs `Δ_j` to a permutation of the `6m`
/// coordinates that normalizes the block structure.
///
/// Pair `j = 3b + r` (0-based) is `{6b + r, 6b + r + 3}`; we write its points
/// as `(x, j)` with `x ∈ {0,1}`. Then `g` is `(x, j) ↦ (x + δ_j, ḡ(j))` with
/// `δ_j = [r = 2]`, and the lift is `(x, j) ↦ (x + ε_j, t̄(j))` where
/// `ε_{ḡ(j)} = ε_j + δ_j + δ_{t̄(j)}` and `ε = 0` on the first pair of each
/// orbit. When `t̄` commutes with `ḡ` this gives `t⁻¹ g t = g`.
pub fn lift36_to_72(tbar: &Permutation) -> Result<Permutation> {
    let n = tbar.degree();
    if n % 3 != 0 {
        return Err(Error::contract(format!("degree {n} is not a multiple of 3")));
    }
    let m = n / 3;
    let delta = |j: usize| (j % 3 == 2) as usize;
    let mut eps = vec![0usize; n];
    for b in 0..m {
        for r in 0..2 {
            let j = 3 * b + r;
            eps[j + 1] = eps[j] ^ delta(j) ^ delta(tbar.apply(j));
        }
    }
    let point = |x: usize, j: usize| 6 * (j / 3) + j % 3 + 3 * x;
    let mut img = vec![0usize; 6 * m];
    for j in 0..n {
        for x in 0..2 {
            img[point(x, j)] = point(x ^ eps[j], tbar.apply(j));
        }
    }
    Permutation::from_images(img)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_g_powers() {
        let g = standard_g(12);
        assert_eq!(g.pow(6), Permutation::identity(72));
        assert!(g.to_string().starts_with("(1,2,3,4,5,6)(7,8,9,10,11,12)"));
        assert!(g.pow(2).to_string().starts_with("(1,3,5)(2,4,6)(7,9,11)"));
        assert!(g.pow(3).to_string().starts_with("(1,4)(2,5)(3,6)(7,10)"));
    }

    #[test]
    fn conjugator_examples() {
        let a = Permutation::parse(3, "(1,2,3)").unwrap();
        let b = Permutation::parse(3, "(1,3,2)").unwrap();
        assert_eq!(conjugator(&a, &a).unwrap(), Permutation::identity(3));
        assert_eq!(conjugator(&a, &b).unwrap().to_string(), "(2,3)");
        let t = Permutation::parse(3, "(1,2)").unwrap();
        assert!(conjugator(&a, &t).is_none());
    }

    #[test]
    fn swap_inverts_gbar() {
        let gb = gbar36(12);
        assert_eq!(gb.inverse().conjugate_by(&orbit_swap(12)), gb);
    }

    #[test]
    fn lift_of_identity_and_gbar() {
        assert_eq!(lift36_to_72(&Permutation::identity(36)).unwrap(), Permutation::identity(72));
        assert_eq!(lift36_to_72(&gbar36(12)).unwrap(), standard_g(12));
    }
}
