//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use sdcode::codedata::code_f;
use sdcode::gf2linalg::BitVector;
use sdcode::perms::{conjugator, fixed_subcode, standard_g};
use sdcode::{LinearCode, Permutation};

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    img.shuffle(rng);
    Permutation::from_images(img).unwrap()
}

/// Order of `Aut(c)` by assigning coordinate images one at a time and
/// rejecting as soon as a codeword with fully assigned support maps
/// outside the code. Codewords are bit masks; `n` at most 20.
pub fn brute_force_aut_order(c: &LinearCode) -> u64 {
    let n = c.n();
    assert!(n <= 20);
    let mask = |w: &BitVector| w.iter_ones().fold(0u32, |m, i| m | 1 << i);
    let mut member = vec![false; 1 << n];
    let mut closing: Vec<Vec<u32>> = vec![Vec::new(); n];
    for w in c.codewords() {
        let m = mask(&w);
        member[m as usize] = true;
        if m != 0 {
            closing[31 - m.leading_zeros() as usize].push(m);
        }
    }
    struct St {
        n: usize,
        img: Vec<usize>,
        used: u32,
        member: Vec<bool>,
        closing: Vec<Vec<u32>>,
    }
    fn image(st: &St, m: u32) -> u32 {
        (0..st.n).filter(|&x| m >> x & 1 == 1).fold(0, |acc, x| acc | 1 << st.img[x])
    }
    fn rec(st: &mut St, i: usize) -> u64 {
        if i == st.n {
            return 1;
        }
        let mut total = 0;
        for y in 0..st.n {
            if st.used >> y & 1 == 1 {
                continue;
            }
            st.img[i] = y;
            if st.closing[i].iter().all(|&m| st.member[image(st, m) as usize]) {
                st.used |= 1 << y;
                total += rec(st, i + 1);
                st.used &= !(1 << y);
            }
        }
        total
    }
    let mut st = St {
        n,
        img: vec![0; n],
        used: 0,
        member,
        closing,
    };
    rec(&mut st, 0)
}

/// F₄ as 0, 1, ω, ω² ↦ 0, 1, 2, 3.
fn f4_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a - 1 + b - 1) % 3 + 1
}

/// `x ↦ x·ω^shift`, then the even-weight word on one `ḡ₃₆` orbit:
/// `1 ↦ 011`, `ω ↦ 101`, `ω² ↦ 110`.
fn f4_bits(x: u8) -> [bool; 3] {
    match x {
        0 => [false, false, false],
        1 => [false, true, true],
        2 => [true, false, true],
        _ => [true, true, false],
    }
}

/// A self-dual `[36,18]` code with `ḡ₃₆` as an automorphism: ℱ⊗⟨(1,1,1)⟩
/// plus the binary image of two hexacodes over F₄, placed on the twelve
/// orbits by `orbits` and scaled by `scales` (exponents of ω).
pub fn hexacode_sd36(orbits: &[usize; 12], scales: &[u8; 12]) -> LinearCode {
    const W: u8 = 2;
    let hex: [[u8; 6]; 3] = [[1, 0, 0, 1, W, W], [0, 1, 0, W, 1, W], [0, 0, 1, W, W, 1]];
    let mut rows: Vec<BitVector> = code_f().replicate(3).basis().rows().to_vec();
    for half in 0..2 {
        for h in &hex {
            for mult in [1u8, W] {
                let mut v = BitVector::zeros(36);
                for (i, &x) in h.iter().enumerate() {
                    let pos = 6 * half + i;
                    let s = 1 + scales[pos] % 3;
                    let bits = f4_bits(f4_mul(f4_mul(x, mult), s));
                    for (r, &b) in bits.iter().enumerate() {
                        if b {
                            v.set(3 * orbits[pos] + r, true);
                        }
                    }
                }
                rows.push(v);
            }
        }
    }
    LinearCode::from_generators(36, rows).unwrap()
}

/// A [`hexacode_sd36`] code of minimum distance 8 from a seeded search.
pub fn rigid_sd36(rng: &mut impl Rng) -> LinearCode {
    loop {
        let mut orbits: [usize; 12] = std::array::from_fn(|i| i);
        orbits.shuffle(rng);
        let scales: [u8; 12] = std::array::from_fn(|_| rng.gen_range(0..3));
        let d = hexacode_sd36(&orbits, &scales);
        if d.min_weight_below(8).is_none() {
            return d;
        }
    }
}

/// Conjugates an order-6 automorphism `a` of `c` to the standard `g` and
/// returns the moved code together with `L = C(g²) + C(g³)`.
pub fn aligned_with_g(c: &LinearCode, a: &Permutation) -> (LinearCode, LinearCode) {
    let m = c.n() / 6;
    let g = standard_g(m);
    let r = conjugator(a, &g).expect("type 6^m");
    let moved = r.act_code(c).unwrap();
    let l = fixed_subcode(&moved, &g.pow(2)).unwrap().sum(&fixed_subcode(&moved, &g.pow(3)).unwrap()).unwrap();
    (moved, l)
}

/// Random element of the group generated by `gens`, as a long random word.
pub fn random_element(gens: &[Permutation], rng: &mut impl Rng) -> Permutation {
    let mut x = Permutation::identity(gens[0].degree());
    for _ in 0..60 {
        x = x.compose(&gens[rng.gen_range(0..gens.len())]);
    }
    x
}

/// An element of order 6 moving every point in 6-cycles, found as a power
/// of random group elements.
pub fn order6_fpf(gens: &[Permutation], rng: &mut impl Rng) -> Permutation {
    let n = gens[0].degree();
    loop {
        let x = random_element(gens, rng);
        let o = x.order();
        if !o.is_multiple_of(6) {
            continue;
        }
        let y = x.pow((o / 6) as i64);
        if y.cycle_type().get(&6) == Some(&(n / 6)) {
            return y;
        }
    }
}

/// Extended quadratic residue code of prime length `p ≡ 7 (mod 8)`: shifts
/// of the residue indicator plus a parity coordinate `p` (the point ∞).
pub fn extended_qr(p: usize) -> LinearCode {
    let qr: Vec<usize> = (1..p).map(|x| x * x % p).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let rows = (0..p).map(|s| {
        let mut v = BitVector::from_indices(p + 1, qr.iter().map(|q| (q + s) % p));
        v.set(p, true);
        v
    });
    LinearCode::from_generators(p + 1, rows).unwrap()
}

/// `x ↦ (ax+b)/(cx+d)` on `{0, …, p-1, ∞ = p}`.
pub fn mobius(p: usize, a: usize, b: usize, c: usize, d: usize) -> Permutation {
    let inv = |x: usize| (1..p).find(|y| x * y % p == 1).unwrap();
    let img = (0..=p)
        .map(|x| {
            let (num, den) = if x == p { (a % p, c % p) } else { ((a * x + b) % p, (c * x + d) % p) };
            if den == 0 {
                p
            } else {
                num * inv(den) % p
            }
        })
        .collect();
    Permutation::from_images(img).unwrap()
}

/// The first automorphism `x ↦ (ax+b)/(cx+d)` of `code` (in lexicographic
/// order of `(a,b,c,d)`, determinant 1) of order 6 without fixed points.
pub fn psl_order6(p: usize, code: &LinearCode) -> Permutation {
    for a in 0..p {
        for b in 0..p {
            for c in 1..p {
                // d from ad - bc = 1 needs a != 0 or bc = -1.
                for d in 0..p {
                    if (a * d + p * p - b * c % p) % p != 1 {
                        continue;
                    }
                    let g = mobius(p, a, b, c, d);
                    if g.order() == 6 && g.cycle_type().get(&6) == Some(&((p + 1) / 6)) && sdcode::perms::is_automorphism(code, &g) {
                        return g;
                    }
                }
            }
        }
    }
    panic!("no fixed-point-free automorphism of order 6");
}

/// Class representatives of the fixed-point-free order-6 automorphisms of
/// `c`, for codes whose group can be enumerated.
pub fn aut_order6(c: &LinearCode) -> Vec<Permutation> {
    let n = c.n();
    let g = sdcode::equivalence::automorphism_group(c).unwrap();
    g.class_representatives(10_000_000, |p| p.order() == 6 && p.cycle_type().get(&6) == Some(&(n / 6)))
        .unwrap()
}

/// `(code with g, L)` for the extended QR code of length `p + 1`.
pub fn qr_instance(p: usize) -> (LinearCode, LinearCode) {
    let c = extended_qr(p);
    let g = psl_order6(p, &c);
    aligned_with_g(&c, &g)
}

/// Tuples over the sets (in `order`) whose full accumulated code passes,
/// by testing every element of the cartesian product.
pub fn direct_filter(
    base: &LinearCode,
    sets: &[Vec<Vec<BitVector>>],
    order: &[usize],
    len: usize,
    threshold: usize,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    if order[..len].iter().any(|&j| sets[j].is_empty()) {
        return out;
    }
    loop {
        let rows = idx.iter().enumerate().flat_map(|(pos, &c)| sets[order[pos]][c].iter().cloned());
        if sdcode::searchpipeline::passes(base, rows, threshold) {
            out.push(idx.iter().map(|&c| c as u32).collect());
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sets[order[pos]].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `c` with its six-point blocks cyclically shifted by `s`; commutes with
/// the standard `g`.
pub fn shift_blocks(c: &LinearCode, s: usize) -> LinearCode {
    let m = c.n() / 6;
    let img = (0..c.n()).map(|x| 6 * ((x / 6 + s) % m) + x % 6).collect();
    Permutation::from_images(img).unwrap().act_code(c).unwrap()
}
