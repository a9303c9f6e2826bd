//! Brute-force checks of the algebraic facts the search depends on, at
//! sizes where exhaustive enumeration is cheap.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codedata::{code_f, golay24, no_overcode_with_min_distance};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::BitVector;
use crate::groupalg::{
    block_solutions, ideal_structure_check, submodule_lattice, type_ii_modules, BlockPattern, CyclicModule,
    DoublyEvenFilter, HpClasses, Idempotent, Layout, SubmoduleKind,
};
use crate::perms::{conjugator, even_orbit_subcode, fixed_subcode, huffman_check, is_automorphism, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

/// The ideal `(f₂)` of F₂⟨g⟩: dimension 4, one proper subideal `𝓙` with
/// `𝓙(1+g³) = 0`, five irreducible F₂⟨g²⟩-submodules including `𝓙`, the
/// other four complementing it.
pub fn check_ideal() -> Result<Check> {
    let r = ideal_structure_check()?;
    Ok(check(
        "ideal",
        r.holds(),
        format!(
            "dim {}, {} elements, {} proper subideal(s), {} irreducible g^2-submodules, others complement J: {}",
            r.ideal_dim,
            r.ideal_size,
            r.proper_subideals.len(),
            r.irreducible_g2.len(),
            r.others_complement_j
        ),
    ))
}

/// Solutions of `z(1+g³) = v` on one block, as printed for the patterns A-D.
const PRINTED_TABLES: [(BlockPattern, [&str; 4]); 4] = [
    (BlockPattern::A, ["000000", "110110", "011011", "101101"]),
    (BlockPattern::B, ["100010", "010100", "111001", "001111"]),
    (BlockPattern::C, ["010001", "001010", "111100", "100111"]),
    (BlockPattern::D, ["101000", "000101", "011110", "110011"]),
];

/// Brute force over the 64 vectors of a block reproduces the four
/// solution sets, so `|H_p| = 4^m`.
pub fn check_block_tables() -> Result<Check> {
    let mut ok = true;
    for (pat, printed) in PRINTED_TABLES {
        let mut want: Vec<BitVector> = printed.iter().map(|s| s.parse().expect("table")).collect();
        want.sort();
        ok &= block_solutions(pat) == want;
    }
    let lay = Layout::new(12);
    let dim = lay.socle_ambient().k();
    ok &= dim == 24;
    Ok(check(
        "block-tables",
        ok,
        format!("four 4-element solution sets match; solution space dimension {dim}, |H_p| = 4^{}", dim / 2),
    ))
}

/// Seeded random `g`-invariant subspace of `V₂(g³)` of dimension `dim`.
pub fn random_socle(layout: &Layout, dim: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    let k = layout.socle_ambient();
    if dim > k.k() || dim % 2 != 0 {
        return Err(Error::contract(format!("no socle of dimension {dim} in V2(g^3)")));
    }
    let mut s = LinearCode::zero(layout.n());
    while s.k() < dim {
        let mut v = BitVector::zeros(layout.n());
        for r in k.basis().rows() {
            if rng.gen::<bool>() {
                v ^= r;
            }
        }
        if v.is_zero() || s.contains(&v) {
            continue;
        }
        s = s.sum(&layout.cyclic_module(&v)?.span)?;
    }
    Ok(s)
}

/// On a constructed 12-dimensional socle at length 72: class size and class
/// count 4096 from the linear algebra, the class of one representative
/// checked element by element, and at most 2048 doubly-even
/// representatives.
pub fn check_quotient_counts(seed: u64) -> Result<Check> {
    let lay = Layout::new(12);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let socle = random_socle(&lay, 12, &mut rng)?;
    let parts = lay.decompose_socle(&socle)?;
    let hc = HpClasses::new(&lay, &parts[0], &socle)?;
    let size = 1u64 << hc.class_size_log2();
    let count = hc.class_count();
    let z = hc.representative(count / 3);
    let mut members = 0u64;
    let mut all_ok = true;
    for s in socle.codewords() {
        let w = &z ^ &s;
        all_ok &= hc.is_generator(&w) && hc.same_class(&z, &w);
        members += 1;
    }
    let de = hc.doubly_even_representatives(&socle, DoublyEvenFilter::SocleOnly)?.len();
    let passed = hc.solution_dim() == 24 && socle.k() == 12 && size == 4096 && count == 4096 && members == 4096 && all_ok && de <= 2048;
    Ok(check(
        "quotient-counts",
        passed,
        format!(
            "dim K {}, dim socle {}, class size {size}, class count {count}, {de} doubly-even representatives",
            hc.solution_dim(),
            socle.k()
        ),
    ))
}

fn soc(layout: &Layout, m: &LinearCode) -> Result<LinearCode> {
    m.intersection(layout.socle_ambient())
}

fn sum_all<'a>(n: usize, codes: impl IntoIterator<Item = &'a LinearCode>) -> Result<LinearCode> {
    codes.into_iter().try_fold(LinearCode::zero(n), |acc, c| acc.sum(c))
}

/// All ways to write `s` as a direct sum of modules from `irr`, as sorted
/// index sets.
fn decompositions(s: &LinearCode, irr: &[LinearCode]) -> Result<Vec<Vec<usize>>> {
    fn rec(
        s: &LinearCode,
        irr: &[LinearCode],
        start: usize,
        acc: &LinearCode,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if acc.k() == s.k() {
            out.push(cur.clone());
            return Ok(());
        }
        for i in start..irr.len() {
            if !irr[i].is_subcode_of(s) || acc.intersection(&irr[i])?.k() != 0 {
                continue;
            }
            cur.push(i);
            rec(s, irr, i + 1, &acc.sum(&irr[i])?, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(s, irr, 0, &LinearCode::zero(s.n()), &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// The counting statements for submodules of `V₂` at one and two blocks,
/// by enumeration of the whole submodule lattice.
pub fn check_counting() -> Result<Check> {
    let mut ok = true;
    let mut tallies = Vec::new();
    for m in 1..=2 {
        let lay = Layout::new(m);
        let n = lay.n();
        let lattice = submodule_lattice(&lay, lay.v2())?;
        let typeii: Vec<CyclicModule> = type_ii_modules(&lay, lay.v2())?;
        let irr: Vec<LinearCode> = lattice
            .iter()
            .filter(|s| s.kind == SubmoduleKind::Irreducible)
            .map(|s| s.code.clone())
            .collect();

        // Type-II modules over a common socle.
        let mut same_socle_cases = 0;
        for p in &irr {
            let kp: Vec<&CyclicModule> = typeii.iter().filter(|q| q.socle == *p).collect();
            let subsets = 1usize << kp.len().min(10);
            for mask in 1..subsets {
                let chosen: Vec<&CyclicModule> = (0..kp.len()).filter(|i| mask >> i & 1 == 1).map(|i| kp[i]).collect();
                let nn = chosen.len();
                let total = sum_all(n, chosen.iter().map(|q| &q.span))?;
                if total.k() != 2 + 2 * nn {
                    continue;
                }
                same_socle_cases += 1;
                ok &= soc(&lay, &total)?.k() == 2 * nn;
                ok &= typeii.iter().filter(|q| q.span.is_subcode_of(&total)).all(|q| q.socle == *p);
            }
        }

        // Exactly 2^{2m'-2} type-II modules per irreducible socle.
        let mut balanced = 0;
        let mut decomps = 0;
        for info in &lattice {
            let mm = &info.code;
            let s = soc(&lay, mm)?;
            if mm.k() == 0 || mm.k() != 2 * s.k() || mm.k() % 4 != 0 {
                continue;
            }
            balanced += 1;
            let mprime = mm.k() / 4;
            let inside: Vec<&CyclicModule> = typeii.iter().filter(|q| q.span.is_subcode_of(mm)).collect();
            for p in irr.iter().filter(|p| p.is_subcode_of(&s)) {
                let cnt = inside.iter().filter(|q| q.socle == *p).count();
                ok &= cnt == 1 << (2 * mprime - 2);
            }
            // Every admissible choice over every decomposition of the socle.
            for d in decompositions(&s, &irr)? {
                let choices: Vec<Vec<&CyclicModule>> =
                    d.iter().map(|&i| inside.iter().copied().filter(|q| q.socle == irr[i]).collect()).collect();
                let mut idx = vec![0usize; choices.len()];
                loop {
                    decomps += 1;
                    let total = sum_all(n, idx.iter().zip(&choices).map(|(&i, c)| &c[i].span))?;
                    ok &= total == *mm && total.k() == 4 * choices.len();
                    let mut pos = 0;
                    while pos < idx.len() {
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == idx.len() {
                        break;
                    }
                }
            }
        }

        // Type-II modules over independent socles.
        let mut diff_cases = 0;
        for (a, q1) in typeii.iter().enumerate() {
            for q2 in &typeii[a + 1..] {
                if q1.socle.intersection(&q2.socle)?.k() != 0 {
                    continue;
                }
                diff_cases += 1;
                let total = q1.span.sum(&q2.span)?;
                ok &= total.k() == 8 && soc(&lay, &total)? == q1.socle.sum(&q2.socle)?;
            }
        }
        tallies.push(format!(
            "m={m}: {} submodules, {} irreducible, {} type II, {same_socle_cases} same-socle sums, {balanced} balanced modules, {decomps} decompositions, {diff_cases} independent pairs",
            lattice.len(),
            irr.len(),
            typeii.len()
        ));
    }
    Ok(check("counting", ok, tallies.join("; ")))
}

/// `x ↦ −1/(x+1)` on the projective line over F₂₃, with coordinate 23 as ∞.
/// Fixed-point-free of order 3, and an automorphism of [`golay24`].
pub fn golay_order3() -> Permutation {
    let inv = |a: u64| (1..23).find(|b| a * b % 23 == 1).expect("unit");
    let img = (0..24u64)
        .map(|x| match x {
            23 => 0,
            22 => 23,
            _ => ((23 - inv(x + 1)) % 23) as usize,
        })
        .collect();
    Permutation::from_images(img).expect("bijection")
}

/// `C·(1+h+h²)` and `C·(h+h²)` for `h` of order 3.
fn order3_projections(c: &LinearCode, h: &Permutation) -> Result<(LinearCode, LinearCode)> {
    let h2 = h.pow(2);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in c.basis().rows() {
        let x = h.act_vector(r)?;
        let y = h2.act_vector(r)?;
        a.push(&(r ^ &x) ^ &y);
        b.push(&x ^ &y);
    }
    Ok((LinearCode::from_generators(c.n(), a)?, LinearCode::from_generators(c.n(), b)?))
}

fn split_holds(c: &LinearCode, f1: &LinearCode, f2: &LinearCode, fixed: &LinearCode, even: &LinearCode) -> Result<bool> {
    Ok(f1 == fixed && f2 == even && f1.intersection(f2)?.k() == 0 && f1.k() + f2.k() == c.k() && f1.sum(f2)? == *c)
}

/// Random `g`-invariant code of length `6m`: the `g`-span of a few random
/// vectors.
pub fn random_g_invariant(layout: &Layout, seeds: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    let n = layout.n();
    let mut rows = Vec::new();
    for _ in 0..seeds {
        let v = BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()));
        for i in 0..6 {
            rows.push(layout.g_pow(i).act_vector(&v)?);
        }
    }
    LinearCode::from_generators(n, rows)
}

/// `C = Cf₁ ⊕ Cf₂` with `Cf₁ = C(h)` and `Cf₂ = E(h)`, for the Golay code
/// with a fixed-point-free order-3 automorphism and for random
/// `g`-invariant codes of length 72 (with `h = g²`).
pub fn check_huffman(seed: u64, random_codes: usize) -> Result<Check> {
    let golay = golay24();
    let h = golay_order3();
    let mut ok = is_automorphism(&golay, &h) && h.order() == 3 && h.support_size() == 24;
    let (f1, f2) = order3_projections(&golay, &h)?;
    let split = huffman_check(&golay, &h)?;
    ok &= split_holds(&golay, &f1, &f2, &split.fixed, &split.even)?;
    let golay_dims = (f1.k(), f2.k());

    // The same split after moving h onto g² of the standard layout.
    let lay4 = Layout::new(4);
    let r = conjugator(&h, lay4.g_pow(2)).ok_or_else(|| Error::structural("cycle types differ"))?;
    let moved = r.act_code(&golay)?;
    let (fx, ev) = lay4.fixed_and_even(&moved)?;
    let (m1, m2) = order3_projections(&moved, lay4.g_pow(2))?;
    ok &= split_holds(&moved, &m1, &m2, &fx, &ev)?;

    let lay = Layout::new(12);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_codes {
        let seeds = rng.gen_range(1..=6);
        let c = random_g_invariant(&lay, seeds, &mut rng)?;
        let f1 = lay.project_idempotent(&c, Idempotent::F1)?;
        let f2 = lay.project_idempotent(&c, Idempotent::F2)?;
        let fixed = fixed_subcode(&c, lay.g_pow(2))?;
        let even = even_orbit_subcode(&c, lay.g_pow(2))?;
        ok &= split_holds(&c, &f1, &f2, &fixed, &even)?;
    }
    Ok(check(
        "huffman",
        ok,
        format!(
            "Golay: dim C(h) {} + dim E(h) {} = 12; {random_codes} random g-invariant codes of length 72 split",
            golay_dims.0, golay_dims.1
        ),
    ))
}

/// Golay: `d = 8` and `A₈ = 759` by full enumeration. ℱ: self-dual
/// `[12,6,4]` with no overcode of minimum distance 4.
pub fn check_reference_codes() -> Result<Check> {
    let g = golay24();
    let we = g.weight_enumerator(1 << 12)?.to_vec();
    let d = (1..we.len()).find(|&w| we[w] > 0).unwrap_or(0);
    let f = code_f();
    let ff = f.classify();
    let fd = f.minimum_distance().map_or(0, |x| x.0);
    let no_over = no_overcode_with_min_distance(&f, 4)?;
    let passed = (g.n(), g.k()) == (24, 12)
        && g.classify().self_dual
        && g.is_doubly_even()
        && d == 8
        && we[8] == 759
        && (f.n(), f.k()) == (12, 6)
        && ff.self_dual
        && fd == 4
        && no_over;
    Ok(check(
        "reference-codes",
        passed,
        format!("Golay [24,12,{d}] with A8 = {}; F [12,{},{fd}] self-dual {}, no overcode with d >= 4: {no_over}", we[8], f.k(), ff.self_dual),
    ))
}

/// Every check above, with the given seed for the sampled ones.
pub fn run_all(seed: u64) -> Result<Vec<Check>> {
    Ok(vec![
        check_ideal()?,
        check_block_tables()?,
        check_quotient_counts(seed)?,
        check_counting()?,
        check_huffman(seed, 20)?,
        check_reference_codes()?,
    ])
}
