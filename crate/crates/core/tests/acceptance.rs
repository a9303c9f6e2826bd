//! One line per acceptance criterion, with the tolerance each one is held
//! to. Exits non-zero if any criterion fails; data-dependent criteria are
//! skipped when their inputs are absent.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdcode::codedata::{code_f, data_dir, golay24, load_classification, CodeRecord, Provenance, DATA_ENV};
use sdcode::equivalence::{automorphism_group, canonical_key, is_equivalent};
use sdcode::groupalg::DoublyEvenFilter;
use sdcode::lemmas::{self, Check};
use sdcode::searchpipeline::{
    build_ag, build_c36, build_l, refine_lprime, stage_order, staged_sieve, RunConfig, RunStatus, Runner, SieveSetup,
    StageOrder,
};
use sdcode::{Error, LinearCode};

use common::{aligned_with_g, aut_order6, brute_force_aut_order, direct_filter, qr_instance, random_perm, rigid_sd36, shift_blocks};

const SEED: u64 = 2024;
/// Published counts for the data-dependent stage.
const PUBLISHED_L: usize = 38;
const PUBLISHED_LPRIME: usize = 40;

enum Verdict {
    Pass,
    Fail,
    Skip,
}

struct Line {
    id: usize,
    verdict: Verdict,
    what: &'static str,
    detail: String,
    tolerance: &'static str,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn from_check(id: usize, what: &'static str, tolerance: &'static str, limit: u64, f: impl FnOnce() -> sdcode::Result<Check>) -> Line {
    let (res, elapsed) = timed(f);
    let (verdict, detail) = match res {
        Ok(c) if c.passed => (Verdict::Pass, c.detail),
        Ok(c) => (Verdict::Fail, c.detail),
        Err(e) => (Verdict::Fail, format!("error: {e}")),
    };
    Line {
        id,
        verdict,
        what,
        detail,
        tolerance,
        elapsed,
        limit: Some(Duration::from_secs(limit)),
    }
}

fn equivalence_engine() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let f = code_f();
    let g = golay24();
    let mut ok = true;
    for c in [&f, &g] {
        for _ in 0..100 {
            let moved = random_perm(c.n(), &mut rng).act_code(c).unwrap();
            ok &= matches!(is_equivalent(c, &moved), Ok(Some(w)) if w.act_code(c).unwrap() == moved);
        }
    }
    let oracle = brute_force_aut_order(&f);
    let order = automorphism_group(&f).map(|a| a.order().to_string()).unwrap_or_default();
    ok &= order == oracle.to_string();
    let kf = canonical_key(&f).unwrap();
    let kg = canonical_key(&g).unwrap();
    let mut invariant = 0;
    for _ in 0..1000 {
        invariant += usize::from(canonical_key(&random_perm(12, &mut rng).act_code(&f).unwrap()).unwrap() == kf);
    }
    for _ in 0..100 {
        invariant += usize::from(canonical_key(&random_perm(24, &mut rng).act_code(&g).unwrap()).unwrap() == kg);
    }
    ok &= invariant == 1100;
    (
        ok,
        format!("200 witnesses verified: {ok}; |Aut(F)| {order} vs backtracking {oracle}; key invariant on {invariant}/1100 re-permutations (1000 of F, 100 of the Golay code)"),
    )
}

fn workspace_data() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(_) => data_dir(None),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn pipeline_invariants(members: &[LinearCode]) -> bool {
    members.iter().all(|c| {
        (c.n(), c.k()) == (72, 24) && c.is_self_orthogonal() && c.is_doubly_even() && c.min_weight_below(16).is_none()
    })
}

fn pipeline() -> (Verdict, String) {
    let cfg = RunConfig::default();
    match load_classification(&workspace_data()) {
        Ok(records) => {
            let run = || -> sdcode::Result<(usize, usize, bool)> {
                let ag = build_ag(&cfg)?;
                let c36 = build_c36(&records, &cfg)?;
                let c: Vec<LinearCode> = c36.members.iter().map(|m| m.code.clone()).collect();
                let l = build_l(&ag.members, &c, &cfg)?;
                let codes: Vec<LinearCode> = l.members.iter().map(|m| m.code.clone()).collect();
                let lp = refine_lprime(&codes, &cfg)?;
                Ok((codes.len(), lp.len(), pipeline_invariants(&codes)))
            };
            match run() {
                Ok((nl, nlp, inv)) => {
                    let mut flags = Vec::new();
                    if nl != PUBLISHED_L {
                        flags.push(format!("DISCREPANCY |L| = {nl}, published {PUBLISHED_L}"));
                    }
                    if nlp != PUBLISHED_LPRIME {
                        flags.push(format!("DISCREPANCY |L'| = {nlp}, published {PUBLISHED_LPRIME}"));
                    }
                    let v = if inv { Verdict::Pass } else { Verdict::Fail };
                    (v, format!("|L| = {nl}, |L'| = {nlp}; invariants hold: {inv}; {}", if flags.is_empty() { "counts match".into() } else { flags.join("; ") }))
                }
                Err(e) => (Verdict::Fail, format!("error: {e}")),
            }
        }
        Err(Error::MissingData(_)) => {
            // Exercise the same stages on rigid synthetic [36,18,8] codes.
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let recs = vec![CodeRecord::new("standin", &rigid_sd36(&mut rng), Provenance::Ingested, "synthetic")];
            let plumbing = || -> sdcode::Result<(usize, bool)> {
                let ag = build_ag(&cfg)?;
                let c36 = build_c36(&recs, &cfg)?;
                let c: Vec<LinearCode> = c36.members.iter().take(1).map(|m| m.code.clone()).collect();
                let l = build_l(&ag.members[..4], &c, &cfg)?;
                let codes: Vec<LinearCode> = l.members.iter().map(|m| m.code.clone()).collect();
                Ok((codes.len(), pipeline_invariants(&codes)))
            };
            let detail = match plumbing() {
                Ok((n, inv)) => format!("stand-in plumbing: {n} L class(es), invariants hold: {inv}"),
                Err(e) => format!("stand-in plumbing error: {e}"),
            };
            (
                Verdict::Skip,
                format!("classification data absent (set {DATA_ENV} or add data/sd36_d8.codes); {detail}"),
            )
        }
        Err(e) => (Verdict::Fail, format!("classification invalid: {e}")),
    }
}

fn sieve_correctness() -> (bool, String) {
    // Staged against direct: three stages over H' sets capped at 20.
    let (_, l) = qr_instance(47);
    let setup = SieveSetup::new(&l).unwrap();
    let sets: Vec<_> = (0..3)
        .map(|j| {
            let reps = setup.hprime(j, DoublyEvenFilter::AmbientCode, 12, Some(20)).unwrap();
            setup.module_rows(j, &reps)
        })
        .collect();
    let sizes: Vec<usize> = sets.iter().map(Vec::len).collect();
    let mut agree = true;
    let mut checked = 0;
    for mode in [StageOrder::Decomposition, StageOrder::SmallestFirst] {
        let order = stage_order(&sizes, mode);
        let stages = staged_sieve(&setup.base, &sets, &order, 12);
        for (k, st) in stages.iter().enumerate() {
            agree &= *st == direct_filter(&setup.base, &sets, &order, k + 1, 12);
            checked += 1;
        }
    }
    // Planted retention at length 12, threshold 4.
    let f = code_f();
    let mut retained = 0;
    let mut planted = 0;
    for a in aut_order6(&f) {
        let (moved, l12) = aligned_with_g(&f, &a);
        let Ok(setup12) = SieveSetup::new(&l12) else {
            continue;
        };
        planted += 1;
        let cfg = RunConfig {
            blocks: 2,
            threshold: 4,
            filter: DoublyEvenFilter::Off,
            ..RunConfig::default()
        };
        let mut runner = Runner::new(&cfg, std::slice::from_ref(&l12), None, false).unwrap();
        let Ok(RunStatus::Complete(rep)) = runner.full_search(std::slice::from_ref(&l12)) else {
            continue;
        };
        let st = &rep.candidates[0];
        let tuple: Option<Vec<u32>> = st
            .order
            .iter()
            .map(|&j| {
                let hc = &setup12.classes[j];
                let z = moved.codewords().find(|z| hc.is_generator(z))?;
                st.hprime[j].iter().position(|&i| hc.same_class(&hc.representative(i), &z)).map(|p| p as u32)
            })
            .collect();
        if tuple.is_some_and(|t| st.stages.last().is_some_and(|fin| fin.contains(&t))) {
            retained += 1;
        }
    }
    let ok = agree && planted > 0 && retained == planted;
    (
        ok,
        format!("staged = direct on {checked} stage(s) of a length-48 instance (sets {sizes:?}); planted F retained in {retained}/{planted} aligned class(es)"),
    )
}

fn resumable_search() -> (bool, String) {
    let (_, l) = qr_instance(47);
    let cands = vec![l.clone(), shift_blocks(&l, 3)];
    let cfg = RunConfig {
        blocks: 8,
        threshold: 12,
        ..RunConfig::default()
    };
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.chk");
    let b = dir.path().join("b.chk");
    let full = match Runner::new(&cfg, &cands, Some(&a), false).unwrap().full_search(&cands).unwrap() {
        RunStatus::Complete(r) => r,
        RunStatus::Suspended { .. } => return (false, "unexpected suspension".into()),
    };
    let mut resumes = 0;
    let mut fresh = true;
    let resumed = loop {
        let mut r = Runner::new(&cfg, &cands, Some(&b), !fresh).unwrap().with_step_limit(1);
        fresh = false;
        match r.full_search(&cands).unwrap() {
            RunStatus::Complete(rep) => break rep,
            RunStatus::Suspended { .. } => resumes += 1,
        }
    };
    let same_report = full.to_text() == resumed.to_text();
    let same_bytes = std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap();
    let monotone = full.candidates.iter().all(|s| s.is_monotone());
    let ext: Vec<String> = full
        .candidates
        .iter()
        .map(|s| format!("stages {:?} extended {:?}", s.stages.iter().map(Vec::len).collect::<Vec<_>>(), s.extended_counts()))
        .collect();
    (
        same_report && same_bytes && monotone,
        format!(
            "{resumes} suspensions; report identical {same_report}; checkpoint bytes identical {same_bytes}; projected survivors non-increasing {monotone} ({})",
            ext.join("; ")
        ),
    )
}

fn boolean(id: usize, what: &'static str, tolerance: &'static str, limit: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Line {
    let ((ok, detail), elapsed) = timed(f);
    Line {
        id,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        what,
        detail,
        tolerance,
        elapsed,
        limit: limit.map(Duration::from_secs),
    }
}

fn main() -> ExitCode {
    let mut lines = vec![
        from_check(1, "ideal structure", "exact", 1, lemmas::check_ideal),
        from_check(2, "block tables", "exact", 1, lemmas::check_block_tables),
        from_check(3, "quotient counts", "exact, doubly-even count <= 2048", 10, || lemmas::check_quotient_counts(SEED)),
        from_check(4, "counting corollaries", "exact", 30, lemmas::check_counting),
        from_check(5, "Huffman decomposition", "exact", 10, || lemmas::check_huffman(SEED, 20)),
        from_check(6, "reference codes", "exact", 5, lemmas::check_reference_codes),
        boolean(7, "equivalence engine", "exact", Some(60), equivalence_engine),
    ];
    let ((verdict, detail), elapsed) = timed(pipeline);
    lines.push(Line {
        id: 8,
        verdict,
        what: "pipeline invariants",
        detail,
        tolerance: "invariants exact; counts against 38 and 40 flagged, not failed",
        elapsed,
        limit: None,
    });
    lines.push(boolean(9, "sieve correctness", "exact", Some(60), sieve_correctness));
    lines.push(boolean(10, "resumable search", "byte-identical; projected counts non-increasing", None, resumable_search));

    let mut failed = 0;
    for l in &lines {
        let over = l.limit.is_some_and(|lim| l.elapsed > lim);
        let tag = match (&l.verdict, over) {
            (Verdict::Fail, _) | (Verdict::Pass, true) => {
                failed += 1;
                "FAIL"
            }
            (Verdict::Pass, false) => "PASS",
            (Verdict::Skip, _) => "SKIP",
        };
        let limit = l.limit.map_or("none".to_string(), |d| format!("{} s", d.as_secs()));
        println!(
            "criterion {:>2} {tag} {}: {} [tolerance: {}; time {:.2} s, limit {limit}]",
            l.id,
            l.what,
            l.detail,
            l.tolerance,
            l.elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
