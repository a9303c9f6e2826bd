#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdcode::codedata::{format_codes, golay24, CodeRecord, Provenance};
use sdcode::LinearCode;

use common::{qr_instance, rigid_sd36, shift_blocks};

fn sdcode(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdcode"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SDCODE_DATA")
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_store(path: &Path, codes: &[LinearCode]) {
    let records: Vec<CodeRecord> = codes
        .iter()
        .enumerate()
        .map(|(i, c)| CodeRecord::new(format!("c{}", i + 1), c, Provenance::Ingested, "test fixture"))
        .collect();
    fs::write(path, format_codes(&records)).unwrap();
}

fn qr_candidates(dir: &Path) -> String {
    let (_, l) = qr_instance(47);
    let path = dir.join("cands.codes");
    write_store(&path, &[l.clone(), shift_blocks(&l, 3)]);
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_lemmas_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = sdcode(&["verify-lemmas"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().count() >= 6);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn mindist_reads_bare_matrices_and_stores() {
    let dir = tempfile::tempdir().unwrap();
    let bare = dir.path().join("golay.txt");
    let rows: Vec<String> = golay24().basis().rows().iter().map(|r| r.to_bit_string()).collect();
    fs::write(&bare, rows.join("\n")).unwrap();
    let o = sdcode(&["mindist", bare.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("golay: d = 8 "), "{}", stdout(&o));
    let store = dir.path().join("g.codes");
    write_store(&store, &[golay24()]);
    let below8 = sdcode(&["mindist", "--below", "8", store.to_str().unwrap()], dir.path());
    assert_eq!(stdout(&below8).trim(), "c1: none");
    let below9 = stdout(&sdcode(&["mindist", "--below", "9", store.to_str().unwrap()], dir.path()));
    assert!(below9.starts_with("c1: weight 8 "), "{below9}");
}

#[test]
fn decompose_and_fixed_code() {
    let dir = tempfile::tempdir().unwrap();
    let (_, l) = qr_instance(47);
    let path = dir.path().join("l.codes");
    write_store(&path, &[l]);
    let o = sdcode(&["decompose", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("c1: [48,"), "{}", stdout(&o));
    let g = dir.path().join("g.codes");
    write_store(&g, &[golay24()]);
    let not_aut = sdcode(&["fixed-code", "--perm", "(1,2)", g.to_str().unwrap()], dir.path());
    assert_eq!(not_aut.status.code(), Some(1));
}

#[test]
fn data_dependent_stages_report_missing_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = sdcode(&["build-c36"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("Melchor") && err.contains("41"), "{err}");
    let o = sdcode(&["build-l"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("run `build-ag` first"));
    let o = sdcode(&["full-search"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn incomplete_classification_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    fs::create_dir(&data).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    write_store(&data.join("sd36_d8.codes"), &[rigid_sd36(&mut rng)]);
    let o = sdcode(&["validate-data", "--data", data.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 41 records, found 1"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sdcode(&["no-such-command"], dir.path()).status.code(), Some(2));
    assert_eq!(sdcode(&["sieve", "x", "--blocks", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(sdcode(&["sieve", "--resume", "x"], dir.path()).status.code(), Some(2));
    assert_eq!(sdcode(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn sieve_finds_the_planted_code_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let cands = qr_candidates(dir.path());
    let o = sdcode(&["sieve", "--blocks", "8", "--threshold", "12", &cands], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("candidate 1 hprime"), "{out}");
    assert!(out.contains("self-dual doubly-even code(s) with g as an automorphism found"), "{out}");
    assert_eq!(fs::read_to_string(dir.path().join("out/report.txt")).unwrap(), out);
    let wrong = sdcode(&["sieve", &cands], dir.path());
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn interrupted_search_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cands = qr_candidates(dir.path());
    let base = ["--blocks", "8", "--threshold", "12"];
    let mut args = base.to_vec();
    args.extend(["--out", "a", "full-search", &cands]);
    let whole = sdcode(&args, dir.path());
    assert_eq!(whole.status.code(), Some(0));
    let mut first = true;
    let mut suspensions = 0;
    loop {
        let mut args = base.to_vec();
        args.extend(["--out", "b", "--checkpoint", "run.chk", "--max-steps", "2"]);
        if !first {
            args.push("--resume");
        }
        args.extend(["full-search", &cands]);
        first = false;
        let o = sdcode(&args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        if !stdout(&o).starts_with("suspended") {
            break;
        }
        suspensions += 1;
        assert!(suspensions < 100);
    }
    assert!(suspensions > 0);
    let a = fs::read(dir.path().join("a/report.txt")).unwrap();
    let b = fs::read(dir.path().join("b/report.txt")).unwrap();
    assert_eq!(a, b);
    let mut args = vec!["--blocks", "8", "--threshold", "14", "--checkpoint", "run.chk", "--resume"];
    args.extend(["full-search", &cands]);
    assert_eq!(sdcode(&args, dir.path()).status.code(), Some(1));
}
