//! `sdcode`: stage-by-stage driver for the order-6 automorphism search and
//! its verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use sdcode::codedata::{
    data_dir, load_classification, load_codes, save_codes, write_atomic, CodeRecord, Provenance, DATA_ENV,
};
use sdcode::equivalence::SearchLimits;
use sdcode::groupalg::{DoublyEvenFilter, Idempotent, Layout};
use sdcode::lemmas;
use sdcode::perms::{even_orbit_subcode, fixed_subcode, is_automorphism};
use sdcode::searchpipeline::{self, RunConfig, RunStatus, Runner, StageOrder};
use sdcode::{Error, LinearCode, Permutation};

const AG_FILE: &str = "ag.codes";
const C36_FILE: &str = "c36.codes";
const L_FILE: &str = "l.codes";
const LPRIME_FILE: &str = "lprime.codes";
const REPORT_FILE: &str = "report.txt";

#[derive(Parser, Debug)]
#[command(name = "sdcode", version, about = "Search for self-dual doubly-even codes with an automorphism of order 6")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Checkpoint file for the sieve.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint.
    #[arg(long, global = true)]
    resume: bool,
    /// Largest number of codewords any single enumeration may visit.
    #[arg(long = "budget-enum", global = true, default_value_t = sdcode::codes::DEFAULT_ENUM_BUDGET)]
    budget_enum: u128,
    /// Required minimum distance.
    #[arg(long, global = true, default_value_t = 16)]
    threshold: usize,
    /// Number of six-point blocks (length 6·M).
    #[arg(long, global = true, default_value_t = 12)]
    blocks: usize,
    /// Directory holding external data.
    #[arg(long, global = true, env = DATA_ENV)]
    data: Option<PathBuf>,
    /// Directory for stage outputs.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Doubly-even filter for H': ambient, socle or off.
    #[arg(long, global = true, default_value = "ambient")]
    filter: DoublyEvenFilter,
    /// Order of the sieve stages: decomposition or smallest-first.
    #[arg(long = "stage-order", global = true, default_value = "decomposition")]
    stage_order: StageOrder,
    /// Truncate every H' set (scaled runs only).
    #[arg(long = "hprime-cap", global = true)]
    hprime_cap: Option<usize>,
    /// Stop after this many sieve steps; resume later from the checkpoint.
    #[arg(long = "max-steps", global = true)]
    max_steps: Option<usize>,
    /// Node cap for the backtracking searches.
    #[arg(long = "max-nodes", global = true, default_value_t = SearchLimits::default().max_nodes)]
    max_nodes: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the brute-force checks of the module-theoretic facts.
    VerifyLemmas,
    /// Minimum distance of each code in a file, or a word below a bound.
    Mindist {
        /// Report a nonzero word of weight below this, or `none`.
        #[arg(long)]
        below: Option<usize>,
        file: PathBuf,
    },
    /// Fixed and even-orbit subcodes under a permutation in cycle notation.
    FixedCode {
        /// For example "(1,2,3)(4,5,6)".
        #[arg(long)]
        perm: String,
        file: PathBuf,
    },
    /// Decomposition of g-invariant codes of length 6·M under the standard g.
    Decompose { file: PathBuf },
    /// All Golay codes containing F⊗(1,1) in the AF-orbit.
    BuildAg,
    /// Align the classified [36,18,8] codes with ḡ₃₆.
    BuildC36,
    /// Sums of AG and C36 members of dimension 24 and distance 16.
    BuildL,
    /// Aligned order-6 automorphisms of the L codes.
    RefineLprime,
    /// Sieve the candidates of a file.
    Sieve { file: PathBuf },
    /// Sieve every L′ candidate with checkpointing and write the report.
    FullSearch {
        /// Candidates; defaults to the refine-lprime output.
        file: Option<PathBuf>,
    },
    /// Validate the external classification data.
    ValidateData,
}

/// Exit status of a failed command.
enum Failure {
    Verification(String),
    Usage(String),
    MissingData(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MissingData(m) => Failure::MissingData(m),
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn config(o: &Opts) -> RunConfig {
    RunConfig {
        blocks: o.blocks,
        threshold: o.threshold,
        jobs: o.jobs,
        enum_budget: o.budget_enum,
        limits: SearchLimits {
            max_nodes: o.max_nodes,
            ..SearchLimits::default()
        },
        filter: o.filter,
        stage_order: o.stage_order,
        hprime_cap: o.hprime_cap,
        seed: o.seed,
        ..RunConfig::default()
    }
}

/// A code store, or a bare generator matrix with one row per line.
fn read_codes(path: &Path) -> std::result::Result<Vec<CodeRecord>, Failure> {
    match load_codes(path) {
        Ok(r) => Ok(r),
        Err(Error::Parse { .. }) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let n = text.lines().map(str::trim).find(|l| !l.is_empty()).map_or(0, str::len);
            let code = LinearCode::parse(n, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let name = path.file_stem().map_or("code".into(), |s| s.to_string_lossy().into_owned());
            Ok(vec![CodeRecord::new(name, &code, Provenance::Ingested, "")])
        }
        Err(e @ Error::Io { .. }) => Err(Failure::Usage(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn read_stage(o: &Opts, file: &str, producer: &str) -> std::result::Result<Vec<CodeRecord>, Failure> {
    let path = o.out.join(file);
    if !path.exists() {
        return Err(Failure::MissingData(format!("{} not found; run `{producer}` first", path.display())));
    }
    Ok(load_codes(&path)?)
}

fn write_stage(o: &Opts, file: &str, records: &[CodeRecord]) -> Outcome {
    fs::create_dir_all(&o.out).map_err(|e| Failure::Usage(format!("{}: {e}", o.out.display())))?;
    let path = o.out.join(file);
    save_codes(records, &path)?;
    info!("wrote {} record(s) to {}", records.len(), path.display());
    Ok(())
}

fn verify_lemmas(o: &Opts) -> Outcome {
    let checks = lemmas::run_all(o.seed)?;
    for c in &checks {
        println!("{c}");
    }
    match checks.iter().filter(|c| !c.passed).count() {
        0 => Ok(()),
        k => Err(Failure::Verification(format!("{k} check(s) failed"))),
    }
}

fn mindist(below: Option<usize>, file: &Path) -> Outcome {
    for r in read_codes(file)? {
        match below {
            Some(t) => match r.code.min_weight_below(t) {
                Some(w) => println!("{}: weight {} {}", r.name, w.weight(), w.to_bit_string()),
                None => println!("{}: none", r.name),
            },
            None => {
                match r.code.minimum_distance() {
                    Some((d, w)) => println!("{}: d = {d} {}", r.name, w.to_bit_string()),
                    None => println!("{}: zero code", r.name),
                }
            }
        }
    }
    Ok(())
}

fn fixed_code(o: &Opts, perm: &str, file: &Path) -> Outcome {
    let mut out = Vec::new();
    for r in read_codes(file)? {
        let h = Permutation::parse(r.code.n(), perm).map_err(|e| Failure::Usage(e.to_string()))?;
        if !is_automorphism(&r.code, &h) {
            return Err(Failure::Verification(format!("{}: the permutation is not an automorphism", r.name)));
        }
        let fixed = fixed_subcode(&r.code, &h)?;
        let even = even_orbit_subcode(&r.code, &h)?;
        println!("{}: dim C(h) = {}, dim E(h) = {}", r.name, fixed.k(), even.k());
        out.push(CodeRecord::new(format!("{}.fixed", r.name), &fixed, Provenance::Pipeline, perm));
    }
    write_stage(o, "fixed.codes", &out)
}

fn decompose(file: &Path) -> Outcome {
    for r in read_codes(file)? {
        let n = r.code.n();
        if n % 6 != 0 {
            return Err(Failure::Usage(format!("{}: length {n} is not a multiple of 6", r.name)));
        }
        let lay = Layout::new(n / 6);
        if !lay.is_g_invariant(&r.code) {
            return Err(Failure::Verification(format!("{}: not invariant under the standard g", r.name)));
        }
        let c2 = fixed_subcode(&r.code, lay.g_pow(2))?;
        let c3 = fixed_subcode(&r.code, lay.g_pow(3))?;
        let f1 = lay.project_idempotent(&r.code, Idempotent::F1)?;
        let f2 = lay.project_idempotent(&r.code, Idempotent::F2)?;
        let v2 = r.code.intersection(lay.v2())?;
        let soc = lay.socle(&v2)?;
        println!(
            "{}: [{n},{}] C(g^2) {} C(g^3) {} Cf1 {} Cf2 {} C∩V2 {} socle {}",
            r.name,
            r.code.k(),
            c2.k(),
            c3.k(),
            f1.k(),
            f2.k(),
            v2.k(),
            soc.k()
        );
        if soc.k() > 0 {
            let parts = lay.decompose_socle(&soc)?;
            let gens: Vec<String> = parts.iter().map(|p| p.generator.to_bit_string()).collect();
            println!("  {} irreducible summand(s): {}", parts.len(), gens.join(" "));
        }
    }
    Ok(())
}

fn build_ag(o: &Opts, cfg: &RunConfig) -> Outcome {
    let ag = searchpipeline::build_ag(cfg)?;
    println!("subcodes {}", ag.subcodes.len());
    println!("|AF| {}", ag.af.order());
    println!("|AG| {}", ag.members.len());
    println!("closure {}", ag.closure_holds);
    let records: Vec<CodeRecord> = ag
        .members
        .iter()
        .enumerate()
        .map(|(i, c)| CodeRecord::new(format!("AG{}", i + 1), c, Provenance::Pipeline, ""))
        .collect();
    write_stage(o, AG_FILE, &records)?;
    if !ag.closure_holds {
        return Err(Failure::Verification("some G_i lies outside the orbit of G_1".into()));
    }
    Ok(())
}

fn build_c36(o: &Opts, cfg: &RunConfig) -> Outcome {
    let classification = load_classification(&data_dir(o.data.as_deref()))?;
    let st = searchpipeline::build_c36(&classification, cfg)?;
    for e in &st.eligible {
        println!("eligible {} |Aut| {} classes {}", e.name, e.aut_order, e.automorphisms.len());
    }
    println!("eligible codes {}", st.eligible.len());
    println!("C36 members {}", st.members.len());
    let records: Vec<CodeRecord> = st
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| CodeRecord::new(format!("C36_{}", i + 1), &m.code, Provenance::Pipeline, format!("from {}", m.source)))
        .collect();
    write_stage(o, C36_FILE, &records)
}

fn build_l(o: &Opts, cfg: &RunConfig) -> Outcome {
    let ag: Vec<LinearCode> = read_stage(o, AG_FILE, "build-ag")?.into_iter().map(|r| r.code).collect();
    let c36: Vec<LinearCode> = read_stage(o, C36_FILE, "build-c36")?.into_iter().map(|r| r.code).collect();
    let st = searchpipeline::build_l(&ag, &c36, cfg)?;
    println!("pairs {}", st.pairs);
    println!("rejected dimension {}", st.rejected_dimension);
    println!("rejected distance {}", st.rejected_distance);
    println!("L classes {}", st.members.len());
    let records: Vec<CodeRecord> = st
        .members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            CodeRecord::new(format!("L{}", i + 1), &m.code, Provenance::Pipeline, format!("AG{} C36_{}", m.b3 + 1, m.b2 + 1))
        })
        .collect();
    write_stage(o, L_FILE, &records)
}

fn refine_lprime(o: &Opts, cfg: &RunConfig) -> Outcome {
    let l = read_stage(o, L_FILE, "build-l")?;
    let codes: Vec<LinearCode> = l.iter().map(|r| r.code.clone()).collect();
    let cands = searchpipeline::refine_lprime(&codes, cfg)?;
    println!("L' candidates {}", cands.len());
    let records: Vec<CodeRecord> = cands
        .iter()
        .enumerate()
        .map(|(i, c)| {
            CodeRecord::new(format!("Lp{}", i + 1), &c.code, Provenance::Pipeline, format!("from {}", l[c.source].name))
        })
        .collect();
    write_stage(o, LPRIME_FILE, &records)
}

fn run_search(o: &Opts, cfg: &RunConfig, records: &[CodeRecord]) -> Outcome {
    let candidates: Vec<LinearCode> = records.iter().map(|r| r.code.clone()).collect();
    if o.resume && o.checkpoint.is_none() {
        return Err(Failure::Usage("--resume needs --checkpoint".into()));
    }
    let mut runner = Runner::new(cfg, &candidates, o.checkpoint.as_deref(), o.resume)?;
    if let Some(n) = o.max_steps {
        runner = runner.with_step_limit(n);
    }
    match runner.full_search(&candidates)? {
        RunStatus::Suspended { steps } => {
            println!("suspended after {steps} step(s)");
            Ok(())
        }
        RunStatus::Complete(report) => {
            let text = report.to_text();
            print!("{text}");
            fs::create_dir_all(&o.out).map_err(|e| Failure::Usage(format!("{}: {e}", o.out.display())))?;
            write_atomic(&o.out.join(REPORT_FILE), text.as_bytes())?;
            Ok(())
        }
    }
}

fn validate_data(o: &Opts) -> Outcome {
    let dir = data_dir(o.data.as_deref());
    let records = load_classification(&dir)?;
    for r in &records {
        println!("{}", r);
    }
    println!("{} valid self-dual [36,18,8] records in {}", records.len(), dir.display());
    Ok(())
}

fn dispatch(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    let cfg = config(o);
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.cmd {
        Cmd::VerifyLemmas => verify_lemmas(o),
        Cmd::Mindist { below, file } => mindist(*below, file),
        Cmd::FixedCode { perm, file } => fixed_code(o, perm, file),
        Cmd::Decompose { file } => decompose(file),
        Cmd::BuildAg => build_ag(o, &cfg),
        Cmd::BuildC36 => build_c36(o, &cfg),
        Cmd::BuildL => build_l(o, &cfg),
        Cmd::RefineLprime => refine_lprime(o, &cfg),
        Cmd::Sieve { file } => run_search(o, &cfg, &read_codes(file)?),
        Cmd::FullSearch { file } => {
            let records = match file {
                Some(f) => read_codes(f)?,
                None => read_stage(o, LPRIME_FILE, "refine-lprime")?,
            };
            run_search(o, &cfg, &records)
        }
        Cmd::ValidateData => validate_data(o),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.opts.jobs.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::MissingData(m)) => {
            eprintln!("missing data: {m}");
            ExitCode::from(3)
        }
    }
}
