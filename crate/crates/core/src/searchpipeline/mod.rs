//! The staged search: Golay codes containing ℱ⊗⟨(1,1)⟩ (AG), aligned
//! `[36,18,8]` codes (C36), their sums (L), the aligned order-6 pairs (L′),
//! and the per-candidate distance sieve with its report.
//!
//! The sieve is resumable: every finished `H′` set and stage is recorded in
//! a checkpoint keyed by candidate, and a run can be suspended after a fixed
//! number of steps and resumed later with identical results.

mod sieve;
mod stages;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use log::info;

pub use sieve::{completed_code, extend_stage, passes, stage_order, staged_sieve, SieveSetup, Tuple};
pub use stages::{
    build_ag, build_c36, build_l, check_candidate, pattern24, pattern36, refine_lprime, AgStage, C36Member, C36Stage,
    CandidateL, EligibleCode, LMember, LStage,
};

use crate::codedata::{checkpoint_read, checkpoint_write, config_hash, Checkpoint, Stage};
use crate::codes::{LinearCode, DEFAULT_ENUM_BUDGET};
use crate::equivalence::SearchLimits;
use crate::error::{Error, Result};
use crate::groupalg::DoublyEvenFilter;

/// Order in which the `H′` sets are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StageOrder {
    /// Decomposition order of the socle.
    #[default]
    Decomposition,
    /// Ascending `|H′_j|`.
    SmallestFirst,
}

impl StageOrder {
    pub fn name(self) -> &'static str {
        match self {
            StageOrder::Decomposition => "decomposition",
            StageOrder::SmallestFirst => "smallest-first",
        }
    }
}

impl FromStr for StageOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decomposition" => Ok(StageOrder::Decomposition),
            "smallest-first" => Ok(StageOrder::SmallestFirst),
            _ => Err(Error::contract(format!("unknown stage order {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Number of six-point blocks; the length is `6·blocks`.
    pub blocks: usize,
    /// Minimum distance required of every accumulated code.
    pub threshold: usize,
    /// Worker threads; does not affect results.
    pub jobs: usize,
    pub enum_budget: u128,
    pub limits: SearchLimits,
    /// Largest group whose elements may be enumerated.
    pub element_cap: usize,
    pub filter: DoublyEvenFilter,
    pub stage_order: StageOrder,
    /// Truncates every `H′` set, for scaled runs.
    pub hprime_cap: Option<usize>,
    /// Seed for sampled checks only.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            blocks: 12,
            threshold: 16,
            jobs: 1,
            enum_budget: DEFAULT_ENUM_BUDGET,
            limits: SearchLimits::default(),
            element_cap: 10_000_000,
            filter: DoublyEvenFilter::default(),
            stage_order: StageOrder::default(),
            hprime_cap: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Every field that can change a result, one `key=value` per line.
    pub fn canonical_text(&self) -> String {
        let cap = self.hprime_cap.map_or("none".to_string(), |c| c.to_string());
        format!(
            "blocks={}\nthreshold={}\nenum_budget={}\nmax_nodes={}\nmax_words={}\nmax_orbit={}\nelement_cap={}\nfilter={}\nstage_order={}\nhprime_cap={}\nseed={}\n",
            self.blocks,
            self.threshold,
            self.enum_budget,
            self.limits.max_nodes,
            self.limits.max_words,
            self.limits.max_orbit,
            self.element_cap,
            self.filter.name(),
            self.stage_order.name(),
            cap,
            self.seed
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks == 0 || self.threshold == 0 || self.jobs == 0 || self.enum_budget == 0 || self.element_cap == 0 {
            return Err(Error::contract("configuration caps must be positive"));
        }
        if self.limits.max_nodes == 0 || self.limits.max_words == 0 || self.limits.max_orbit == 0 {
            return Err(Error::contract("search limits must be positive"));
        }
        if self.hprime_cap == Some(0) {
            return Err(Error::contract("H' cap must be positive"));
        }
        Ok(())
    }
}

/// Result of sieving one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveState {
    pub index: usize,
    /// Class indices of `H′_j`, per module in decomposition order.
    pub hprime: Vec<Vec<u64>>,
    /// Processing order of the sets.
    pub order: Vec<usize>,
    /// Stage `k`: tuples of positions in `H′_{order[0..=k]}`.
    pub stages: Vec<Vec<Tuple>>,
    /// Codes `L + S₁ + … + S_r` from final tuples that are self-dual,
    /// doubly-even and meet the threshold.
    pub discovered: Vec<LinearCode>,
}

impl SieveState {
    pub fn final_count(&self) -> usize {
        self.stages.last().map_or(0, Vec::len)
    }

    /// Entry `k`: how many tuples of stage `k` have an extension in stage
    /// `k+1`.
    pub fn extended_counts(&self) -> Vec<usize> {
        self.stages
            .windows(2)
            .map(|w| {
                let mut prefixes: Vec<&[u32]> = w[1].iter().map(|t| &t[..t.len() - 1]).collect();
                prefixes.dedup();
                prefixes.len()
            })
            .collect()
    }

    /// Every tuple of stage `k+1` extends a tuple of stage `k`, so the
    /// survivors projected back onto earlier stages never increase.
    pub fn is_monotone(&self) -> bool {
        self.stages.windows(2).all(|w| {
            w[1].iter().all(|t| w[0].binary_search(&t[..t.len() - 1].to_vec()).is_ok())
        }) && self.extended_counts().iter().zip(&self.stages).all(|(e, s)| *e <= s.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub blocks: usize,
    pub threshold: usize,
    pub candidates: Vec<SieveState>,
}

impl Report {
    /// No candidate produced a final tuple.
    pub fn all_empty(&self) -> bool {
        self.candidates.iter().all(|s| s.final_count() == 0)
    }

    pub fn verdict(&self) -> String {
        let n = 6 * self.blocks;
        if self.all_empty() {
            format!(
                "no self-dual doubly-even [{n},{},{}] code has g as an automorphism over any of the {} candidates",
                n / 2,
                self.threshold,
                self.candidates.len()
            )
        } else {
            let tuples: usize = self.candidates.iter().map(SieveState::final_count).sum();
            let found: usize = self.candidates.iter().map(|s| s.discovered.len()).sum();
            format!("{tuples} final tuple(s); {found} self-dual doubly-even code(s) with g as an automorphism found")
        }
    }

    /// Line-oriented report. Deterministic; timings are logged separately.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "sieve report");
        let _ = writeln!(s, "length {}", 6 * self.blocks);
        let _ = writeln!(s, "threshold {}", self.threshold);
        let _ = writeln!(s, "candidates {}", self.candidates.len());
        for c in &self.candidates {
            let h: Vec<String> = c.hprime.iter().map(|h| h.len().to_string()).collect();
            let order: Vec<String> = c.order.iter().map(|j| (j + 1).to_string()).collect();
            let st: Vec<String> = c.stages.iter().map(|t| t.len().to_string()).collect();
            let ext: Vec<String> = c.extended_counts().iter().map(usize::to_string).collect();
            let _ = writeln!(
                s,
                "candidate {} hprime {} order {} stages {} extended {} final {}",
                c.index + 1,
                h.join(","),
                order.join(","),
                st.join(","),
                if ext.is_empty() { "-".to_string() } else { ext.join(",") },
                c.final_count()
            );
            for code in &c.discovered {
                let rows: Vec<String> = code.basis().rows().iter().map(|r| r.to_bit_string()).collect();
                let _ = writeln!(s, "discovered {} {}", c.index + 1, rows.join(" "));
            }
        }
        let _ = writeln!(s, "verdict {}", self.verdict());
        s
    }
}

/// Outcome of a possibly interrupted run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Complete(Report),
    /// The step budget ran out; the checkpoint holds the progress.
    Suspended { steps: usize },
}

/// Drives the sieve over a candidate list with checkpointing.
pub struct Runner<'a> {
    cfg: &'a RunConfig,
    path: Option<PathBuf>,
    cp: Checkpoint,
    steps_left: Option<usize>,
    steps: usize,
    timings: Vec<Duration>,
}

fn run_hash(cfg: &RunConfig, candidates: &[LinearCode]) -> String {
    let mut text = cfg.canonical_text();
    for c in candidates {
        let _ = writeln!(text, "candidate {} {}", c.n(), c.k());
        for r in c.basis().rows() {
            let _ = writeln!(text, "{}", r.to_bit_string());
        }
    }
    config_hash(&text)
}

fn parse_nums<T: FromStr>(line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Checkpoint(format!("bad number `{t}`"))))
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

impl<'a> Runner<'a> {
    /// With `resume`, the checkpoint at `path` must exist and match the
    /// configuration and candidates; otherwise a fresh one is written there.
    pub fn new(cfg: &'a RunConfig, candidates: &[LinearCode], path: Option<&Path>, resume: bool) -> Result<Self> {
        cfg.validate()?;
        let hash = run_hash(cfg, candidates);
        let cp = match (path, resume) {
            (Some(p), true) => checkpoint_read(p, &hash)?,
            (None, true) => return Err(Error::Checkpoint("resume needs a checkpoint path".into())),
            (Some(p), false) => {
                let cp = Checkpoint::new(Stage::Search, hash);
                checkpoint_write(&cp, p)?;
                cp
            }
            (None, false) => Checkpoint::new(Stage::Search, hash),
        };
        Ok(Self {
            cfg,
            path: path.map(Path::to_path_buf),
            cp,
            steps_left: None,
            steps: 0,
            timings: Vec::new(),
        })
    }

    /// Suspends the run after `n` more computed steps.
    pub fn with_step_limit(mut self, n: usize) -> Self {
        self.steps_left = Some(n);
        self
    }

    pub fn checkpoint(&self) -> &Checkpoint {
        &self.cp
    }

    /// Wall time per completed candidate of this process.
    pub fn timings(&self) -> &[Duration] {
        &self.timings
    }

    fn take_step(&mut self) -> bool {
        match self.steps_left.as_mut() {
            Some(0) => false,
            Some(n) => {
                *n -= 1;
                self.steps += 1;
                true
            }
            None => {
                self.steps += 1;
                true
            }
        }
    }

    fn record(&mut self, key: String, lines: Vec<String>) -> Result<()> {
        self.cp.entries.insert(key, lines);
        match &self.path {
            Some(p) => checkpoint_write(&self.cp, p),
            None => Ok(()),
        }
    }

    /// Sieves candidate `index`, reusing checkpointed work. `None` when the
    /// step budget ran out first.
    pub fn sieve_candidate(&mut self, index: usize, candidate: &LinearCode) -> Result<Option<SieveState>> {
        let cfg = self.cfg;
        if candidate.n() != 6 * cfg.blocks {
            return Err(Error::contract(format!(
                "candidate {} has length {}, configured for {} blocks",
                index + 1,
                candidate.n(),
                cfg.blocks
            )));
        }
        let setup = SieveSetup::new(candidate)?;
        let r = setup.modules.len();
        let mut reps_by_set = Vec::with_capacity(r);
        let mut hprime = Vec::with_capacity(r);
        for j in 0..r {
            let key = format!("{index:04}.H{}", j + 1);
            let reps: Vec<(u64, crate::gf2linalg::BitVector)> = match self.cp.entries.get(&key) {
                Some(lines) => {
                    let idx: Vec<u64> = match lines.first() {
                        Some(l) => parse_nums(l)?,
                        None => Vec::new(),
                    };
                    idx.iter().map(|&i| (i, setup.classes[j].representative(i))).collect()
                }
                None => {
                    if !self.take_step() {
                        return Ok(None);
                    }
                    let reps = setup.hprime(j, cfg.filter, cfg.threshold, cfg.hprime_cap)?;
                    let idx: Vec<u64> = reps.iter().map(|(i, _)| *i).collect();
                    info!("candidate {}: |H'_{}| = {}", index + 1, j + 1, idx.len());
                    self.record(key, vec![join(&idx)])?;
                    reps
                }
            };
            hprime.push(reps.iter().map(|(i, _)| *i).collect::<Vec<u64>>());
            reps_by_set.push(reps);
        }
        let sets: Vec<_> = (0..r).map(|j| setup.module_rows(j, &reps_by_set[j])).collect();
        let sizes: Vec<usize> = sets.iter().map(Vec::len).collect();
        let order = stage_order(&sizes, cfg.stage_order);

        let mut stages: Vec<Vec<Tuple>> = Vec::with_capacity(r);
        for k in 0..r {
            let key = format!("{index:04}.S{}", k + 1);
            let tuples = match self.cp.entries.get(&key) {
                Some(lines) => lines.iter().map(|l| parse_nums::<u32>(l)).collect::<Result<Vec<_>>>()?,
                None => {
                    if !self.take_step() {
                        return Ok(None);
                    }
                    let tuples = if k == 0 {
                        (0..sizes[order[0]] as u32).map(|c| vec![c]).collect()
                    } else {
                        extend_stage(&setup.base, &sets, &order, &stages[k - 1], cfg.threshold)
                    };
                    info!("candidate {}: stage {} keeps {} tuple(s)", index + 1, k + 1, tuples.len());
                    self.record(key, tuples.iter().map(|t| join(t)).collect())?;
                    tuples
                }
            };
            if k > 0 && stages[k - 1].is_empty() && !tuples.is_empty() {
                return Err(Error::Checkpoint("stage survivors without a parent stage".into()));
            }
            stages.push(tuples);
        }
        let discovered = stages
            .last()
            .map(|fin| {
                fin.iter()
                    .filter_map(|t| completed_code(&setup.base, &sets, &order, t, cfg.threshold))
                    .collect()
            })
            .unwrap_or_default();
        let state = SieveState {
            index,
            hprime,
            order,
            stages,
            discovered,
        };
        if !state.is_monotone() {
            return Err(Error::structural("a stage survivor does not extend a survivor of the previous stage"));
        }
        Ok(Some(state))
    }

    /// Sieves every candidate in order.
    pub fn full_search(&mut self, candidates: &[LinearCode]) -> Result<RunStatus> {
        let mut states = Vec::with_capacity(candidates.len());
        for (i, c) in candidates.iter().enumerate() {
            let t0 = Instant::now();
            match self.sieve_candidate(i, c)? {
                Some(s) => states.push(s),
                None => return Ok(RunStatus::Suspended { steps: self.steps }),
            }
            let dt = t0.elapsed();
            info!("candidate {} done in {:.3} s", i + 1, dt.as_secs_f64());
            self.timings.push(dt);
        }
        Ok(RunStatus::Complete(Report {
            blocks: self.cfg.blocks,
            threshold: self.cfg.threshold,
            candidates: states,
        }))
    }
}
