//! Reference codes, the text code store, the external `[36,18,8]`
//! classification and pipeline checkpoints.
//!
//! Code store format, one record per block, blocks separated by blank lines:
//!
//! ```text
//! # comment
//! F 12 6 builtin generator matrix M
//! 111100000000
//! ...
//! ```
//!
//! The header is `name n k`, optionally followed by a provenance keyword
//! (`builtin`, `ingested`, `pipeline`) and a free-form source note. The
//! next `k` lines are the generator rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2linalg::BitVector;

/// Environment variable naming the default data directory.
pub const DATA_ENV: &str = "SDCODE_DATA";
/// File inside the data directory holding the 41 self-dual `[36,18,8]` codes.
pub const CLASSIFICATION_FILE: &str = "sd36_d8.codes";
pub const CLASSIFICATION_COUNT: usize = 41;

/// Rows of the generator matrix `M` of the self-dual `[12,6,4]` code.
pub const F_ROWS: [&str; 6] = [
    "111100000000",
    "001111000000",
    "000011110000",
    "000000111100",
    "000000001111",
    "010101010101",
];

/// Quadratic residues modulo 23.
const QR23: [usize; 11] = [1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18];

/// The extended binary Golay code: cyclic shifts of the quadratic residue
/// indicator at length 23, extended by an overall parity coordinate (the
/// last one).
pub fn golay24() -> LinearCode {
    let rows = (0..23).map(|s| {
        let mut v = BitVector::from_indices(24, QR23.iter().map(|q| (q + s) % 23));
        v.set(23, true);
        v
    });
    LinearCode::from_generators(24, rows).expect("length 24")
}

/// The self-dual `[12,6,4]` code with generator matrix `M`.
pub fn code_f() -> LinearCode {
    LinearCode::parse(12, &F_ROWS.join("\n")).expect("valid rows")
}

/// True when every proper overcode `⟨c, v⟩` has a word of weight below `d`.
/// Brute force over all of F₂ⁿ and all of `c`; `n` at most 16.
pub fn no_overcode_with_min_distance(c: &LinearCode, d: usize) -> Result<bool> {
    let n = c.n();
    if n > 16 {
        return Err(Error::BudgetExceeded {
            needed: 1 << n,
            budget: 1 << 16,
        });
    }
    if c.min_weight_below(d).is_some() {
        return Ok(true);
    }
    let words: Vec<BitVector> = c.codewords().collect();
    for bits in 0u128..1 << n {
        let v = BitVector::from_u128(n, bits);
        if !c.contains(&v) && words.iter().all(|w| v.xor_weight(w) >= d) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Builtin,
    Ingested,
    Pipeline,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Builtin => "builtin",
            Provenance::Ingested => "ingested",
            Provenance::Pipeline => "pipeline",
        }
    }
}

impl FromStr for Provenance {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "builtin" => Ok(Provenance::Builtin),
            "ingested" => Ok(Provenance::Ingested),
            "pipeline" => Ok(Provenance::Pipeline),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    pub name: String,
    pub code: LinearCode,
    /// Generator rows exactly as stored.
    pub rows: Vec<BitVector>,
    pub provenance: Option<Provenance>,
    pub note: String,
}

impl CodeRecord {
    pub fn new(name: impl Into<String>, code: &LinearCode, provenance: Provenance, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            rows: code.basis().rows().to_vec(),
            code: code.clone(),
            provenance: Some(provenance),
            note: note.into(),
        }
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }
}

impl fmt::Display for CodeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.name, self.n(), self.rows.len())?;
        if let Some(p) = self.provenance {
            write!(f, " {}", p.name())?;
            if !self.note.is_empty() {
                write!(f, " {}", self.note)?;
            }
        }
        writeln!(f)?;
        for r in &self.rows {
            writeln!(f, "{}", r.to_bit_string())?;
        }
        Ok(())
    }
}

/// Parses a code store. Errors carry 1-based line numbers; validation
/// errors name the record.
pub fn parse_codes(text: &str) -> Result<Vec<CodeRecord>> {
    let mut out = Vec::new();
    let mut names = BTreeSet::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((ln, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: ln + 1, msg };
        let mut tok = line.split_whitespace();
        let name = tok.next().expect("nonempty line").to_string();
        let n: usize = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(format!("header `{line}` needs `name n k`")))?;
        let k: usize = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(format!("header `{line}` needs `name n k`")))?;
        let provenance = match tok.next() {
            None => None,
            Some(p) => Some(p.parse::<Provenance>().map_err(|_| parse_err(format!("unknown provenance `{p}`")))?),
        };
        let note = tok.collect::<Vec<_>>().join(" ");
        let mut rows = Vec::with_capacity(k);
        while rows.len() < k {
            let Some((rl, r)) = lines.next() else {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("record `{name}` ends after {} of {k} rows", rows.len()),
                });
            };
            let r = r.trim();
            if r.starts_with('#') {
                continue;
            }
            if r.len() != n || !r.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Parse {
                    line: rl + 1,
                    msg: format!("record `{name}`: expected {n} characters from 0/1, got `{r}`"),
                });
            }
            rows.push(r.parse::<BitVector>().expect("checked 0/1 string"));
        }
        if let Some((rl, r)) = lines.peek() {
            if !r.trim().is_empty() && !r.trim().starts_with('#') {
                return Err(Error::Parse {
                    line: rl + 1,
                    msg: format!("record `{name}` has more than {k} rows"),
                });
            }
        }
        let code = LinearCode::from_generators(n, rows.clone())?;
        if code.k() != k {
            return Err(Error::Validation {
                name,
                msg: format!("rows have rank {}, header says {k}", code.k()),
            });
        }
        if !names.insert(name.clone()) {
            return Err(Error::Validation {
                name,
                msg: "duplicate record name".into(),
            });
        }
        out.push(CodeRecord {
            name,
            code,
            rows,
            provenance,
            note,
        });
    }
    Ok(out)
}

pub fn format_codes(records: &[CodeRecord]) -> String {
    records.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

pub fn load_codes(path: &Path) -> Result<Vec<CodeRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_codes(&text)
}

pub fn save_codes(records: &[CodeRecord], path: &Path) -> Result<()> {
    write_atomic(path, format_codes(records).as_bytes())
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Checks one record of the `[36,18,8]` classification.
pub fn validate_sd36(r: &CodeRecord) -> Result<()> {
    let fail = |msg: String| Error::Validation {
        name: r.name.clone(),
        msg,
    };
    if r.n() != 36 || r.k() != 18 {
        return Err(fail(format!("expected [36,18], got [{},{}]", r.n(), r.k())));
    }
    if !r.code.classify().self_dual {
        return Err(fail("not self-dual".into()));
    }
    if let Some(w) = r.code.min_weight_below(8) {
        return Err(fail(format!("has a word of weight {}", w.weight())));
    }
    if r.code.min_weight_below(9).is_none() {
        return Err(fail("minimum distance exceeds 8".into()));
    }
    Ok(())
}

/// Validates the whole classification: 41 distinct self-dual `[36,18,8]`
/// records.
pub fn validate_classification(records: &[CodeRecord]) -> Result<()> {
    for r in records {
        validate_sd36(r)?;
    }
    if records.len() != CLASSIFICATION_COUNT {
        return Err(Error::Validation {
            name: CLASSIFICATION_FILE.into(),
            msg: format!("expected {CLASSIFICATION_COUNT} records, found {}", records.len()),
        });
    }
    Ok(())
}

/// The data directory: the explicit one, else `$SDCODE_DATA`, else `data`.
pub fn data_dir(explicit: Option<&Path>) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(DATA_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("data")),
    }
}

/// Loads and validates the classification, or reports it missing.
pub fn load_classification(dir: &Path) -> Result<Vec<CodeRecord>> {
    let path = dir.join(CLASSIFICATION_FILE);
    if !path.exists() {
        return Err(Error::MissingData(format!(
            "{} not found. Supply the 41 self-dual [36,18,8] codes of the published \
             classification (Melchor and Gaborit) in the code store format, one record per code, \
             with provenance `ingested` and a source note",
            path.display()
        )));
    }
    let records = load_codes(&path)?;
    validate_classification(&records)?;
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Ag,
    C36,
    L,
    Lprime,
    Search,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::Ag, Stage::C36, Stage::L, Stage::Lprime, Stage::Search];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Ag => "AG",
            Stage::C36 => "C36",
            Stage::L => "L",
            Stage::Lprime => "Lprime",
            Stage::Search => "search",
        }
    }
}

impl FromStr for Stage {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Checkpoint(format!("unknown stage `{s}`")))
    }
}

pub const CHECKPOINT_TAG: &str = "SDCHK 1";

/// Resumable pipeline state. `entries` maps a completed item key to its
/// recorded lines (survivor tuples, witnesses, counts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub stage: Stage,
    pub config_hash: String,
    pub entries: BTreeMap<String, Vec<String>>,
}

/// Hex SHA-256 of a configuration's canonical text.
pub fn config_hash(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Checkpoint {
    pub fn new(stage: Stage, config_hash: impl Into<String>) -> Self {
        Self {
            stage,
            config_hash: config_hash.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{CHECKPOINT_TAG}\nconfig {}\nstage {}\n", self.config_hash, self.stage.name());
        for (key, lines) in &self.entries {
            s.push_str(&format!("item {key} {}\n", lines.len()));
            for l in lines {
                s.push_str(&format!("  {l}\n"));
            }
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Checkpoint(msg.to_string());
        let mut lines = text.lines();
        if lines.next() != Some(CHECKPOINT_TAG) {
            return Err(bad("missing or unsupported format tag"));
        }
        let hash = lines
            .next()
            .and_then(|l| l.strip_prefix("config "))
            .ok_or_else(|| bad("missing config line"))?;
        let stage = lines
            .next()
            .and_then(|l| l.strip_prefix("stage "))
            .ok_or_else(|| bad("missing stage line"))?
            .parse()?;
        let mut cp = Checkpoint::new(stage, hash);
        loop {
            let line = lines.next().ok_or_else(|| bad("truncated: no end marker"))?;
            if line == "end" {
                break;
            }
            let rest = line.strip_prefix("item ").ok_or_else(|| bad("expected an item line"))?;
            let (key, count) = rest.rsplit_once(' ').ok_or_else(|| bad("item line needs key and count"))?;
            let count: usize = count.parse().map_err(|_| bad("bad item count"))?;
            let mut body = Vec::with_capacity(count);
            for _ in 0..count {
                let l = lines.next().ok_or_else(|| bad("truncated item"))?;
                body.push(l.strip_prefix("  ").ok_or_else(|| bad("item lines must be indented"))?.to_string());
            }
            cp.entries.insert(key.to_string(), body);
        }
        Ok(cp)
    }
}

pub fn checkpoint_write(cp: &Checkpoint, path: &Path) -> Result<()> {
    write_atomic(path, cp.to_text().as_bytes())
}

/// Reads a checkpoint, refusing it when it was written under another
/// configuration.
pub fn checkpoint_read(path: &Path, expected_hash: &str) -> Result<Checkpoint> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let cp = Checkpoint::parse(&text)?;
    if cp.config_hash != expected_hash {
        return Err(Error::Checkpoint(format!(
            "{} was written with configuration {}, current configuration is {expected_hash}",
            path.display(),
            cp.config_hash
        )));
    }
    Ok(cp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_parameters() {
        let g = golay24();
        assert_eq!((g.n(), g.k()), (24, 12));
        let flags = g.classify();
        assert!(flags.self_dual && flags.doubly_even);
        assert_eq!(g.minimum_distance().unwrap().0, 8);
        assert_eq!(g.words_of_weight(8).len(), 759);
    }

    #[test]
    fn f_parameters() {
        let f = code_f();
        assert_eq!(f.basis().n_rows(), 6);
        assert!(f.classify().self_dual);
        assert_eq!(f.minimum_distance().unwrap().0, 4);
        assert!(no_overcode_with_min_distance(&f, 4).unwrap());
        assert!(!no_overcode_with_min_distance(&LinearCode::zero(6), 2).unwrap());
    }

    #[test]
    fn store_round_trip() {
        assert!(parse_codes("").unwrap().is_empty());
        let recs = vec![
            CodeRecord::new("F", &code_f(), Provenance::Builtin, "matrix M"),
            CodeRecord::new("G24", &golay24(), Provenance::Builtin, ""),
        ];
        let text = format_codes(&recs);
        let back = parse_codes(&text).unwrap();
        assert_eq!(back, recs);
        assert_eq!(back[0].code, code_f());
    }

    #[test]
    fn store_errors() {
        match parse_codes("A 4 2\n1100\n11x0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_codes("A 4 2\n1100\n1100\n") {
            Err(Error::Validation { name, .. }) => assert_eq!(name, "A"),
            other => panic!("{other:?}"),
        }
        assert!(parse_codes("A 4 1\n1100\n\nA 4 1\n0011\n").is_err());
        assert!(parse_codes("A 4 1\n1100\n0011\n").is_err());
    }

    #[test]
    fn checkpoint_round_trip_and_refusal() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.txt");
        let mut cp = Checkpoint::new(Stage::Search, config_hash("threshold=16"));
        cp.entries.insert("1".into(), vec!["0 1 2".into(), "3 4 5".into()]);
        cp.entries.insert("2".into(), vec![]);
        checkpoint_write(&cp, &path).unwrap();
        assert_eq!(checkpoint_read(&path, &cp.config_hash).unwrap(), cp);
        assert!(matches!(
            checkpoint_read(&path, &config_hash("threshold=12")),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn missing_classification() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_classification(dir.path()), Err(Error::MissingData(_))));
    }
}
