//! Plain-text search checkpoints.
//!
//! ```text
//! # quatseq search checkpoint
//! kind: template
//! param length: 30
//! seed: 7
//! ranges: 64
//! cursor: 12
//! examined: 49152
//! hit: -i,j,i,k,i,j
//! ```
//!
//! `cursor` counts completed ranges; ranges are always completed in index
//! order, so resuming from a checkpoint yields exactly the result of an
//! uninterrupted run.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const CHECKPOINT_HEADER: &str = "# quatseq search checkpoint";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub kind: String,
    /// Parameters that must match for a resume to be valid.
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub ranges: usize,
    pub cursor: usize,
    pub examined: u64,
    pub hits: Vec<String>,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(CHECKPOINT_HEADER);
        out.push('\n');
        let _ = writeln!(out, "kind: {}", self.kind);
        for (k, v) in &self.params {
            let _ = writeln!(out, "param {k}: {v}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "ranges: {}", self.ranges);
        let _ = writeln!(out, "cursor: {}", self.cursor);
        let _ = writeln!(out, "examined: {}", self.examined);
        for h in &self.hits {
            let _ = writeln!(out, "hit: {h}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(CHECKPOINT_HEADER) {
            return Err(Error::Checkpoint("missing checkpoint header".into()));
        }
        let mut kind = None;
        let mut params = Vec::new();
        let mut seed = None;
        let mut ranges = None;
        let mut cursor = None;
        let mut examined = None;
        let mut hits = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Checkpoint(format!("line {}: expected `key: value`", n + 2)))?;
            let value = value.trim();
            let bad = |what: &str| Error::Checkpoint(format!("line {}: bad {what} `{value}`", n + 2));
            match key.trim() {
                "kind" => kind = Some(value.to_string()),
                "seed" => seed = Some(value.parse().map_err(|_| bad("seed"))?),
                "ranges" => ranges = Some(value.parse().map_err(|_| bad("range count"))?),
                "cursor" => cursor = Some(value.parse().map_err(|_| bad("cursor"))?),
                "examined" => examined = Some(value.parse().map_err(|_| bad("count"))?),
                "hit" => hits.push(value.to_string()),
                k => match k.strip_prefix("param ") {
                    Some(name) => params.push((name.trim().to_string(), value.to_string())),
                    None => return Err(Error::Checkpoint(format!("line {}: unknown key `{k}`", n + 2))),
                },
            }
        }
        let missing = |k: &str| Error::Checkpoint(format!("missing `{k}`"));
        let cp = Checkpoint {
            kind: kind.ok_or_else(|| missing("kind"))?,
            params,
            seed,
            ranges: ranges.ok_or_else(|| missing("ranges"))?,
            cursor: cursor.ok_or_else(|| missing("cursor"))?,
            examined: examined.ok_or_else(|| missing("examined"))?,
            hits,
        };
        if cp.cursor > cp.ranges {
            return Err(Error::Checkpoint(format!(
                "cursor {} beyond range count {}",
                cp.cursor, cp.ranges
            )));
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Checkpoint::parse(&fs::read_to_string(path)?)
    }

    /// Writes through a temporary file so an interrupted save never leaves a
    /// truncated checkpoint behind.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Whether this checkpoint belongs to the search described by the arguments.
    pub fn check_matches(&self, kind: &str, params: &[(String, String)], seed: Option<u64>, ranges: usize) -> Result<()> {
        let mismatch = |what: &str| Error::Checkpoint(format!("checkpoint {what} does not match this search"));
        if self.kind != kind {
            return Err(mismatch("kind"));
        }
        if self.params != params {
            return Err(mismatch("parameters"));
        }
        if self.seed != seed {
            return Err(mismatch("seed"));
        }
        if self.ranges != ranges {
            return Err(mismatch("range count"));
        }
        Ok(())
    }
}
