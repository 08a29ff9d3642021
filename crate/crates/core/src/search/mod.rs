//! Searches for perfect sequences.
//!
//! Every search splits its candidate space into contiguous ranges indexed by
//! high-order digits. Ranges are evaluated in parallel batches and merged in
//! index order, so the report never depends on the thread count. After each
//! batch an optional checkpoint records how many ranges are done.

pub mod aop;
pub mod checkpoint;
pub mod exhaustive;
pub mod symmetry;
pub mod template;

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::array::QuatSequence;
use crate::constructions::TemplateSpec;
use crate::correlation::is_perfect_both;
use crate::error::{Error, Result};
use crate::quat::{mul_code, UnitQuat};

pub use aop::{
    aop_check, aop_random_search, is_aop_hit, AopProperties, AopSearchOptions, AopVariant, Polynomial,
    PolynomialIndexSpec,
};
pub use checkpoint::Checkpoint;
pub use exhaustive::{exhaustive_search, exhaustive_search_with, ExhaustiveOptions};
pub use symmetry::{Symmetry, SymmetrySet};
pub use template::{template_search, template_search_with};

/// Ranges evaluated between checkpoints. Fixed so that `examined` counts are
/// reproducible when a hit limit stops the run early.
pub const DEFAULT_BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchKind {
    Exhaustive,
    Template,
    Aop,
}

impl SearchKind {
    pub const fn name(self) -> &'static str {
        match self {
            SearchKind::Exhaustive => "exhaustive",
            SearchKind::Template => "template",
            SearchKind::Aop => "aop",
        }
    }
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One search result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hit {
    Sequence(QuatSequence),
    Template { spec: TemplateSpec, sequence: QuatSequence },
    Aop { spec: PolynomialIndexSpec, sequence: QuatSequence },
}

impl Hit {
    pub fn sequence(&self) -> &QuatSequence {
        match self {
            Hit::Sequence(s) => s,
            Hit::Template { sequence, .. } | Hit::Aop { sequence, .. } => sequence,
        }
    }

    /// Inverse of `Display` for hits of the given kind.
    pub fn parse(kind: SearchKind, text: &str) -> Result<Hit> {
        match kind {
            SearchKind::Exhaustive => Ok(Hit::Sequence(text.parse()?)),
            SearchKind::Template => {
                let tokens = text.rsplit(';').next().unwrap_or(text);
                let sequence: QuatSequence = tokens.parse()?;
                let spec = TemplateSpec::extract(&sequence).ok_or_else(|| {
                    Error::Checkpoint(format!("`{tokens}` is not a template sequence"))
                })?;
                Ok(Hit::Template { spec, sequence })
            }
            SearchKind::Aop => {
                let (spec, tokens) = text
                    .split_once(';')
                    .ok_or_else(|| Error::Checkpoint(format!("aop hit `{text}` lacks `;`")))?;
                Ok(Hit::Aop {
                    spec: spec.trim().parse()?,
                    sequence: tokens.parse()?,
                })
            }
        }
    }
}

impl fmt::Display for Hit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hit::Sequence(s) => write!(f, "{s}"),
            Hit::Template { spec, sequence } => write!(f, "{spec} ; {sequence}"),
            Hit::Aop { spec, sequence } => write!(f, "{spec} ; {sequence}"),
        }
    }
}

impl Serialize for Hit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match self {
            Hit::Sequence(_) => {}
            Hit::Template { spec, .. } => map.serialize_entry("alpha", &spec.to_string())?,
            Hit::Aop { spec, .. } => map.serialize_entry("spec", &spec.to_string())?,
        }
        map.serialize_entry("sequence", self.sequence())?;
        map.end()
    }
}

/// Outcome of a search run.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub kind: &'static str,
    pub parameters: Vec<(String, String)>,
    pub seed: Option<u64>,
    /// Complete candidates evaluated.
    pub examined: u64,
    pub hits: Vec<Hit>,
    pub ranges_done: usize,
    pub ranges_total: usize,
    /// Every hit re-verified perfect on both sides by the correlation module.
    pub verified: bool,
    #[serde(rename = "elapsed_secs", serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchReport {
    /// Equality of everything except wall time.
    pub fn same_outcome(&self, other: &SearchReport) -> bool {
        self.kind == other.kind
            && self.parameters == other.parameters
            && self.seed == other.seed
            && self.examined == other.examined
            && self.hits == other.hits
            && self.ranges_done == other.ranges_done
            && self.ranges_total == other.ranges_total
            && self.verified == other.verified
    }

    pub fn is_complete(&self) -> bool {
        self.ranges_done == self.ranges_total
    }
}

/// Execution settings shared by all searches.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Worker threads; 0 uses the global rayon pool.
    pub jobs: usize,
    /// Override for the number of ranges the space is split into.
    pub ranges: Option<usize>,
    /// Ranges per batch; defaults to [`DEFAULT_BATCH`].
    pub batch: Option<usize>,
    /// Written after every batch.
    pub checkpoint: Option<PathBuf>,
    /// Continue from this checkpoint.
    pub resume: Option<PathBuf>,
    /// Stop once this many hits are collected.
    pub limit: Option<usize>,
}

pub(crate) struct Job {
    pub kind: SearchKind,
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub total_ranges: usize,
}

pub(crate) struct RangeOutcome {
    pub examined: u64,
    pub hits: Vec<Hit>,
}

/// Runs `work` over every range not yet covered by the resume checkpoint.
pub(crate) fn drive<W>(job: Job, run: &RunConfig, work: W, on_hit: &mut dyn FnMut(&Hit)) -> Result<SearchReport>
where
    W: Fn(usize) -> Result<RangeOutcome> + Sync,
{
    let start = Instant::now();
    let mut cursor = 0usize;
    let mut examined = 0u64;
    let mut hits: Vec<Hit> = Vec::new();
    let mut seen: HashSet<QuatSequence> = HashSet::new();
    let limit = run.limit.unwrap_or(usize::MAX);

    if let Some(path) = &run.resume {
        let cp = Checkpoint::load(path)?;
        cp.check_matches(job.kind.name(), &job.params, job.seed, job.total_ranges)?;
        cursor = cp.cursor;
        examined = cp.examined;
        for line in &cp.hits {
            let hit = Hit::parse(job.kind, line)?;
            if seen.insert(hit.sequence().clone()) {
                if hits.len() < limit {
                    on_hit(&hit);
                }
                hits.push(hit);
            }
        }
    }

    let pool = if run.jobs > 0 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(run.jobs)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let batch = run.batch.unwrap_or(DEFAULT_BATCH).max(1);

    while cursor < job.total_ranges && hits.len() < limit {
        let end = (cursor + batch).min(job.total_ranges);
        let eval = || (cursor..end).into_par_iter().map(&work).collect::<Vec<_>>();
        let outcomes = match &pool {
            Some(p) => p.install(eval),
            None => eval(),
        };
        for outcome in outcomes {
            let outcome = outcome?;
            examined += outcome.examined;
            for hit in outcome.hits {
                if seen.insert(hit.sequence().clone()) {
                    if hits.len() < limit {
                        on_hit(&hit);
                    }
                    hits.push(hit);
                }
            }
        }
        cursor = end;
        if let Some(path) = &run.checkpoint {
            Checkpoint {
                kind: job.kind.name().to_string(),
                params: job.params.clone(),
                seed: job.seed,
                ranges: job.total_ranges,
                cursor,
                examined,
                hits: hits.iter().map(Hit::to_string).collect(),
            }
            .save(path)?;
        }
    }

    hits.truncate(limit);
    let verified = hits.iter().all(|h| is_perfect_both(h.sequence()));
    Ok(SearchReport {
        kind: job.kind.name(),
        parameters: job.params,
        seed: job.seed,
        examined,
        hits,
        ranges_done: cursor,
        ranges_total: job.total_ranges,
        verified,
        elapsed: start.elapsed(),
    })
}

/// `a * conj(b)` as a code table.
pub(crate) const RIGHT_TERM: [[u8; 8]; 8] = {
    let mut t = [[0u8; 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            let conj_b = UnitQuat::from_code(b as u8).conj().code();
            t[a][b] = mul_code(a as u8, conj_b);
            b += 1;
        }
        a += 1;
    }
    t
};

/// Right-perfection test on raw codes, used inside the search loops.
///
/// Shifts past `L/2` are skipped because `theta(L - t) = conj(theta(t))`.
/// Hits are re-verified afterwards by the correlation module.
pub(crate) fn right_perfect_codes(codes: &[u8]) -> bool {
    let len = codes.len();
    for tau in 1..=len / 2 {
        let mut counts = [0i32; 8];
        for x in 0..len {
            let y = if x + tau < len { x + tau } else { x + tau - len };
            counts[RIGHT_TERM[codes[x] as usize][codes[y] as usize] as usize] += 1;
        }
        if (0..4).any(|c| counts[c] != counts[c + 4]) {
            return false;
        }
    }
    true
}

pub(crate) fn codes_to_sequence(codes: &[u8]) -> QuatSequence {
    QuatSequence::new(codes.iter().map(|&c| UnitQuat::from_code(c)).collect()).expect("non-empty")
}
