//! Branch-and-bound search over sequences in `±i, ±j, ±k`.
//!
//! Partial right-correlation sums are kept for every shift. Placing position
//! `p` completes the terms `(p - t, p)` and, once the prefix wraps, `(p, p + t - L)`.
//! A prefix is abandoned when some shift can no longer reach zero: each
//! remaining term moves the sum's L1 norm by exactly one, so the norm must not
//! exceed the number of remaining terms. (Parity always matches for even
//! lengths, so it is not tested.)

use super::symmetry::SymmetrySet;
use super::{codes_to_sequence, drive, Hit, Job, RangeOutcome, RunConfig, SearchKind, SearchReport, RIGHT_TERM};
use crate::error::{Error, Result};
use crate::quat::UnitQuat;

/// Largest length accepted unless the caller raises the bound.
pub const DEFAULT_MAX_LEN: usize = 12;

const IMAG_CODES: [u8; 6] = [1, 2, 3, 5, 6, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub max_len: usize,
    /// Report only the lexicographically smallest member of each orbit.
    pub symmetries: SymmetrySet,
    pub prune: bool,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            max_len: DEFAULT_MAX_LEN,
            symmetries: SymmetrySet::all(),
            prune: true,
        }
    }
}

/// Pruned, symmetry-reduced search with default settings.
pub fn exhaustive_search(len: usize, limit: Option<usize>) -> Result<SearchReport> {
    let run = RunConfig {
        limit,
        ..RunConfig::default()
    };
    exhaustive_search_with(len, &ExhaustiveOptions::default(), &run, &mut |_| {})
}

pub fn exhaustive_search_with(
    len: usize,
    opts: &ExhaustiveOptions,
    run: &RunConfig,
    on_hit: &mut dyn FnMut(&Hit),
) -> Result<SearchReport> {
    if len == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    if len % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "no perfect sequence over ±i, ±j, ±k has odd length {len}: each correlation \
             value is a sum of {len} signed basis units, and such a sum can only vanish \
             when its terms cancel in pairs"
        )));
    }
    if len > opts.max_len {
        return Err(Error::InvalidParameter(format!(
            "length {len} exceeds the exhaustive-search bound {}",
            opts.max_len
        )));
    }

    let first: Vec<u8> = opts
        .symmetries
        .first_element_candidates(&UnitQuat::IMAGINARY)
        .iter()
        .map(|u| u.code())
        .collect();
    let depth = (len - 1).min(3);
    let per_first = 6usize.pow(depth as u32);
    let total_ranges = first.len() * per_first;
    if let Some(r) = run.ranges {
        if r != total_ranges {
            return Err(Error::InvalidParameter(format!(
                "exhaustive search at length {len} always uses {total_ranges} ranges"
            )));
        }
    }

    let symmetry_names: Vec<&str> = opts.symmetries.iter().map(|s| s.name()).collect();
    let params = vec![
        ("length".to_string(), len.to_string()),
        (
            "symmetries".to_string(),
            if symmetry_names.is_empty() {
                "none".to_string()
            } else {
                symmetry_names.join("+")
            },
        ),
        ("prune".to_string(), opts.prune.to_string()),
    ];
    let remaining = remaining_terms(len);
    let job = Job {
        kind: SearchKind::Exhaustive,
        params,
        seed: None,
        total_ranges,
    };
    let work = |range: usize| {
        let mut prefix = Vec::with_capacity(depth + 1);
        prefix.push(first[range / per_first]);
        let mut digits = range % per_first;
        for _ in 0..depth {
            prefix.push(IMAG_CODES[digits % 6]);
            digits /= 6;
        }
        let mut dfs = Dfs::new(len, opts.prune, opts.symmetries, &remaining);
        dfs.run_range(&prefix);
        Ok(RangeOutcome {
            examined: dfs.examined,
            hits: dfs.hits,
        })
    };
    drive(job, run, work, on_hit)
}

/// `rem[p][t]`: terms of shift `t` still open once positions `0..=p` are set.
fn remaining_terms(len: usize) -> Vec<Vec<u32>> {
    (0..len)
        .map(|p| {
            (0..len)
                .map(|t| {
                    let done = (0..=p).filter(|&i| (i + t) % len <= p).count();
                    (len - done) as u32
                })
                .collect()
        })
        .collect()
}

struct Dfs<'a> {
    len: usize,
    prune: bool,
    symmetries: SymmetrySet,
    remaining: &'a [Vec<u32>],
    codes: Vec<u8>,
    /// Level `p` holds the sums after positions `0..p` are placed.
    sums: Vec<[i32; 4]>,
    examined: u64,
    hits: Vec<Hit>,
}

impl<'a> Dfs<'a> {
    fn new(len: usize, prune: bool, symmetries: SymmetrySet, remaining: &'a [Vec<u32>]) -> Self {
        Dfs {
            len,
            prune,
            symmetries,
            remaining,
            codes: vec![0; len],
            sums: vec![[0; 4]; (len + 1) * len],
            examined: 0,
            hits: Vec::new(),
        }
    }

    fn run_range(&mut self, prefix: &[u8]) {
        for (p, &c) in prefix.iter().enumerate() {
            if !self.place(p, c) {
                return;
            }
        }
        self.descend(prefix.len());
    }

    fn descend(&mut self, p: usize) {
        for c in IMAG_CODES {
            if self.place(p, c) {
                self.descend(p + 1);
            }
        }
    }

    /// Sets position `p`; returns whether the search should go deeper.
    fn place(&mut self, p: usize, code: u8) -> bool {
        let len = self.len;
        self.codes[p] = code;
        let (before, after) = self.sums.split_at_mut((p + 1) * len);
        let prev = &before[p * len..];
        let next = &mut after[..len];
        next.copy_from_slice(prev);
        for (t, sum) in next.iter_mut().enumerate().skip(1) {
            if p >= t {
                add(sum, RIGHT_TERM[self.codes[p - t] as usize][code as usize]);
            }
            if p + t >= len {
                add(sum, RIGHT_TERM[code as usize][self.codes[p + t - len] as usize]);
            }
        }
        if p + 1 == len {
            self.examined += 1;
            if next[1..].iter().all(|s| *s == [0; 4]) {
                self.record();
            }
            return false;
        }
        if self.prune {
            let rem = &self.remaining[p];
            for (t, sum) in next.iter().enumerate().skip(1) {
                let norm: u32 = sum.iter().map(|v| v.unsigned_abs()).sum();
                if norm > rem[t] {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self) {
        let s = codes_to_sequence(&self.codes);
        if self.symmetries.is_empty() || self.symmetries.canonical(&s) == s {
            self.hits.push(Hit::Sequence(s));
        }
    }
}

#[inline]
fn add(sum: &mut [i32; 4], code: u8) {
    let v = if code & 4 == 0 { 1 } else { -1 };
    sum[(code & 3) as usize] += v;
}
