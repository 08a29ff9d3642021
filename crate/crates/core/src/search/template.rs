//! Search over the `[-i, s, k, reverse(s)]` template.
//!
//! For length `L = 2m + 2` (with `m` even) only the `2^m` sign vectors are
//! enumerated. Bit `t` of a mask set means `alpha[t] = -1`; ranges are the
//! contiguous blocks sharing the same high-order bits.

use super::{drive, right_perfect_codes, Hit, Job, RangeOutcome, RunConfig, SearchKind, SearchReport};
use crate::constructions::{template_sequence, TemplateSpec};
use crate::error::{Error, Result};
use crate::quat::UnitQuat;

/// Default `log2` of the range count.
const DEFAULT_RANGE_BITS: usize = 8;

pub fn template_search(len: usize) -> Result<SearchReport> {
    template_search_with(len, &RunConfig::default(), &mut |_| {})
}

pub fn template_search_with(len: usize, run: &RunConfig, on_hit: &mut dyn FnMut(&Hit)) -> Result<SearchReport> {
    if len < 6 || len % 4 != 2 {
        return Err(Error::InvalidParameter(format!(
            "template search needs length 2 mod 4 and at least 6, got {len}"
        )));
    }
    let m = (len - 2) / 2;
    if m > 62 {
        return Err(Error::InvalidParameter(format!("length {len} is too large to enumerate")));
    }
    let range_bits = match run.ranges {
        None => m.min(DEFAULT_RANGE_BITS),
        Some(r) if r.is_power_of_two() && r.trailing_zeros() as usize <= m => r.trailing_zeros() as usize,
        Some(r) => {
            return Err(Error::InvalidParameter(format!(
                "range count must be a power of two no larger than 2^{m}, got {r}"
            )))
        }
    };
    let per_range = 1u64 << (m - range_bits);
    let job = Job {
        kind: SearchKind::Template,
        params: vec![("length".to_string(), len.to_string())],
        seed: None,
        total_ranges: 1 << range_bits,
    };
    let work = |range: usize| {
        let base = range as u64 * per_range;
        let mut codes = vec![0u8; len];
        codes[0] = UnitQuat::NEG_I.code();
        codes[m + 1] = UnitQuat::K.code();
        let mut hits = Vec::new();
        for mask in base..base + per_range {
            for t in 0..m {
                let axis = if t % 2 == 0 { 2 } else { 1 };
                let code = axis | ((mask >> t & 1) as u8) << 2;
                codes[1 + t] = code;
                codes[len - 1 - t] = code;
            }
            if right_perfect_codes(&codes) {
                let spec = TemplateSpec::from_mask(m, mask)?;
                let sequence = template_sequence(&spec);
                hits.push(Hit::Template { spec, sequence });
            }
        }
        Ok(RangeOutcome {
            examined: per_range,
            hits,
        })
    };
    drive(job, run, work, on_hit)
}
