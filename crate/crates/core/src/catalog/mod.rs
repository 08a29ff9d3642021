//! Catalog of known sequences and arrays, stored as small text files.
//!
//! ```text
//! id: seq2n-7
//! source: Construction I, n = 7 (zero correlation zone)
//! expect: perfect=false odd_perfect=true zcz=7 peak=128 value[8]=16
//! 1,1,1,1,1,1,j,j,...
//! ```
//!
//! Header keys are `id:`, `source:`, `alphabet:` (`unit` by default, or
//! `float`), `dims:` (arrays only, e.g. `dims: 16 x 16`) and `expect:`.
//! Lines starting with `#` are comments. Sequence bodies are comma-separated
//! tokens, array bodies hold one row of the last axis per line, and float
//! bodies hold one `w x y z` element per line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::array::{parse_tokens, join_tokens, FloatQuatSequence, QuatArray, QuatSequence, Side};
use crate::correlation::{float_autocorr, float_is_perfect, full_spectrum, CorrelationSpectrum, SpectrumOptions};
use crate::error::{Error, Result};
use crate::fft::fft_autocorr_all;
use crate::quat::{FloatQuat, LipschitzQuat, FLOAT_TOLERANCE};

mod builtin;

pub use builtin::builtin_catalog;

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Sequence(QuatSequence),
    Array(QuatArray),
    Float(FloatQuatSequence),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Sequence(_) => "sequence",
            Payload::Array(_) => "array",
            Payload::Float(_) => "float-sequence",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Payload::Sequence(s) => s.len(),
            Payload::Array(a) => a.len(),
            Payload::Float(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Payload::Array(a) => a.dims().to_vec(),
            other => vec![other.len()],
        }
    }
}

/// Properties an entry is expected to have; absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expectations {
    pub perfect: Option<bool>,
    pub odd_perfect: Option<bool>,
    pub zcz: Option<usize>,
    /// Real value at shift 0.
    pub peak: Option<i64>,
    /// Right correlation values at given shifts.
    pub values: Vec<(Vec<usize>, LipschitzQuat)>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        *self == Expectations::default()
    }

    fn to_text(&self) -> String {
        let mut parts = Vec::new();
        if let Some(p) = self.perfect {
            parts.push(format!("perfect={p}"));
        }
        if let Some(p) = self.odd_perfect {
            parts.push(format!("odd_perfect={p}"));
        }
        if let Some(z) = self.zcz {
            parts.push(format!("zcz={z}"));
        }
        if let Some(p) = self.peak {
            parts.push(format!("peak={p}"));
        }
        for (shift, v) in &self.values {
            let s: Vec<String> = shift.iter().map(usize::to_string).collect();
            parts.push(format!("value[{}]={v}", s.join(",")));
        }
        parts.join(" ")
    }

    fn parse(text: &str, line: usize) -> Result<Self> {
        let mut e = Expectations::default();
        for item in text.split_whitespace() {
            let bad = |msg: String| Error::Parse { line, token: 0, message: msg };
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expectation `{item}` is not key=value")))?;
            let parse_bool = |v: &str| match v {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(bad(format!("`{v}` is not true or false"))),
            };
            match key {
                "perfect" => e.perfect = Some(parse_bool(value)?),
                "odd_perfect" => e.odd_perfect = Some(parse_bool(value)?),
                "zcz" => e.zcz = Some(value.parse().map_err(|_| bad(format!("bad zcz `{value}`")))?),
                "peak" => e.peak = Some(value.parse().map_err(|_| bad(format!("bad peak `{value}`")))?),
                k if k.starts_with("value[") && k.ends_with(']') => {
                    let shift = k["value[".len()..k.len() - 1]
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad(format!("bad shift in `{k}`")))?;
                    let v: LipschitzQuat = value.parse()?;
                    e.values.push((shift, v));
                }
                _ => return Err(bad(format!("unknown expectation `{key}`"))),
            }
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub source: String,
    pub payload: Payload,
    pub expect: Expectations,
}

impl CatalogEntry {
    /// Canonical text; `parse_entry(&e.to_text())` returns `e`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "id: {}", self.id);
        let _ = writeln!(out, "source: {}", self.source);
        match &self.payload {
            Payload::Sequence(s) => {
                write_expect(&mut out, &self.expect);
                out.push_str(&s.to_tokens());
                out.push('\n');
            }
            Payload::Array(a) => {
                let dims: Vec<String> = a.dims().iter().map(usize::to_string).collect();
                let _ = writeln!(out, "dims: {}", dims.join(" x "));
                write_expect(&mut out, &self.expect);
                let row = *a.dims().last().expect("arrays have an axis");
                for chunk in a.elems().chunks(row) {
                    out.push_str(&join_tokens(chunk));
                    out.push('\n');
                }
            }
            Payload::Float(f) => {
                out.push_str("alphabet: float\n");
                write_expect(&mut out, &self.expect);
                for q in f.as_slice() {
                    let c: Vec<String> = q.components().iter().map(|v| format!("{v:.16e}")).collect();
                    out.push_str(&c.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn write_expect(out: &mut String, e: &Expectations) {
    if !e.is_empty() {
        let _ = writeln!(out, "expect: {}", e.to_text());
    }
}

/// Parses one entry.
pub fn parse_entry(text: &str) -> Result<CatalogEntry> {
    let mut id = None;
    let mut source = String::new();
    let mut float = false;
    let mut dims: Option<Vec<usize>> = None;
    let mut expect = Expectations::default();
    let mut body: Vec<(usize, &str)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let header = if body.is_empty() { line.split_once(':') } else { None };
        match header {
            Some(("id", v)) => id = Some(v.trim().to_string()),
            Some(("source", v)) => source = v.trim().to_string(),
            Some(("alphabet", v)) => match v.trim() {
                "float" => float = true,
                "unit" => float = false,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        token: 0,
                        message: format!("unknown alphabet `{other}`"),
                    })
                }
            },
            Some(("dims", v)) => {
                let parsed = v
                    .split('x')
                    .map(|d| d.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse {
                        line: line_no,
                        token: 0,
                        message: format!("bad dims `{}`", v.trim()),
                    })?;
                dims = Some(parsed);
            }
            Some(("expect", v)) => expect = Expectations::parse(v, line_no)?,
            _ => body.push((line_no, line)),
        }
    }

    let id = id.ok_or_else(|| Error::Parse {
        line: 1,
        token: 0,
        message: "missing `id:` header".into(),
    })?;
    let payload = if float {
        Payload::Float(parse_float_body(&body)?)
    } else {
        let mut elems = Vec::new();
        for &(line_no, line) in &body {
            let offset = elems.len();
            elems.extend(parse_tokens(line.trim_end_matches(','), line_no, offset)?);
        }
        match dims {
            Some(d) => Payload::Array(QuatArray::new(d, elems)?),
            None => Payload::Sequence(QuatSequence::new(elems)?),
        }
    };
    Ok(CatalogEntry { id, source, payload, expect })
}

fn parse_float_body(body: &[(usize, &str)]) -> Result<FloatQuatSequence> {
    let mut elems = Vec::with_capacity(body.len());
    for (n, &(line_no, line)) in body.iter().enumerate() {
        let comps = line
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .ok()
            .filter(|c| c.len() == 4)
            .ok_or_else(|| Error::Parse {
                line: line_no,
                token: n + 1,
                message: format!("`{line}` is not four numbers `w x y z`"),
            })?;
        elems.push(FloatQuat::new(comps[0], comps[1], comps[2], comps[3]));
    }
    FloatQuatSequence::new(elems)
}

/// Serializes a sequence as its canonical token line.
pub fn serialize_sequence(s: &QuatSequence) -> String {
    s.to_tokens()
}

/// Parses a comma-separated token list.
pub fn parse_sequence(text: &str) -> Result<QuatSequence> {
    text.parse()
}

/// Body of an array: one row of the last axis per line.
pub fn serialize_array(a: &QuatArray) -> String {
    let dims: Vec<String> = a.dims().iter().map(usize::to_string).collect();
    let mut out = format!("dims: {}\n", dims.join(" x "));
    for chunk in a.elems().chunks(*a.dims().last().expect("non-empty")) {
        out.push_str(&join_tokens(chunk));
        out.push('\n');
    }
    out
}

/// Inverse of [`serialize_array`].
pub fn parse_array(text: &str) -> Result<QuatArray> {
    let mut with_id = String::from("id: array\n");
    with_id.push_str(text);
    match parse_entry(&with_id)?.payload {
        Payload::Array(a) => Ok(a),
        Payload::Sequence(s) => Ok(s.to_array()),
        Payload::Float(_) => Err(Error::InvalidParameter("float data is not a unit array".into())),
    }
}

/// Reads every `.qseq` / `.qarr` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("qseq" | "qarr")))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| parse_entry(&fs::read_to_string(p)?))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub kind: &'static str,
    pub dims: Vec<usize>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
}

impl CatalogReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.to_string(),
        pass: expected == actual,
        expected,
        actual,
    }
}

/// Entries of at most this many elements use the naive spectrum.
const NAIVE_LIMIT: usize = 1 << 12;

fn spectrum_of<P: crate::array::Periodic + Sync + ?Sized>(x: &P, side: Side) -> Result<CorrelationSpectrum> {
    if x.len() <= NAIVE_LIMIT {
        full_spectrum(x, side, &SpectrumOptions::default())
    } else {
        fft_autocorr_all(x, side)
    }
}

/// Recomputes every stated property of an entry from full spectra on both sides.
pub fn verify_entry(entry: &CatalogEntry) -> EntryReport {
    let checks = match &entry.payload {
        Payload::Sequence(s) => unit_checks(s, &entry.expect),
        Payload::Array(a) => unit_checks(a, &entry.expect),
        Payload::Float(f) => float_checks(f, &entry.expect),
    };
    let checks = checks.unwrap_or_else(|e| {
        vec![Check {
            name: "spectrum".into(),
            expected: "computed".into(),
            actual: e.to_string(),
            pass: false,
        }]
    });
    EntryReport {
        id: entry.id.clone(),
        kind: entry.payload.kind(),
        dims: entry.payload.dims(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn unit_checks<P: crate::array::Periodic + Sync + ?Sized>(x: &P, e: &Expectations) -> Result<Vec<Check>> {
    let right = spectrum_of(x, Side::Right)?;
    let left = spectrum_of(x, Side::Left)?;
    // left and right perfection must always coincide
    let mut checks = vec![check("left_perfect=right_perfect", left.perfect, right.perfect)];
    if let Some(p) = e.perfect {
        checks.push(check("perfect", p, right.perfect && left.perfect));
    }
    if let Some(p) = e.odd_perfect {
        checks.push(check("odd_perfect", p, right.odd_perfect.unwrap_or(false)));
    }
    if let Some(z) = e.zcz {
        checks.push(check("zcz", z, right.zcz.map_or("n/a".to_string(), |v| v.to_string())));
    }
    if let Some(p) = e.peak {
        checks.push(check("peak", LipschitzQuat::scalar(p), right.values[0]));
    }
    for (shift, v) in &e.values {
        let signed: Vec<i64> = shift.iter().map(|&s| s as i64).collect();
        let actual = right.value(&signed).map_or_else(|err| err.to_string(), |q| q.to_string());
        let s: Vec<String> = shift.iter().map(usize::to_string).collect();
        checks.push(check(&format!("value[{}]", s.join(",")), v, actual));
    }
    Ok(checks)
}

fn float_checks(f: &FloatQuatSequence, e: &Expectations) -> Result<Vec<Check>> {
    let right = float_is_perfect(f, Side::Right, FLOAT_TOLERANCE);
    let left = float_is_perfect(f, Side::Left, FLOAT_TOLERANCE);
    let mut checks = vec![check("left_perfect=right_perfect", left, right)];
    if let Some(p) = e.perfect {
        checks.push(check("perfect", p, left && right));
    }
    if let Some(p) = e.peak {
        let peak = float_autocorr(f, 0, Side::Right);
        let ok = peak.approx_eq(&FloatQuat::new(p as f64, 0.0, 0.0, 0.0), FLOAT_TOLERANCE);
        checks.push(Check {
            name: "peak".into(),
            expected: p.to_string(),
            actual: peak.to_string(),
            pass: ok,
        });
    }
    if e.odd_perfect.is_some() || e.zcz.is_some() || !e.values.is_empty() {
        return Err(Error::InvalidParameter(
            "float entries support only `perfect` and `peak` expectations".into(),
        ));
    }
    Ok(checks)
}

/// Verifies entries in parallel; the report keeps the input order.
pub fn verify_catalog(entries: &[CatalogEntry]) -> CatalogReport {
    CatalogReport {
        entries: entries.par_iter().map(verify_entry).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "id: example-1\nsource: worked example\nexpect: perfect=false value[1]=1-i+j+3k\ni,-j,-1,-1,k,1\n";

    #[test]
    fn sequence_round_trip() {
        let e = parse_entry(SAMPLE).unwrap();
        assert_eq!(e.to_text(), SAMPLE);
        assert!(verify_entry(&e).pass);
    }

    #[test]
    fn parse_error_positions() {
        let err = parse_entry("id: x\n\ni,j\nk,-q,1\n").unwrap_err();
        match err {
            Error::Parse { line: 4, token: 4, .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_entry("i,j\n").is_err());
        assert!(parse_entry("id: x\ndims: 2 x 2\ni,j\nk\n").is_err());
        assert!(parse_entry("id: x\nexpect: shiny=yes\ni\n").is_err());
    }

    #[test]
    fn array_round_trip() {
        let text = "id: a\nsource: s\ndims: 2 x 3\nexpect: perfect=false\n1,i,j\nk,-1,-i\n";
        let e = parse_entry(text).unwrap();
        assert_eq!(e.payload.dims(), vec![2, 3]);
        assert_eq!(e.to_text(), text);
        let a = match &e.payload {
            Payload::Array(a) => a.clone(),
            _ => unreachable!(),
        };
        assert_eq!(parse_array(&serialize_array(&a)).unwrap(), a);
    }

    #[test]
    fn float_round_trip() {
        let text = "id: f\nsource: s\nalphabet: float\nexpect: perfect=true peak=2\n\
                    1.0000000000000000e0 0.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0\n";
        let e = parse_entry(text).unwrap();
        assert_eq!(e.to_text(), text);
        assert!(verify_entry(&e).pass);
    }

    #[test]
    fn bundled_files_are_canonical_and_verify() {
        for (name, text) in builtin::BUILTIN_FILES {
            let e = parse_entry(text).unwrap();
            assert_eq!(&e.to_text(), text, "{name}");
            assert_eq!(name.rsplit_once('.').unwrap().0, e.id);
            let r = verify_entry(&e);
            assert!(r.pass, "{name}: {:?}", r.checks);
        }
    }

    #[test]
    fn failing_expectation_is_reported() {
        let e = parse_entry("id: bad\nexpect: perfect=true\n1,1,1,i\n").unwrap();
        let r = verify_entry(&e);
        assert!(!r.pass);
        assert!(r.checks.iter().any(|c| c.name == "perfect" && !c.pass));
    }
}
