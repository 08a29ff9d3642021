//! Randomized search over polynomial index arrays
//! `S[a][b] = i^floor(f(a,b)/c) * j^floor(g(a,b)/d)`.
//!
//! The array orthogonality property (AOP) has two readings, both checked:
//! `plain` asks that distinct columns be orthogonal, `cyclic` additionally
//! asks that they stay orthogonal under every cyclic row shift.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{drive, right_perfect_codes, Hit, Job, RangeOutcome, RunConfig, SearchKind, SearchReport};
use crate::array::QuatArray;
use crate::error::{Error, Result};
use crate::quat::{ImagAxis, UnitQuat};

/// Highest exponent of either variable in a random polynomial.
pub const MAX_DEGREE: usize = 2;

/// Samples drawn per checkpoint range.
const SAMPLES_PER_RANGE: usize = 512;

/// Bivariate polynomial with non-negative integer coefficients;
/// `coeffs[p][q]` multiplies `a^p b^q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub coeffs: [[u32; MAX_DEGREE + 1]; MAX_DEGREE + 1],
}

impl Polynomial {
    /// The monomial `coeff * a^p * b^q`.
    pub fn monomial(p: usize, q: usize, coeff: u32) -> Self {
        let mut poly = Polynomial::default();
        poly.coeffs[p][q] = coeff;
        poly
    }

    pub fn eval(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut ap = 1u64;
        for row in &self.coeffs {
            let mut bq = 1u64;
            for &c in row {
                acc += c as u64 * ap * bq;
                bq *= b;
            }
            ap *= a;
        }
        acc
    }

    /// `(deg_a, deg_b, coeff)` for every nonzero term.
    pub fn monomials(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for (p, row) in self.coeffs.iter().enumerate() {
            for (q, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push((p, q, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Compact form such as `ab`, `3a^2b+2`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.monomials();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (p, q, c)) in terms.into_iter().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            if c != 1 || (p == 0 && q == 0) {
                write!(f, "{c}")?;
            }
            for (var, e) in [("a", p), ("b", q)] {
                match e {
                    0 => {}
                    1 => f.write_str(var)?,
                    _ => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("polynomial `{s}`: {why}"));
        let mut poly = Polynomial::default();
        if s.trim() == "0" {
            return Ok(poly);
        }
        for term in s.split('+') {
            let term = term.trim();
            let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let coeff: u32 = if digits == 0 {
                1
            } else {
                term[..digits].parse().map_err(|_| bad("coefficient out of range"))?
            };
            let mut rest = &term[digits..];
            let (mut p, mut q) = (0usize, 0usize);
            if digits == 0 && rest.is_empty() {
                return Err(bad("empty term"));
            }
            while let Some(var) = rest.chars().next() {
                rest = &rest[1..];
                let mut e = 1usize;
                if let Some(r) = rest.strip_prefix('^') {
                    let n = r.len() - r.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                    e = r[..n].parse().map_err(|_| bad("missing exponent"))?;
                    rest = &r[n..];
                }
                match var {
                    'a' => p += e,
                    'b' => q += e,
                    _ => return Err(bad(&format!("unexpected `{var}`"))),
                }
            }
            if p > MAX_DEGREE || q > MAX_DEGREE {
                return Err(bad("degree above 2 in a variable"));
            }
            poly.coeffs[p][q] += coeff;
        }
        Ok(poly)
    }
}

/// Data defining one candidate array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialIndexSpec {
    pub f: Polynomial,
    pub g: Polynomial,
    pub c: u32,
    pub d: u32,
    pub rows: usize,
    pub cols: usize,
}

impl PolynomialIndexSpec {
    pub fn new(f: Polynomial, c: u32, g: Polynomial, d: u32, rows: usize, cols: usize) -> Result<Self> {
        if c == 0 || d == 0 {
            return Err(Error::InvalidParameter("denominators must be at least 1".into()));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDims(format!("{rows}x{cols}")));
        }
        Ok(PolynomialIndexSpec { f, g, c, d, rows, cols })
    }

    /// Exponents mod 4 of `i` and `j` at `(a, b)`.
    fn exponents(&self, a: u64, b: u64) -> (u8, u8) {
        let e_i = (self.f.eval(a, b) / self.c as u64) % 4;
        let e_j = (self.g.eval(a, b) / self.d as u64) % 4;
        (e_i as u8, e_j as u8)
    }

    fn fill_codes(&self, out: &mut Vec<u8>, table: &[[u8; 4]; 4]) {
        out.clear();
        for a in 0..self.rows as u64 {
            for b in 0..self.cols as u64 {
                let (ei, ej) = self.exponents(a, b);
                out.push(table[ei as usize][ej as usize]);
            }
        }
    }

    pub fn build(&self) -> QuatArray {
        let table = power_table();
        let mut codes = Vec::with_capacity(self.rows * self.cols);
        self.fill_codes(&mut codes, &table);
        QuatArray::new(
            vec![self.rows, self.cols],
            codes.into_iter().map(UnitQuat::from_code).collect(),
        )
        .expect("dims match")
    }
}

/// `table[x][y]` is the code of `i^x j^y`.
fn power_table() -> [[u8; 4]; 4] {
    std::array::from_fn(|x| {
        std::array::from_fn(|y| (ImagAxis::I.pow(x as i64) * ImagAxis::J.pow(y as i64)).code())
    })
}

impl fmt::Display for PolynomialIndexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} f={} c={} g={} d={}",
            self.rows, self.cols, self.f, self.c, self.g, self.d
        )
    }
}

impl FromStr for PolynomialIndexSpec {
    type Err = Error;

    /// Parses `ROWSxCOLS f=POLY c=N g=POLY d=N`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("spec `{s}`: {why}"));
        let mut parts = s.split_whitespace();
        let (rows, cols) = parse_size(parts.next().ok_or_else(|| bad("empty"))?)?;
        let (mut f, mut c, mut g, mut d) = (None, None, None, None);
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k {
                "f" => f = Some(v.parse()?),
                "g" => g = Some(v.parse()?),
                "c" => c = Some(v.parse().map_err(|_| bad("bad c"))?),
                "d" => d = Some(v.parse().map_err(|_| bad("bad d"))?),
                _ => return Err(bad(&format!("unknown key `{k}`"))),
            }
        }
        PolynomialIndexSpec::new(
            f.ok_or_else(|| bad("missing f"))?,
            c.ok_or_else(|| bad("missing c"))?,
            g.ok_or_else(|| bad("missing g"))?,
            d.ok_or_else(|| bad("missing d"))?,
            rows,
            cols,
        )
    }
}

/// Parses `ROWSxCOLS`.
pub fn parse_size(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("size `{s}` is not ROWSxCOLS"));
    let (r, c) = s.split_once('x').ok_or_else(bad)?;
    let rows: usize = r.trim().parse().map_err(|_| bad())?;
    let cols: usize = c.trim().parse().map_err(|_| bad())?;
    if rows == 0 || cols == 0 {
        return Err(bad());
    }
    Ok((rows, cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AopProperties {
    pub plain: bool,
    pub cyclic: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AopVariant {
    #[default]
    Plain,
    Cyclic,
}

impl AopVariant {
    pub const fn name(self) -> &'static str {
        match self {
            AopVariant::Plain => "plain",
            AopVariant::Cyclic => "cyclic",
        }
    }
}

impl fmt::Display for AopVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AopVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(AopVariant::Plain),
            "cyclic" => Ok(AopVariant::Cyclic),
            _ => Err(Error::InvalidParameter(format!("unknown AOP variant `{s}`"))),
        }
    }
}

/// Both AOP readings for a 2-D array.
pub fn aop_check(a: &QuatArray) -> Result<AopProperties> {
    if a.ndim() != 2 {
        return Err(Error::InvalidDims(format!(
            "AOP needs a 2-D array, got {} axes",
            a.ndim()
        )));
    }
    let codes: Vec<u8> = a.elems().iter().map(|u| u.code()).collect();
    let (rows, cols) = (a.dims()[0], a.dims()[1]);
    let plain = columns_orthogonal(&codes, rows, cols, false);
    let cyclic = plain && columns_orthogonal(&codes, rows, cols, true);
    Ok(AopProperties { plain, cyclic })
}

/// Whether `sum_a A[a][b1] * conj(A[a + shift][b2])` vanishes for all
/// `b1 < b2` and every shift (only shift 0 unless `all_shifts`).
///
/// Pairs `b1 > b2` follow by conjugation, so they are not checked.
fn columns_orthogonal(codes: &[u8], rows: usize, cols: usize, all_shifts: bool) -> bool {
    let shifts = if all_shifts { rows } else { 1 };
    for b1 in 0..cols {
        for b2 in b1 + 1..cols {
            for shift in 0..shifts {
                let mut counts = [0i32; 8];
                for a in 0..rows {
                    let x = codes[a * cols + b1];
                    let y = codes[((a + shift) % rows) * cols + b2];
                    counts[super::RIGHT_TERM[x as usize][y as usize] as usize] += 1;
                }
                if (0..4).any(|c| counts[c] != counts[c + 4]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Configuration of a random AOP search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AopSearchOptions {
    pub sizes: Vec<(usize, usize)>,
    /// Specs drawn per size.
    pub samples: usize,
    /// Coefficients are uniform in `[0, coeff_bound)`.
    pub coeff_bound: u32,
    /// Denominators are uniform in `[1, max_denominator]`.
    pub max_denominator: u32,
    pub seed: u64,
    pub variant: AopVariant,
}

impl Default for AopSearchOptions {
    fn default() -> Self {
        AopSearchOptions {
            sizes: default_sizes(),
            samples: 200,
            coeff_bound: 13,
            max_denominator: 12,
            seed: 0,
            variant: AopVariant::Plain,
        }
    }
}

/// All `rows x cols` with `2 <= rows, cols <= 32` and more than 16 cells.
pub fn default_sizes() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for rows in 2..=32 {
        for cols in 2..=32 {
            if rows * cols > 16 {
                out.push((rows, cols));
            }
        }
    }
    out
}

fn random_polynomial(rng: &mut ChaCha8Rng, bound: u32) -> Polynomial {
    let mut poly = Polynomial::default();
    for row in poly.coeffs.iter_mut() {
        for c in row.iter_mut() {
            *c = rng.gen_range(0..bound);
        }
    }
    poly
}

/// Draws `samples` specs per size and keeps those whose array satisfies the
/// selected AOP variant and whose row-major flattening is perfect.
///
/// Range `r` covers a block of samples for one size and draws from ChaCha
/// stream `r` of the seed, so the report is the same for any thread count.
pub fn aop_random_search(opts: &AopSearchOptions, run: &RunConfig, on_hit: &mut dyn FnMut(&Hit)) -> Result<SearchReport> {
    if opts.coeff_bound == 0 || opts.max_denominator == 0 {
        return Err(Error::InvalidParameter(
            "coefficient bound and maximum denominator must be positive".into(),
        ));
    }
    if run.ranges.is_some() {
        return Err(Error::InvalidParameter("AOP search ranges are fixed by the sample count".into()));
    }
    let chunks = opts.samples.div_ceil(SAMPLES_PER_RANGE);
    let sizes: Vec<String> = opts.sizes.iter().map(|(r, c)| format!("{r}x{c}")).collect();
    let job = Job {
        kind: SearchKind::Aop,
        params: vec![
            ("sizes".to_string(), sizes.join(",")),
            ("samples".to_string(), opts.samples.to_string()),
            ("coeff-bound".to_string(), opts.coeff_bound.to_string()),
            ("max-denominator".to_string(), opts.max_denominator.to_string()),
            ("variant".to_string(), opts.variant.to_string()),
        ],
        seed: Some(opts.seed),
        total_ranges: opts.sizes.len() * chunks,
    };
    let table = power_table();
    let work = |range: usize| {
        let (rows, cols) = opts.sizes[range / chunks];
        let chunk = range % chunks;
        let count = SAMPLES_PER_RANGE.min(opts.samples - chunk * SAMPLES_PER_RANGE);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(range as u64);
        let specs: Vec<PolynomialIndexSpec> = (0..count)
            .map(|_| {
                let f = random_polynomial(&mut rng, opts.coeff_bound);
                let c = rng.gen_range(1..=opts.max_denominator);
                let g = random_polynomial(&mut rng, opts.coeff_bound);
                let d = rng.gen_range(1..=opts.max_denominator);
                PolynomialIndexSpec { f, g, c, d, rows, cols }
            })
            .collect();
        let mut hits = Vec::new();
        let mut codes = Vec::with_capacity(rows * cols);
        for spec in specs {
            spec.fill_codes(&mut codes, &table);
            if passes(&codes, rows, cols, opts.variant) {
                let array = spec.build();
                hits.push(Hit::Aop {
                    sequence: array.flatten_row_major(),
                    spec,
                });
            }
        }
        Ok(RangeOutcome {
            examined: count as u64,
            hits,
        })
    };
    drive(job, run, work, on_hit)
}

fn passes(codes: &[u8], rows: usize, cols: usize, variant: AopVariant) -> bool {
    columns_orthogonal(codes, rows, cols, variant == AopVariant::Cyclic) && right_perfect_codes(codes)
}

/// Whether a single spec is a hit for `variant`.
pub fn is_aop_hit(spec: &PolynomialIndexSpec, variant: AopVariant) -> bool {
    let mut codes = Vec::with_capacity(spec.rows * spec.cols);
    spec.fill_codes(&mut codes, &power_table());
    passes(&codes, spec.rows, spec.cols, variant)
}
