//! Exact periodic autocorrelation over unit-quaternion sequences and arrays.
//!
//! Every term of a correlation sum is itself a unit quaternion, so the kernel
//! counts how often each of the eight units occurs and only converts to a
//! [`LipschitzQuat`] at the end. Sums are exact; the zero test is integer
//! equality.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::array::{FloatQuatSequence, Periodic, QuatSequence, Side};
use crate::error::{Error, Result};
use crate::quat::{unit_conj, unit_mul, FloatQuat, LipschitzQuat, UnitQuat};

/// Default cap on the element count accepted by the naive `O(N^2)` spectrum.
pub const DEFAULT_NAIVE_BUDGET: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub naive_budget: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            naive_budget: DEFAULT_NAIVE_BUDGET,
        }
    }
}

/// Autocorrelation values at every shift plus the derived flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationSpectrum {
    pub dims: Vec<usize>,
    pub side: Side,
    /// Indexed by the row-major flat index of the shift vector.
    pub values: Vec<LipschitzQuat>,
    pub peak: LipschitzQuat,
    pub perfect: bool,
    /// Every odd shift vanishes. 1-D only.
    pub odd_perfect: Option<bool>,
    /// Zero correlation zone, computed from this spectrum. 1-D only.
    pub zcz: Option<usize>,
}

impl CorrelationSpectrum {
    pub fn from_values(dims: Vec<usize>, side: Side, values: Vec<LipschitzQuat>) -> Self {
        let peak = values[0];
        let perfect = values[1..].iter().all(LipschitzQuat::is_zero);
        let (odd_perfect, zcz) = if dims.len() == 1 {
            let odd = values.iter().skip(1).step_by(2).all(LipschitzQuat::is_zero);
            (Some(odd), Some(zero_run(&values)))
        } else {
            (None, None)
        };
        CorrelationSpectrum {
            dims,
            side,
            values,
            peak,
            perfect,
            odd_perfect,
            zcz,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at a (possibly negative or out-of-range) shift vector.
    pub fn value(&self, shift: &[i64]) -> Result<LipschitzQuat> {
        let s = normalize_shift(&self.dims, shift)?;
        Ok(self.values[flat_of(&self.dims, &s)])
    }

    pub fn shift_of(&self, flat: usize) -> Vec<usize> {
        unflatten(&self.dims, flat)
    }

    /// Text export: a `#` header line, then `t0,...,td-1 : <quat>` per shift.
    pub fn write_text<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(
            out,
            "# dims: {}; side: {}; perfect: {}",
            dims.join(" x "),
            self.side,
            self.perfect
        )?;
        if let Some(odd) = self.odd_perfect {
            write!(out, "; odd_perfect: {odd}")?;
        }
        if let Some(z) = self.zcz {
            write!(out, "; zcz: {z}")?;
        }
        writeln!(out)?;
        for (flat, v) in self.values.iter().enumerate() {
            let shift: Vec<String> = self.shift_of(flat).iter().map(|s| s.to_string()).collect();
            writeln!(out, "{} : {}", shift.join(","), v)?;
        }
        Ok(())
    }

    /// Structured export: one JSON object per line, header record first.
    pub fn write_json_lines<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        let header = json!({
            "record": "header",
            "dims": self.dims,
            "side": self.side,
            "perfect": self.perfect,
            "odd_perfect": self.odd_perfect,
            "zcz": self.zcz,
            "peak": self.peak,
        });
        writeln!(out, "{header}")?;
        for (flat, v) in self.values.iter().enumerate() {
            let rec = json!({
                "record": "value",
                "shift": self.shift_of(flat),
                "value": v.to_string(),
                "components": v,
            });
            writeln!(out, "{rec}")?;
        }
        Ok(())
    }
}

/// Largest `z` such that the values at shifts `1..=z` are all zero.
pub fn zcz(spectrum: &CorrelationSpectrum) -> usize {
    zero_run(&spectrum.values)
}

fn zero_run(values: &[LipschitzQuat]) -> usize {
    values[1..].iter().take_while(|v| v.is_zero()).count()
}

pub(crate) fn normalize_shift(dims: &[usize], shift: &[i64]) -> Result<Vec<usize>> {
    if shift.len() != dims.len() {
        return Err(Error::ShiftArity {
            expected: dims.len(),
            found: shift.len(),
        });
    }
    Ok(shift
        .iter()
        .zip(dims)
        .map(|(&s, &d)| s.rem_euclid(d as i64) as usize)
        .collect())
}

pub(crate) fn flat_of(dims: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub(crate) fn unflatten(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for axis in (0..dims.len()).rev() {
        idx[axis] = flat % dims[axis];
        flat /= dims[axis];
    }
    idx
}

#[inline]
fn term(side: Side, base: UnitQuat, shifted: UnitQuat) -> UnitQuat {
    match side {
        Side::Right => unit_mul(base, unit_conj(shifted)),
        Side::Left => unit_mul(unit_conj(shifted), base),
    }
}

fn counts_to_quat(counts: &[i64; 8]) -> LipschitzQuat {
    let mut c = [0i64; 4];
    for (code, &n) in counts.iter().enumerate() {
        let u = UnitQuat::from_code(code as u8);
        c[u.axis().index()] += u.sign() * n;
    }
    LipschitzQuat::from_components(c)
}

/// Correlation at an already-normalized shift (each entry in `0..dim`).
pub(crate) fn autocorr_kernel(
    dims: &[usize],
    elems: &[UnitQuat],
    shift: &[usize],
    side: Side,
) -> LipschitzQuat {
    let d = dims.len();
    let strides = crate::array::strides(dims);
    // shifted offset contribution of each axis index
    let tables: Vec<Vec<usize>> = (0..d)
        .map(|axis| {
            (0..dims[axis])
                .map(|i| ((i + shift[axis]) % dims[axis]) * strides[axis])
                .collect()
        })
        .collect();
    let last = &tables[d - 1];
    let row_len = dims[d - 1];
    let rows = elems.len() / row_len;

    let mut counts = [0i64; 8];
    let mut outer = vec![0usize; d.saturating_sub(1)];
    for row in 0..rows {
        let base: usize = outer.iter().enumerate().map(|(a, &i)| tables[a][i]).sum();
        let src = &elems[row * row_len..(row + 1) * row_len];
        for (x, &off) in src.iter().zip(last) {
            counts[term(side, *x, elems[base + off]).code() as usize] += 1;
        }
        for axis in (0..outer.len()).rev() {
            outer[axis] += 1;
            if outer[axis] < dims[axis] {
                break;
            }
            outer[axis] = 0;
        }
    }
    counts_to_quat(&counts)
}

/// `sum_i s[i] * conj(s[i + tau])`, shift taken mod the length.
pub fn right_autocorr(s: &QuatSequence, tau: i64) -> LipschitzQuat {
    let t = tau.rem_euclid(s.len() as i64) as usize;
    autocorr_kernel(s.dims(), s.as_slice(), &[t], Side::Right)
}

/// `sum_i conj(s[i + tau]) * s[i]`, shift taken mod the length.
pub fn left_autocorr(s: &QuatSequence, tau: i64) -> LipschitzQuat {
    let t = tau.rem_euclid(s.len() as i64) as usize;
    autocorr_kernel(s.dims(), s.as_slice(), &[t], Side::Left)
}

pub fn autocorr<P: Periodic + ?Sized>(x: &P, shift: &[i64], side: Side) -> Result<LipschitzQuat> {
    let s = normalize_shift(x.dims(), shift)?;
    Ok(autocorr_kernel(x.dims(), x.elems(), &s, side))
}

/// Array autocorrelation at a shift vector with periodic wrap on every axis.
pub fn array_autocorr<P: Periodic + ?Sized>(
    a: &P,
    shift: &[i64],
    side: Side,
) -> Result<LipschitzQuat> {
    autocorr(a, shift, side)
}

/// Naive spectrum over every shift; errors when the element count exceeds the
/// budget.
pub fn full_spectrum<P: Periodic + Sync + ?Sized>(
    x: &P,
    side: Side,
    opts: &SpectrumOptions,
) -> Result<CorrelationSpectrum> {
    let n = x.len();
    if n > opts.naive_budget {
        return Err(Error::BudgetExceeded {
            elements: n,
            budget: opts.naive_budget,
        });
    }
    let dims = x.dims().to_vec();
    let values: Vec<LipschitzQuat> = (0..n)
        .into_par_iter()
        .map(|flat| autocorr_kernel(&dims, x.elems(), &unflatten(&dims, flat), side))
        .collect();
    Ok(CorrelationSpectrum::from_values(dims, side, values))
}

/// True when every off-peak shift vanishes. Exits at the first nonzero value.
pub fn is_perfect<P: Periodic + Sync + ?Sized>(x: &P, side: Side) -> bool {
    let dims = x.dims();
    (1..x.len())
        .into_par_iter()
        .all(|flat| autocorr_kernel(dims, x.elems(), &unflatten(dims, flat), side).is_zero())
}

/// Perfect on both sides.
pub fn is_perfect_both<P: Periodic + Sync + ?Sized>(x: &P) -> bool {
    Side::BOTH.iter().all(|&side| is_perfect(x, side))
}

/// Real-arithmetic correlation for sequences outside the unit alphabet.
pub fn float_autocorr(s: &FloatQuatSequence, tau: i64, side: Side) -> FloatQuat {
    let mut acc = FloatQuat::ZERO;
    for (i, &x) in s.as_slice().iter().enumerate() {
        let y = s.at(i as i64 + tau).conj();
        acc += match side {
            Side::Right => x * y,
            Side::Left => y * x,
        };
    }
    acc
}

pub fn float_is_perfect(s: &FloatQuatSequence, side: Side, tol: f64) -> bool {
    (1..s.len() as i64).all(|t| float_autocorr(s, t, side).approx_zero(tol))
}
