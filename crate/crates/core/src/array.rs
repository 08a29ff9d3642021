//! Periodic sequences and d-dimensional arrays over the unit quaternions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{FloatQuat, UnitQuat};

/// Which factor carries the conjugate in a correlation term.
///
/// `Right` sums `s[x] * conj(s[x + shift])`, `Left` sums
/// `conj(s[x + shift]) * s[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub const fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::InvalidParameter(format!("unknown side `{s}`"))),
        }
    }
}

/// Anything laid out row-major over `dims` with periodic indexing.
pub trait Periodic {
    fn dims(&self) -> &[usize];
    fn elems(&self) -> &[UnitQuat];

    fn len(&self) -> usize {
        self.elems().len()
    }

    fn is_empty(&self) -> bool {
        self.elems().is_empty()
    }
}

/// A periodic sequence of unit quaternions, length at least 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatSequence {
    elems: Vec<UnitQuat>,
    dims: [usize; 1],
}

impl QuatSequence {
    pub fn new(elems: Vec<UnitQuat>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidDims("sequence must be non-empty".into()));
        }
        let dims = [elems.len()];
        Ok(QuatSequence { elems, dims })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn as_slice(&self) -> &[UnitQuat] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<UnitQuat> {
        self.elems
    }

    /// Element at `index mod len`.
    pub fn at(&self, index: i64) -> UnitQuat {
        self.elems[index.rem_euclid(self.elems.len() as i64) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = UnitQuat> + '_ {
        self.elems.iter().copied()
    }

    pub fn to_array(&self) -> QuatArray {
        QuatArray {
            dims: vec![self.elems.len()],
            elems: self.elems.clone(),
        }
    }

    /// Fold into a `rows x cols` array, row by row.
    pub fn fold(&self, rows: usize, cols: usize) -> Result<QuatArray> {
        QuatArray::new(vec![rows, cols], self.elems.clone())
    }

    /// Comma-separated canonical tokens, e.g. `i,-j,-1`.
    pub fn to_tokens(&self) -> String {
        join_tokens(&self.elems)
    }
}

impl Periodic for QuatSequence {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn elems(&self) -> &[UnitQuat] {
        &self.elems
    }
}

impl fmt::Debug for QuatSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_tokens())
    }
}

impl fmt::Display for QuatSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens())
    }
}

impl Serialize for QuatSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_tokens())
    }
}

impl TryFrom<Vec<UnitQuat>> for QuatSequence {
    type Error = Error;

    fn try_from(v: Vec<UnitQuat>) -> Result<Self> {
        QuatSequence::new(v)
    }
}

impl FromStr for QuatSequence {
    type Err = Error;

    /// Parses a comma-separated token list such as `i, -j, k`.
    fn from_str(s: &str) -> Result<Self> {
        QuatSequence::new(parse_tokens(s, 1, 0)?)
    }
}

/// Parses comma-separated tokens; errors report `line` and the 1-based token
/// position counted from `first_token + 1`.
pub(crate) fn parse_tokens(text: &str, line: usize, first_token: usize) -> Result<Vec<UnitQuat>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(n, t)| {
            let t = t.trim();
            UnitQuat::from_token(t).ok_or_else(|| Error::Parse {
                line,
                token: first_token + n + 1,
                message: if t.is_empty() {
                    "empty token".to_string()
                } else {
                    format!("`{t}` is not one of 1, i, j, k, -1, -i, -j, -k")
                },
            })
        })
        .collect()
}

pub(crate) fn join_tokens(elems: &[UnitQuat]) -> String {
    let mut out = String::with_capacity(elems.len() * 3);
    for (n, u) in elems.iter().enumerate() {
        if n > 0 {
            out.push(',');
        }
        out.push_str(u.token());
    }
    out
}

/// A d-dimensional periodic array stored row-major (last axis fastest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuatArray {
    dims: Vec<usize>,
    elems: Vec<UnitQuat>,
}

impl QuatArray {
    pub fn new(dims: Vec<usize>, elems: Vec<UnitQuat>) -> Result<Self> {
        let expected = checked_volume(&dims)?;
        if expected != elems.len() {
            return Err(Error::ShapeMismatch {
                expected,
                found: elems.len(),
            });
        }
        Ok(QuatArray { dims, elems })
    }

    /// Builds an array by evaluating `f` at every index tuple in row-major order.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> UnitQuat) -> Result<Self> {
        let total = checked_volume(&dims)?;
        let mut elems = Vec::with_capacity(total);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..total {
            elems.push(f(&idx));
            for axis in (0..dims.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < dims[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(QuatArray { dims, elems })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.dims)
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        index
            .iter()
            .zip(self.strides())
            .map(|(i, s)| i * s)
            .sum()
    }

    pub fn get(&self, index: &[usize]) -> UnitQuat {
        assert_eq!(index.len(), self.dims.len());
        self.elems[self.flat_index(index)]
    }

    pub fn elems(&self) -> &[UnitQuat] {
        &self.elems
    }

    /// Concatenation of the rows in index order.
    pub fn flatten_row_major(&self) -> QuatSequence {
        QuatSequence::new(self.elems.clone()).expect("arrays are non-empty")
    }
}

impl Periodic for QuatArray {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn elems(&self) -> &[UnitQuat] {
        &self.elems
    }
}

pub fn flatten_row_major(a: &QuatArray) -> QuatSequence {
    a.flatten_row_major()
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for axis in (0..dims.len().saturating_sub(1)).rev() {
        s[axis] = s[axis + 1] * dims[axis + 1];
    }
    s
}

fn checked_volume(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidDims("at least one axis required".into()));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidDims(format!("zero-length axis in {dims:?}")));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::InvalidDims(format!("{dims:?} overflows")))
}

/// Sequence with real-valued quaternion entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatQuatSequence {
    elems: Vec<FloatQuat>,
}

impl FloatQuatSequence {
    pub fn new(elems: Vec<FloatQuat>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidDims("sequence must be non-empty".into()));
        }
        Ok(FloatQuatSequence { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[FloatQuat] {
        &self.elems
    }

    pub fn at(&self, index: i64) -> FloatQuat {
        self.elems[index.rem_euclid(self.elems.len() as i64) as usize]
    }
}

impl From<&QuatSequence> for FloatQuatSequence {
    fn from(s: &QuatSequence) -> Self {
        FloatQuatSequence {
            elems: s.iter().map(FloatQuat::from).collect(),
        }
    }
}
