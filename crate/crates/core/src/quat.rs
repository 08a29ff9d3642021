//! Exact quaternion arithmetic.
//!
//! [`UnitQuat`] is an element of the quaternion group `{±1, ±i, ±j, ±k}`
//! packed into a 3-bit code, [`LipschitzQuat`] is a quaternion with integer
//! components (the value domain of every correlation sum over unit
//! alphabets) and [`FloatQuat`] carries real components for the few catalog
//! entries that live outside the integer lattice.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Basis element of the quaternions: `1`, `i`, `j` or `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Axis {
    Real = 0,
    I = 1,
    J = 2,
    K = 3,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::Real, Axis::I, Axis::J, Axis::K];

    #[inline]
    pub const fn from_index(idx: u8) -> Axis {
        match idx & 3 {
            0 => Axis::Real,
            1 => Axis::I,
            2 => Axis::J,
            _ => Axis::K,
        }
    }

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }
}

/// One of the three imaginary axes, the bases used by the index-function
/// constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImagAxis {
    I,
    J,
    K,
}

impl ImagAxis {
    pub const ALL: [ImagAxis; 3] = [ImagAxis::I, ImagAxis::J, ImagAxis::K];

    pub const fn unit(self) -> UnitQuat {
        match self {
            ImagAxis::I => UnitQuat::I,
            ImagAxis::J => UnitQuat::J,
            ImagAxis::K => UnitQuat::K,
        }
    }

    /// `axis^e` with the exponent reduced mod 4 (negative exponents allowed).
    #[inline]
    pub fn pow(self, e: i64) -> UnitQuat {
        unit_pow(self, e)
    }
}

/// Sign of `e_a * e_b` for basis indices `a, b` in `0..4`; the product's axis is
/// always `a ^ b`. Returns 1 for a negative product.
const fn basis_sign(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        0
    } else if a == b {
        1
    } else {
        // i*j = k, j*k = i, k*i = j; reversed orders are negative.
        match (a, b) {
            (1, 2) | (2, 3) | (3, 1) => 0,
            _ => 1,
        }
    }
}

/// Sign (`+1` / `-1`) of the basis product `e_a * e_b`.
#[inline]
pub(crate) const fn basis_product_sign(a: usize, b: usize) -> i64 {
    if basis_sign(a as u8, b as u8) == 0 {
        1
    } else {
        -1
    }
}

const fn build_mul_table() -> [u8; 64] {
    let mut table = [0u8; 64];
    let mut p = 0u8;
    while p < 8 {
        let mut q = 0u8;
        while q < 8 {
            let (pa, ps) = (p & 3, p >> 2);
            let (qa, qs) = (q & 3, q >> 2);
            let sign = ps ^ qs ^ basis_sign(pa, qa);
            table[(p as usize) << 3 | q as usize] = (pa ^ qa) | (sign << 2);
            q += 1;
        }
        p += 1;
    }
    table
}

const MUL_TABLE: [u8; 64] = build_mul_table();

/// Product of two unit codes.
#[inline]
pub(crate) const fn mul_code(p: u8, q: u8) -> u8 {
    MUL_TABLE[((p & 7) as usize) << 3 | (q & 7) as usize]
}

/// A simple unit quaternion, one of `±1, ±i, ±j, ±k`.
///
/// The code is `axis | sign << 2` where `axis` indexes `1, i, j, k` and the
/// sign bit is set for negative elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnitQuat(u8);

impl UnitQuat {
    pub const ONE: UnitQuat = UnitQuat(0);
    pub const I: UnitQuat = UnitQuat(1);
    pub const J: UnitQuat = UnitQuat(2);
    pub const K: UnitQuat = UnitQuat(3);
    pub const NEG_ONE: UnitQuat = UnitQuat(4);
    pub const NEG_I: UnitQuat = UnitQuat(5);
    pub const NEG_J: UnitQuat = UnitQuat(6);
    pub const NEG_K: UnitQuat = UnitQuat(7);

    /// All eight elements in code order.
    pub const ALL: [UnitQuat; 8] = [
        UnitQuat(0),
        UnitQuat(1),
        UnitQuat(2),
        UnitQuat(3),
        UnitQuat(4),
        UnitQuat(5),
        UnitQuat(6),
        UnitQuat(7),
    ];

    /// The six pure imaginary units `±i, ±j, ±k`.
    pub const IMAGINARY: [UnitQuat; 6] = [
        UnitQuat::I,
        UnitQuat::J,
        UnitQuat::K,
        UnitQuat::NEG_I,
        UnitQuat::NEG_J,
        UnitQuat::NEG_K,
    ];

    #[inline]
    pub const fn from_code(code: u8) -> UnitQuat {
        UnitQuat(code & 7)
    }

    #[inline]
    pub const fn new(axis: Axis, negative: bool) -> UnitQuat {
        UnitQuat(axis as u8 | ((negative as u8) << 2))
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn axis(self) -> Axis {
        Axis::from_index(self.0)
    }

    #[inline]
    pub const fn is_negative(self) -> bool {
        self.0 & 4 != 0
    }

    #[inline]
    pub const fn sign(self) -> i64 {
        if self.is_negative() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn mul(self, rhs: UnitQuat) -> UnitQuat {
        unit_mul(self, rhs)
    }

    #[inline]
    pub const fn conj(self) -> UnitQuat {
        unit_conj(self)
    }

    #[inline]
    pub const fn neg(self) -> UnitQuat {
        UnitQuat(self.0 ^ 4)
    }

    /// `self^e`, exponent reduced mod 4.
    pub fn powi(self, e: i64) -> UnitQuat {
        let mut acc = UnitQuat::ONE;
        for _ in 0..e.rem_euclid(4) {
            acc = unit_mul(acc, self);
        }
        acc
    }

    /// Canonical ASCII token: `1`, `-1`, `i`, `-i`, `j`, `-j`, `k`, `-k`.
    pub const fn token(self) -> &'static str {
        match self.0 {
            0 => "1",
            1 => "i",
            2 => "j",
            3 => "k",
            4 => "-1",
            5 => "-i",
            6 => "-j",
            _ => "-k",
        }
    }

    pub fn from_token(token: &str) -> Option<UnitQuat> {
        Some(match token {
            "1" | "+1" => UnitQuat::ONE,
            "i" | "+i" => UnitQuat::I,
            "j" | "+j" => UnitQuat::J,
            "k" | "+k" => UnitQuat::K,
            "-1" => UnitQuat::NEG_ONE,
            "-i" => UnitQuat::NEG_I,
            "-j" => UnitQuat::NEG_J,
            "-k" => UnitQuat::NEG_K,
            _ => return None,
        })
    }
}

impl fmt::Debug for UnitQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Display for UnitQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for UnitQuat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnitQuat::from_token(s.trim()).ok_or_else(|| Error::InvalidToken {
            token: s.trim().to_string(),
        })
    }
}

impl Mul for UnitQuat {
    type Output = UnitQuat;

    #[inline]
    fn mul(self, rhs: UnitQuat) -> UnitQuat {
        unit_mul(self, rhs)
    }
}

impl Neg for UnitQuat {
    type Output = UnitQuat;

    #[inline]
    fn neg(self) -> UnitQuat {
        UnitQuat(self.0 ^ 4)
    }
}

impl Serialize for UnitQuat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for UnitQuat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        UnitQuat::from_token(&s).ok_or_else(|| serde::de::Error::custom(format!("bad unit {s}")))
    }
}

/// Group product `p * q` (row times column), via the precomputed table.
#[inline]
pub fn unit_mul(p: UnitQuat, q: UnitQuat) -> UnitQuat {
    UnitQuat(MUL_TABLE[((p.0 as usize) << 3) | q.0 as usize])
}

#[inline]
pub const fn unit_conj(q: UnitQuat) -> UnitQuat {
    if q.0 & 3 == 0 {
        q
    } else {
        UnitQuat(q.0 ^ 4)
    }
}

/// `axis^e` for an imaginary axis, `e` reduced into `0..4`.
pub fn unit_pow(axis: ImagAxis, e: i64) -> UnitQuat {
    // axis^0 = 1, axis^1 = axis, axis^2 = -1, axis^3 = -axis
    let a = axis.unit();
    match e.rem_euclid(4) {
        0 => UnitQuat::ONE,
        1 => a,
        2 => UnitQuat::NEG_ONE,
        _ => a.neg(),
    }
}

/// Quaternion with integer components `w + x i + y j + z k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct LipschitzQuat {
    pub w: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LipschitzQuat {
    pub const ZERO: LipschitzQuat = LipschitzQuat::new(0, 0, 0, 0);
    pub const ONE: LipschitzQuat = LipschitzQuat::new(1, 0, 0, 0);

    pub const fn new(w: i64, x: i64, y: i64, z: i64) -> Self {
        LipschitzQuat { w, x, y, z }
    }

    pub const fn scalar(w: i64) -> Self {
        LipschitzQuat::new(w, 0, 0, 0)
    }

    pub const fn components(&self) -> [i64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub const fn from_components(c: [i64; 4]) -> Self {
        LipschitzQuat::new(c[0], c[1], c[2], c[3])
    }

    pub const fn is_zero(&self) -> bool {
        self.w == 0 && self.x == 0 && self.y == 0 && self.z == 0
    }

    pub const fn conj(&self) -> Self {
        LipschitzQuat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub const fn norm_sqr(&self) -> i64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Product with overflow detection.
    pub fn checked_mul(&self, rhs: &LipschitzQuat) -> Option<LipschitzQuat> {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (rhs.w, rhs.x, rhs.y, rhs.z);
        let dot4 = |t: [(i64, i64, i64); 4]| -> Option<i64> {
            t.iter().try_fold(0i64, |acc, &(s, u, v)| {
                acc.checked_add(u.checked_mul(v)?.checked_mul(s)?)
            })
        };
        Some(LipschitzQuat::new(
            dot4([(1, a1, a2), (-1, b1, b2), (-1, c1, c2), (-1, d1, d2)])?,
            dot4([(1, a2, b1), (1, a1, b2), (-1, c2, d1), (1, c1, d2)])?,
            dot4([(1, a2, c1), (1, a1, c2), (1, b2, d1), (-1, b1, d2)])?,
            dot4([(1, a2, d1), (1, a1, d2), (-1, b2, c1), (1, b1, c2)])?,
        ))
    }

    pub fn checked_add(&self, rhs: &LipschitzQuat) -> Option<LipschitzQuat> {
        Some(LipschitzQuat::new(
            self.w.checked_add(rhs.w)?,
            self.x.checked_add(rhs.x)?,
            self.y.checked_add(rhs.y)?,
            self.z.checked_add(rhs.z)?,
        ))
    }
}

/// Exact product of two integer quaternions.
///
/// Panics on component overflow; correlation sums never get near the limit
/// since each term contributes ±1 to a single component.
pub fn quat_mul(p: LipschitzQuat, q: LipschitzQuat) -> LipschitzQuat {
    p.checked_mul(&q).expect("LipschitzQuat multiplication overflow")
}

pub fn quat_add(p: LipschitzQuat, q: LipschitzQuat) -> LipschitzQuat {
    p.checked_add(&q).expect("LipschitzQuat addition overflow")
}

pub fn quat_conj(p: LipschitzQuat) -> LipschitzQuat {
    p.conj()
}

pub fn embed(u: UnitQuat) -> LipschitzQuat {
    let mut c = [0i64; 4];
    c[u.axis().index()] = u.sign();
    LipschitzQuat::from_components(c)
}

impl From<UnitQuat> for LipschitzQuat {
    fn from(u: UnitQuat) -> Self {
        embed(u)
    }
}

impl Add for LipschitzQuat {
    type Output = LipschitzQuat;
    fn add(self, rhs: Self) -> Self {
        quat_add(self, rhs)
    }
}

impl AddAssign for LipschitzQuat {
    fn add_assign(&mut self, rhs: Self) {
        *self = quat_add(*self, rhs);
    }
}

impl Sub for LipschitzQuat {
    type Output = LipschitzQuat;
    fn sub(self, rhs: Self) -> Self {
        quat_add(self, -rhs)
    }
}

impl SubAssign for LipschitzQuat {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for LipschitzQuat {
    type Output = LipschitzQuat;
    fn neg(self) -> Self {
        LipschitzQuat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for LipschitzQuat {
    type Output = LipschitzQuat;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(self, rhs)
    }
}

impl std::iter::Sum for LipschitzQuat {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LipschitzQuat::ZERO, |a, b| a + b)
    }
}

/// Renders `w+xi+yj+zk` with explicit signs between terms, zero components
/// omitted and unit coefficients elided on the imaginary parts (`1-i+j+3k`).
impl fmt::Display for LipschitzQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (value, suffix) in [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if value == 0 {
                continue;
            }
            let sign = if value < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = value.unsigned_abs();
            if mag == 1 && !suffix.is_empty() {
                write!(f, "{sign}{suffix}")?;
            } else {
                write!(f, "{sign}{mag}{suffix}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for LipschitzQuat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidToken {
            token: s.to_string(),
        };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let mut comps = [0i64; 4];
        let mut seen = [false; 4];
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits = &text[start..pos];
            let axis = match bytes.get(pos) {
                Some(b'i') => 1,
                Some(b'j') => 2,
                Some(b'k') => 3,
                _ => 0,
            };
            if axis != 0 {
                pos += 1;
            } else if digits.is_empty() {
                return Err(bad());
            }
            let mag: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            if seen[axis] {
                return Err(bad());
            }
            seen[axis] = true;
            comps[axis] = if negative { -mag } else { mag };
        }
        Ok(LipschitzQuat::from_components(comps))
    }
}

impl Serialize for LipschitzQuat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.components().serialize(serializer)
    }
}

/// Default absolute per-component tolerance for [`FloatQuat`] comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Quaternion with `f64` components.
#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct FloatQuat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FloatQuat {
    pub const ZERO: FloatQuat = FloatQuat::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        FloatQuat { w, x, y, z }
    }

    pub const fn components(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(&self) -> Self {
        FloatQuat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn approx_eq(&self, other: &FloatQuat, tol: f64) -> bool {
        self.components()
            .iter()
            .zip(other.components())
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.approx_eq(&FloatQuat::ZERO, tol)
    }
}

impl From<LipschitzQuat> for FloatQuat {
    fn from(q: LipschitzQuat) -> Self {
        FloatQuat::new(q.w as f64, q.x as f64, q.y as f64, q.z as f64)
    }
}

impl From<UnitQuat> for FloatQuat {
    fn from(u: UnitQuat) -> Self {
        embed(u).into()
    }
}

impl Add for FloatQuat {
    type Output = FloatQuat;
    fn add(self, r: Self) -> Self {
        FloatQuat::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for FloatQuat {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Neg for FloatQuat {
    type Output = FloatQuat;
    fn neg(self) -> Self {
        FloatQuat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for FloatQuat {
    type Output = FloatQuat;
    fn mul(self, r: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (r.w, r.x, r.y, r.z);
        FloatQuat::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a2 * b1 + a1 * b2 - c2 * d1 + c1 * d2,
            a2 * c1 + a1 * c2 + b2 * d1 - b1 * d2,
            a2 * d1 + a1 * d2 - b2 * c1 + b1 * c2,
        )
    }
}

impl fmt::Display for FloatQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

/// `sum_{n=0}^{4m-1} axis^(c*n)`.
///
/// The terms repeat with period 4, so the sum vanishes unless `c = 0 mod 4`,
/// in which case every term is 1. Computed by direct summation.
pub fn lemma1_sum(axis: ImagAxis, c: i64, m: u64) -> LipschitzQuat {
    assert!(m >= 1, "lemma1_sum requires m >= 1");
    (0..4 * m as i64)
        .map(|n| embed(unit_pow(axis, c.wrapping_mul(n).rem_euclid(4))))
        .sum()
}
