//! Index-function constructions, the signed template family and the
//! coprime-length product.
//!
//! Every exponent is evaluated as an integer floor quotient, reduced mod 4 and
//! only then turned into a group power. Factors multiply left to right in the
//! order they are written (`i`-power, then `j`-power, then `k`-power); with a
//! non-commutative alphabet the order is part of the definition.

use std::fmt;
use std::str::FromStr;

use crate::array::{QuatArray, QuatSequence};
use crate::error::{Error, Result};
use crate::quat::{unit_pow, ImagAxis, UnitQuat};

#[inline]
fn floor_pow(axis: ImagAxis, num: u128, den: u128) -> UnitQuat {
    unit_pow(axis, ((num / den) % 4) as i64)
}

fn check_n(n: u32, min: u32, max: u32, what: &str) -> Result<()> {
    if n < min || n > max {
        return Err(Error::InvalidParameter(format!(
            "{what} needs {min} <= n <= {max}, got {n}"
        )));
    }
    Ok(())
}

/// Length-`2^n` sequence `s_a = i^floor(a^2 / 2^(n-1)) * j^floor(2a^2 / 2^(n-1))`.
///
/// Perfect for small `n`; for every `n` the autocorrelation vanishes at odd
/// shifts.
pub fn construct_seq_2n(n: u32) -> Result<QuatSequence> {
    check_n(n, 1, 30, "seq2n")?;
    let den = 1u128 << (n - 1);
    let elems = (0..1u128 << n)
        .map(|a| floor_pow(ImagAxis::I, a * a, den) * floor_pow(ImagAxis::J, 2 * a * a, den))
        .collect();
    QuatSequence::new(elems)
}

/// The 8x8 array `S[a][b] = i^(ab) * j^floor(ab/2)`.
pub fn construct_aop_array() -> QuatArray {
    QuatArray::from_fn(vec![8, 8], |idx| {
        let ab = (idx[0] * idx[1]) as u128;
        floor_pow(ImagAxis::I, ab, 1) * floor_pow(ImagAxis::J, ab, 2)
    })
    .expect("fixed shape")
}

/// `2^n x 2^n` array `S[a][b] = i^floor(4ab / 2^n) * j^floor(4a^2b^2 / 2^n)`.
pub fn construct_2d(n: u32) -> Result<QuatArray> {
    check_n(n, 2, 12, "arr2d")?;
    let side = 1usize << n;
    let den = 1u128 << n;
    QuatArray::from_fn(vec![side, side], |idx| {
        let (a, b) = (idx[0] as u128, idx[1] as u128);
        floor_pow(ImagAxis::I, 4 * a * b, den) * floor_pow(ImagAxis::J, 4 * a * a * b * b, den)
    })
}

fn four_d(dims: Vec<usize>, n: u32) -> Result<QuatArray> {
    let den = 1u128 << (n - 1);
    QuatArray::from_fn(dims, |idx| {
        let [a, b, c, d] = [idx[0], idx[1], idx[2], idx[3]].map(|v| v as u128);
        floor_pow(ImagAxis::I, a * b, den)
            * floor_pow(ImagAxis::J, b * c, den)
            * floor_pow(ImagAxis::K, c * d, den)
    })
}

/// 4-D array of side `2^(n+1)` with
/// `S[a][b][c][d] = i^floor(ab / 2^(n-1)) * j^floor(bc / 2^(n-1)) * k^floor(cd / 2^(n-1))`.
pub fn construct_4d_iii(n: u32) -> Result<QuatArray> {
    check_n(n, 1, 5, "arr4d-iii")?;
    let side = 1usize << (n + 1);
    four_d(vec![side; 4], n)
}

/// Same index function over dims `(2^n, 2^n, 2^(n+1), 2^(n+1))`.
pub fn construct_4d_iv(n: u32) -> Result<QuatArray> {
    check_n(n, 1, 5, "arr4d-iv")?;
    let small = 1usize << n;
    let big = small << 1;
    four_d(vec![small, small, big, big], n)
}

/// Sign vector for the `[-i, s, k, reverse(s)]` template, where
/// `s[t] = alpha[t] * (j if t is even else i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemplateSpec {
    alpha: Vec<i8>,
}

impl TemplateSpec {
    pub fn new(alpha: Vec<i8>) -> Result<Self> {
        if alpha.len() < 2 || alpha.len() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "template needs an even number (>= 2) of signs, got {}",
                alpha.len()
            )));
        }
        if let Some(bad) = alpha.iter().find(|&&a| a != 1 && a != -1) {
            return Err(Error::InvalidParameter(format!("sign {bad} is not +1 or -1")));
        }
        Ok(TemplateSpec { alpha })
    }

    /// Sign vector from the low `m` bits of `mask`: bit `t` set means `alpha[t] = -1`.
    pub fn from_mask(m: usize, mask: u64) -> Result<Self> {
        TemplateSpec::new(
            (0..m)
                .map(|t| if mask >> t & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    /// Recovers the sign vector of a sequence already in template form.
    pub fn extract(s: &QuatSequence) -> Option<Self> {
        let len = s.len();
        if len < 6 || len % 4 != 2 {
            return None;
        }
        let m = (len - 2) / 2;
        let alpha = s.as_slice()[1..=m]
            .iter()
            .enumerate()
            .map(|(t, &u)| {
                let base = if t % 2 == 0 { UnitQuat::J } else { UnitQuat::I };
                if u == base {
                    Some(1)
                } else if u == -base {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i8>>>()?;
        let spec = TemplateSpec::new(alpha).ok()?;
        (template_sequence(&spec) == *s).then_some(spec)
    }

    pub fn alpha(&self) -> &[i8] {
        &self.alpha
    }

    pub fn sequence_len(&self) -> usize {
        2 * self.alpha.len() + 2
    }
}

impl fmt::Display for TemplateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .alpha
            .iter()
            .map(|&a| if a > 0 { "+1" } else { "-1" })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TemplateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alpha = s
            .split(',')
            .map(|t| match t.trim() {
                "+1" | "1" | "+" => Ok(1),
                "-1" | "-" => Ok(-1),
                other => Err(Error::InvalidParameter(format!("bad sign `{other}`"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        TemplateSpec::new(alpha)
    }
}

/// `[-i] ++ s ++ [k] ++ reverse(s)`.
pub fn template_sequence(t: &TemplateSpec) -> QuatSequence {
    let sub: Vec<UnitQuat> = t
        .alpha
        .iter()
        .enumerate()
        .map(|(n, &a)| {
            let base = if n % 2 == 0 { UnitQuat::J } else { UnitQuat::I };
            if a > 0 {
                base
            } else {
                -base
            }
        })
        .collect();
    let mut elems = Vec::with_capacity(t.sequence_len());
    elems.push(UnitQuat::NEG_I);
    elems.extend_from_slice(&sub);
    elems.push(UnitQuat::K);
    elems.extend(sub.iter().rev());
    QuatSequence::new(elems).expect("template sequences are non-empty")
}

/// Which argument supplies the left factor of each product term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProductOrder {
    #[default]
    FirstLeft,
    SecondLeft,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `u[t] = s1[t mod L1] * s2[t mod L2]` over length `L1 * L2`.
///
/// Makes no perfection promise over this non-commutative alphabet; callers
/// verify.
pub fn coprime_product(
    s1: &QuatSequence,
    s2: &QuatSequence,
    order: ProductOrder,
) -> Result<QuatSequence> {
    let (l1, l2) = (s1.len(), s2.len());
    if gcd(l1, l2) != 1 {
        return Err(Error::NotCoprime(l1, l2));
    }
    let elems = (0..l1 * l2)
        .map(|t| {
            let (a, b) = (s1.as_slice()[t % l1], s2.as_slice()[t % l2]);
            match order {
                ProductOrder::FirstLeft => a * b,
                ProductOrder::SecondLeft => b * a,
            }
        })
        .collect();
    QuatSequence::new(elems)
}

/// Construction names accepted by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionName {
    Seq2n,
    Aop8x8,
    Arr2d,
    Arr4dIii,
    Arr4dIv,
    Template,
    Product,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 7] = [
        ConstructionName::Seq2n,
        ConstructionName::Aop8x8,
        ConstructionName::Arr2d,
        ConstructionName::Arr4dIii,
        ConstructionName::Arr4dIv,
        ConstructionName::Template,
        ConstructionName::Product,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ConstructionName::Seq2n => "seq2n",
            ConstructionName::Aop8x8 => "aop8x8",
            ConstructionName::Arr2d => "arr2d",
            ConstructionName::Arr4dIii => "arr4d-iii",
            ConstructionName::Arr4dIv => "arr4d-iv",
            ConstructionName::Template => "template",
            ConstructionName::Product => "product",
        }
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction `{s}`")))
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
