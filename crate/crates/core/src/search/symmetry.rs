//! Transformations that map perfect sequences to perfect sequences.
//!
//! Element maps act on every entry at once (global negation, signed
//! permutations of the axes `i, j, k`); position maps re-index a sequence by
//! `i -> k*i + r mod L` (cyclic rotation, reversal, decimation by a unit).
//! Each symmetry is checked against brute-force enumeration in the tests
//! before the search relies on it.

use std::collections::BTreeSet;

use crate::array::QuatSequence;
use crate::quat::UnitQuat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `s -> -s`.
    Negation,
    /// Signed permutations of the imaginary axes (48 maps, negation included).
    AxisPermutation,
    /// `s[i] -> s[i + r]`.
    Rotation,
    /// `s[i] -> s[-i]`.
    Reversal,
    /// `s[i] -> s[k*i]` for `gcd(k, L) = 1`.
    Decimation,
}

impl Symmetry {
    pub const ALL: [Symmetry; 5] = [
        Symmetry::Negation,
        Symmetry::AxisPermutation,
        Symmetry::Rotation,
        Symmetry::Reversal,
        Symmetry::Decimation,
    ];

    const fn bit(self) -> u8 {
        1 << self as u8
    }

    pub const fn name(self) -> &'static str {
        match self {
            Symmetry::Negation => "negation",
            Symmetry::AxisPermutation => "axis-permutation",
            Symmetry::Rotation => "rotation",
            Symmetry::Reversal => "reversal",
            Symmetry::Decimation => "decimation",
        }
    }
}

/// A set of enabled symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetrySet(u8);

impl Default for SymmetrySet {
    fn default() -> Self {
        SymmetrySet::all()
    }
}

impl SymmetrySet {
    pub const fn none() -> Self {
        SymmetrySet(0)
    }

    pub fn all() -> Self {
        Symmetry::ALL.into_iter().collect()
    }

    pub const fn with(self, s: Symmetry) -> Self {
        SymmetrySet(self.0 | s.bit())
    }

    pub const fn contains(self, s: Symmetry) -> bool {
        self.0 & s.bit() != 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Symmetry> {
        Symmetry::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    /// Code-to-code tables for every element map in the generated group.
    pub fn element_maps(self) -> Vec<[u8; 8]> {
        let identity: [u8; 8] = std::array::from_fn(|c| c as u8);
        if self.contains(Symmetry::AxisPermutation) {
            return signed_axis_permutations();
        }
        if self.contains(Symmetry::Negation) {
            let neg: [u8; 8] = std::array::from_fn(|c| c as u8 ^ 4);
            return vec![identity, neg];
        }
        vec![identity]
    }

    /// `(k, r)` pairs for the re-indexing `new[i] = old[(k*i + r) mod len]`.
    pub fn position_maps(self, len: usize) -> Vec<(usize, usize)> {
        let mults: Vec<usize> = if self.contains(Symmetry::Decimation) {
            (1..=len.max(1))
                .filter(|&k| gcd(k % len.max(1), len) == 1)
                .map(|k| k % len.max(1))
                .collect()
        } else if self.contains(Symmetry::Reversal) && len > 1 {
            vec![1, len - 1]
        } else {
            vec![1 % len.max(1)]
        };
        let offsets: Vec<usize> = if self.contains(Symmetry::Rotation) {
            (0..len).collect()
        } else {
            vec![0]
        };
        let mut maps: Vec<(usize, usize)> = mults
            .iter()
            .flat_map(|&k| offsets.iter().map(move |&r| (k, r)))
            .collect();
        maps.sort_unstable();
        maps.dedup();
        maps
    }

    /// Element codes that can open a canonical representative: the minimum
    /// of each element's orbit under the element maps.
    pub fn first_element_candidates(self, alphabet: &[UnitQuat]) -> Vec<UnitQuat> {
        let maps = self.element_maps();
        let set: BTreeSet<u8> = alphabet
            .iter()
            .map(|u| maps.iter().map(|m| m[u.code() as usize]).min().unwrap())
            .collect();
        set.into_iter().map(UnitQuat::from_code).collect()
    }

    /// Every image of `s` under the generated group.
    pub fn orbit(self, s: &QuatSequence) -> BTreeSet<QuatSequence> {
        let len = s.len();
        let src = s.as_slice();
        let mut out = BTreeSet::new();
        for map in self.element_maps() {
            for (k, r) in self.position_maps(len) {
                let elems = (0..len)
                    .map(|i| UnitQuat::from_code(map[src[(k * i + r) % len].code() as usize]))
                    .collect();
                out.insert(QuatSequence::new(elems).expect("non-empty"));
            }
        }
        out
    }

    /// Lexicographically smallest (by code) element of the orbit.
    pub fn canonical(self, s: &QuatSequence) -> QuatSequence {
        self.orbit(s).into_iter().next().expect("orbit contains s")
    }
}

impl FromIterator<Symmetry> for SymmetrySet {
    fn from_iter<I: IntoIterator<Item = Symmetry>>(iter: I) -> Self {
        iter.into_iter().fold(SymmetrySet::none(), SymmetrySet::with)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The 48 maps `e_a -> eps_a e_perm(a)` on `i, j, k`, with `±1` fixed.
fn signed_axis_permutations() -> Vec<[u8; 8]> {
    const PERMS: [[u8; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    let mut maps = Vec::with_capacity(48);
    for perm in PERMS {
        for signs in 0u8..8 {
            let mut m = [0u8; 8];
            for code in 0u8..8 {
                let (axis, neg) = (code & 3, code >> 2);
                m[code as usize] = if axis == 0 {
                    code
                } else {
                    let flip = (signs >> (axis - 1)) & 1;
                    perm[axis as usize - 1] | ((neg ^ flip) << 2)
                };
            }
            maps.push(m);
        }
    }
    maps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(SymmetrySet::all().element_maps().len(), 48);
        assert_eq!(SymmetrySet::none().with(Symmetry::Negation).element_maps().len(), 2);
        assert_eq!(SymmetrySet::none().element_maps().len(), 1);
        // units mod 12 are {1, 5, 7, 11}
        let maps = SymmetrySet::all().position_maps(12);
        assert_eq!(maps.len(), 4 * 12);
        assert_eq!(SymmetrySet::none().position_maps(7), vec![(1, 0)]);
    }

    #[test]
    fn candidates_shrink_with_group() {
        let alph = UnitQuat::IMAGINARY;
        assert_eq!(SymmetrySet::none().first_element_candidates(&alph).len(), 6);
        let neg = SymmetrySet::none().with(Symmetry::Negation);
        assert_eq!(neg.first_element_candidates(&alph), vec![UnitQuat::I, UnitQuat::J, UnitQuat::K]);
        assert_eq!(SymmetrySet::all().first_element_candidates(&alph), vec![UnitQuat::I]);
    }

    #[test]
    fn orbit_contains_self_and_canonical_is_minimal() {
        let s = QuatSequence::new(vec![UnitQuat::NEG_K, UnitQuat::I, UnitQuat::NEG_K, UnitQuat::NEG_I])
            .unwrap();
        let set = SymmetrySet::all();
        let orbit = set.orbit(&s);
        assert!(orbit.contains(&s));
        let c = set.canonical(&s);
        assert!(orbit.iter().all(|o| c <= *o));
        assert_eq!(set.canonical(&c), c);
    }
}
