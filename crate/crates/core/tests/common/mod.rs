//! Reference implementations shared by the integration tests. They follow the
//! definitions literally and share no code with the library kernels.

#![allow(dead_code)]

use quatseq_core::{LipschitzQuat, QuatArray, QuatSequence, Side, UnitQuat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hamilton product written out component by component.
pub fn hamilton(p: [i64; 4], q: [i64; 4]) -> [i64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

pub fn comps(u: UnitQuat) -> [i64; 4] {
    let mut c = [0i64; 4];
    c[u.code() as usize & 3] = if u.code() & 4 == 0 { 1 } else { -1 };
    c
}

fn conj(q: [i64; 4]) -> [i64; 4] {
    [q[0], -q[1], -q[2], -q[3]]
}

/// Correlation of a row-major array at `shift` straight from the definition.
pub fn oracle_corr(dims: &[usize], elems: &[UnitQuat], shift: &[i64], side: Side) -> LipschitzQuat {
    let mut acc = [0i64; 4];
    let mut idx = vec![0usize; dims.len()];
    for &x in elems {
        let mut flat = 0usize;
        for (axis, &d) in dims.iter().enumerate() {
            let j = (idx[axis] as i64 + shift[axis]).rem_euclid(d as i64) as usize;
            flat = flat * d + j;
        }
        let (a, b) = (comps(x), conj(comps(elems[flat])));
        let term = match side {
            Side::Right => hamilton(a, b),
            Side::Left => hamilton(b, a),
        };
        for c in 0..4 {
            acc[c] += term[c];
        }
        for axis in (0..dims.len()).rev() {
            idx[axis] += 1;
            if idx[axis] < dims[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
    LipschitzQuat::from_components(acc)
}

pub fn oracle_seq(s: &QuatSequence, tau: i64, side: Side) -> LipschitzQuat {
    oracle_corr(&[s.len()], s.as_slice(), &[tau], side)
}

pub fn oracle_perfect_seq(s: &QuatSequence, side: Side) -> bool {
    (1..s.len() as i64).all(|t| oracle_seq(s, t, side).is_zero())
}

pub fn seq(tokens: &str) -> QuatSequence {
    tokens.parse().unwrap()
}

pub fn random_units(rng: &mut ChaCha8Rng, n: usize, alphabet: &[UnitQuat]) -> Vec<UnitQuat> {
    (0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

pub fn random_shift(rng: &mut ChaCha8Rng, dims: &[usize]) -> Vec<i64> {
    dims.iter().map(|&d| rng.gen_range(0..d as i64)).collect()
}

/// `i^x j^y k^z` computed with Hamilton products of components.
pub fn ijk_power(x: u64, y: u64, z: u64) -> [i64; 4] {
    let mut acc = [1, 0, 0, 0];
    for (basis, e) in [([0, 1, 0, 0], x), ([0, 0, 1, 0], y), ([0, 0, 0, 1], z)] {
        for _ in 0..e % 4 {
            acc = hamilton(acc, basis);
        }
    }
    acc
}

pub fn array_comps(a: &QuatArray) -> Vec<[i64; 4]> {
    a.elems().iter().map(|&u| comps(u)).collect()
}
