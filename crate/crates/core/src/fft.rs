//! FFT path for full autocorrelation spectra.
//!
//! The array is split into four real component arrays `P_0..P_3` (coefficients
//! of `1, i, j, k`). Each quaternion correlation component is a signed sum of
//! the real periodic cross-correlations `C_ab(t) = sum_x P_a(x) P_b(x + t)`,
//! whose transforms are `conj(F[P_a]) * F[P_b]`. The 16 pairwise products are
//! combined with the quaternion sign table in the frequency domain, four
//! inverse transforms bring the components back and every value is rounded
//! to the nearest integer.

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::array::{strides, Periodic, Side};
use crate::correlation::CorrelationSpectrum;
use crate::error::{Error, Result};
use crate::quat::{basis_product_sign, LipschitzQuat};

/// Rounded values further than this from an integer abort the computation.
pub const ROUNDING_THRESHOLD: f64 = 0.25;

type C64 = Complex<f64>;

/// In-place d-dimensional FFT over a row-major buffer (unnormalized).
fn fft_nd(data: &mut [C64], dims: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let st = strides(dims);
    let total = data.len();
    for (axis, &len) in dims.iter().enumerate() {
        if len == 1 {
            continue;
        }
        let fft = planner.plan_fft(len, direction);
        let stride = st[axis];
        if stride == 1 {
            fft.process(data);
            continue;
        }
        let mut line = vec![C64::default(); len];
        let mut scratch = vec![C64::default(); fft.get_inplace_scratch_len()];
        let block = len * stride;
        for start in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = start + inner;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
    }
}

/// Coefficient of `C_ab` in output component `a ^ b`.
///
/// Right: `e_a * conj(e_b)`; left: `conj(e_b) * e_a`.
fn pair_coefficient(side: Side, a: usize, b: usize) -> f64 {
    let conj_sign = if b == 0 { 1 } else { -1 };
    let product_sign = match side {
        Side::Right => basis_product_sign(a, b),
        Side::Left => basis_product_sign(b, a),
    };
    (conj_sign * product_sign) as f64
}

/// All-shift autocorrelation through component-wise real FFTs.
///
/// Agrees exactly with [`crate::correlation::full_spectrum`]; fails with
/// [`Error::Numerical`] if any component lands more than
/// [`ROUNDING_THRESHOLD`] from an integer.
pub fn fft_autocorr_all<P: Periodic + Sync + ?Sized>(x: &P, side: Side) -> Result<CorrelationSpectrum> {
    let dims = x.dims().to_vec();
    let n = x.len();

    let forward: Vec<Vec<C64>> = (0..4)
        .into_par_iter()
        .map(|axis| {
            let mut buf: Vec<C64> = x
                .elems()
                .iter()
                .map(|u| {
                    let v = if u.axis().index() == axis { u.sign() as f64 } else { 0.0 };
                    C64::new(v, 0.0)
                })
                .collect();
            fft_nd(&mut buf, &dims, FftDirection::Forward);
            buf
        })
        .collect();

    let components: Vec<Vec<C64>> = (0..4)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![C64::default(); n];
            for a in 0..4 {
                let b = a ^ c;
                let coef = pair_coefficient(side, a, b);
                for ((out, fa), fb) in acc.iter_mut().zip(&forward[a]).zip(&forward[b]) {
                    *out += fa.conj() * fb * coef;
                }
            }
            fft_nd(&mut acc, &dims, FftDirection::Inverse);
            acc
        })
        .collect();

    let scale = 1.0 / n as f64;
    let mut values = Vec::with_capacity(n);
    for flat in 0..n {
        let mut q = [0i64; 4];
        for (c, comp) in components.iter().enumerate() {
            let v = comp[flat].re * scale;
            let r = v.round();
            let deviation = (v - r).abs();
            if deviation > ROUNDING_THRESHOLD || !v.is_finite() {
                return Err(Error::Numerical { value: v, deviation });
            }
            q[c] = r as i64;
        }
        values.push(LipschitzQuat::from_components(q));
    }
    Ok(CorrelationSpectrum::from_values(dims, side, values))
}
