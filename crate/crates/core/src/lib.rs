//! Perfect periodic autocorrelation sequences and arrays over the simple unit
//! quaternions `{±1, ±i, ±j, ±k}`.
//!
//! * [`quat`]: exact group and integer-quaternion arithmetic.
//! * [`correlation`] and [`fft`]: left/right periodic autocorrelation, naive
//!   and FFT-accelerated.
//! * [`constructions`]: deterministic generators for the known families.
//! * [`search`]: exhaustive, template and random polynomial searches.
//! * [`catalog`]: the `.qseq` / `.qarr` text formats and the bundled fixtures.

pub mod array;
pub mod catalog;
pub mod constructions;
pub mod correlation;
pub mod error;
pub mod fft;
pub mod quat;
pub mod search;

pub use array::{flatten_row_major, FloatQuatSequence, Periodic, QuatArray, QuatSequence, Side};
pub use correlation::{
    array_autocorr, autocorr, float_autocorr, full_spectrum, is_perfect, is_perfect_both,
    left_autocorr, right_autocorr, zcz, CorrelationSpectrum, SpectrumOptions,
};
pub use error::{Error, Result};
pub use fft::fft_autocorr_all;
pub use quat::{
    embed, lemma1_sum, quat_add, quat_conj, quat_mul, unit_conj, unit_mul, unit_pow, Axis,
    FloatQuat, ImagAxis, LipschitzQuat, UnitQuat,
};
pub use constructions::{
    construct_2d, construct_4d_iii, construct_4d_iv, construct_aop_array, construct_seq_2n,
    coprime_product, template_sequence, ConstructionName, ProductOrder, TemplateSpec,
};
pub use catalog::{builtin_catalog, verify_catalog, CatalogEntry, CatalogReport, Payload};
pub use search::{
    aop_check, aop_random_search, exhaustive_search, template_search, Hit, PolynomialIndexSpec,
    RunConfig, SearchReport,
};
