//! Catalog entries shipped with the crate.

use super::{parse_entry, CatalogEntry};
use crate::error::Result;

/// File name and contents of every bundled entry.
pub const BUILTIN_FILES: &[(&str, &str)] = &[
    ("search-4.qseq", include_str!("../../data/search-4.qseq")),
    ("search-6.qseq", include_str!("../../data/search-6.qseq")),
    ("search-8.qseq", include_str!("../../data/search-8.qseq")),
    ("search-10.qseq", include_str!("../../data/search-10.qseq")),
    ("search-14.qseq", include_str!("../../data/search-14.qseq")),
    ("search-16.qseq", include_str!("../../data/search-16.qseq")),
    ("template-14.qseq", include_str!("../../data/template-14.qseq")),
    ("template-18.qseq", include_str!("../../data/template-18.qseq")),
    ("template-26.qseq", include_str!("../../data/template-26.qseq")),
    ("template-30.qseq", include_str!("../../data/template-30.qseq")),
    ("template-38.qseq", include_str!("../../data/template-38.qseq")),
    ("template-42.qseq", include_str!("../../data/template-42.qseq")),
    ("template-50.qseq", include_str!("../../data/template-50.qseq")),
    ("template-54.qseq", include_str!("../../data/template-54.qseq")),
    ("template-62.qseq", include_str!("../../data/template-62.qseq")),
    ("template-74.qseq", include_str!("../../data/template-74.qseq")),
    ("template-82.qseq", include_str!("../../data/template-82.qseq")),
    ("template-90.qseq", include_str!("../../data/template-90.qseq")),
    ("template-98.qseq", include_str!("../../data/template-98.qseq")),
    ("aop-8x8.qarr", include_str!("../../data/aop-8x8.qarr")),
    ("aop-64.qseq", include_str!("../../data/aop-64.qseq")),
    ("seq2n-1.qseq", include_str!("../../data/seq2n-1.qseq")),
    ("seq2n-2.qseq", include_str!("../../data/seq2n-2.qseq")),
    ("seq2n-3.qseq", include_str!("../../data/seq2n-3.qseq")),
    ("seq2n-4.qseq", include_str!("../../data/seq2n-4.qseq")),
    ("seq2n-5.qseq", include_str!("../../data/seq2n-5.qseq")),
    ("seq2n-6.qseq", include_str!("../../data/seq2n-6.qseq")),
    ("seq2n-7.qseq", include_str!("../../data/seq2n-7.qseq")),
    ("arr2d-4.qarr", include_str!("../../data/arr2d-4.qarr")),
    ("arr4d-iii-1.qarr", include_str!("../../data/arr4d-iii-1.qarr")),
    ("example-1.qseq", include_str!("../../data/example-1.qseq")),
    ("leukhin-9.qseq", include_str!("../../data/leukhin-9.qseq")),
];

/// Parses the bundled entries in file order.
pub fn builtin_catalog() -> Result<Vec<CatalogEntry>> {
    BUILTIN_FILES.iter().map(|(_, text)| parse_entry(text)).collect()
}
