//! Fixtures shared by the benchmarks in `benches/`.

use metadual_core::cover::qt_form;
use metadual_core::rootdata::build_from_code;
use metadual_core::Cover;

/// `(G, Q_t, n)` for a catalog code.
pub fn cover(code: &str, t: i64, n: u64) -> Cover {
    let rd = build_from_code(code, None).expect("catalog code");
    let q = qt_form(&rd, t).expect("integral form");
    Cover::new(rd, q, n).expect("valid cover")
}
