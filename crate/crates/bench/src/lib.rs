//! Fixtures shared by the benchmarks.

use prohecke::{ProPElt, Setup};

/// A configuration together with its basis elements up to `max_len`.
pub fn fixture(preset: &str, p: u32, max_len: usize) -> (Setup, Vec<ProPElt>) {
    let s = Setup::preset(preset, p, 1, 1).expect("preset builds");
    let basis = s.group.enumerate(max_len);
    (s, basis)
}

/// The basis elements of maximal length.
pub fn longest(s: &Setup, basis: &[ProPElt]) -> Vec<ProPElt> {
    let top = basis.iter().map(|x| s.group.length(x)).max().unwrap_or(0);
    basis
        .iter()
        .filter(|x| s.group.length(x) == top)
        .cloned()
        .collect()
}
