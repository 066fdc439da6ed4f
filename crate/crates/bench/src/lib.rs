//! Fixtures shared by the benchmarks.

use oddsphere_core::{
    catalog::instantiate, Bracelet, MaxOddCycle, NonFaceFamily, SimplicialComplex,
};

/// Maximum-odd-cycle families for every bracelet on `m` vertices.
pub fn families(m: usize) -> Vec<(NonFaceFamily, MaxOddCycle)> {
    oddsphere_core::enumerate_bracelets(m)
        .iter()
        .map(instantiate)
        .collect()
}

/// The family of the cyclic polytope boundary with `n` singleton blocks.
pub fn singleton_cycle(n: usize) -> NonFaceFamily {
    instantiate(&Bracelet::new(vec![1; n]).expect("odd length")).0
}

/// The boundary complex of `singleton_cycle(n)`.
pub fn singleton_cycle_complex(n: usize) -> SimplicialComplex {
    oddsphere_core::complex_from_nonfaces(&singleton_cycle(n))
}
