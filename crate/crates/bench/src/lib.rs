//! Fixtures shared by the benchmarks in `benches/`.

use stabletype::{parse_descriptor, FiniteGroup};

/// Non-isomorphic groups of order 24 with equivalent stable types at 2 and 3.
pub fn minami_pair() -> (FiniteGroup, FiniteGroup) {
    (group("Q12 x C2"), group("D6 x C4"))
}

pub fn group(desc: &str) -> FiniteGroup {
    parse_descriptor(desc).expect("fixture descriptor parses")
}
