//! Shared inputs for the criterion benchmarks.

use uwrt_core::exactalg::{RootSpec, Theory};

/// The roots the kernels are timed at, smallest first.
pub fn bench_roots() -> Vec<RootSpec> {
    [(7, Theory::SO3), (11, Theory::SO3), (8, Theory::SU2), (15, Theory::SU2)]
        .into_iter()
        .map(|(r, t)| RootSpec::new(r, 1, t).expect("valid root"))
        .collect()
}
