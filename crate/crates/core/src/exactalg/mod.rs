//! Exact arithmetic foundation.
//!
//! * [`BRational`] and [`is_b_integral`]: rationals with a restricted set of
//!   denominator primes.
//! * [`QuarterLaurent`]: Laurent polynomials in `u = q^{1/4}`.
//! * [`qcalc`]: quantum integers, factorials, binomials, Pochhammer symbols.
//! * [`cyclotomic_poly`]: `Φ_n` by iterated exact division.
//! * [`CycNumber`]: elements of `Q(e_N)` in canonical form modulo `Φ_N`.
//! * [`RootSpec`]: a root of unity together with its fixed fourth root.

mod brational;
mod cyclopoly;
mod cycnum;
mod laurent;
pub mod linalg;
pub mod qcalc;
mod root;

pub use brational::{is_b_integral, BRational};
pub use cyclopoly::{cyclotomic_poly, cyclotomic_poly_sparse};
pub use cycnum::{CycField, CycNumber, RootSum};
pub use laurent::QuarterLaurent;
pub use root::{eval_at_root, eval_at_root_checked, RootSpec, Theory};
