//! Exact quantum SO(3) and SU(2) invariants of lens spaces and diagonal
//! rational homology spheres.
//!
//! Every value is an element of a cyclotomic field held in canonical form,
//! so all identities are checked by exact equality. The modules build on
//! each other in this order:
//!
//! * [`exactalg`]: rationals, Laurent polynomials in `q^{1/4}`, cyclotomic fields.
//! * [`numtheory`]: Jacobi symbols, starred inverses, Dedekind sums, continued fractions.
//! * [`gauss`]: Gauss sums, the normalizers `γ_b`, one dimensional reciprocity.
//! * [`jones`]: colored Jones values of unknots and Hopf chains, cyclotomic expansion.
//! * [`wrt`]: state sums, `τ`, `τ'`, and the lens space closed forms.
//! * [`habiro`]: Habiro type elements, the Laplace transform, `Q_{b,k}`, unified invariants.
//! * [`frobenius`]: the map `q ↦ q^b` on `Z[q]/(Φ_n^k)` and the `b`-th root of `q`.
//! * [`verify`]: the verification suites used by the CLI and the acceptance tests.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exactalg;
pub mod frobenius;
pub mod gauss;
pub mod habiro;
pub mod jones;
pub mod numtheory;
pub mod verify;
pub mod wrt;

pub use error::{Error, Result};
pub use exactalg::{
    cyclotomic_poly, BRational, CycField, CycNumber, QuarterLaurent, RootSpec, RootSum, Theory,
};
pub use wrt::{LensPiece, ManifoldSpec, Piece, WrtValue};
