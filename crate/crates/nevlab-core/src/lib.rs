//! Exact and numerical machinery for desk-scale second-main-theorem
//! experiments on holomorphic curves.
//!
//! The crate is organized in five layers:
//!
//! * [`algebra`] — exact scalars (rational-complex and soft floats),
//!   univariate polynomials and rational functions, homogeneous forms,
//!   and Macaulay-style degree matrices with exact rank.
//! * [`curves`] — holomorphic curves `C -> P^n(C)` with reduced
//!   representations, growth data, coefficient freezing and slowness tests
//!   for moving hypersurfaces.
//! * [`position`] — one-sided emptiness certificates for (sub)general
//!   position and the constructive general-position combinations.
//! * [`filtration`] — the combinatorial engine: quotient dimensions,
//!   filtration weights, and the explicit truncation constants.
//! * [`nevanlinna`] — characteristic, proximity and counting functionals,
//!   zero isolation (exact roots and argument principle), Wronskians,
//!   and defect estimates.
//!
//! [`harness`] wires everything into batch verification pipelines consumed
//! by the `nevlab` CLI.

pub mod algebra;
pub mod curves;
pub mod filtration;
pub mod harness;
pub mod nevanlinna;
pub mod position;

pub use algebra::{
    monomial_basis, ExactC, FixedForm, HomogeneousForm, MacaulayMatrix, MovingForm, MultiIndex,
    Rat, Scalar, UniPoly, UniRational,
};
pub use curves::{compose_with_curve, ComposedFn, Curve, ExpPoly, GrowthData, SamplePoints};
pub use filtration::{FiltrationProfile, TheoremConstants};
pub use nevanlinna::{RadiusGrid, ZeroDivisor};
pub use position::{CombinationRecipe, PositionCertificate, Verdict};
