//! Exact computations on polyanalytic Fock spaces.
//!
//! Functions are polyanalytic polynomials [`PolyPoly`] with coefficients in
//! [`Scalar`], the ring of Laurent polynomials in `√m` over `ℚ`. On top of
//! that the crate provides projections onto `F^{N,m}` and its relatives, the
//! big, small and middle Hankel operators with their norm sequences and
//! boundedness classification, the minimal-norm solver for `(∂̄)^N u = f`,
//! and a quadrature oracle that re-derives the exact results in floating point.

mod combinat;
pub mod dbar;
pub mod error;
pub mod hankel;
pub mod laguerre;
pub mod oracle;
pub mod polyfock;
pub mod projection;
pub mod sampling;
pub mod scalar;

pub use combinat::{binomial, factorial};
pub use dbar::{solve_min_norm, verify_minimality, SolutionReport};
pub use error::{Error, Result};
pub use hankel::{
    classify, growth_degree, norm_sq_sequence, Classification, Growth, NormSequence, OperatorKind,
    Verdict,
};
pub use laguerre::{LaguerrePoly, MomentTriple};
pub use oracle::QuadRule;
pub use polyfock::{inner, BasisElement, BasisKind, PolyPoly};
pub use projection::SectorBasisS;
pub use scalar::{parse_rational, Scalar};
