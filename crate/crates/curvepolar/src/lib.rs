//! Polar varieties of real affine plane curves.
//!
//! The library builds classical polars `V' = V(Σ aᵢ ∂f/∂Xᵢ)` and reciprocal
//! polars `V'' = V(det(f,q,A))` of plane curves with exact rational
//! coefficients, solves for their real points with certified isolating boxes,
//! classifies curve singularities (ordinary multiple points vs cusps), and
//! checks per connected component whether the polar variety supplies a
//! nonsingular sample point.
//!
//! Modules, bottom up:
//! - [`poly`]: sparse exact-rational polynomials in `X0,X1,X2`, parsing,
//!   calculus, interval evaluation, resultants.
//! - [`uni`]: univariate real-root isolation (Descartes bisection over the
//!   integers), subresultant gcds, square-free parts.
//! - [`polar`]: projective points/lines, quadric polarity, polar curve
//!   constructions.
//! - [`solve`]: certified bivariate system solving via resultants.
//! - [`quadext`]: exact arithmetic in a real quadratic field `ℚ(√m)`.
//! - [`singular`]: tangent cones and singularity classification.
//! - [`topology`]: interval-subdivision component maps and coverage verdicts.
//! - [`corpus`]: the embedded example curves with their expected facts.
//! - [`report`]: the structured text report format.
//! - [`render`]: SVG output of curves, polars and witness points.

pub mod corpus;
pub mod poly;
pub mod polar;
pub mod quadext;
pub mod render;
pub mod report;
pub mod singular;
pub mod solve;
pub mod topology;
pub mod uni;

pub use poly::{Interval, Poly, PolyError, Rat};
