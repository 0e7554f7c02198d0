//! Dyadic harmonic analysis on the half-line `[0, ∞)`.
//!
//! The half-line carries the ultrametric `δ(x, y) = |I(x, y)|`, where
//! `I(x, y)` is the smallest dyadic interval containing both points. This
//! crate implements the analysis that metric supports:
//!
//! - exact arithmetic on dyadic points and intervals, the metric `δ`, and
//!   the butterfly/level-set classification of off-diagonal pairs
//!   ([`dyadic`]);
//! - Haar wavelet synthesis/analysis between sparse coefficient maps and
//!   step functions ([`haar`]);
//! - degree-zero homogeneous Haar multipliers and the associated
//!   ℓ²-valued singular-integral kernel, evaluated in exact rational
//!   arithmetic ([`multiplier`]);
//! - the dyadic fractional Laplacian, partial derivatives and gradient as
//!   Haar-diagonal operators ([`operators`]);
//! - exact nonlocal energy forms via the butterfly decomposition
//!   ([`energy`]);
//! - Lp norms, the kernel pairing identity, Monte-Carlo norm-ratio sweeps,
//!   and the property-suite runner ([`harness`]).

pub mod dyadic;
pub mod energy;
pub mod error;
pub mod haar;
pub mod harness;
pub mod multiplier;
pub mod operators;
pub mod rng;

pub use dyadic::{ButterflyClass, Delta, DyadicInterval, DyadicPoint};
pub use error::{Error, Result};
pub use haar::{HaarExpansion, StepFunction};
pub use multiplier::{CzReport, KernelVector, Multiplier};
pub use operators::{FractionalOrder, GradientField};
