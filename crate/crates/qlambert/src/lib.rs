//! qlambert: an exact-arithmetic engine for truncated q-series.
//!
//! The crate builds Lambert-type series families (single sums L, the
//! bilateral sum L*, the ordered double sum A(x, y, z, w), hyperbola-bounded
//! double sums, weighted sums, and q-shifted factorials) as exact truncated
//! power series over arbitrary-precision rationals, and mechanically verifies
//! a shipped catalog of identities between them by coefficient comparison
//! under randomized rational parameter assignments.
//!
//! Everything is generic over the scalar ring, so replacing [`scalar::Rational`]
//! with [`scalar::DualRational`] differentiates a whole construction with
//! respect to one designated parameter.
//!
//! Start with the runnable examples (`cargo run --example expand_series`) or
//! the `qlambert` binary (`qlambert verify --all`).

pub mod builders;
pub mod catalog;
pub mod dsl;
pub mod error;
pub mod group;
pub mod numtheory;
pub mod param;
pub mod report;
pub mod scalar;
pub mod series;
pub mod verify;

pub use builders::{
    build_a, build_bilinear, build_l, build_lstar, build_ordered_double, build_poch,
    build_special, build_weighted_l, BilinearSpec, OrderedDoubleSpec, PochOrder, Special,
};
pub use error::{Error, Result};
pub use param::{Param, WeightPoly};
pub use scalar::{DualRational, Rational, Scalar};
pub use series::QSeries;
