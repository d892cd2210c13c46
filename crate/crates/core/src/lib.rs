//! Semicontinuity envelopes, measurability and integral comparison for
//! piecewise polynomial functions with countable modifications.
//!
//! All results are exact rationals or rational enclosures.

pub mod cli;
pub mod envelopes;
pub mod error;
pub mod integration;
pub mod model;
pub mod numeric;

pub use error::{Error, Result};
pub use model::{CountableModification, DenseSet, FunctionModel, PiecewiseFunction};
pub use numeric::{Enclosure, Interval, IntervalSet, Polynomial, Rational};
