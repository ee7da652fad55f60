//! Exact disk single Hurwitz numbers.

pub mod checks;
pub mod classical;
pub mod correlators;
pub mod engine;
pub mod error;
pub mod monomial;
pub mod printed;
pub mod rational;
pub mod report;
pub mod series;

use std::collections::BTreeMap;

pub use error::{Error, ParseError, Result};
pub use monomial::{BoundaryMonomial, Convention, DotWeight, Family, Generator};
pub use rational::Rational;

/// Values indexed by monomial; absent entries read as zero.
pub type Layer = BTreeMap<BoundaryMonomial, Rational>;
