//! Exact model of the probability space: `[0, 1)` with Lebesgue measure,
//! measurable sets as finite unions of rational half-open intervals, and
//! signed measures given by rational step densities.

mod measure;
mod mset;
mod rat;

pub use measure::{SignedMeasure, SimpleFunction};
pub use mset::MSet;
pub use rat::Rat;
