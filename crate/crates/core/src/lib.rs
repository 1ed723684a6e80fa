//! Additive partition entropies on finite partitions of `[0, 1)` with
//! Lebesgue measure.
//!
//! The crate is organised bottom-up:
//!
//! - [`measure_space`]: exact rationals, interval sets, step-density signed measures;
//! - [`algebras`]: finite partition algebras, join, independence, the distances `d` and `D`;
//! - [`entropies`]: Shannon, Rényi, Hartley, min/max information, variance, `L_m`, combinations;
//! - [`transport_delta`]: the swap operator `T_{V,W}` and the increments `Δ(V, W, λ)`;
//! - [`decomposition`]: recovering `m` from a black-box entropy so that `I − L_m` depends on atom measures only;
//! - [`suites`]: seeded property suites used by the CLI `verify` command.
//!
//! Independent work items (the `n²` increments of an extraction, suite
//! trials) go through [`Exec`], which uses rayon when the default
//! `parallel` feature is on.

pub mod algebras;
pub mod decomposition;
pub mod entropies;
pub mod error;
pub mod exec;
pub mod measure_space;
pub mod random;
pub mod suites;
pub mod transport_delta;

pub use algebras::{Algebra, AtomProfile, TraceAlgebra};
pub use decomposition::{
    decompose, extract_measure, grid_to_density, residual_eval, verify_atom_dependence,
    DecompositionReport, GridMeasure, ResidualEntropy, StepDensity,
};
pub use entropies::{additivity_residual, cgf, eval_entropy, information_function, EntropySpec};
pub use error::{Error, Result};
pub use exec::Exec;
pub use measure_space::{MSet, Rat, SignedMeasure, SimpleFunction};
pub use transport_delta::{
    delta, delta_checked, delta_lambda, epsilon, in_family, transport, DeltaResult, SwapPair,
};
