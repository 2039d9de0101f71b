//! Classic and balanced tie-breaking NSGA-II on pseudo-Boolean benchmarks.
//!
//! * [`domain`]: bit strings, objective vectors, the domination order, mutation.
//! * [`rng`]: the seeded random stream every run draws from.
//! * [`benchmarks`]: OneMinMax, LOTZ, OneJumpZeroJump and their many-objective forms.
//! * [`nsga2`]: non-dominated sorting, crowding distance, tie-breaking, the main loop.
//! * [`oracle`]: Pareto-front coverage and incomparable-set bounds.
//! * [`experiments`]: seeded trials, CSV sweeps, Mann–Whitney U summaries.

pub mod benchmarks;
pub mod domain;
pub mod error;
pub mod experiments;
pub mod nsga2;
pub mod oracle;
pub mod rng;

pub use benchmarks::{BenchmarkSpec, Family, ObjectiveFunction, ParetoFront};
pub use domain::{
    compare, mutate, uniform_bitstring, BitString, Dominance, Individual, ObjectiveVector,
};
pub use error::{Error, Result};
pub use nsga2::{Nsga2, TieBreak};
pub use rng::RngStream;
