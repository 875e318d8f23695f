//! Experiment harness: synthetic road networks, reproducible scenario
//! generation, precision/recall evaluation against a baseline solver, and
//! parameter sweeps emitting CSV records.
//!
//! Everything is driven by explicit 64-bit seeds through a self-contained
//! generator, so equal seeds give byte-identical artifacts across runs.

pub mod evaluate;
pub mod grid;
pub mod instances;
pub mod rng;
pub mod scenario;
pub mod sweep;

pub use evaluate::{evaluate, Evaluation};
pub use grid::{grid_network, GridConfig};
pub use rng::Rng;
pub use scenario::{gen_scenario, RewardDist, Scenario, ScenarioConfig, ScenarioError};
pub use sweep::{run_sweep, EvalRecord, SweepOutcome, SweepSpec, CSV_HEADER};
