//! Seeded scenario generation and the convergence and channel-count
//! experiments, with their file formats.

mod convergence;
mod output;
mod rng;
mod scenario;
mod sweep;

pub use convergence::{plateau_iteration, run_convergence};
pub use output::{
    format_real, write_atomic, write_convergence_csv, CONVERGENCE_HEADER, SWEEP_HEADER,
};
pub use rng::{mix_seed, SplitMix64, PRNG_CONTRACT};
pub use scenario::{
    gen_scenario, read_scenario, write_scenario, Provenance, ScenarioFile, ScenarioSpec,
};
pub use sweep::{run_sweep, SweepRow, SweepTable};
