//! A niching laboratory for the (mu+1) evolutionary algorithm on OneMax and
//! TwoMax.
//!
//! The crate provides:
//!
//! * [`genome`] — packed bitstring genomes, the OneMax/TwoMax fitness
//!   functions, genotypic and phenotypic distances, and standard bit
//!   mutation;
//! * [`mechanisms`] — one-generation survivor-selection steps: probabilistic
//!   crowding, restricted tournament selection, deterministic crowding, and
//!   plain replace-worst;
//! * [`oracle`] — exact drift computations, Monte-Carlo bound checks, and the
//!   closed-form success/budget bounds, each with an independent
//!   cross-check route;
//! * [`experiments`] — deterministic, parallel run/sweep/study drivers with
//!   success-or-budget stopping;
//! * [`results`] — a self-describing tabular results format plus plot-ready
//!   exports;
//! * [`verify`] — the acceptance suite, one pass/fail report per criterion.
//!
//! Everything stochastic draws from [`rng::RandomStream`]; a master seed and
//! a run index fully determine every run, bit for bit.

pub mod experiments;
pub mod genome;
pub mod mechanisms;
pub mod oracle;
pub mod population;
pub mod results;
pub mod rng;
pub mod verify;

pub use experiments::{
    best_fitness_study, run_single, run_sweep, BoxplotStats, CompletedRun, FitnessStudy, Outcome,
    RunConfig, RunRecord, RunResult, SweepOutput, SweepSummary, TracePolicy,
};
pub use genome::{
    hamming_distance, onemax, phenotypic_distance, standard_bit_mutation, twomax, Fitness,
    FitnessFn, Genome,
};
pub use mechanisms::{DistanceMetric, MechanismSpec, StepOutcome};
pub use oracle::{BoundReport, DriftTable, LogBase, Verdict};
pub use population::{Member, Population};
pub use rng::RandomStream;
