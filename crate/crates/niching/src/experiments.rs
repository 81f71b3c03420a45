//! The experiment harness: configured runs with success/failure outcomes,
//! parameter sweeps, best-fitness studies, deterministic seeding.
//!
//! A run initializes a uniform population, iterates the configured
//! mechanism's one-generation step, and stops at the first generation where
//! the population contains both literal optima `0^n` and `1^n` (Success) or
//! when the generation budget is exhausted (Failure). The default budget is
//! `ceil(10 mu n ln n)` generations. One generation consumes exactly one
//! fitness evaluation (the offspring); the `mu` initialization evaluations
//! are reported separately.
//!
//! Determinism: `(master_seed, run_index, config)` fully determine a run.
//! Sweeps may execute runs in parallel; each run owns its substream, and
//! aggregation follows a fixed (grid point, run index) order, so worker count
//! never affects results.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use thiserror::Error;

use crate::genome::{Fitness, FitnessFn};
use crate::mechanisms::MechanismSpec;
use crate::population::Population;
use crate::rng::RandomStream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("genome length must be at least 1")]
    InvalidLength,
    #[error("population size must be at least 1")]
    InvalidPopulationSize,
    #[error("RTS window size must be at least 1")]
    InvalidWindow,
    #[error("generation budget must be at least 1")]
    InvalidBudget,
}

/// What a run records along the way.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum TracePolicy {
    /// No trace.
    None,
    /// Best fitness overall and per branch, thinned to at most ~10^4 sample
    /// points per run (every `max(1, budget / 10^4)` generations).
    #[default]
    BestFitnessPerBranch,
    /// Best fitness overall and per branch at every generation. Only
    /// sensible for small budgets.
    Full,
}

impl TracePolicy {
    pub fn label(self) -> &'static str {
        match self {
            TracePolicy::None => "none",
            TracePolicy::BestFitnessPerBranch => "branch",
            TracePolicy::Full => "full",
        }
    }
}

impl std::str::FromStr for TracePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(TracePolicy::None),
            "branch" => Ok(TracePolicy::BestFitnessPerBranch),
            "full" => Ok(TracePolicy::Full),
            other => Err(format!("unknown trace policy {:?}", other)),
        }
    }
}

/// Full parameterization of one run.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RunConfig {
    n: usize,
    mu: usize,
    mechanism: MechanismSpec,
    fitness: FitnessFn,
    budget_generations: u64,
    master_seed: u64,
    run_index: u64,
    trace_policy: TracePolicy,
}

impl RunConfig {
    /// A validated config with the default budget `ceil(10 mu n ln n)`,
    /// run index 0 and the default trace policy.
    pub fn new(
        n: usize,
        mu: usize,
        mechanism: MechanismSpec,
        fitness: FitnessFn,
        master_seed: u64,
    ) -> Result<Self, ConfigError> {
        if n == 0 {
            return Err(ConfigError::InvalidLength);
        }
        if mu == 0 {
            return Err(ConfigError::InvalidPopulationSize);
        }
        if matches!(mechanism, MechanismSpec::RestrictedTournament { window: 0, .. }) {
            return Err(ConfigError::InvalidWindow);
        }
        Ok(RunConfig {
            n,
            mu,
            mechanism,
            fitness,
            budget_generations: Self::default_budget(n, mu),
            master_seed,
            run_index: 0,
            trace_policy: TracePolicy::default(),
        })
    }

    /// The standard failure budget: `ceil(10 mu n ln n)` generations
    /// (natural log), and at least 1.
    pub fn default_budget(n: usize, mu: usize) -> u64 {
        let b = (10.0 * mu as f64 * n as f64 * (n as f64).ln()).ceil();
        (b as u64).max(1)
    }

    pub fn with_budget(mut self, budget_generations: u64) -> Result<Self, ConfigError> {
        if budget_generations == 0 {
            return Err(ConfigError::InvalidBudget);
        }
        self.budget_generations = budget_generations;
        Ok(self)
    }

    pub fn with_run_index(mut self, run_index: u64) -> Self {
        self.run_index = run_index;
        self
    }

    pub fn with_trace_policy(mut self, trace_policy: TracePolicy) -> Self {
        self.trace_policy = trace_policy;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn mechanism(&self) -> MechanismSpec {
        self.mechanism
    }

    pub fn fitness(&self) -> FitnessFn {
        self.fitness
    }

    pub fn budget_generations(&self) -> u64 {
        self.budget_generations
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn run_index(&self) -> u64 {
        self.run_index
    }

    pub fn trace_policy(&self) -> TracePolicy {
        self.trace_policy
    }

    /// Stable 64-bit FNV-1a digest of every config field, hex-encoded.
    /// Identifies the config in persisted records.
    pub fn digest(&self) -> String {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        eat(&(self.n as u64).to_le_bytes());
        eat(&(self.mu as u64).to_le_bytes());
        eat(self.mechanism.label().as_bytes());
        eat(&(self.mechanism.window().unwrap_or(0) as u64).to_le_bytes());
        eat(self.mechanism.distance().map_or("-", |d| d.label()).as_bytes());
        eat(self.fitness.label().as_bytes());
        eat(&self.budget_generations.to_le_bytes());
        eat(&self.master_seed.to_le_bytes());
        eat(&self.run_index.to_le_bytes());
        eat(self.trace_policy.label().as_bytes());
        format!("{:016x}", h)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Success,
    Failure,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
        }
    }
}

impl std::str::FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "success" => Ok(Outcome::Success),
            "failure" => Ok(Outcome::Failure),
            other => Err(format!("unknown outcome {:?}", other)),
        }
    }
}

/// Outcome record of one run. This is the unit persisted to results files.
#[derive(Clone, PartialEq, Debug)]
pub struct RunResult {
    /// Success iff both optima were present at termination.
    pub outcome: Outcome,
    pub generations_used: u64,
    /// Offspring evaluations: exactly one per generation.
    pub evaluations_used: u64,
    /// The `mu` initialization evaluations, not charged to the budget.
    pub init_evaluations: u64,
    /// Best fitness reached at any point during the run (including
    /// initialization).
    pub best_fitness: Fitness,
    /// `best_fitness / n`; lies in [0.5, 1.0] for TwoMax.
    pub best_normalized_fitness: f64,
    pub found_zero_opt: bool,
    pub found_one_opt: bool,
    pub config_digest: String,
}

/// One sampled trace point: best fitness overall and per branch. Branch
/// membership is by ones-count (below `n/2`: zero-branch, above: one-branch,
/// exactly `n/2`: neither).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TracePoint {
    pub generation: u64,
    pub best: Fitness,
    pub best_zero_branch: Option<Fitness>,
    pub best_one_branch: Option<Fitness>,
}

/// Everything a finished run can hand back: the persisted record, the
/// sampled trace, and the final population for inspection.
#[derive(Clone, PartialEq, Debug)]
pub struct CompletedRun {
    pub result: RunResult,
    pub trace: Vec<TracePoint>,
    pub final_population: Population,
}

/// Executes one run as configured. Deterministic in the config.
pub fn run_single(cfg: &RunConfig) -> CompletedRun {
    let n = cfg.n;
    let mut rng = RandomStream::substream(cfg.master_seed, cfg.run_index);
    let mut pop = Population::random(n, cfg.mu, cfg.fitness, &mut rng);

    // Ones-count mirror: supports O(1) optimum bookkeeping per generation
    // and branch-best scans at trace points.
    let mut ones: Vec<usize> = pop.members().iter().map(|m| m.genome().ones_count()).collect();
    let mut zero_opts = ones.iter().filter(|&&o| o == 0).count();
    let mut one_opts = ones.iter().filter(|&&o| o == n).count();
    let mut best = pop.best_fitness();

    let trace_interval = match cfg.trace_policy {
        TracePolicy::None => 0,
        TracePolicy::BestFitnessPerBranch => (cfg.budget_generations / 10_000).max(1),
        TracePolicy::Full => 1,
    };
    let mut trace = Vec::new();
    let record = |trace: &mut Vec<TracePoint>,
                  generation: u64,
                  pop: &Population,
                  ones: &[usize]| {
        let mut point = TracePoint {
            generation,
            best: pop.min_fitness(),
            best_zero_branch: None,
            best_one_branch: None,
        };
        for (i, m) in pop.members().iter().enumerate() {
            let f = m.fitness();
            point.best = point.best.max(f);
            if 2 * ones[i] < n {
                point.best_zero_branch = point.best_zero_branch.map_or(Some(f), |b| Some(b.max(f)));
            } else if 2 * ones[i] > n {
                point.best_one_branch = point.best_one_branch.map_or(Some(f), |b| Some(b.max(f)));
            }
        }
        trace.push(point);
    };
    if trace_interval > 0 {
        record(&mut trace, 0, &pop, &ones);
    }

    let mut generations = 0u64;
    let mut success = zero_opts > 0 && one_opts > 0;
    while !success && generations < cfg.budget_generations {
        let out = cfg.mechanism.step(&mut pop, cfg.fitness, &mut rng);
        generations += 1;
        if let Some(i) = out.replaced_index {
            match ones[i] {
                0 => zero_opts -= 1,
                o if o == n => one_opts -= 1,
                _ => {}
            }
            let fresh = out.offspring.ones_count();
            ones[i] = fresh;
            if fresh == 0 {
                zero_opts += 1;
            } else if fresh == n {
                one_opts += 1;
            }
            best = best.max(out.offspring_fitness);
        }
        success = zero_opts > 0 && one_opts > 0;
        if trace_interval > 0 && (generations.is_multiple_of(trace_interval) || success) {
            record(&mut trace, generations, &pop, &ones);
        }
    }

    let result = RunResult {
        outcome: if success { Outcome::Success } else { Outcome::Failure },
        generations_used: generations,
        evaluations_used: generations,
        init_evaluations: cfg.mu as u64,
        best_fitness: best,
        best_normalized_fitness: best.as_f64() / n as f64,
        found_zero_opt: zero_opts > 0,
        found_one_opt: one_opts > 0,
        config_digest: cfg.digest(),
    };
    CompletedRun {
        result,
        trace,
        final_population: pop,
    }
}

/// A persisted (config, result) pair.
#[derive(Clone, PartialEq, Debug)]
pub struct RunRecord {
    pub config: RunConfig,
    pub result: RunResult,
}

/// Aggregate over the runs of one grid point.
#[derive(Clone, PartialEq, Debug)]
pub struct SweepSummary {
    pub mechanism: MechanismSpec,
    pub n: usize,
    pub mu: usize,
    pub fitness: FitnessFn,
    pub runs: u32,
    pub successes: u32,
    pub mean_generations_on_success: Option<f64>,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct SweepOutput {
    /// One summary per grid point, in template order.
    pub summaries: Vec<SweepSummary>,
    /// Every per-run record, ordered by (grid point, run index).
    pub records: Vec<RunRecord>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    /// A run panicked. The sweep is aborted; everything that completed is
    /// carried along so nothing is silently dropped.
    #[error("run panicked at grid point {point}, run index {run_index}: {message}")]
    RunPanicked {
        point: usize,
        run_index: u64,
        message: String,
        partial: Box<SweepOutput>,
    },
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("failed to build worker pool")
            .install(f),
        None => f(),
    }
}

/// Executes `runs_per_point` independent runs of every template (run indices
/// `0..runs_per_point`, substreams derived per run) and aggregates successes.
///
/// `workers` caps the number of parallel runs; `None` uses the global pool.
/// Results are identical for any worker count.
pub fn run_sweep(
    templates: &[RunConfig],
    runs_per_point: u32,
    workers: Option<usize>,
) -> Result<SweepOutput, SweepError> {
    let jobs: Vec<(usize, u64)> = (0..templates.len())
        .flat_map(|p| (0..u64::from(runs_per_point)).map(move |r| (p, r)))
        .collect();

    let outcomes: Vec<Result<RunResult, String>> = with_pool(workers, || {
        jobs.par_iter()
            .map(|&(p, r)| {
                let cfg = templates[p].clone().with_run_index(r);
                catch_unwind(AssertUnwindSafe(|| run_single(&cfg).result)).map_err(|payload| {
                    payload
                        .downcast_ref::<&str>()
                        .map(|s| s.to_string())
                        .or_else(|| payload.downcast_ref::<String>().cloned())
                        .unwrap_or_else(|| "non-string panic payload".to_string())
                })
            })
            .collect()
    });

    let mut records = Vec::with_capacity(jobs.len());
    let mut failure: Option<(usize, u64, String)> = None;
    for (&(p, r), outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Ok(result) => records.push(RunRecord {
                config: templates[p].clone().with_run_index(r),
                result,
            }),
            Err(message) => {
                failure.get_or_insert((p, r, message));
            }
        }
    }
    let summaries = summarize(templates, &records);
    let output = SweepOutput { summaries, records };
    match failure {
        None => Ok(output),
        Some((point, run_index, message)) => Err(SweepError::RunPanicked {
            point,
            run_index,
            message,
            partial: Box::new(output),
        }),
    }
}

/// Per-point aggregation of run records; also used to re-derive summaries
/// from persisted records.
pub fn summarize(templates: &[RunConfig], records: &[RunRecord]) -> Vec<SweepSummary> {
    templates
        .iter()
        .map(|t| {
            let point: Vec<&RunRecord> = records
                .iter()
                .filter(|r| {
                    r.config.n == t.n
                        && r.config.mu == t.mu
                        && r.config.mechanism == t.mechanism
                        && r.config.fitness == t.fitness
                        && r.config.master_seed == t.master_seed
                })
                .collect();
            let successes: Vec<&&RunRecord> = point
                .iter()
                .filter(|r| r.result.outcome == Outcome::Success)
                .collect();
            let mean = if successes.is_empty() {
                None
            } else {
                Some(
                    successes
                        .iter()
                        .map(|r| r.result.generations_used as f64)
                        .sum::<f64>()
                        / successes.len() as f64,
                )
            };
            SweepSummary {
                mechanism: t.mechanism,
                n: t.n,
                mu: t.mu,
                fitness: t.fitness,
                runs: point.len() as u32,
                successes: successes.len() as u32,
                mean_generations_on_success: mean,
            }
        })
        .collect()
}

/// Boxplot statistics over a sample: type-7 (linear interpolation) quartiles
/// and Tukey whiskers at 1.5 IQR, clamped to the data range.
#[derive(Clone, PartialEq, Debug)]
pub struct BoxplotStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

impl BoxplotStats {
    pub fn from_samples(samples: &[f64]) -> Self {
        assert!(!samples.is_empty(), "no samples");
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
        let q1 = quantile(&sorted, 0.25);
        let median = quantile(&sorted, 0.5);
        let q3 = quantile(&sorted, 0.75);
        let iqr = q3 - q1;
        let lo_fence = q1 - 1.5 * iqr;
        let hi_fence = q3 + 1.5 * iqr;
        let whisker_low = sorted
            .iter()
            .copied()
            .find(|&v| v >= lo_fence)
            .unwrap_or(sorted[0]);
        let whisker_high = sorted
            .iter()
            .rev()
            .copied()
            .find(|&v| v <= hi_fence)
            .unwrap_or(sorted[sorted.len() - 1]);
        let outliers = sorted
            .iter()
            .copied()
            .filter(|&v| v < lo_fence || v > hi_fence)
            .collect();
        BoxplotStats {
            min: sorted[0],
            q1,
            median,
            q3,
            max: sorted[sorted.len() - 1],
            whisker_low,
            whisker_high,
            outliers,
        }
    }
}

/// Type-7 quantile on a sorted slice.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Distribution of best normalized fitness at one problem size.
#[derive(Clone, PartialEq, Debug)]
pub struct FitnessStudy {
    pub n: usize,
    /// Sorted best-normalized-fitness samples, one per run.
    pub samples: Vec<f64>,
    pub stats: BoxplotStats,
}

/// Runs the fitness-concentration study: for each `n`, `runs` independent
/// runs to the standard budget, collecting the best normalized fitness per
/// run. Each `n` gets its own derived master seed.
pub fn best_fitness_study(
    n_values: &[usize],
    mu: usize,
    mechanism: MechanismSpec,
    fitness: FitnessFn,
    runs: u32,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<Vec<FitnessStudy>, SweepError> {
    let templates: Vec<RunConfig> = n_values
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            RunConfig::new(
                n,
                mu,
                mechanism,
                fitness,
                RandomStream::derive_seed(master_seed, i as u64),
            )
            .expect("study config invalid")
            .with_trace_policy(TracePolicy::None)
        })
        .collect();
    let output = run_sweep(&templates, runs, workers)?;
    Ok(n_values
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut samples: Vec<f64> = output
                .records
                .iter()
                .skip(i * runs as usize)
                .take(runs as usize)
                .map(|r| r.result.best_normalized_fitness)
                .collect();
            samples.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
            let stats = BoxplotStats::from_samples(&samples);
            FitnessStudy { n, samples, stats }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::DistanceMetric;

    fn dc_config(n: usize, mu: usize, seed: u64) -> RunConfig {
        RunConfig::new(
            n,
            mu,
            MechanismSpec::DeterministicCrowding,
            FitnessFn::TwoMax,
            seed,
        )
        .unwrap()
    }

    #[test]
    fn default_budget_matches_ceil_formula() {
        assert_eq!(RunConfig::default_budget(100, 32), 147_366);
        assert_eq!(RunConfig::default_budget(100, 8), 36_842);
        assert_eq!(RunConfig::default_budget(1, 5), 1, "ln 1 = 0 clamps to 1");
    }

    #[test]
    fn config_validation() {
        assert_eq!(
            RunConfig::new(0, 4, MechanismSpec::ProbabilisticCrowding, FitnessFn::TwoMax, 1),
            Err(ConfigError::InvalidLength)
        );
        assert_eq!(
            RunConfig::new(4, 0, MechanismSpec::ProbabilisticCrowding, FitnessFn::TwoMax, 1),
            Err(ConfigError::InvalidPopulationSize)
        );
        let zero_window = MechanismSpec::RestrictedTournament {
            window: 0,
            distance: DistanceMetric::Genotypic,
        };
        assert_eq!(
            RunConfig::new(4, 4, zero_window, FitnessFn::TwoMax, 1),
            Err(ConfigError::InvalidWindow)
        );
        assert!(dc_config(4, 4, 1).with_budget(0).is_err());
    }

    #[test]
    fn smoke_run_finds_both_optima_quickly() {
        let cfg = dc_config(2, 4, 7);
        let run = run_single(&cfg);
        assert_eq!(run.result.outcome, Outcome::Success);
        assert!(run.final_population.contains_zero_optimum());
        assert!(run.final_population.contains_one_optimum());
        assert!(run.result.found_zero_opt && run.result.found_one_opt);
        assert!(run.result.generations_used <= cfg.budget_generations());
        assert_eq!(run.result.evaluations_used, run.result.generations_used);
        assert_eq!(run.result.init_evaluations, 4);
        assert!(run.result.best_normalized_fitness >= 0.5);
        assert!(run.result.best_normalized_fitness <= 1.0);
        assert_eq!(run.result.config_digest, cfg.digest());
    }

    #[test]
    fn success_iff_both_flags() {
        // A OneMax run can trivially contain 1^n without 0^n.
        let cfg = RunConfig::new(
            3,
            2,
            MechanismSpec::DeterministicCrowding,
            FitnessFn::OneMax,
            3,
        )
        .unwrap()
        .with_budget(200)
        .unwrap();
        let run = run_single(&cfg);
        assert_eq!(
            run.result.outcome == Outcome::Success,
            run.result.found_zero_opt && run.result.found_one_opt
        );
    }

    #[test]
    fn runs_are_deterministic_in_config() {
        let cfg = dc_config(20, 6, 99).with_budget(5000).unwrap();
        let a = run_single(&cfg);
        let b = run_single(&cfg);
        assert_eq!(a, b);
        let c = run_single(&cfg.clone().with_run_index(1));
        assert!(c != a, "distinct run indices must decorrelate runs");
    }

    #[test]
    fn elitist_mechanisms_have_non_decreasing_best_trace() {
        for (mech, seed) in [
            (MechanismSpec::DeterministicCrowding, 5u64),
            (MechanismSpec::PlainReplaceWorst, 6),
        ] {
            let cfg = RunConfig::new(12, 5, mech, FitnessFn::TwoMax, seed)
                .unwrap()
                .with_budget(2000)
                .unwrap()
                .with_trace_policy(TracePolicy::Full);
            let run = run_single(&cfg);
            for pair in run.trace.windows(2) {
                assert!(
                    pair[1].best >= pair[0].best,
                    "{:?} best fitness dropped",
                    mech
                );
            }
        }
    }

    #[test]
    fn branch_trace_is_thinned() {
        let cfg = dc_config(30, 4, 17); // budget 40829 > 10^4 points
        let run = run_single(&cfg);
        assert!(run.trace.len() <= 10_002);
        assert!(!run.trace.is_empty());
    }

    #[test]
    fn sweep_is_deterministic_and_order_independent() {
        let templates = vec![
            dc_config(14, 4, 21).with_budget(4000).unwrap(),
            dc_config(14, 8, 22).with_budget(4000).unwrap(),
        ];
        let a = run_sweep(&templates, 6, Some(1)).unwrap();
        let b = run_sweep(&templates, 6, Some(2)).unwrap();
        assert_eq!(a, b, "worker count changed sweep output");
        assert_eq!(a.summaries.len(), 2);
        assert_eq!(a.records.len(), 12);
    }

    #[test]
    fn sweep_summaries_are_rederivable_from_records() {
        let templates = vec![dc_config(10, 3, 31).with_budget(3000).unwrap()];
        let out = run_sweep(&templates, 10, None).unwrap();
        assert_eq!(summarize(&templates, &out.records), out.summaries);
        let successes = out
            .records
            .iter()
            .filter(|r| r.result.outcome == Outcome::Success)
            .count() as u32;
        assert_eq!(out.summaries[0].successes, successes);
        assert_eq!(out.summaries[0].runs, 10);
    }

    #[test]
    fn best_fitness_study_collects_sorted_normalized_samples() {
        let studies = best_fitness_study(
            &[8, 16],
            4,
            MechanismSpec::DeterministicCrowding,
            FitnessFn::TwoMax,
            8,
            55,
            None,
        )
        .unwrap();
        assert_eq!(studies.len(), 2);
        for s in &studies {
            assert_eq!(s.samples.len(), 8);
            assert!(s.samples.windows(2).all(|w| w[0] <= w[1]));
            assert!(s.samples.iter().all(|&v| (0.5..=1.0).contains(&v)));
        }
    }

    #[test]
    fn dc_control_study_reaches_both_optima_at_small_n() {
        // Control distinguishing the mechanism effect: deterministic
        // crowding at n=32 drives the median best normalized fitness to 1.0.
        let studies = best_fitness_study(
            &[32],
            32,
            MechanismSpec::DeterministicCrowding,
            FitnessFn::TwoMax,
            20,
            77,
            None,
        )
        .unwrap();
        assert_eq!(studies[0].stats.median, 1.0);
    }

    #[test]
    fn boxplot_stats_frozen_examples() {
        let s = BoxplotStats::from_samples(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(s.q1, 2.75);
        assert_eq!(s.median, 4.5);
        assert_eq!(s.q3, 6.25);
        assert_eq!(s.min, 1.0);
        assert_eq!(s.max, 8.0);
        assert!(s.outliers.is_empty());

        let o = BoxplotStats::from_samples(&[1.0, 2.0, 3.0, 4.0, 100.0]);
        assert_eq!(o.q1, 2.0);
        assert_eq!(o.q3, 4.0);
        assert_eq!(o.whisker_high, 4.0);
        assert_eq!(o.outliers, vec![100.0]);
    }

    #[test]
    fn digest_distinguishes_configs() {
        let a = dc_config(10, 4, 1);
        let b = dc_config(10, 4, 2);
        let c = a.clone().with_run_index(1);
        assert_ne!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest(), dc_config(10, 4, 1).digest());
    }
}
