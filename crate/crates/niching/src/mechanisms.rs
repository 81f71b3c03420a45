//! One-generation step functions for each survivor-selection mechanism.
//!
//! Every step follows the same (mu+1) skeleton: pick a parent uniformly at
//! random, create one offspring by standard bit mutation, evaluate it once,
//! then let the mechanism decide whether (and whom) the offspring replaces.
//! The population size is left unchanged by every step.
//!
//! Mechanisms:
//!
//! * **Probabilistic crowding** — offspring `y` competes against its parent
//!   `x` and survives with probability `f(y) / (f(x) + f(y))`.
//! * **Restricted tournament selection (RTS)** — `w` members are sampled
//!   uniformly *with replacement* into a transient pool; the offspring
//!   competes against the pool entry closest to it (ties broken uniformly at
//!   random among tying entries) and replaces it iff not worse.
//! * **Deterministic crowding** — offspring replaces its parent iff not worse.
//! * **Plain replace-worst** — offspring replaces a uniformly chosen
//!   minimum-fitness member iff not worse than the minimum.

use rand::Rng;

use crate::genome::{
    hamming_distance, phenotypic_distance, standard_bit_mutation, Fitness, FitnessFn, Genome,
};
use crate::population::Population;
use crate::rng::RandomStream;

/// Distance metric for RTS pool comparison.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DistanceMetric {
    /// Hamming distance over bit positions.
    Genotypic,
    /// Absolute difference of ones-counts.
    Phenotypic,
}

impl DistanceMetric {
    pub fn measure(self, a: &Genome, b: &Genome) -> usize {
        match self {
            DistanceMetric::Genotypic => hamming_distance(a, b),
            DistanceMetric::Phenotypic => phenotypic_distance(a, b),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DistanceMetric::Genotypic => "genotypic",
            DistanceMetric::Phenotypic => "phenotypic",
        }
    }
}

/// Which survivor-selection rule a step applies, with its parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MechanismSpec {
    ProbabilisticCrowding,
    RestrictedTournament {
        /// Pool size `w >= 1`.
        window: usize,
        distance: DistanceMetric,
    },
    DeterministicCrowding,
    PlainReplaceWorst,
}

impl MechanismSpec {
    /// Runs one generation of the configured mechanism.
    pub fn step(
        &self,
        pop: &mut Population,
        f: FitnessFn,
        rng: &mut RandomStream,
    ) -> StepOutcome {
        match *self {
            MechanismSpec::ProbabilisticCrowding => probabilistic_crowding_step(pop, f, rng),
            MechanismSpec::RestrictedTournament { window, distance } => {
                rts_step(pop, f, window, distance, rng)
            }
            MechanismSpec::DeterministicCrowding => deterministic_crowding_step(pop, f, rng),
            MechanismSpec::PlainReplaceWorst => plain_replace_worst_step(pop, f, rng),
        }
    }

    pub fn window(&self) -> Option<usize> {
        match *self {
            MechanismSpec::RestrictedTournament { window, .. } => Some(window),
            _ => None,
        }
    }

    pub fn distance(&self) -> Option<DistanceMetric> {
        match *self {
            MechanismSpec::RestrictedTournament { distance, .. } => Some(distance),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MechanismSpec::ProbabilisticCrowding => "pc",
            MechanismSpec::RestrictedTournament { .. } => "rts",
            MechanismSpec::DeterministicCrowding => "dc",
            MechanismSpec::PlainReplaceWorst => "plain",
        }
    }
}

/// Per-step observability: what one generation did.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepOutcome {
    /// Index of the uniformly selected parent.
    pub parent_index: usize,
    /// The offspring created this generation (whether or not it survived).
    pub offspring: Genome,
    /// The offspring's fitness; the one evaluation this step consumed.
    pub offspring_fitness: Fitness,
    /// True iff the offspring entered the population.
    pub offspring_accepted: bool,
    /// The replaced slot; present iff `offspring_accepted`.
    pub replaced_index: Option<usize>,
}

impl StepOutcome {
    fn rejected(parent_index: usize, offspring: Genome, offspring_fitness: Fitness) -> Self {
        StepOutcome {
            parent_index,
            offspring,
            offspring_fitness,
            offspring_accepted: false,
            replaced_index: None,
        }
    }

    fn accepted(
        parent_index: usize,
        offspring: Genome,
        offspring_fitness: Fitness,
        replaced_index: usize,
    ) -> Self {
        StepOutcome {
            parent_index,
            offspring,
            offspring_fitness,
            offspring_accepted: true,
            replaced_index: Some(replaced_index),
        }
    }
}

/// Probability that the offspring survives under probabilistic crowding.
///
/// The degenerate case `f(x) = f(y) = 0` (reachable only on OneMax with an
/// all-zero parent and offspring) extends the symmetric-ratio limit: accept
/// with probability 1/2.
pub(crate) fn pc_acceptance_probability(fx: Fitness, fy: Fitness) -> f64 {
    let sum = fx.value() + fy.value();
    if sum == 0 {
        0.5
    } else {
        fy.as_f64() / sum as f64
    }
}

/// One generation of the (mu+1) EA with probabilistic crowding.
///
/// The offspring competes only against its own parent, so lineages never
/// interact: all slots other than the parent's are untouched.
pub fn probabilistic_crowding_step(
    pop: &mut Population,
    f: FitnessFn,
    rng: &mut RandomStream,
) -> StepOutcome {
    let parent_index = rng.gen_range(0..pop.size());
    let parent = pop.member(parent_index);
    let fx = parent.fitness();
    let y = standard_bit_mutation(parent.genome(), rng);
    let fy = f.eval(&y);
    let accept = rng.gen::<f64>() < pc_acceptance_probability(fx, fy);
    if accept {
        pop.replace(parent_index, y.clone(), fy);
        StepOutcome::accepted(parent_index, y, fy, parent_index)
    } else {
        StepOutcome::rejected(parent_index, y, fy)
    }
}

/// One generation of the (mu+1) EA with restricted tournament selection.
///
/// `window` members are sampled uniformly with replacement (the parent is not
/// forced into the pool). The offspring replaces the sampled occurrence
/// closest to it — ties broken uniformly among tying occurrences — iff its
/// fitness is at least that member's.
pub fn rts_step(
    pop: &mut Population,
    f: FitnessFn,
    window: usize,
    distance: DistanceMetric,
    rng: &mut RandomStream,
) -> StepOutcome {
    assert!(window >= 1, "RTS window size must be positive");
    let mu = pop.size();
    let parent_index = rng.gen_range(0..mu);
    let y = standard_bit_mutation(pop.member(parent_index).genome(), rng);
    let fy = f.eval(&y);

    let pool: Vec<usize> = (0..window).map(|_| rng.gen_range(0..mu)).collect();
    let target = rts_closest_in_pool(pop, &y, distance, &pool, rng);

    if fy >= pop.member(target).fitness() {
        pop.replace(target, y.clone(), fy);
        StepOutcome::accepted(parent_index, y, fy, target)
    } else {
        StepOutcome::rejected(parent_index, y, fy)
    }
}

/// Picks the pool entry of minimal distance to `y`, breaking ties uniformly
/// at random among tying entries (duplicate indices count once per
/// occurrence). Returns the chosen population index.
fn rts_closest_in_pool(
    pop: &Population,
    y: &Genome,
    distance: DistanceMetric,
    pool: &[usize],
    rng: &mut RandomStream,
) -> usize {
    assert!(!pool.is_empty());
    let mu = pop.size();
    // For pools larger than the population the per-member distances are
    // precomputed; otherwise they are computed per occurrence.
    let dists: Vec<usize> = if pool.len() >= mu {
        let table: Vec<usize> = (0..mu)
            .map(|i| distance.measure(y, pop.member(i).genome()))
            .collect();
        pool.iter().map(|&i| table[i]).collect()
    } else {
        pool.iter()
            .map(|&i| distance.measure(y, pop.member(i).genome()))
            .collect()
    };

    let best = *dists.iter().min().expect("non-empty pool");
    let ties = dists.iter().filter(|&&d| d == best).count();
    // One uniform draw over the tying occurrences.
    let mut pick = rng.gen_range(0..ties);
    for (&idx, &d) in pool.iter().zip(&dists) {
        if d == best {
            if pick == 0 {
                return idx;
            }
            pick -= 1;
        }
    }
    unreachable!("tie pick must land on a pool entry")
}

/// One generation of the (mu+1) EA with deterministic crowding: the offspring
/// replaces its parent iff not worse.
pub fn deterministic_crowding_step(
    pop: &mut Population,
    f: FitnessFn,
    rng: &mut RandomStream,
) -> StepOutcome {
    let parent_index = rng.gen_range(0..pop.size());
    let parent = pop.member(parent_index);
    let fx = parent.fitness();
    let y = standard_bit_mutation(parent.genome(), rng);
    let fy = f.eval(&y);
    if fy >= fx {
        pop.replace(parent_index, y.clone(), fy);
        StepOutcome::accepted(parent_index, y, fy, parent_index)
    } else {
        StepOutcome::rejected(parent_index, y, fy)
    }
}

/// One generation of the plain (mu+1) EA: the offspring replaces a uniformly
/// chosen minimum-fitness member iff not worse than the minimum.
pub fn plain_replace_worst_step(
    pop: &mut Population,
    f: FitnessFn,
    rng: &mut RandomStream,
) -> StepOutcome {
    let mu = pop.size();
    let parent_index = rng.gen_range(0..mu);
    let y = standard_bit_mutation(pop.member(parent_index).genome(), rng);
    let fy = f.eval(&y);

    let min = pop.min_fitness();
    if fy < min {
        return StepOutcome::rejected(parent_index, y, fy);
    }
    // Uniform choice among minimum-fitness members via reservoir pick.
    let mut chosen = 0;
    let mut ties = 0u64;
    for i in 0..mu {
        if pop.member(i).fitness() == min {
            ties += 1;
            if rng.gen_range(0..ties) == 0 {
                chosen = i;
            }
        }
    }
    pop.replace(chosen, y.clone(), fy);
    StepOutcome::accepted(parent_index, y, fy, chosen)
}
