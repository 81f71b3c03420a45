//! Populations: fixed-size multisets of genomes with cached fitness values.

use crate::genome::{Fitness, FitnessFn, Genome};
use crate::rng::RandomStream;

/// One population slot: a genome plus its cached fitness.
///
/// The cached value always equals re-evaluating the run's fitness function on
/// the genome; members are only created or overwritten together with a fresh
/// evaluation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Member {
    genome: Genome,
    fitness: Fitness,
}

impl Member {
    pub fn genome(&self) -> &Genome {
        &self.genome
    }

    pub fn fitness(&self) -> Fitness {
        self.fitness
    }
}

/// An ordered multiset of exactly `mu` members. Size never changes after
/// construction; survivor selection replaces one member at a time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Population {
    members: Vec<Member>,
}

impl Population {
    /// `mu` genomes of length `n` drawn uniformly at random, each evaluated
    /// once under `f` (the `mu` initialization evaluations).
    pub fn random(n: usize, mu: usize, f: FitnessFn, rng: &mut RandomStream) -> Self {
        assert!(mu >= 1, "population size must be positive");
        let members = (0..mu)
            .map(|_| {
                let genome = Genome::random(n, rng);
                let fitness = f.eval(&genome);
                Member { genome, fitness }
            })
            .collect();
        Population { members }
    }

    /// Population over the given genomes, evaluating each under `f`.
    /// All genomes must share one length.
    pub fn from_genomes(genomes: Vec<Genome>, f: FitnessFn) -> Self {
        assert!(!genomes.is_empty(), "population size must be positive");
        let n = genomes[0].len();
        let members = genomes
            .into_iter()
            .map(|genome| {
                assert_eq!(genome.len(), n, "mixed genome lengths in population");
                let fitness = f.eval(&genome);
                Member { genome, fitness }
            })
            .collect();
        Population { members }
    }

    /// Population size `mu`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Genome length `n`.
    pub fn genome_len(&self) -> usize {
        self.members[0].genome.len()
    }

    pub fn member(&self, index: usize) -> &Member {
        &self.members[index]
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Overwrites slot `index` with `(genome, fitness)` and returns the
    /// evicted member. The caller supplies the fitness it already computed
    /// for the offspring, keeping one evaluation per offspring.
    pub fn replace(&mut self, index: usize, genome: Genome, fitness: Fitness) -> Member {
        assert_eq!(genome.len(), self.genome_len(), "genome length mismatch");
        std::mem::replace(&mut self.members[index], Member { genome, fitness })
    }

    pub fn best_fitness(&self) -> Fitness {
        self.members.iter().map(Member::fitness).max().unwrap()
    }

    pub fn min_fitness(&self) -> Fitness {
        self.members.iter().map(Member::fitness).min().unwrap()
    }

    /// True iff some member is the literal genome `0^n` (resp. `1^n`).
    pub fn contains_zero_optimum(&self) -> bool {
        self.members.iter().any(|m| m.genome.is_all_zeros())
    }

    pub fn contains_one_optimum(&self) -> bool {
        self.members.iter().any(|m| m.genome.is_all_ones())
    }
}
