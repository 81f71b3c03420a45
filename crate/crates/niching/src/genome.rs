//! Bitstring genomes, pseudo-Boolean fitness functions, distance metrics and
//! standard bit mutation.
//!
//! Genomes are stored as packed 64-bit words (bit `i` lives at word `i / 64`,
//! bit `i % 64`), which keeps mutation, fitness evaluation and Hamming
//! distances cheap for lengths up to tens of thousands of bits. Observable
//! semantics are those of a plain bit sequence.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};

use crate::rng::RandomStream;

const WORD_BITS: usize = 64;

/// A fitness value: a non-negative count of bits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fitness(usize);

impl Fitness {
    pub fn new(value: usize) -> Self {
        Fitness(value)
    }

    pub fn value(self) -> usize {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A fixed-length bitstring search point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Genome {
    words: Vec<u64>,
    len: usize,
}

impl Genome {
    /// The all-zeros genome `0^n`.
    pub fn all_zeros(n: usize) -> Self {
        assert!(n >= 1, "genome length must be positive");
        Genome {
            words: vec![0; n.div_ceil(WORD_BITS)],
            len: n,
        }
    }

    /// The all-ones genome `1^n`.
    pub fn all_ones(n: usize) -> Self {
        let mut g = Genome::all_zeros(n);
        for w in &mut g.words {
            *w = u64::MAX;
        }
        g.mask_tail();
        g
    }

    /// A genome with each bit independently 0 or 1 with probability 1/2.
    pub fn random(n: usize, rng: &mut RandomStream) -> Self {
        let mut g = Genome::all_zeros(n);
        for w in &mut g.words {
            *w = rng.next_u64();
        }
        g.mask_tail();
        g
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut g = Genome::all_zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                g.flip(i);
            }
        }
        g
    }

    /// Clears bits beyond `len` in the last word.
    fn mask_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is at least 1 by construction
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {} out of range 0..{}", i, self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {} out of range 0..{}", i, self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of 1-bits.
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.ones_count() == self.len
    }

    /// The bitwise complement.
    pub fn complement(&self) -> Genome {
        let mut g = Genome {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        g.mask_tail();
        g
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            write!(f, "Genome({})", self)
        } else {
            write!(f, "Genome(len={}, ones={})", self.len, self.ones_count())
        }
    }
}

/// Parses a genome from a string of `0`/`1` characters.
impl FromStr for Genome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err("empty genome string".to_string());
        }
        let mut g = Genome::all_zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => g.flip(i),
                other => return Err(format!("invalid genome character {:?}", other)),
            }
        }
        Ok(g)
    }
}

/// OneMax: the number of 1-bits.
pub fn onemax(g: &Genome) -> Fitness {
    Fitness(g.ones_count())
}

/// TwoMax: `max(ones, n - ones)`, a bimodal function with optima `0^n` and `1^n`.
pub fn twomax(g: &Genome) -> Fitness {
    let ones = g.ones_count();
    Fitness(ones.max(g.len() - ones))
}

/// The fitness functions used in this crate. Both depend only on the number
/// of 1-bits (functions of unitation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FitnessFn {
    OneMax,
    TwoMax,
}

impl FitnessFn {
    pub fn eval(self, g: &Genome) -> Fitness {
        match self {
            FitnessFn::OneMax => onemax(g),
            FitnessFn::TwoMax => twomax(g),
        }
    }

    /// The optimal fitness value on genomes of length `n` (always `n`).
    pub fn optimum(self, n: usize) -> Fitness {
        Fitness(n)
    }

    pub fn label(self) -> &'static str {
        match self {
            FitnessFn::OneMax => "onemax",
            FitnessFn::TwoMax => "twomax",
        }
    }
}

impl FromStr for FitnessFn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "onemax" => Ok(FitnessFn::OneMax),
            "twomax" => Ok(FitnessFn::TwoMax),
            other => Err(format!("unknown fitness function {:?}", other)),
        }
    }
}

/// Genotypic (Hamming) distance: the number of positions with differing bits.
///
/// Panics on length mismatch; comparing genomes of different lengths is a
/// programming bug, not a recoverable condition.
pub fn hamming_distance(a: &Genome, b: &Genome) -> usize {
    assert_eq!(
        a.len, b.len,
        "hamming_distance on genomes of different lengths"
    );
    a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Phenotypic distance: the absolute difference of ones-counts.
///
/// Meaningful for functions of unitation, where the ones-count is the
/// phenotype. Panics on length mismatch.
pub fn phenotypic_distance(a: &Genome, b: &Genome) -> usize {
    assert_eq!(
        a.len, b.len,
        "phenotypic_distance on genomes of different lengths"
    );
    a.ones_count().abs_diff(b.ones_count())
}

/// Standard bit mutation: each bit of `g` flips independently with
/// probability `1/n`; the parent is left unmodified.
///
/// Flip positions are generated by geometric gap sampling (inverse-CDF of
/// the geometric distribution with success probability `1/n`), which draws
/// the distance to the next flipped bit instead of one Bernoulli trial per
/// bit. The resulting flip pattern has the same distribution as per-bit
/// sampling, at O(1) expected draws per mutation.
pub fn standard_bit_mutation(g: &Genome, rng: &mut RandomStream) -> Genome {
    let n = g.len();
    let mut child = g.clone();
    let ln_q = (1.0 - 1.0 / n as f64).ln(); // -inf for n = 1: every gap is 0
    let mut pos = geometric_gap(rng, ln_q, n);
    while pos < n {
        child.flip(pos);
        pos += 1 + geometric_gap(rng, ln_q, n);
    }
    child
}

/// Samples `floor(ln(u) / ln(q))` for `u` uniform in (0, 1]: a geometric
/// variate counting failures before the first success at rate `p = 1 - q`.
/// Values beyond `cap` are clamped to `cap + 1` (off the end of the genome).
fn geometric_gap(rng: &mut RandomStream, ln_q: f64, cap: usize) -> usize {
    if ln_q == 0.0 {
        // q rounded to 1.0; flip probability underflows at this length.
        return cap + 1;
    }
    let u = 1.0 - rng.gen::<f64>(); // (0, 1], keeps ln(u) finite
    let gap = (u.ln() / ln_q).floor();
    if gap > cap as f64 {
        cap + 1
    } else {
        gap as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn onemax_counts_ones() {
        assert_eq!(onemax(&g("1111")).value(), 4);
        assert_eq!(onemax(&g("0000")).value(), 0);
        assert_eq!(onemax(&g("0110")).value(), 2);
    }

    #[test]
    fn twomax_is_bimodal() {
        assert_eq!(twomax(&g("0000")).value(), 4);
        assert_eq!(twomax(&g("1111")).value(), 4);
        assert_eq!(twomax(&g("0011")).value(), 2);
    }

    #[test]
    fn hamming_distance_examples() {
        assert_eq!(hamming_distance(&g("0110"), &g("0110")), 0);
        assert_eq!(hamming_distance(&g("0000"), &g("1111")), 4);
        assert_eq!(hamming_distance(&g("0110"), &g("0101")), 2);
    }

    #[test]
    fn phenotypic_distance_examples() {
        assert_eq!(phenotypic_distance(&g("0110"), &g("0101")), 0);
        assert_eq!(phenotypic_distance(&g("0000"), &g("1111")), 4);
    }

    #[test]
    #[should_panic(expected = "different lengths")]
    fn hamming_distance_length_mismatch_panics() {
        hamming_distance(&g("01"), &g("011"));
    }

    #[test]
    fn packed_words_match_bit_semantics_across_word_boundary() {
        let n = 131; // spans three words
        let mut x = Genome::all_zeros(n);
        for i in [0, 63, 64, 65, 127, 128, 130] {
            x.flip(i);
            assert!(x.get(i));
        }
        assert_eq!(x.ones_count(), 7);
        assert_eq!(x.complement().ones_count(), n - 7);
        assert_eq!(hamming_distance(&x, &Genome::all_zeros(n)), 7);
    }

    #[test]
    fn mutation_flips_the_single_bit_at_n_1() {
        let mut rng = RandomStream::from_seed(5);
        for _ in 0..200 {
            let x = Genome::all_zeros(1);
            let y = standard_bit_mutation(&x, &mut rng);
            assert!(y.get(0), "n=1 mutation must always flip (rate 1/n = 1)");
        }
    }

    #[test]
    fn mutation_leaves_parent_unmodified_and_preserves_length() {
        let mut rng = RandomStream::from_seed(9);
        let x = Genome::random(257, &mut rng);
        let before = x.clone();
        let y = standard_bit_mutation(&x, &mut rng);
        assert_eq!(x, before);
        assert_eq!(y.len(), 257);
    }

    #[test]
    fn mutation_mean_flip_count_is_one() {
        let mut rng = RandomStream::from_seed(11);
        let x = Genome::all_zeros(100);
        let trials = 100_000;
        let total: usize = (0..trials)
            .map(|_| hamming_distance(&x, &standard_bit_mutation(&x, &mut rng)))
            .sum();
        let mean = total as f64 / trials as f64;
        // E = n * (1/n) = 1, std error ~ 1/sqrt(trials)
        assert!((mean - 1.0).abs() < 0.02, "mean flips {}", mean);
    }

    #[test]
    fn mutation_zero_flip_probability_matches_closed_form() {
        // P(0 flips) at n=10 is (1 - 1/10)^10 = 0.3486784401.
        let expected = 0.9f64.powi(10);
        let mut rng = RandomStream::from_seed(13);
        let x = Genome::all_zeros(10);
        let trials = 1_000_000;
        let zero = (0..trials)
            .filter(|_| standard_bit_mutation(&x, &mut rng).is_all_zeros())
            .count();
        let freq = zero as f64 / trials as f64;
        assert!(
            (freq - expected).abs() < 0.002,
            "freq {} vs closed form {}",
            freq,
            expected
        );
    }

    /// 99th-percentile chi-square critical values by degrees of freedom.
    fn chi2_crit_99(df: usize) -> f64 {
        match df {
            4 => 13.2767,
            5 => 15.0863,
            6 => 16.8119,
            7 => 18.4753,
            _ => panic!("no tabled value for df={}", df),
        }
    }

    /// Binomial(n, 1/n) pmf by the usual multiplicative recurrence.
    fn binomial_one_over_n_pmf(n: usize) -> Vec<f64> {
        let p = 1.0 / n as f64;
        let q = 1.0 - p;
        let mut pmf = vec![0.0; n + 1];
        pmf[0] = q.powi(n as i32);
        for j in 0..n {
            pmf[j + 1] = pmf[j] * ((n - j) as f64 / (j + 1) as f64) * (p / q);
        }
        pmf
    }

    #[test]
    fn flip_count_distribution_matches_binomial() {
        // Chi-square against Binomial(n, 1/n); bins 0..=5 plus a pooled tail.
        let trials = 1_000_000usize;
        for (n, seed) in [(5usize, 21u64), (10, 22), (50, 23)] {
            let mut rng = RandomStream::from_seed(seed);
            let x = Genome::all_zeros(n);
            let max_bin = 5.min(n);
            let mut observed = vec![0usize; max_bin + 2];
            for _ in 0..trials {
                let flips = standard_bit_mutation(&x, &mut rng).ones_count();
                observed[flips.min(max_bin + 1)] += 1;
            }
            let pmf = binomial_one_over_n_pmf(n);
            let mut expected = vec![0.0; max_bin + 2];
            for (j, &p) in pmf.iter().enumerate() {
                expected[j.min(max_bin + 1)] += p * trials as f64;
            }
            // Drop an empty tail bin (n=5 has none beyond max_bin).
            let bins = if expected[max_bin + 1] < 1.0 {
                max_bin + 1
            } else {
                max_bin + 2
            };
            let chi2: f64 = (0..bins)
                .map(|j| {
                    let d = observed[j] as f64 - expected[j];
                    d * d / expected[j]
                })
                .sum();
            let crit = chi2_crit_99(bins - 1);
            assert!(chi2 < crit, "n={}: chi2 {} >= {}", n, chi2, crit);
        }
    }

    #[test]
    fn random_genome_single_bit_is_fair() {
        let mut rng = RandomStream::from_seed(31);
        let trials = 100_000;
        let ones = (0..trials)
            .filter(|_| Genome::random(1, &mut rng).get(0))
            .count();
        let freq = ones as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq {}", freq);
    }

    #[test]
    fn random_genome_ones_count_statistics() {
        let mut rng = RandomStream::from_seed(37);
        let trials = 100_000;
        let mut total = 0usize;
        let mut central = 0usize;
        for _ in 0..trials {
            let ones = Genome::random(100, &mut rng).ones_count();
            total += ones;
            if ones == 50 {
                central += 1;
            }
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - 50.0).abs() < 0.5, "mean ones {}", mean);
        // Central probability is C(100,50) / 2^100 = 0.07958923738717877.
        let freq = central as f64 / trials as f64;
        assert!(
            (freq - 0.079_589_237_387_178_77).abs() < 0.005,
            "central freq {}",
            freq
        );
    }

    #[test]
    fn replaying_a_seed_reproduces_genomes_bit_for_bit() {
        let run = |seed: u64| -> Vec<Genome> {
            let mut rng = RandomStream::from_seed(seed);
            let mut out = Vec::new();
            let mut x = Genome::random(83, &mut rng);
            for _ in 0..200 {
                x = standard_bit_mutation(&x, &mut rng);
                out.push(x.clone());
            }
            out
        };
        assert_eq!(run(99), run(99));
    }

    proptest! {
        #[test]
        fn twomax_symmetric_under_complement(s in "[01]{1,80}") {
            let x: Genome = s.parse().unwrap();
            prop_assert_eq!(twomax(&x), twomax(&x.complement()));
        }

        #[test]
        fn twomax_decomposes_over_onemax(s in "[01]{1,80}") {
            let x: Genome = s.parse().unwrap();
            let n = x.len();
            let expected = onemax(&x).value().max(n - onemax(&x).value());
            prop_assert_eq!(twomax(&x).value(), expected);
        }

        #[test]
        fn twomax_optimal_iff_uniform(s in "[01]{1,80}") {
            let x: Genome = s.parse().unwrap();
            let optimal = twomax(&x).value() == x.len();
            prop_assert_eq!(optimal, x.is_all_zeros() || x.is_all_ones());
        }

        #[test]
        fn phenotypic_never_exceeds_hamming(a in "[01]{1,64}", seed in 0u64..1000) {
            let x: Genome = a.parse().unwrap();
            let mut rng = RandomStream::from_seed(seed);
            let y = Genome::random(x.len(), &mut rng);
            prop_assert!(phenotypic_distance(&x, &y) <= hamming_distance(&x, &y));
        }

        #[test]
        fn display_round_trips(s in "[01]{1,100}") {
            let x: Genome = s.parse().unwrap();
            prop_assert_eq!(x.to_string(), s);
        }
    }
}
