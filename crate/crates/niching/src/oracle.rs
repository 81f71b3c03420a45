//! Exact and Monte-Carlo verification of the analytical quantities behind the
//! mechanisms: one-step drift under probabilistic crowding, initialization
//! gap probabilities, takeover bounds and the closed-form success bounds.
//!
//! # Numeric policy
//!
//! Drift sums are evaluated on two independent routes:
//!
//! 1. the production route in `f64` with Neumaier-compensated summation,
//!    enumerating mutation outcomes with at most
//!    [`DRIFT_FLIP_ENUMERATION_CAP`] total flipped bits (the discarded tail
//!    mass is bounded and reported alongside the value), and
//! 2. a full exact-rational enumeration over big integers, used for
//!    cross-checks at moderate `n`.
//!
//! The two routes agree to at least 10 significant digits for `n <= 200`
//! (tested). Binomial terms are built by multiplicative recurrences, never
//! from raw factorials, so nothing overflows or underflows at large `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::genome::{onemax, FitnessFn, Genome};
use crate::mechanisms::probabilistic_crowding_step;
use crate::population::Population;
use crate::rng::RandomStream;

/// Terms with more total flips than this are dropped from the `f64` drift
/// enumeration. The discarded mass is below `2 / 40!` (about `2.5e-48`).
pub const DRIFT_FLIP_ENUMERATION_CAP: usize = 40;

/// One-sided z-score at 99% confidence, used by Monte-Carlo bound checks.
pub const ONE_SIDED_99_Z: f64 = 2.326_347_874_040_840_8;

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.compensation
    }
}

/// Expected one-step fitness change of the offspring *before* survival
/// selection, on OneMax with a parent of `k` ones: exactly `(n - 2k) / n`.
pub fn exact_offspring_drift(n: usize, k: usize) -> f64 {
    assert!(k <= n, "ones-count {} exceeds length {}", k, n);
    (n as f64 - 2.0 * k as f64) / n as f64
}

/// A drift value together with a bound on the enumeration tail that was
/// dropped while computing it.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DriftEstimate {
    pub value: f64,
    /// Upper bound on the absolute contribution of dropped terms.
    pub truncation_bound: f64,
}

/// Expected one-step fitness change of the *surviving* individual under one
/// probabilistic-crowding step on OneMax, conditional on a parent with `k`
/// ones.
///
/// With `a` of the `k` ones and `b` of the `n - k` zeros flipping
/// (independent binomials at rate `1/n`), the offspring wins with probability
/// `f(y) / (f(x) + f(y)) = (k - a + b) / (2k - a + b)` and the sum runs over
/// all `(a, b)`. Terms with `a = b` contribute nothing (the fitness change is
/// zero, which also covers the degenerate all-zero OneMax case), so they are
/// skipped and no denominator can vanish.
pub fn exact_pc_drift(n: usize, k: usize) -> DriftEstimate {
    assert!(k <= n, "ones-count {} exceeds length {}", k, n);
    let cap = DRIFT_FLIP_ENUMERATION_CAP;
    let p = 1.0 / n as f64;
    let q = 1.0 - p;
    let mut total = CompensatedSum::default();

    let mut pmf_a = q.powi(k as i32); // P(A = 0)
    for a in 0..=k.min(cap) {
        let mut pmf_b = q.powi((n - k) as i32); // P(B = 0)
        let b_max = (n - k).min(cap - a);
        for b in 0..=b_max {
            if b != a {
                let d = b as f64 - a as f64;
                let accept = (k - a + b) as f64 / (2 * k - a + b) as f64;
                total.add(pmf_a * pmf_b * d * accept);
            }
            if b < b_max {
                pmf_b *= ((n - k - b) as f64 / (b + 1) as f64) * (p / q);
            }
        }
        if a < k.min(cap) {
            pmf_a *= ((k - a) as f64 / (a + 1) as f64) * (p / q);
        }
    }

    let truncation_bound = if n <= cap {
        0.0 // nothing dropped: a + b <= n <= cap
    } else {
        // sum_{j > cap} j * P(flips = j) <= sum_{j >= cap+1} 1/(j-1)! <= 2/cap!
        let cap_factorial: f64 = (1..=cap as u64).map(|i| i as f64).product();
        2.0 / cap_factorial
    };
    DriftEstimate {
        value: total.value(),
        truncation_bound,
    }
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Exact-rational counterpart of [`exact_pc_drift`]: the full double sum with
/// no truncation. Independent cross-check route; quadratic in `n`, intended
/// for `n` up to a few hundred.
pub fn exact_pc_drift_rational(n: usize, k: usize) -> BigRational {
    assert!(k <= n, "ones-count {} exceeds length {}", k, n);
    let n_big = BigInt::from(n);
    let nm1 = BigInt::from(n - 1);
    // powers of (n-1) and n up to max(k, n-k)
    let m = k.max(n - k);
    let mut pow_nm1 = Vec::with_capacity(m + 1);
    let mut pow_n = Vec::with_capacity(m + 1);
    pow_nm1.push(BigInt::one());
    pow_n.push(BigInt::one());
    for i in 1..=m {
        pow_nm1.push(&pow_nm1[i - 1] * &nm1);
        pow_n.push(&pow_n[i - 1] * &n_big);
    }
    // P(A = a) = C(k, a) (n-1)^(k-a) / n^k, and likewise for B.
    let pmf = |trials: usize, successes: usize| -> BigRational {
        BigRational::new(
            big_binomial(trials, successes) * &pow_nm1[trials - successes],
            pow_n[trials].clone(),
        )
    };

    let mut total = BigRational::zero();
    for a in 0..=k {
        let pa = pmf(k, a);
        for b in 0..=(n - k) {
            if b == a {
                continue;
            }
            let pb = pmf(n - k, b);
            let d = BigRational::from_integer(BigInt::from(b as i64 - a as i64));
            let accept = BigRational::new(
                BigInt::from(k - a + b),
                BigInt::from(2 * k - a + b),
            );
            total += &pa * pb * d * accept;
        }
    }
    total
}

/// Expected offspring fitness change computed by brute force over all `2^n`
/// flip masks on a concrete parent with `k` ones, in exact rationals.
///
/// This is the independent oracle for the `(n - 2k)/n` closed form; it shares
/// no code with [`exact_offspring_drift`]. Only feasible for small `n`.
pub fn offspring_drift_by_mask_enumeration(n: usize, k: usize) -> BigRational {
    assert!(k <= n && n <= 20, "mask enumeration limited to n <= 20");
    let parent: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    // weight[j] = (1/n)^j ((n-1)/n)^(n-j)
    let n_big = BigInt::from(n);
    let nm1 = BigInt::from(n - 1);
    let denom = n_big.pow(n as u32);
    let weights: Vec<BigRational> = (0..=n)
        .map(|j| BigRational::new(nm1.pow((n - j) as u32), denom.clone()))
        .collect();

    let mut total = BigRational::zero();
    for mask in 0u64..(1 << n) {
        let flips = mask.count_ones() as usize;
        let child_ones = (parent ^ mask).count_ones() as i64;
        let d = child_ones - k as i64;
        if d != 0 {
            total += &weights[flips] * BigRational::from_integer(BigInt::from(d));
        }
    }
    total
}

/// Exact per-state expected fitness change of the surviving individual under
/// probabilistic crowding on OneMax, for every ones-count `k` in `[0, n]`.
#[derive(Clone, PartialEq, Debug)]
pub struct DriftTable {
    n: usize,
    entries: Vec<f64>,
    truncation_bound: f64,
}

impl DriftTable {
    pub fn compute(n: usize) -> Self {
        let mut entries = Vec::with_capacity(n + 1);
        let mut truncation_bound: f64 = 0.0;
        for k in 0..=n {
            let est = exact_pc_drift(n, k);
            entries.push(est.value);
            truncation_bound = truncation_bound.max(est.truncation_bound);
        }
        DriftTable {
            n,
            entries,
            truncation_bound,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Drift at ones-count `k`.
    pub fn entry(&self, k: usize) -> f64 {
        self.entries[k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }
}

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Monte-Carlo drift of one probabilistic-crowding step on OneMax from a
/// fixed parent with `k` ones, driven through the real mechanism step on a
/// single-lineage population (the parent is restored after each step).
pub fn pc_drift_mc(n: usize, k: usize, steps: u64, rng: &mut RandomStream) -> McEstimate {
    assert!(k <= n);
    let mut parent = Genome::all_zeros(n);
    for i in 0..k {
        parent.flip(i);
    }
    let fx = onemax(&parent);
    let mut pop = Population::from_genomes(vec![parent.clone()], FitnessFn::OneMax);

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..steps {
        let out = probabilistic_crowding_step(&mut pop, FitnessFn::OneMax, rng);
        let delta = if out.offspring_accepted {
            pop.replace(0, parent.clone(), fx); // restore the conditioning state
            out.offspring_fitness.value() as f64 - fx.value() as f64
        } else {
            0.0
        };
        sum += delta;
        sum_sq += delta * delta;
    }
    let mean = sum / steps as f64;
    let var = (sum_sq - sum * sum / steps as f64) / (steps - 1) as f64;
    McEstimate {
        mean,
        std_error: (var / steps as f64).sqrt(),
        samples: steps,
    }
}

/// Whether an empirical value respects a bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Consistent,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violated => "violated",
        })
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "consistent" => Ok(Verdict::Consistent),
            "violated" => Ok(Verdict::Violated),
            other => Err(format!("unknown verdict {:?}", other)),
        }
    }
}

/// Comparison of an analytic bound against an empirical estimate.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundReport {
    pub name: String,
    pub analytic_value: f64,
    pub empirical_value: f64,
    pub sample_count: u64,
    pub verdict: Verdict,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: analytic={} empirical={} samples={} verdict={}",
            self.name, self.analytic_value, self.empirical_value, self.sample_count, self.verdict
        )
    }
}

/// Analytic lower bound on the probability that a uniform population of size
/// `mu` contains a member at most `n/2 - sigma` ones *and* one at least
/// `n/2 + sigma` ones: `1 - 2 ((1 + 2 sigma sqrt(2/n)) / 2)^mu`.
///
/// At `sigma = 0` and odd `n` this is exactly `1 - 2^(1-mu)`. The bound can
/// be negative (vacuous) when the gap term exceeds 1.
pub fn init_gap_lower_bound(n: usize, mu: usize, sigma: usize) -> f64 {
    let p_sigma = 2.0 * sigma as f64 * (2.0 / n as f64).sqrt();
    1.0 - 2.0 * ((1.0 + p_sigma) / 2.0).powi(mu as i32)
}

/// Monte-Carlo check of [`init_gap_lower_bound`]: estimates the both-sides
/// occupancy probability over `trials` fresh uniform populations and reports
/// it against the analytic bound with a one-sided 99% sampling margin.
pub fn init_gap_probability_mc(
    n: usize,
    mu: usize,
    sigma: usize,
    trials: u64,
    rng: &mut RandomStream,
) -> BoundReport {
    assert!(trials >= 1);
    assert!(2 * sigma <= n, "gap half-width {} exceeds n/2", sigma);
    let lo_limit = n as i64 - 2 * sigma as i64; // 2*ones <= this
    let hi_limit = n as i64 + 2 * sigma as i64; // 2*ones >= this
    let mut hits = 0u64;
    for _ in 0..trials {
        let mut has_lo = false;
        let mut has_hi = false;
        for _ in 0..mu {
            let doubled = 2 * Genome::random(n, rng).ones_count() as i64;
            has_lo |= doubled <= lo_limit;
            has_hi |= doubled >= hi_limit;
            if has_lo && has_hi {
                break;
            }
        }
        if has_lo && has_hi {
            hits += 1;
        }
    }
    let empirical = hits as f64 / trials as f64;
    let analytic = init_gap_lower_bound(n, mu, sigma);
    let margin = ONE_SIDED_99_Z * (empirical * (1.0 - empirical) / trials as f64).sqrt();
    let verdict = if empirical >= analytic - margin {
        Verdict::Consistent
    } else {
        Verdict::Violated
    };
    BoundReport {
        name: format!("init_gap(n={},mu={},sigma={})", n, mu, sigma),
        analytic_value: analytic,
        empirical_value: empirical,
        sample_count: trials,
        verdict,
    }
}

/// Lower bound on the probability that copies of the first optimum take over
/// the population before the opposite optimum is found, under RTS:
/// the product over `i = 1..mu-1` of `max(0, 1 - 4 mu / (i n ((mu-i)/mu)^w))`.
///
/// Returns `None` outside the regime `mu >= 2`, `w >= 2`, `8 mu <= n`, where
/// the expression is not a valid bound. Negative factors clamp to zero,
/// making the bound vacuous rather than wrong.
pub fn rts_takeover_bound(mu: usize, w: usize, n: usize) -> Option<f64> {
    if mu < 2 || w < 2 || 8 * mu > n {
        return None;
    }
    let mut product = 1.0;
    for i in 1..mu {
        let ratio = (mu - i) as f64 / mu as f64;
        let term = 4.0 * mu as f64 / (i as f64 * n as f64 * ratio.powi(w as i32));
        let factor = (1.0 - term).max(0.0);
        if factor == 0.0 {
            return Some(0.0);
        }
        product *= factor;
    }
    Some(product)
}

/// Exact-rational route for [`rts_takeover_bound`]; the two must agree to at
/// least 12 significant digits.
pub fn rts_takeover_bound_rational(mu: usize, w: usize, n: usize) -> Option<BigRational> {
    if mu < 2 || w < 2 || 8 * mu > n {
        return None;
    }
    let mut product = BigRational::one();
    for i in 1..mu {
        let numer = BigInt::from(4 * mu) * BigInt::from(mu).pow(w as u32);
        let denom = BigInt::from(i) * BigInt::from(n) * BigInt::from(mu - i).pow(w as u32);
        let factor = BigRational::one() - BigRational::new(numer, denom);
        if factor.is_negative() || factor.is_zero() {
            return Some(BigRational::zero());
        }
        product *= factor;
    }
    Some(product)
}

/// Success-probability lower bound for deterministic crowding: `1 - 2^(1-mu)`.
pub fn det_crowding_success_lb(mu: usize) -> f64 {
    1.0 - 2f64.powi(1 - mu as i32)
}

/// Base of the logarithm in `mu' = min(mu, log n)`.
///
/// The success bound below is stated with an unspecified log base; both
/// readings are evaluated and reported side by side rather than guessing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LogBase {
    Two,
    Natural,
}

/// Success-probability lower bound for RTS with a large window
/// (`w >= 2.5 mu ln n`): `1 - 2^(-mu' + 3)` with `mu' = min(mu, log n)`.
pub fn rts_success_lb(mu: usize, n: usize, base: LogBase) -> f64 {
    let log_n = match base {
        LogBase::Two => (n as f64).log2(),
        LogBase::Natural => (n as f64).ln(),
    };
    let mu_prime = (mu as f64).min(log_n);
    1.0 - 2f64.powf(-mu_prime + 3.0)
}

/// Generation budget `2 e mu n ln n` within which a branch optimum is found
/// with probability `1 - 1/n` (given the best branch fitness never drops).
pub fn lemma33_budget(mu: usize, n: usize) -> f64 {
    2.0 * std::f64::consts::E * mu as f64 * n as f64 * (n as f64).ln()
}

/// The named closed-form bounds exposed through the CLI.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TheoremBoundName {
    RtsSuccessLb,
    DetCrowdingSuccessLb,
    Lemma33Budget,
}

impl TheoremBoundName {
    pub fn label(self) -> &'static str {
        match self {
            TheoremBoundName::RtsSuccessLb => "rts_success_lb",
            TheoremBoundName::DetCrowdingSuccessLb => "det_crowding_success_lb",
            TheoremBoundName::Lemma33Budget => "lemma33_budget",
        }
    }

    /// Whether the bound needs a problem size `n` besides `mu`.
    pub fn requires_n(self) -> bool {
        !matches!(self, TheoremBoundName::DetCrowdingSuccessLb)
    }
}

impl FromStr for TheoremBoundName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rts_success_lb" => Ok(TheoremBoundName::RtsSuccessLb),
            "det_crowding_success_lb" => Ok(TheoremBoundName::DetCrowdingSuccessLb),
            "lemma33_budget" => Ok(TheoremBoundName::Lemma33Budget),
            other => Err(format!("unknown bound name {:?}", other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rational_to_f64(r: &BigRational) -> f64 {
        r.to_f64().expect("rational convertible to f64")
    }

    #[test]
    fn offspring_drift_closed_form_examples() {
        assert_eq!(exact_offspring_drift(100, 50), 0.0);
        assert_eq!(exact_offspring_drift(64, 64), -1.0);
        // k = (1 + delta) n/2 with delta = 0.2 gives exactly -delta.
        assert_eq!(exact_offspring_drift(200, 120), -0.2);
    }

    #[test]
    fn offspring_drift_matches_mask_enumeration_small_n() {
        for n in 1..=10usize {
            for k in 0..=n {
                let oracle = offspring_drift_by_mask_enumeration(n, k);
                let closed = BigRational::new(
                    BigInt::from(n as i64 - 2 * k as i64),
                    BigInt::from(n as i64),
                );
                assert_eq!(oracle, closed, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn pc_drift_exact_enumeration_at_n_2() {
        // n=2, k=1: flipping the one (prob 1/4) is never accepted (ratio 0),
        // flipping the zero (prob 1/4) is accepted with ratio 2/3, fitness +1.
        // Expected change: 1/4 * 2/3 = 1/6.
        let exact = exact_pc_drift_rational(2, 1);
        assert_eq!(exact, BigRational::new(BigInt::from(1), BigInt::from(6)));
        let fast = exact_pc_drift(2, 1);
        assert!((fast.value - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(fast.truncation_bound, 0.0);
    }

    // Reference values computed with an independent exact-rational
    // implementation (arbitrary-precision fractions), frozen here at the
    // oracle's full output precision.
    #[allow(clippy::excessive_precision)]
    const PC_DRIFT_REFERENCE: &[(usize, usize, f64)] = &[
        (10, 5, 0.046_508_547_385_614_385),
        (10, 6, -0.057_360_074_468_581_42),
        (10, 7, -0.157_568_058_136_394_49),
        (50, 25, 0.009_815_027_652_832_911_5),
        (50, 30, -0.091_381_272_361_953_44),
        (50, 37, -0.231_633_729_550_277_56),
        (100, 55, -0.045_436_719_824_007_703),
        (200, 120, -0.097_836_630_410_841_8),
        (400, 240, -0.098_917_504_060_524_88),
    ];

    #[test]
    fn pc_drift_matches_frozen_reference_values() {
        for &(n, k, expected) in PC_DRIFT_REFERENCE {
            let got = exact_pc_drift(n, k).value;
            assert!(
                ((got - expected) / expected).abs() < 1e-12,
                "n={} k={}: {} vs {}",
                n,
                k,
                got,
                expected
            );
        }
    }

    #[test]
    fn float_and_rational_drift_routes_agree_to_ten_digits() {
        for &(n, k) in &[
            (10usize, 5usize),
            (50, 0),
            (50, 30),
            (50, 50),
            (100, 55),
            (101, 51),
            (200, 110),
            (200, 120),
            (200, 150),
        ] {
            let fast = exact_pc_drift(n, k).value;
            let exact = rational_to_f64(&exact_pc_drift_rational(n, k));
            let scale = exact.abs().max(1e-3);
            assert!(
                ((fast - exact) / scale).abs() < 1e-10,
                "n={} k={}: {} vs {}",
                n,
                k,
                fast,
                exact
            );
        }
    }

    #[test]
    fn pc_drift_at_equilibrium_is_tiny_and_nonnegative() {
        // At k = n/2 the offspring drift vanishes; what remains is the
        // positive O(1/n) bias of fitness-proportional survival.
        for n in [10usize, 50, 100] {
            let v = exact_pc_drift(n, n / 2).value;
            assert!(v > 0.0, "n={}: {}", n, v);
            assert!(v <= 2.0 / n as f64, "n={}: {}", n, v);
        }
    }

    #[test]
    fn pc_drift_boundary_states() {
        // k=0: every strict improvement is accepted with ratio 1, so the
        // drift equals E[B] = 1. k=n: only losses are possible.
        let at_zero = exact_pc_drift(50, 0).value;
        assert!((at_zero - 1.0).abs() < 1e-12, "{}", at_zero);
        assert!(exact_pc_drift(50, 50).value < 0.0);
    }

    #[test]
    fn pc_drift_is_at_most_half_offspring_drift_plus_vanishing_bias() {
        // The survival-selection decomposition: drift <= off/2 + C/n, with a
        // uniform constant over all k >= 1.1 * n/2.
        for n in [50usize, 100, 200] {
            let from = (11 * n).div_ceil(20);
            for k in from..=n {
                let pc = exact_pc_drift(n, k).value;
                let off = exact_offspring_drift(n, k);
                assert!(
                    pc <= off / 2.0 + 2.0 / n as f64,
                    "n={} k={}: pc {} vs off/2 {}",
                    n,
                    k,
                    pc,
                    off / 2.0
                );
            }
        }
    }

    #[test]
    fn pc_drift_agrees_with_mechanism_monte_carlo() {
        let cases = [
            (2usize, 1usize),
            (10, 5),
            (10, 6),
            (10, 7),
            (50, 25),
            (50, 30),
            (50, 37),
        ];
        for (i, &(n, k)) in cases.iter().enumerate() {
            let mut rng = RandomStream::from_seed(300 + i as u64);
            let mc = pc_drift_mc(n, k, 1_000_000, &mut rng);
            let exact = exact_pc_drift(n, k).value;
            assert!(
                (mc.mean - exact).abs() <= 3.0 * mc.std_error,
                "n={} k={}: mc {} +- {} vs exact {}",
                n,
                k,
                mc.mean,
                mc.std_error,
                exact
            );
        }
    }

    #[test]
    fn drift_table_is_finite_and_reproducible() {
        let t1 = DriftTable::compute(60);
        let t2 = DriftTable::compute(60);
        assert_eq!(t1, t2);
        assert_eq!(t1.entries().len(), 61);
        assert!(t1.entries().iter().all(|v| v.is_finite()));
        assert!(t1.truncation_bound() < 1e-40);
        assert_eq!(t1.entry(30), exact_pc_drift(60, 30).value);
    }

    #[test]
    fn init_gap_bound_closed_form_at_sigma_zero() {
        // Odd n, sigma = 0: exactly 1 - 2^(1-mu).
        assert_eq!(init_gap_lower_bound(101, 2, 0), 0.5);
        assert_eq!(init_gap_lower_bound(101, 10, 0), 1.0 - 2f64.powi(-9));
    }

    #[test]
    fn init_gap_mc_single_member_never_straddles() {
        let mut rng = RandomStream::from_seed(310);
        let report = init_gap_probability_mc(21, 1, 1, 20_000, &mut rng);
        assert_eq!(report.empirical_value, 0.0);
        assert!(report.analytic_value <= 0.0, "bound must be vacuous");
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn init_gap_mc_consistency_smoke() {
        let mut rng = RandomStream::from_seed(311);
        let report = init_gap_probability_mc(101, 4, 0, 50_000, &mut rng);
        assert_eq!(report.verdict, Verdict::Consistent, "{}", report);
    }

    #[test]
    fn takeover_bound_regime_gating() {
        assert_eq!(rts_takeover_bound(1, 2, 1000), None);
        assert_eq!(rts_takeover_bound(8, 1, 1000), None);
        assert_eq!(rts_takeover_bound(8, 2, 63), None, "needs 8 mu <= n");
        assert!(rts_takeover_bound(8, 2, 64).is_some());
    }

    #[test]
    fn takeover_bound_matches_frozen_value_on_both_routes() {
        // mu=8, w=2, n=1000, computed independently in exact rationals.
        let expected = 0.541_368_868_634_082;
        let fast = rts_takeover_bound(8, 2, 1000).unwrap();
        let exact = rational_to_f64(&rts_takeover_bound_rational(8, 2, 1000).unwrap());
        assert!(((fast - expected) / expected).abs() < 1e-12, "{}", fast);
        assert!(((fast - exact) / exact).abs() < 1e-12, "{} vs {}", fast, exact);
    }

    #[test]
    fn takeover_bound_non_increasing_in_window() {
        let mut prev = f64::INFINITY;
        for w in [2usize, 3, 4, 5] {
            let b = rts_takeover_bound(8, w, 1000).unwrap();
            assert!(b <= prev, "w={}: {} > {}", w, b, prev);
            prev = b;
        }
    }

    #[test]
    fn takeover_bound_clamps_to_zero_when_factors_go_negative() {
        // At w=3, the i = mu-1 factor is already negative.
        assert_eq!(rts_takeover_bound(8, 3, 1000), Some(0.0));
        assert!(rts_takeover_bound_rational(8, 3, 1000).unwrap().is_zero());
    }

    #[test]
    fn theorem_bounds_frozen_values() {
        assert_eq!(det_crowding_success_lb(8), 0.9921875);
        // mu' = min(8, log2 100) = log2 100, so the bound is 1 - 8/100.
        let base2 = rts_success_lb(8, 100, LogBase::Two);
        assert!((base2 - 0.92).abs() < 1e-12, "{}", base2);
        let natural = rts_success_lb(8, 100, LogBase::Natural);
        assert!((natural - 0.671_303_086_618_062_3).abs() < 1e-12, "{}", natural);
        let budget = lemma33_budget(2, 100);
        assert!((budget - 5_007.260_173_413_117).abs() < 1e-9, "{}", budget);
    }

    #[test]
    fn theorem_bound_names_parse() {
        assert_eq!(
            "rts_success_lb".parse::<TheoremBoundName>().unwrap(),
            TheoremBoundName::RtsSuccessLb
        );
        assert!("no_such_bound".parse::<TheoremBoundName>().is_err());
    }
}
