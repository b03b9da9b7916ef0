//! The generic Cut&Count driver: isolation weights, the weight loop and amplification.

pub mod dp;
pub mod poly;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::NiceTreeDecomposition;
use crate::error::{Result, SolveError};

/// An element of a weight universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
    Arc(usize),
    /// A vertex paired with a role tag (e.g. forest / marker).
    VertexTag(usize, u8),
    /// An edge paired with a role tag or multiplicity.
    EdgeTag(usize, u8),
}

/// Builders for the universes used by the solvers; element order defines weight indices.
pub mod universe {
    use super::Element;

    pub fn vertices(n: usize) -> Vec<Element> {
        (0..n).map(Element::Vertex).collect()
    }

    pub fn edges(m: usize) -> Vec<Element> {
        (0..m).map(Element::Edge).collect()
    }

    pub fn arcs(m: usize) -> Vec<Element> {
        (0..m).map(Element::Arc).collect()
    }

    /// Index of `(v, t)` is `v * tags + t`.
    pub fn vertex_tags(n: usize, tags: u8) -> Vec<Element> {
        (0..n).flat_map(|v| (0..tags).map(move |t| Element::VertexTag(v, t))).collect()
    }

    /// Index of `(e, t)` is `e * tags + t`.
    pub fn edge_tags(m: usize, tags: u8) -> Vec<Element> {
        (0..m).flat_map(|e| (0..tags).map(move |t| Element::EdgeTag(e, t))).collect()
    }
}

/// Isolation weights ω: U → {1, …, N} with N = 2|U|.
#[derive(Clone, Debug, Serialize)]
pub struct WeightFunction {
    universe: Vec<Element>,
    omega: Vec<usize>,
    n_max: usize,
    seed: u64,
}

impl WeightFunction {
    /// Weights given explicitly (for tests and planted checks); each must lie in `[1, 2|U|]`.
    pub fn from_values(universe: Vec<Element>, omega: Vec<usize>) -> Result<Self> {
        if universe.is_empty() {
            return Err(SolveError::EmptyUniverse);
        }
        let n_max = 2 * universe.len();
        if omega.len() != universe.len() || omega.iter().any(|&w| w < 1 || w > n_max) {
            return Err(SolveError::InvalidInstance("weights must cover the universe within [1, N]".into()));
        }
        Ok(Self { universe, omega, n_max, seed: 0 })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Weight of the element at position `i` of the universe.
    pub fn get(&self, i: usize) -> usize {
        self.omega[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.omega
    }

    pub fn universe(&self) -> &[Element] {
        &self.universe
    }

    /// N = 2|U|.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Largest weight the loop inspects, `N·|U| = 2|U|²`.
    pub fn w_limit(&self) -> usize {
        self.n_max * self.omega.len()
    }
}

/// Draws iid uniform weights in `[1, 2|U|]` from a seeded ChaCha stream.
pub fn sample_weights(universe: Vec<Element>, seed: u64) -> Result<WeightFunction> {
    if universe.is_empty() {
        return Err(SolveError::EmptyUniverse);
    }
    let n_max = 2 * universe.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = (0..universe.len()).map(|_| rng.gen_range(1..=n_max)).collect();
    Ok(WeightFunction { universe, omega, n_max, seed })
}

/// Parity of `|C_W|` for every `W`: bit `W` is set iff the count is odd.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Parities(pub Vec<u64>);

impl Parities {
    pub fn zeros(max_weight: usize) -> Self {
        Parities(vec![0; poly::words_for(max_weight)])
    }

    pub fn get(&self, w: usize) -> bool {
        poly::get_bit(&self.0, w)
    }

    pub fn xor_with(&mut self, other: &[u64]) {
        if self.0.len() < other.len() {
            self.0.resize(other.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(other) {
            *a ^= b;
        }
    }

    /// Weights with odd parity, in increasing order.
    pub fn odd_weights(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &word) in self.0.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                out.push(i * 64 + b);
                x &= x - 1;
            }
        }
        out
    }

    /// True iff some `W ≤ limit` has odd parity.
    pub fn any_odd_upto(&self, limit: usize) -> bool {
        self.odd_weights().first().is_some_and(|&w| w <= limit)
    }
}

/// A CountC procedure: parity of `|C_W|` for all `W` given ω and a nice decomposition.
pub trait CountCProcedure {
    /// The weight universe U, in the index order the procedure reads ω with.
    fn universe(&self) -> Vec<Element>;

    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities>;
}

/// Outcome of a single Cut&Count run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RunOutcome {
    Yes,
    NoEvidence,
}

/// One run of the weight loop: sample ω, count, and report Yes iff some `W ∈ [0, 2|U|²]` is odd.
pub fn cut_and_count<C: CountCProcedure + ?Sized>(
    countc: &C,
    td: &NiceTreeDecomposition,
    seed: u64,
) -> Result<RunOutcome> {
    let omega = sample_weights(countc.universe(), seed)?;
    let parities = countc.count(&omega, td)?;
    Ok(if parities.any_odd_upto(omega.w_limit()) { RunOutcome::Yes } else { RunOutcome::NoEvidence })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    Unknown,
}

/// One-sided Monte-Carlo answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonteCarloAnswer {
    pub verdict: Verdict,
    /// Repetitions actually executed (stops at the first Yes).
    pub repetitions: usize,
    pub seed: u64,
}

impl MonteCarloAnswer {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn settled(yes: bool, seed: u64) -> Self {
        MonteCarloAnswer { verdict: if yes { Verdict::Yes } else { Verdict::Unknown }, repetitions: 0, seed }
    }
}

/// Seed of repetition `i` derived from the master seed.
pub fn repetition_seeds(seed: u64, r: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..r).map(|_| rng.next_u64()).collect()
}

/// Runs `run` with independent seeds until it reports Yes or `r` repetitions are spent.
pub fn amplified_solve<F>(r: usize, seed: u64, mut run: F) -> Result<MonteCarloAnswer>
where
    F: FnMut(u64) -> Result<bool>,
{
    if r == 0 {
        return Err(SolveError::ZeroRepetitions);
    }
    for (i, s) in repetition_seeds(seed, r).into_iter().enumerate() {
        if run(s)? {
            return Ok(MonteCarloAnswer { verdict: Verdict::Yes, repetitions: i + 1, seed });
        }
    }
    Ok(MonteCarloAnswer { verdict: Verdict::Unknown, repetitions: r, seed })
}

/// Fraction of `trials` random families over a universe of size `u` whose minimum weight
/// (under fresh weights in `[1, n_max]`) is attained by exactly one member.
pub fn isolation_frequency(u: usize, n_max: usize, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut isolated = 0;
    for _ in 0..trials {
        let size = rng.gen_range(1..=(1usize << u).min(64));
        let family: Vec<u32> = (0..size).map(|_| rng.gen_range(1..(1u32 << u))).collect();
        let omega: Vec<usize> = (0..u).map(|_| rng.gen_range(1..=n_max)).collect();
        let weight = |set: u32| (0..u).filter(|&i| set >> i & 1 == 1).map(|i| omega[i]).sum::<usize>();
        let mut members = family.clone();
        members.sort_unstable();
        members.dedup();
        let min = members.iter().map(|&s| weight(s)).min().expect("family nonempty");
        if members.iter().filter(|&&s| weight(s) == min).count() == 1 {
            isolated += 1;
        }
    }
    isolated as f64 / trials as f64
}
