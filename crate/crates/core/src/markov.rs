//! The lazy chain on `FS(X, Y)`: pick a friendly pair uniformly, swap it with probability 1/2.
//! A configuration without friendly pairs holds still.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explorer::ComponentGraph;
use crate::fs::{Configuration, FsContext};

/// Generator identifiers accepted in config.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RngAlgorithm {
    Chacha8,
}

impl RngAlgorithm {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chacha8" => Ok(RngAlgorithm::Chacha8),
            other => Err(Error::Parse(format!("unknown rng `{other}`"))),
        }
    }

    /// Stream `stream` of the generator seeded with `seed`.
    pub fn make(self, seed: u64, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        r
    }
}

#[derive(Clone, Debug)]
pub struct ChainState {
    ctx: FsContext,
    current: Configuration,
    seed: u64,
    steps: u64,
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepOutcome {
    Swapped(usize, usize),
    Stayed,
    Frozen,
}

impl ChainState {
    pub fn new(ctx: FsContext, start: Configuration, seed: u64) -> Result<Self> {
        Self::with_stream(ctx, start, seed, 0)
    }

    pub fn with_stream(ctx: FsContext, start: Configuration, seed: u64, stream: u64) -> Result<Self> {
        if start.len() != ctx.n() {
            return Err(Error::InvalidConfiguration(format!(
                "configuration has length {} but n = {}",
                start.len(),
                ctx.n()
            )));
        }
        Ok(ChainState { rng: RngAlgorithm::Chacha8.make(seed, stream), ctx, current: start, seed, steps: 0 })
    }

    /// Independent chain from the same seed on another stream.
    pub fn split(&self, stream: u64) -> ChainState {
        ChainState {
            ctx: self.ctx.clone(),
            current: self.current.clone(),
            seed: self.seed,
            steps: self.steps,
            rng: RngAlgorithm::Chacha8.make(self.seed, stream),
        }
    }

    pub fn current(&self) -> &Configuration {
        &self.current
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn step_count(&self) -> u64 {
        self.steps
    }

    pub fn ctx(&self) -> &FsContext {
        &self.ctx
    }

    /// The uniform friendly-pair draw of one step, without the coin flip.
    pub fn choose_pair(&mut self) -> Option<(usize, usize)> {
        let pairs = self.ctx.friendly_edges(&self.current);
        if pairs.is_empty() {
            return None;
        }
        Some(pairs[self.rng.gen_range(0..pairs.len())])
    }

    pub fn step(&mut self) -> StepOutcome {
        self.steps += 1;
        let Some((a, b)) = self.choose_pair() else { return StepOutcome::Frozen };
        if self.rng.gen_bool(0.5) {
            self.current.swap_in_place(a, b);
            StepOutcome::Swapped(a, b)
        } else {
            StepOutcome::Stayed
        }
    }

    pub fn run(&mut self, steps: u64) -> TrajectorySummary {
        let mut s = TrajectorySummary { steps, swaps: 0, stays: 0, frozen: 0, end: self.current.clone() };
        for _ in 0..steps {
            match self.step() {
                StepOutcome::Swapped(..) => s.swaps += 1,
                StepOutcome::Stayed => s.stays += 1,
                StepOutcome::Frozen => s.frozen += 1,
            }
        }
        s.end = self.current.clone();
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub steps: u64,
    pub swaps: u64,
    pub stays: u64,
    pub frozen: u64,
    pub end: Configuration,
}

/// Row-stochastic matrix of the chain restricted to `component`.
pub fn transition_matrix(ctx: &FsContext, component: &ComponentGraph) -> Result<DMatrix<f64>> {
    let m = component.size();
    let cap = ctx.limits().dense_states;
    if m > cap {
        return Err(Error::budget("dense transition matrix states", cap as u64, m as u64));
    }
    let mut p = DMatrix::zeros(m, m);
    for i in 0..m {
        let nb = component.neighbors(i);
        if nb.is_empty() {
            p[(i, i)] = 1.0;
            continue;
        }
        let w = 1.0 / (2.0 * nb.len() as f64);
        p[(i, i)] = 0.5;
        for &j in nb {
            p[(i, j as usize)] += w;
        }
    }
    Ok(p)
}

/// Solves `πP = π`, `Σπ = 1` by LU.
pub fn stationary(p: &DMatrix<f64>) -> Result<Vec<f64>> {
    let m = p.nrows();
    if m == 0 || p.ncols() != m {
        return Err(Error::Precondition("transition matrix must be square and nonempty".into()));
    }
    let mut a = p.transpose() - DMatrix::identity(m, m);
    for j in 0..m {
        a[(m - 1, j)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::zeros(m);
    rhs[m - 1] = 1.0;
    let pi = a.lu().solve(&rhs).ok_or_else(|| Error::Precondition("chain is not irreducible".into()))?;
    Ok(pi.iter().copied().collect())
}

pub fn max_row_tv(pt: &DMatrix<f64>, pi: &[f64]) -> f64 {
    (0..pt.nrows())
        .map(|i| 0.5 * (0..pt.ncols()).map(|j| (pt[(i, j)] - pi[j]).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `max_σ TV(P^t(σ, ·), π)` for `t = 0..=t_max`.
pub fn tv_curve(p: &DMatrix<f64>, t_max: usize) -> Result<Vec<f64>> {
    let pi = stationary(p)?;
    let mut cur = DMatrix::identity(p.nrows(), p.nrows());
    let mut out = Vec::with_capacity(t_max + 1);
    for _ in 0..=t_max {
        out.push(max_row_tv(&cur, &pi));
        cur = &cur * p;
    }
    Ok(out)
}

/// Smallest `t` with `max_σ TV(P^t(σ, ·), π) ≤ ε`.
pub fn mixing_estimate(ctx: &FsContext, component: &ComponentGraph, epsilon: f64) -> Result<u64> {
    let p = transition_matrix(ctx, component)?;
    mixing_time(&p, epsilon)
}

pub fn mixing_time(p: &DMatrix<f64>, epsilon: f64) -> Result<u64> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let pi = stationary(p)?;
    let m = p.nrows();
    if max_row_tv(&DMatrix::identity(m, m), &pi) <= epsilon {
        return Ok(0);
    }
    // powers[k] = P^(2^k); stop once it mixes
    let mut powers = vec![p.clone()];
    while max_row_tv(powers.last().unwrap(), &pi) > epsilon {
        if powers.len() >= 62 {
            return Err(Error::Overflow("mixing time beyond 2^62".into()));
        }
        let last = powers.last().unwrap();
        powers.push(last * last);
    }
    // largest t with TV > ε, built bit by bit from the top
    let mut t = 0u64;
    let mut acc = DMatrix::identity(m, m);
    for k in (0..powers.len() - 1).rev() {
        let cand = &acc * &powers[k];
        if max_row_tv(&cand, &pi) > epsilon {
            acc = cand;
            t += 1 << k;
        }
    }
    Ok(t + 1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalTv {
    pub t: u64,
    pub samples: u64,
    pub tv: f64,
    /// Expected TV of a perfect sampler at this sample size, roughly `sqrt(m / samples)/2`.
    pub noise_floor: f64,
}

/// TV between the law of `X_t` from `start` and the degree-proportional stationary law, estimated from
/// `samples` independent runs.
pub fn empirical_tv(
    ctx: &FsContext,
    component: &ComponentGraph,
    start: &Configuration,
    t: u64,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalTv> {
    if !component.contains(start) {
        return Err(Error::Precondition("start outside the component".into()));
    }
    let m = component.size();
    let total: f64 = (0..m).map(|i| component.degree(i).max(1) as f64).sum();
    let mut counts = vec![0u64; m];
    for s in 0..samples {
        let mut c = ChainState::with_stream(ctx.clone(), start.clone(), seed, s)?;
        c.run(t);
        counts[component.index_of(c.current()).expect("closed under steps")] += 1;
    }
    let tv = 0.5
        * (0..m)
            .map(|i| (counts[i] as f64 / samples as f64 - component.degree(i).max(1) as f64 / total).abs())
            .sum::<f64>();
    Ok(EmpiricalTv { t, samples, tv, noise_floor: 0.5 * (m as f64 / samples as f64).sqrt() })
}

/// How often each friendly edge of `σ` is picked over `samples` draws.
pub fn pair_selection_counts(ctx: &FsContext, sigma: &Configuration, samples: u64, seed: u64) -> Vec<u64> {
    let pairs = ctx.friendly_edges(sigma);
    let mut counts = vec![0u64; pairs.len()];
    let mut chain = match ChainState::new(ctx.clone(), sigma.clone(), seed) {
        Ok(c) => c,
        Err(_) => return counts,
    };
    for _ in 0..samples {
        if let Some(e) = chain.choose_pair() {
            counts[pairs.iter().position(|&p| p == e).expect("friendly")] += 1;
        }
    }
    counts
}

/// Pearson statistic against the uniform law and its degrees of freedom.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, usize) {
    let total: u64 = counts.iter().sum();
    let k = counts.len();
    if k < 2 || total == 0 {
        return (0.0, k.saturating_sub(1));
    }
    let e = total as f64 / k as f64;
    (counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum(), k - 1)
}

/// Passes when the statistic lies within three standard deviations of its mean.
pub fn chi_square_passes(stat: f64, df: usize) -> bool {
    stat <= df as f64 + 3.0 * (2.0 * df as f64).sqrt()
}
