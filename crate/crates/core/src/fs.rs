//! Configurations and the friendly-swap adjacency of `FS(X, Y)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::limits::Limits;

/// A bijection `V(X) -> V(Y)`, stored as `map[x] = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Configuration(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl TryFrom<Vec<usize>> for Configuration {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Configuration::new(v)
    }
}

impl From<Configuration> for Vec<usize> {
    fn from(c: Configuration) -> Self {
        c.0
    }
}

impl Configuration {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &y in &map {
            if y >= n || seen[y] {
                return Err(Error::InvalidConfiguration(format!("{map:?} is not a permutation of 0..{n}")));
            }
            seen[y] = true;
        }
        Ok(Configuration(map))
    }

    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        Configuration(map)
    }

    pub fn identity(n: usize) -> Self {
        Configuration((0..n).collect())
    }

    /// `x -> n-1-x`.
    pub fn reverse(n: usize) -> Self {
        Configuration((0..n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn inverse(&self) -> Configuration {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Configuration(inv)
    }

    /// Transposes the images of `a` and `b` without any friendliness check.
    pub fn swapped(&self, a: usize, b: usize) -> Configuration {
        let mut m = self.0.clone();
        m.swap(a, b);
        Configuration(m)
    }

    pub(crate) fn swap_in_place(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }

    pub fn parity(&self) -> Parity {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The one-line word `σ(0) σ(1) … σ(n−1)`.
    pub fn word(&self) -> String {
        self.0.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_word(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::parse).collect();
        Configuration::new(parts.map_err(|_| Error::Parse(format!("bad configuration word `{s}`")))?)
    }

    /// Lehmer-code rank in lexicographic order.
    pub fn rank(&self) -> u64 {
        rank_slice(&self.0)
    }

    pub fn unrank(n: usize, rank: u64) -> Configuration {
        let mut out = vec![0; n];
        unrank_into(n, rank, &mut out);
        Configuration(out)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

pub fn parity_class(sigma: &Configuration) -> Parity {
    sigma.parity()
}

pub(crate) fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

pub(crate) fn rank_slice<T: Copy + Into<usize>>(p: &[T]) -> u64 {
    let n = p.len();
    let mut used: u32 = 0;
    let mut r: u64 = 0;
    for (i, &v) in p.iter().enumerate() {
        let v: usize = v.into();
        let smaller_unused = v as u32 - (used & ((1u32 << v) - 1)).count_ones();
        r = r * (n - i) as u64 + smaller_unused as u64;
        used |= 1 << v;
    }
    r
}

pub(crate) fn unrank_into<T: TryFrom<usize> + Copy>(n: usize, mut rank: u64, out: &mut [T])
where
    <T as TryFrom<usize>>::Error: fmt::Debug,
{
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (rank % base) as usize;
        rank /= base;
    }
    let mut avail: Vec<usize> = (0..n).collect();
    for i in 0..n {
        out[i] = T::try_from(avail.remove(digits[i])).unwrap();
    }
}

/// A start configuration plus the X-edges swapped in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSequence {
    pub start: Configuration,
    pub swaps: Vec<(usize, usize)>,
}

impl SwapSequence {
    pub fn new(start: Configuration) -> Self {
        SwapSequence { start, swaps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Every configuration visited, start and end included.
    pub fn configurations(&self) -> Vec<Configuration> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for &(a, b) in &self.swaps {
            cur.swap_in_place(a, b);
            out.push(cur.clone());
        }
        out
    }

    /// The endpoint without checking any swap.
    pub fn end_unchecked(&self) -> Configuration {
        let mut cur = self.start.clone();
        for &(a, b) in &self.swaps {
            cur.swap_in_place(a, b);
        }
        cur
    }
}

/// The pair `(X, Y)`.
#[derive(Clone, Debug)]
pub struct FsContext {
    x: SimpleGraph,
    y: SimpleGraph,
    limits: Limits,
}

impl FsContext {
    pub fn new(x: SimpleGraph, y: SimpleGraph) -> Result<Self> {
        Self::with_limits(x, y, Limits::default())
    }

    pub fn with_limits(x: SimpleGraph, y: SimpleGraph, limits: Limits) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::InvalidGraph(format!("|V(X)| = {} but |V(Y)| = {}", x.n(), y.n())));
        }
        Ok(FsContext { x, y, limits })
    }

    pub fn x(&self) -> &SimpleGraph {
        &self.x
    }

    pub fn y(&self) -> &SimpleGraph {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    fn check_len(&self, sigma: &Configuration) -> Result<()> {
        if sigma.len() != self.n() {
            return Err(Error::InvalidConfiguration(format!(
                "configuration has length {} but n = {}",
                sigma.len(),
                self.n()
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn is_friendly(&self, sigma: &[usize], a: usize, b: usize) -> bool {
        self.x.has_edge(a, b) && self.y.has_edge(sigma[a], sigma[b])
    }

    fn check_swap(&self, sigma: &[usize], a: usize, b: usize) -> Result<()> {
        if !self.x.has_edge(a, b) {
            return Err(Error::NotAnEdge(a, b));
        }
        if !self.y.has_edge(sigma[a], sigma[b]) {
            return Err(Error::Unfriendly { a, b, ya: sigma[a], yb: sigma[b] });
        }
        Ok(())
    }

    pub fn apply_swap(&self, sigma: &Configuration, edge: (usize, usize)) -> Result<Configuration> {
        self.check_len(sigma)?;
        self.check_swap(sigma.as_slice(), edge.0, edge.1)?;
        Ok(sigma.swapped(edge.0, edge.1))
    }

    /// X-edges that are friendly at `sigma`, in edge order.
    pub fn friendly_edges(&self, sigma: &Configuration) -> Vec<(usize, usize)> {
        let s = sigma.as_slice();
        self.x.edges().iter().copied().filter(|&(a, b)| self.y.has_edge(s[a], s[b])).collect()
    }

    pub fn degree(&self, sigma: &Configuration) -> usize {
        let s = sigma.as_slice();
        self.x.edges().iter().filter(|&&(a, b)| self.y.has_edge(s[a], s[b])).count()
    }

    pub fn neighbors(&self, sigma: &Configuration) -> Vec<Configuration> {
        self.friendly_edges(sigma).into_iter().map(|(a, b)| sigma.swapped(a, b)).collect()
    }

    /// `|E(X)|·|E(Y)|·(n−2)!`.
    pub fn fs_edge_count(&self) -> Result<u64> {
        let n = self.n();
        if n < 2 {
            return Ok(0);
        }
        let f = factorial(n - 2).ok_or_else(|| Error::Overflow(format!("({n}-2)! exceeds u64")))?;
        (self.x.edge_count() as u64)
            .checked_mul(self.y.edge_count() as u64)
            .and_then(|p| p.checked_mul(f))
            .ok_or_else(|| Error::Overflow("edge count exceeds u64".into()))
    }

    /// Replays `seq`, returning its endpoint or the first bad index.
    pub fn validate_sequence(&self, seq: &SwapSequence) -> Result<Configuration> {
        self.check_len(&seq.start)?;
        let mut cur = seq.start.clone();
        for (index, &(a, b)) in seq.swaps.iter().enumerate() {
            if a >= self.n() || b >= self.n() {
                return Err(Error::InvalidStep { index, reason: Box::new(Error::NotAnEdge(a, b)) });
            }
            self.check_swap(cur.as_slice(), a, b)
                .map_err(|e| Error::InvalidStep { index, reason: Box::new(e) })?;
            cur.swap_in_place(a, b);
        }
        Ok(cur)
    }

    /// The context with the roles of X and Y exchanged.
    pub fn swapped_roles(&self) -> FsContext {
        FsContext { x: self.y.clone(), y: self.x.clone(), limits: self.limits.clone() }
    }
}
