//! Acyclic orientations, flips and double-flips.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fs::Configuration;
use crate::graph::SimpleGraph;
use crate::limits::Limits;

/// An orientation of every edge of `base`, with no directed cycle.
///
/// `forward[e]` means edge `e = (u, v)` (with `u < v`) points `u -> v`.
#[derive(Clone, Debug)]
pub struct AcyclicOrientation {
    base: Arc<SimpleGraph>,
    forward: Vec<bool>,
}

impl PartialEq for AcyclicOrientation {
    fn eq(&self, other: &Self) -> bool {
        self.forward == other.forward && (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
    }
}

impl Eq for AcyclicOrientation {}

impl Hash for AcyclicOrientation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.forward.hash(state);
    }
}

impl PartialOrd for AcyclicOrientation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AcyclicOrientation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arcs().cmp(&other.arcs())
    }
}

#[derive(Serialize, Deserialize)]
struct OrientationJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl Serialize for AcyclicOrientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrientationJson { n: self.base.n(), arcs: self.arcs().into_iter().map(|(a, b)| [a, b]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AcyclicOrientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OrientationJson::deserialize(d)?;
        let arcs: Vec<(usize, usize)> = j.arcs.iter().map(|a| (a[0], a[1])).collect();
        let base = SimpleGraph::new(j.n, arcs.iter().copied()).map_err(serde::de::Error::custom)?;
        AcyclicOrientation::from_arcs(&base, &arcs).map_err(serde::de::Error::custom)
    }
}

impl AcyclicOrientation {
    /// Builds from a full list of directed edges of `base`.
    pub fn from_arcs(base: &SimpleGraph, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::from_arcs_shared(Arc::new(base.clone()), arcs)
    }

    fn from_arcs_shared(base: Arc<SimpleGraph>, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut forward = vec![None; base.edge_count()];
        for &(a, b) in arcs {
            let e = base.edge_index(a, b).ok_or(Error::NotAnEdge(a, b))?;
            if forward[e].replace(a < b).is_some() {
                return Err(Error::InvalidGraph(format!("edge {{{a},{b}}} oriented twice")));
            }
        }
        if forward.iter().any(Option::is_none) {
            return Err(Error::InvalidGraph("some edges are not oriented".into()));
        }
        let o = AcyclicOrientation { base, forward: forward.into_iter().map(Option::unwrap).collect() };
        if o.topological_order().is_none() {
            return Err(Error::InvalidGraph("orientation has a directed cycle".into()));
        }
        Ok(o)
    }

    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn forward_bits(&self) -> &[bool] {
        &self.forward
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.base
            .edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect()
    }

    /// Whether the edge `{a, b}` points `a -> b`.
    pub fn points(&self, a: usize, b: usize) -> Option<bool> {
        self.base.edge_index(a, b).map(|e| self.forward[e] == (a < b))
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.base.neighbors(v).iter().all(|&w| self.points(v, w) == Some(true))
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.base.neighbors(v).iter().all(|&w| self.points(w, v) == Some(true))
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_sink(v)).collect()
    }

    fn reverse_at(&mut self, v: usize) {
        for &w in self.base.neighbors(v) {
            let e = self.base.edge_index(v, w).unwrap();
            self.forward[e] = !self.forward[e];
        }
    }

    pub fn inflip(&self, v: usize) -> Result<Self> {
        if v >= self.n() || !self.is_source(v) {
            return Err(Error::Precondition(format!("{v} is not a source")));
        }
        let mut o = self.clone();
        o.reverse_at(v);
        Ok(o)
    }

    pub fn outflip(&self, v: usize) -> Result<Self> {
        if v >= self.n() || !self.is_sink(v) {
            return Err(Error::Precondition(format!("{v} is not a sink")));
        }
        let mut o = self.clone();
        o.reverse_at(v);
        Ok(o)
    }

    /// Inflip the source `v` and outflip the sink `w` together.
    pub fn double_flip(&self, v: usize, w: usize) -> Result<Self> {
        if v == w {
            return Err(Error::Precondition("double-flip needs two distinct vertices".into()));
        }
        if v >= self.n() || w >= self.n() {
            return Err(Error::Precondition(format!("vertex out of range in double-flip ({v}, {w})")));
        }
        if self.base.has_edge(v, w) {
            return Err(Error::Precondition(format!("{v} and {w} are adjacent")));
        }
        let mut o = self.inflip(v)?;
        if !o.is_sink(w) {
            return Err(Error::Precondition(format!("{w} is not a sink")));
        }
        o.reverse_at(w);
        Ok(o)
    }

    /// Kahn's algorithm, smallest available vertex first.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (_, b) in self.arcs() {
            indeg[b] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for &w in self.base.neighbors(u) {
                if self.points(u, w) == Some(true) {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.insert(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// One linear extension, as a configuration listing the vertices in order.
    pub fn linear_extension(&self) -> Configuration {
        Configuration::from_vec_unchecked(self.topological_order().expect("acyclic"))
    }

    pub fn is_linear_extension(&self, sigma: &Configuration) -> bool {
        sigma.len() == self.n() && orientation_from(sigma, &self.base).forward == self.forward
    }

    /// `reach[u]` has bit `v` set iff there is a directed path `u ~> v`.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let order = self.topological_order().expect("acyclic");
        let mut reach = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            reach[u][u] = true;
            for &w in self.base.neighbors(u) {
                if self.points(u, w) == Some(true) {
                    let (ru, rw) = if u < w {
                        let (l, r) = reach.split_at_mut(w);
                        (&mut l[u], &r[0])
                    } else {
                        let (l, r) = reach.split_at_mut(u);
                        (&mut r[0], &l[w])
                    };
                    for (a, &b) in ru.iter_mut().zip(rw) {
                        *a |= b;
                    }
                }
            }
        }
        reach
    }

    /// Number of unordered pairs comparable in the induced poset.
    pub fn comparable_pairs(&self) -> usize {
        let r = self.reachability();
        let n = self.n();
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && r[u][v]).count()
    }

    /// Per fundamental cycle, the number of arcs pointing along the traversal.
    pub fn cycle_signature(&self) -> CycleSignature {
        CycleSignature(
            self.base
                .fundamental_cycles()
                .iter()
                .map(|c| c.iter().filter(|&&(a, b)| self.points(a, b) == Some(true)).count())
                .collect(),
        )
    }

    /// The same count over every simple cycle; only for small graphs.
    pub fn full_cycle_signature(&self, limits: &Limits) -> Result<Vec<usize>> {
        let cycles = self.base.cycle_subgraphs(limits)?;
        Ok(cycles
            .iter()
            .map(|c| (0..c.len()).filter(|&i| self.points(c[i], c[(i + 1) % c.len()]) == Some(true)).count())
            .collect())
    }

    /// `n` inflips along a linear extension; the orientation comes back to itself.
    pub fn cyclic_inflip_order(&self) -> Vec<usize> {
        self.topological_order().expect("acyclic")
    }
}

/// Counts of forward arcs per fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleSignature(pub Vec<usize>);

/// `i -> j` iff `i` sits before `j` in `σ`.
pub fn orientation_from(sigma: &Configuration, g: &SimpleGraph) -> AcyclicOrientation {
    orientation_from_shared(sigma, Arc::new(g.clone()))
}

fn orientation_from_shared(sigma: &Configuration, base: Arc<SimpleGraph>) -> AcyclicOrientation {
    let pos = sigma.inverse();
    let forward = base.edges().iter().map(|&(u, v)| pos.get(u) < pos.get(v)).collect();
    AcyclicOrientation { base, forward }
}

/// Every acyclic orientation of `g`.
pub fn acyclic_orientations(g: &SimpleGraph, limits: &Limits) -> Result<Vec<AcyclicOrientation>> {
    limits.check_orientation(g.n())?;
    let base = Arc::new(g.clone());
    let m = g.edge_count();
    let edges = g.edges().to_vec();
    let mut out = Vec::new();
    let mut forward = vec![false; m];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        edges: &[(usize, usize)],
        forward: &mut Vec<bool>,
        adj: &mut Vec<Vec<usize>>,
        base: &Arc<SimpleGraph>,
        out: &mut Vec<AcyclicOrientation>,
        cap: u64,
    ) -> Result<()> {
        if i == edges.len() {
            if out.len() as u64 >= cap {
                return Err(Error::budget("acyclic orientations", cap, out.len() as u64 + 1));
            }
            out.push(AcyclicOrientation { base: base.clone(), forward: forward.clone() });
            return Ok(());
        }
        let (u, v) = edges[i];
        for f in [true, false] {
            let (a, b) = if f { (u, v) } else { (v, u) };
            if !reaches(adj, b, a) {
                forward[i] = f;
                adj[a].push(b);
                go(i + 1, edges, forward, adj, base, out, cap)?;
                adj[a].pop();
            }
        }
        Ok(())
    }
    go(0, &edges, &mut forward, &mut adj, &base, &mut out, limits.max_states)?;
    Ok(out)
}

/// Every linear extension of `α`, as configurations listing vertices in order.
pub fn linear_extensions(alpha: &AcyclicOrientation, limits: &Limits) -> Result<Vec<Configuration>> {
    let n = alpha.n();
    limits.check_orientation(n)?;
    let mut indeg = vec![0usize; n];
    for (_, b) in alpha.arcs() {
        indeg[b] += 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        alpha: &AcyclicOrientation,
        indeg: &mut [usize],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Configuration>,
        cap: u64,
    ) -> Result<()> {
        let n = alpha.n();
        if cur.len() == n {
            if out.len() as u64 >= cap {
                return Err(Error::budget("linear extensions", cap, out.len() as u64 + 1));
            }
            out.push(Configuration::from_vec_unchecked(cur.clone()));
            return Ok(());
        }
        for v in 0..n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            cur.push(v);
            let outs: Vec<usize> =
                alpha.base.neighbors(v).iter().copied().filter(|&w| alpha.points(v, w) == Some(true)).collect();
            for &w in &outs {
                indeg[w] -= 1;
            }
            go(alpha, indeg, used, cur, out, cap)?;
            for &w in &outs {
                indeg[w] += 1;
            }
            cur.pop();
            used[v] = false;
        }
        Ok(())
    }
    go(alpha, &mut indeg, &mut used, &mut cur, &mut out, limits.max_states)?;
    Ok(out)
}

/// Flip potentials: `k[v]` inflips at `v` carry `from` to `to`, if the two are flip-equivalent.
fn flip_potential(from: &AcyclicOrientation, to: &AcyclicOrientation) -> Option<Vec<i64>> {
    let g = &from.base;
    let n = g.n();
    let mut k: Vec<Option<i64>> = vec![None; n];
    for comp in g.components() {
        let root = comp[0];
        k[root] = Some(0);
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            let ku = k[u].unwrap();
            for &w in g.neighbors(u) {
                let e = g.edge_index(u, w).unwrap();
                let differs = (from.forward[e] != to.forward[e]) as i64;
                // along u -> w in `from`: k(u) - k(w) = differs
                let kw = if from.points(u, w) == Some(true) { ku - differs } else { ku + differs };
                match k[w] {
                    None => {
                        k[w] = Some(kw);
                        q.push_back(w);
                    }
                    Some(x) if x != kw => return None,
                    _ => {}
                }
            }
        }
        let lo = comp.iter().map(|&v| k[v].unwrap()).min().unwrap();
        for &v in &comp {
            k[v] = Some(k[v].unwrap() - lo);
        }
    }
    Some(k.into_iter().map(Option::unwrap).collect())
}

fn same_base(a: &AcyclicOrientation, b: &AcyclicOrientation) -> Result<()> {
    if Arc::ptr_eq(&a.base, &b.base) || a.base == b.base {
        Ok(())
    } else {
        Err(Error::Precondition("orientations of different graphs".into()))
    }
}

/// A shortest inflip sequence from `from` to `to`, or `None` when they are not flip-equivalent.
pub fn inflip_sequence(from: &AcyclicOrientation, to: &AcyclicOrientation) -> Result<Option<Vec<usize>>> {
    same_base(from, to)?;
    if from.cycle_signature() != to.cycle_signature() {
        return Ok(None);
    }
    if let Some(mut k) = flip_potential(from, to) {
        let mut cur = from.clone();
        let mut seq = Vec::new();
        while let Some(v) = (0..cur.n()).find(|&v| k[v] > 0 && cur.is_source(v)) {
            cur.reverse_at(v);
            k[v] -= 1;
            seq.push(v);
        }
        if cur == *to {
            return Ok(Some(seq));
        }
    }
    inflip_bfs(from, to, &Limits::default())
}

fn inflip_bfs(from: &AcyclicOrientation, to: &AcyclicOrientation, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let mut prev: HashMap<Vec<bool>, (Vec<bool>, usize)> = HashMap::new();
    let mut seen: HashSet<Vec<bool>> = HashSet::from([from.forward.clone()]);
    let mut q = VecDeque::from([from.clone()]);
    while let Some(cur) = q.pop_front() {
        if cur.forward == to.forward {
            let mut seq = Vec::new();
            let mut f = cur.forward.clone();
            while let Some((p, v)) = prev.get(&f) {
                seq.push(*v);
                f = p.clone();
            }
            seq.reverse();
            return Ok(Some(seq));
        }
        for v in cur.sources() {
            let mut nx = cur.clone();
            nx.reverse_at(v);
            if seen.insert(nx.forward.clone()) {
                if seen.len() as u64 > limits.max_states {
                    return Err(Error::budget("orientation search", limits.max_states, seen.len() as u64));
                }
                prev.insert(nx.forward.clone(), (cur.forward.clone(), v));
                q.push_back(nx);
            }
        }
    }
    Ok(None)
}

/// An outflip sequence from `from` to `to`: the reverse of an inflip sequence `to -> from`.
pub fn outflip_sequence(from: &AcyclicOrientation, to: &AcyclicOrientation) -> Result<Option<Vec<usize>>> {
    Ok(inflip_sequence(to, from)?.map(|mut s| {
        s.reverse();
        s
    }))
}

/// Flip equivalence with an inflip certificate when it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipCertificate {
    pub equivalent: bool,
    pub inflips: Vec<usize>,
}

pub fn flip_equivalent(a: &AcyclicOrientation, b: &AcyclicOrientation) -> Result<FlipCertificate> {
    Ok(match inflip_sequence(a, b)? {
        Some(inflips) => FlipCertificate { equivalent: true, inflips },
        None => FlipCertificate { equivalent: false, inflips: Vec::new() },
    })
}

/// Replays inflips, failing on the first vertex that is not a source.
pub fn apply_inflips(alpha: &AcyclicOrientation, seq: &[usize]) -> Result<AcyclicOrientation> {
    let mut cur = alpha.clone();
    for (i, &v) in seq.iter().enumerate() {
        cur = cur.inflip(v).map_err(|e| Error::InvalidStep { index: i, reason: Box::new(e) })?;
    }
    Ok(cur)
}

pub fn apply_outflips(alpha: &AcyclicOrientation, seq: &[usize]) -> Result<AcyclicOrientation> {
    let mut cur = alpha.clone();
    for (i, &v) in seq.iter().enumerate() {
        cur = cur.outflip(v).map_err(|e| Error::InvalidStep { index: i, reason: Box::new(e) })?;
    }
    Ok(cur)
}

fn closure(
    alpha: &AcyclicOrientation,
    limits: &Limits,
    step: impl Fn(&AcyclicOrientation) -> Vec<AcyclicOrientation>,
) -> Result<Vec<AcyclicOrientation>> {
    limits.check_orientation(alpha.n())?;
    let mut seen = HashSet::from([alpha.clone()]);
    let mut q = VecDeque::from([alpha.clone()]);
    while let Some(cur) = q.pop_front() {
        for nx in step(&cur) {
            if !seen.contains(&nx) {
                if seen.len() as u64 >= limits.max_states {
                    return Err(Error::budget("orientation closure", limits.max_states, seen.len() as u64 + 1));
                }
                seen.insert(nx.clone());
                q.push_back(nx);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn flip_moves(a: &AcyclicOrientation) -> Vec<AcyclicOrientation> {
    (0..a.n())
        .filter(|&v| a.is_source(v) || a.is_sink(v))
        .map(|v| {
            let mut o = a.clone();
            o.reverse_at(v);
            o
        })
        .collect()
}

fn double_flip_moves(a: &AcyclicOrientation) -> Vec<AcyclicOrientation> {
    let src = a.sources();
    let snk = a.sinks();
    let mut out = Vec::new();
    for &v in &src {
        for &w in &snk {
            if v != w && !a.base.has_edge(v, w) {
                let mut o = a.clone();
                o.reverse_at(v);
                o.reverse_at(w);
                out.push(o);
            }
        }
    }
    out
}

/// The toric class of `α` (closure under flips), sorted.
pub fn toric_class(alpha: &AcyclicOrientation, limits: &Limits) -> Result<Vec<AcyclicOrientation>> {
    closure(alpha, limits, flip_moves)
}

/// The double-flip class of `α`, sorted.
pub fn double_flip_class(alpha: &AcyclicOrientation, limits: &Limits) -> Result<Vec<AcyclicOrientation>> {
    closure(alpha, limits, double_flip_moves)
}

/// Canonical representative: least orientation of the class by arc list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassId(pub AcyclicOrientation);

pub fn toric_class_id(alpha: &AcyclicOrientation, limits: &Limits) -> Result<ClassId> {
    Ok(ClassId(toric_class(alpha, limits)?.swap_remove(0)))
}

pub fn double_flip_class_id(alpha: &AcyclicOrientation, limits: &Limits) -> Result<ClassId> {
    Ok(ClassId(double_flip_class(alpha, limits)?.swap_remove(0)))
}

fn partition(
    g: &SimpleGraph,
    limits: &Limits,
    class: impl Fn(&AcyclicOrientation) -> Result<Vec<AcyclicOrientation>>,
) -> Result<Vec<Vec<AcyclicOrientation>>> {
    let mut done: HashSet<AcyclicOrientation> = HashSet::new();
    let mut out = Vec::new();
    for a in acyclic_orientations(g, limits)? {
        if done.contains(&a) {
            continue;
        }
        let c = class(&a)?;
        done.extend(c.iter().cloned());
        out.push(c);
    }
    out.sort();
    Ok(out)
}

pub fn double_flip_classes(g: &SimpleGraph, limits: &Limits) -> Result<Vec<Vec<AcyclicOrientation>>> {
    partition(g, limits, |a| double_flip_class(a, limits))
}

pub fn toric_classes(g: &SimpleGraph, limits: &Limits) -> Result<Vec<Vec<AcyclicOrientation>>> {
    partition(g, limits, |a| toric_class(a, limits))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class_count: usize,
    pub sizes: Vec<usize>,
}

pub fn class_report(classes: &[Vec<AcyclicOrientation>]) -> ClassReport {
    ClassReport { class_count: classes.len(), sizes: classes.iter().map(Vec::len).collect() }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `FS(Cycle_n, Y)` connectivity: the complement of `Y` is a forest whose tree sizes have gcd 1.
pub fn cycle_connectivity_predicate(y: &SimpleGraph) -> Result<bool> {
    if y.n() < 3 {
        return Err(Error::Precondition("cycle connectivity needs n >= 3".into()));
    }
    let c = y.complement();
    Ok(c.is_forest() && c.components().iter().map(Vec::len).fold(0, gcd) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn orientation_from_examples() {
        let p = SimpleGraph::path(3);
        let a = orientation_from(&Configuration::identity(3), &p);
        assert_eq!(a.arcs(), vec![(0, 1), (1, 2)]);
        let r = orientation_from(&Configuration::reverse(3), &p);
        assert_eq!(r.arcs(), vec![(1, 0), (2, 1)]);
        let s = Configuration::new(vec![2, 0, 1]).unwrap();
        assert!(orientation_from(&s, &p).is_linear_extension(&s));
    }

    #[test]
    fn from_arcs_rejects_cycles() {
        let c = SimpleGraph::cycle(3).unwrap();
        assert!(AcyclicOrientation::from_arcs(&c, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(AcyclicOrientation::from_arcs(&c, &[(0, 1), (1, 2), (0, 2)]).is_ok());
        assert!(AcyclicOrientation::from_arcs(&c, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn linear_extension_examples() {
        let e = AcyclicOrientation::from_arcs(&SimpleGraph::empty(3), &[]).unwrap();
        assert_eq!(linear_extensions(&e, &lim()).unwrap().len(), 6);
        let t = AcyclicOrientation::from_arcs(&SimpleGraph::path(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(linear_extensions(&t, &lim()).unwrap().len(), 1);
        let v = AcyclicOrientation::from_arcs(&SimpleGraph::path(3), &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(linear_extensions(&v, &lim()).unwrap().len(), 2);
    }

    #[test]
    fn flips() {
        let g = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let a = AcyclicOrientation::from_arcs(&g, &[(0, 1)]).unwrap();
        assert_eq!(a.inflip(0).unwrap().arcs(), vec![(1, 0)]);
        assert!(a.inflip(1).is_err());
        assert_eq!(a.inflip(0).unwrap().outflip(0).unwrap(), a);
        let iso = AcyclicOrientation::from_arcs(&SimpleGraph::empty(2), &[]).unwrap();
        assert_eq!(iso.inflip(1).unwrap(), iso);
        assert_eq!(iso.double_flip(0, 1).unwrap(), iso);
    }

    #[test]
    fn double_flip_examples() {
        let g = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let a = AcyclicOrientation::from_arcs(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(a.double_flip(0, 3).unwrap().arcs(), vec![(1, 0), (3, 2)]);
        assert!(a.double_flip(0, 1).is_err());
        assert!(a.double_flip(1, 3).is_err());
        assert!(a.double_flip(0, 0).is_err());
    }

    #[test]
    fn cyclic_inflips_return() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let a = orientation_from(&Configuration::new(vec![1, 0, 3, 2]).unwrap(), &g);
        assert_eq!(apply_inflips(&a, &a.cyclic_inflip_order()).unwrap(), a);
    }

    #[test]
    fn flip_equivalence_examples() {
        let g = SimpleGraph::new(2, [(0, 1)]).unwrap();
        let a = AcyclicOrientation::from_arcs(&g, &[(0, 1)]).unwrap();
        assert_eq!(flip_equivalent(&a, &a).unwrap(), FlipCertificate { equivalent: true, inflips: vec![] });
        let b = AcyclicOrientation::from_arcs(&g, &[(1, 0)]).unwrap();
        assert_eq!(flip_equivalent(&a, &b).unwrap().inflips, vec![0]);
        let c3 = SimpleGraph::cycle(3).unwrap();
        let one = AcyclicOrientation::from_arcs(&c3, &[(0, 1), (2, 1), (0, 2)]).unwrap();
        let two = AcyclicOrientation::from_arcs(&c3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!flip_equivalent(&one, &two).unwrap().equivalent);
    }

    #[test]
    fn class_examples() {
        let e = SimpleGraph::empty(3);
        assert_eq!(double_flip_classes(&e, &lim()).unwrap().len(), 1);
        let cs = SimpleGraph::star(4).complement();
        assert_eq!(double_flip_classes(&cs, &lim()).unwrap().len(), 2);
    }

    #[test]
    fn connectivity_predicate_examples() {
        assert!(cycle_connectivity_predicate(&SimpleGraph::complete(5)).unwrap());
        let two_edges = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap().complement();
        assert!(!cycle_connectivity_predicate(&two_edges).unwrap());
        let tri = SimpleGraph::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap().complement();
        assert!(!cycle_connectivity_predicate(&tri).unwrap());
        assert!(cycle_connectivity_predicate(&SimpleGraph::complete(2)).is_err());
    }

    #[test]
    fn orientation_count_is_chromatic_value() {
        assert_eq!(acyclic_orientations(&SimpleGraph::complete(4), &lim()).unwrap().len(), 24);
        assert_eq!(acyclic_orientations(&SimpleGraph::cycle(4).unwrap(), &lim()).unwrap().len(), 14);
        assert_eq!(acyclic_orientations(&SimpleGraph::path(4), &lim()).unwrap().len(), 8);
    }

    #[test]
    fn json_round_trip() {
        let a = orientation_from(&Configuration::new(vec![2, 0, 1]).unwrap(), &SimpleGraph::cycle(3).unwrap());
        let s = serde_json::to_string(&a).unwrap();
        let b: AcyclicOrientation = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comparable_pairs_examples() {
        let t = AcyclicOrientation::from_arcs(&SimpleGraph::path(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(t.comparable_pairs(), 3);
        let v = AcyclicOrientation::from_arcs(&SimpleGraph::path(3), &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(v.comparable_pairs(), 2);
    }
}
