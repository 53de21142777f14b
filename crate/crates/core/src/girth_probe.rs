//! Closed walks of the star center in `FS(X, Star_n)`: statistics, the subgraph a walk touches,
//! synthesized cycle and barbell walks, and a comparison of the candidate lengths with the BFS girth.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explorer::fs_girth_witness;
use crate::fs::{Configuration, FsContext, SwapSequence};
use crate::graph::{BarbellDecomposition, SimpleGraph};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCount {
    pub edge: (usize, usize),
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkStatistics {
    pub length: usize,
    /// Arrivals of the center, per `X` vertex.
    pub visits: Vec<usize>,
    /// Per `X` edge, in edge order; unused edges are listed with count 0.
    pub traversals: Vec<EdgeCount>,
    /// Swaps per `Y` vertex; the center's own entry stays 0.
    pub leaf_swaps: Vec<usize>,
}

impl WalkStatistics {
    /// `(Σ visits, Σ traversals, Σ leaf swaps)`.
    pub fn sums(&self) -> (usize, usize, usize) {
        (
            self.visits.iter().sum(),
            self.traversals.iter().map(|e| e.count).sum(),
            self.leaf_swaps.iter().sum(),
        )
    }

    pub fn metrics_agree(&self) -> bool {
        let (a, b, c) = self.sums();
        a == self.length && b == self.length && c == self.length
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Point,
    Tree,
    Cycle,
    Barbell,
    Theta,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathInducedSubgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl PathInducedSubgraph {
    pub fn shape(&self) -> Shape {
        classify(&self.vertices, &self.edges)
    }
}

fn center_of(y: &SimpleGraph) -> Result<usize> {
    y.star_center().ok_or_else(|| Error::Precondition("Y must be a star".into()))
}

fn position_of(sigma: &Configuration, y: usize) -> usize {
    sigma.as_slice().iter().position(|&v| v == y).expect("bijection")
}

/// Vertices and edges of `X` touched by the star center along `seq`.
pub fn path_induced(ctx: &FsContext, seq: &SwapSequence) -> Result<PathInducedSubgraph> {
    let c = center_of(ctx.y())?;
    ctx.validate_sequence(seq)?;
    let mut at = position_of(&seq.start, c);
    let mut vs = BTreeSet::from([at]);
    let mut es = BTreeSet::new();
    for &(a, b) in &seq.swaps {
        let to = if a == at {
            b
        } else if b == at {
            a
        } else {
            return Err(Error::Precondition("swap not involving the star center".into()));
        };
        es.insert((a.min(b), a.max(b)));
        vs.insert(to);
        at = to;
    }
    Ok(PathInducedSubgraph { vertices: vs.into_iter().collect(), edges: es.into_iter().collect() })
}

pub fn walk_stats(ctx: &FsContext, seq: &SwapSequence) -> Result<WalkStatistics> {
    let c = center_of(ctx.y())?;
    ctx.validate_sequence(seq)?;
    let n = ctx.n();
    let mut cur = seq.start.as_slice().to_vec();
    let mut visits = vec![0; n];
    let mut per_edge = vec![0; ctx.x().edge_count()];
    let mut leaf_swaps = vec![0; n];
    for &(a, b) in &seq.swaps {
        let (to, from) = if cur[a] == c { (b, a) } else { (a, b) };
        visits[to] += 1;
        leaf_swaps[cur[to]] += 1;
        per_edge[ctx.x().edge_index(a, b).expect("validated")] += 1;
        cur.swap(from, to);
    }
    let traversals =
        ctx.x().edges().iter().zip(per_edge).map(|(&edge, count)| EdgeCount { edge, count }).collect();
    Ok(WalkStatistics { length: seq.len(), visits, traversals, leaf_swaps })
}

/// Center of `Star_n` at `x`, leaves in increasing order elsewhere.
pub fn star_start(n: usize, center: usize, x: usize) -> Configuration {
    let mut leaves = (0..n).filter(|&v| v != center);
    let map = (0..n).map(|p| if p == x { center } else { leaves.next().unwrap() }).collect();
    Configuration::new(map).expect("bijection")
}

/// The occupant of the cycle adjacent to all other occupants loops `k − 1` times.
pub fn cycle_walk(ctx: &FsContext, cycle: &[usize], start: &Configuration) -> Result<SwapSequence> {
    let k = cycle.len();
    if k < 3 {
        return Err(Error::Precondition(format!("cycle needs at least 3 vertices, got {k}")));
    }
    for i in 0..k {
        if !ctx.x().has_edge(cycle[i], cycle[(i + 1) % k]) {
            return Err(Error::NotAnEdge(cycle[i], cycle[(i + 1) % k]));
        }
    }
    let occ: Vec<usize> = cycle.iter().map(|&x| start.get(x)).collect();
    let at = (0..k)
        .find(|&i| (0..k).all(|j| j == i || ctx.y().has_edge(occ[i], occ[j])))
        .ok_or_else(|| Error::Precondition("no occupant is adjacent to all the others".into()))?;
    let mut seq = SwapSequence::new(start.clone());
    for s in 0..k * (k - 1) {
        let (a, b) = (cycle[(at + s) % k], cycle[(at + s + 1) % k]);
        seq.swaps.push((a.min(b), a.max(b)));
    }
    Ok(seq)
}

fn bfs_dist(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

struct WalkSearch<'a> {
    adj: Vec<Vec<usize>>,
    edge_id: &'a dyn Fn(usize, usize) -> usize,
    dist: Vec<Vec<usize>>,
    home: Vec<usize>,
    cap: Vec<usize>,
    visits: Vec<usize>,
    edge_uses: Vec<usize>,
    unused: usize,
    leaf_dist: usize,
    cur: Vec<usize>,
    start: usize,
    target: usize,
    seen: HashSet<Vec<usize>>,
    path: Vec<(usize, usize)>,
    nodes: u64,
    node_cap: u64,
}

impl WalkSearch<'_> {
    fn dfs(&mut self, at: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::budget("walk search nodes", self.node_cap, self.nodes));
        }
        let depth = self.path.len();
        let left = self.target - depth;
        if left == 0 {
            return Ok(at == self.start && self.leaf_dist == 0 && self.unused == 0);
        }
        if self.leaf_dist > left || self.unused > left || self.dist[at][self.start] > left {
            return Ok(false);
        }
        for i in 0..self.adj[at].len() {
            let w = self.adj[at][i];
            if self.visits[w] >= self.cap[w] {
                continue;
            }
            let leaf = self.cur[w];
            let h = self.home[leaf];
            let before = self.dist[w][h];
            let after = self.dist[at][h];
            self.cur.swap(at, w);
            let closing = depth + 1 == self.target;
            if !closing && !self.seen.insert(self.cur.clone()) {
                self.cur.swap(at, w);
                continue;
            }
            let e = (self.edge_id)(at, w);
            self.edge_uses[e] += 1;
            if self.edge_uses[e] == 1 {
                self.unused -= 1;
            }
            self.visits[w] += 1;
            self.leaf_dist = self.leaf_dist + after - before;
            self.path.push((at.min(w), at.max(w)));
            if self.dfs(w)? {
                return Ok(true);
            }
            self.path.pop();
            self.leaf_dist = self.leaf_dist + before - after;
            self.visits[w] -= 1;
            if self.edge_uses[e] == 1 {
                self.unused += 1;
            }
            self.edge_uses[e] -= 1;
            if !closing {
                self.seen.remove(&self.cur);
            }
            self.cur.swap(at, w);
        }
        Ok(false)
    }
}

/// Closed walk of the star center covering `B` with exactly `B`'s formula length, found by a
/// depth-bounded search that never repeats a configuration. Vertices on the connecting path (or the
/// shared vertex) may be entered four times, all other vertices twice.
pub fn barbell_walk(x: &SimpleGraph, b: &BarbellDecomposition, limits: &Limits) -> Result<SwapSequence> {
    b.validate(x)?;
    let n = x.n();
    let target = b.formula_length();
    let edges = b.edges();
    let verts = b.vertices();
    let start = verts[0];
    let center = 0;
    let sigma = star_start(n, center, start);
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let path: HashSet<usize> = b.path.iter().copied().collect();
    let mut cap = vec![0; n];
    for &v in &verts {
        cap[v] = if path.contains(&v) { 4 } else { 2 };
    }
    let mut home = vec![0; n];
    for (p, &y) in sigma.as_slice().iter().enumerate() {
        home[y] = p;
    }
    home[center] = start;
    let edge_id = |a: usize, c: usize| edges.binary_search(&(a.min(c), a.max(c))).expect("edge of B");
    let mut s = WalkSearch {
        adj,
        edge_id: &edge_id,
        dist: bfs_dist(n, &edges),
        home,
        cap,
        visits: vec![0; n],
        edge_uses: vec![0; edges.len()],
        unused: edges.len(),
        leaf_dist: 0,
        cur: sigma.as_slice().to_vec(),
        start,
        target,
        seen: HashSet::from([sigma.as_slice().to_vec()]),
        path: Vec::new(),
        nodes: 0,
        node_cap: limits.search_nodes,
    };
    if s.dfs(start)? {
        Ok(SwapSequence { start: sigma, swaps: s.path })
    } else {
        Err(Error::Precondition(format!("no closed walk of length {target} under the visit pattern")))
    }
}

/// Cycle / barbell / theta / tree shape of a connected edge set.
pub fn classify(vertices: &[usize], edges: &[(usize, usize)]) -> Shape {
    let nv = vertices.len();
    if edges.is_empty() {
        return if nv <= 1 { Shape::Point } else { Shape::Other };
    }
    let idx = |v: usize| vertices.binary_search(&v).ok();
    let mut deg = vec![0usize; nv];
    let mut local = Vec::new();
    for &(a, b) in edges {
        let (Some(i), Some(j)) = (idx(a), idx(b)) else { return Shape::Other };
        deg[i] += 1;
        deg[j] += 1;
        local.push((i, j));
    }
    let g = match SimpleGraph::new(nv, local) {
        Ok(g) => g,
        Err(_) => return Shape::Other,
    };
    if !g.is_connected() {
        return Shape::Other;
    }
    let ne = edges.len();
    if ne + 1 == nv {
        return Shape::Tree;
    }
    if deg.iter().any(|&d| d < 2) {
        return Shape::Other;
    }
    if ne == nv {
        return Shape::Cycle;
    }
    if ne == nv + 1 {
        return if g.has_cut_vertex() { Shape::Barbell } else { Shape::Theta };
    }
    Shape::Other
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(rename = "type")]
    pub kind: Shape,
    pub subgraph: PathInducedSubgraph,
    /// `None` for thetas: no length formula is known.
    pub formula_len: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub oracle_girth: Option<usize>,
    pub candidates: Vec<Candidate>,
    pub candidate_min: Option<usize>,
    pub witness_subgraph_type: Option<Shape>,
    pub witness_subgraph: Option<PathInducedSubgraph>,
    pub agree: bool,
}

/// Swaps along a closed list of configurations.
pub fn cycle_to_sequence(cycle: &[Configuration]) -> Result<SwapSequence> {
    let mut seq = SwapSequence::new(cycle[0].clone());
    for i in 0..cycle.len() {
        let (a, b) = (&cycle[i], &cycle[(i + 1) % cycle.len()]);
        let diff: Vec<usize> = (0..a.len()).filter(|&p| a.get(p) != b.get(p)).collect();
        if diff.len() != 2 {
            return Err(Error::InvalidConfiguration("consecutive configurations differ by more than a swap".into()));
        }
        seq.swaps.push((diff[0], diff[1]));
    }
    Ok(seq)
}

/// BFS girth of `FS(X, Star_n)` against the cycle and barbell candidate lengths.
pub fn conjecture_probe(x: &SimpleGraph, limits: &Limits) -> Result<ProbeReport> {
    let n = x.n();
    let ctx = FsContext::with_limits(x.clone(), SimpleGraph::star(n), limits.clone())?;
    let witness = fs_girth_witness(&ctx)?;
    let mut candidates = Vec::new();
    for c in x.cycle_subgraphs(limits)? {
        let k = c.len();
        let mut vertices = c.clone();
        vertices.sort_unstable();
        let mut edges: Vec<(usize, usize)> =
            (0..k).map(|i| (c[i].min(c[(i + 1) % k]), c[i].max(c[(i + 1) % k]))).collect();
        edges.sort_unstable();
        candidates.push(Candidate {
            kind: Shape::Cycle,
            subgraph: PathInducedSubgraph { vertices, edges },
            formula_len: Some(k * (k - 1)),
        });
    }
    for b in x.find_barbells_with(limits)? {
        candidates.push(Candidate {
            kind: Shape::Barbell,
            subgraph: PathInducedSubgraph { vertices: b.vertices(), edges: b.edges() },
            formula_len: Some(b.formula_length()),
        });
    }
    for t in x.find_thetas_with(limits)? {
        candidates.push(Candidate {
            kind: Shape::Theta,
            subgraph: PathInducedSubgraph { vertices: t.vertices(), edges: t.edges() },
            formula_len: None,
        });
    }
    let candidate_min = candidates.iter().filter_map(|c| c.formula_len).min();
    let (oracle_girth, witness_subgraph) = match &witness {
        Some(cyc) => {
            let seq = cycle_to_sequence(cyc)?;
            (Some(cyc.len()), Some(path_induced(&ctx, &seq)?))
        }
        None => (None, None),
    };
    Ok(ProbeReport {
        agree: oracle_girth == candidate_min,
        oracle_girth,
        candidate_min,
        witness_subgraph_type: witness_subgraph.as_ref().map(|s| s.shape()),
        witness_subgraph,
        candidates,
    })
}
