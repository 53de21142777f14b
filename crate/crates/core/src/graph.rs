//! Undirected simple graphs on `0..n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

/// Named families from the usual notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    CompleteBipartite,
    Empty,
    Bowtie,
    Barbell,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "complete_bipartite" | "bipartite" => Family::CompleteBipartite,
            "empty" => Family::Empty,
            "bowtie" => Family::Bowtie,
            "barbell" => Family::Barbell,
            _ => return None,
        })
    }
}

pub fn make_named(family: Family, params: &[usize]) -> Result<SimpleGraph> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [n] if *n >= 1 => Ok(*n),
            _ => Err(Error::InvalidGraph(format!("{what} takes one size >= 1"))),
        }
    };
    match family {
        Family::Path => Ok(SimpleGraph::path(one("path")?)),
        Family::Cycle => SimpleGraph::cycle(one("cycle")?),
        Family::Star => Ok(SimpleGraph::star(one("star")?)),
        Family::Complete => Ok(SimpleGraph::complete(one("complete")?)),
        Family::Empty => Ok(SimpleGraph::empty(one("empty")?)),
        Family::CompleteBipartite => match params {
            [i, j] if *i >= 1 && *j >= 1 => Ok(SimpleGraph::complete_bipartite(*i, *j)),
            _ => Err(Error::InvalidGraph("complete_bipartite takes two sizes >= 1".into())),
        },
        Family::Bowtie => match params {
            [] => SimpleGraph::barbell(3, 3, 0),
            _ => Err(Error::InvalidGraph("bowtie takes no sizes".into())),
        },
        Family::Barbell => match params {
            [a, b, e] => SimpleGraph::barbell(*a, *b, *e),
            _ => Err(Error::InvalidGraph("barbell takes c1,c2,path_edges".into())),
        },
    }
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {{{u},{v}}} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u},{v}}}")));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// Like `new`, but silently drops duplicates.
    pub fn from_edge_set(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Self::new(n, set)
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![0u64; n * words];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        SimpleGraph { n, edges, adj, words, bits }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn star(n: usize) -> Self {
        Self::from_sorted(n, (1..n).map(|i| (0, i)).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Self::from_sorted(n, e)
    }

    pub fn complete_bipartite(i: usize, j: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..i {
            for v in i..i + j {
                e.push((u, v));
            }
        }
        Self::from_sorted(i + j, e)
    }

    /// Cycles `C_a` on `0..a` and `C_b` joined by a path with `e` edges; `e = 0` glues them at a vertex.
    pub fn barbell(a: usize, b: usize, e: usize) -> Result<Self> {
        if a < 3 || b < 3 {
            return Err(Error::InvalidGraph("barbell cycles need at least 3 vertices".into()));
        }
        let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
        // path 0 = p_0, p_1, ..., p_e = first vertex of the second cycle
        let mut prev = 0;
        let mut next = a;
        for _ in 0..e {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        let second: Vec<usize> = std::iter::once(prev).chain(next..next + b - 1).collect();
        for i in 0..b {
            edges.push((second[i], second[(i + 1) % b]));
        }
        Self::new(next + b - 1, edges)
    }

    /// Graph whose edge set is given by a bitmask over the pairs of `0..n` in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut e = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    e.push((u, v));
                }
                k += 1;
            }
        }
        Self::from_sorted(n, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Position of `{u,v}` in `edges()`.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    e.push((u, v));
                }
            }
        }
        Self::from_sorted(self.n, e)
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut e = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    e.push((i, j));
                }
            }
        }
        Self::new(vertices.len(), e).expect("induced subgraph is simple")
    }

    /// Disjoint union, with `other` shifted past our vertices.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let e = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::new(self.n + other.n, e).expect("disjoint union is simple")
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Vertex `c` adjacent to all others, with no other edges.
    pub fn star_center(&self) -> Option<usize> {
        if self.n < 2 || self.edges.len() != self.n - 1 {
            return None;
        }
        (0..self.n).find(|&v| self.adj[v].len() == self.n - 1)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    pub fn has_cut_vertex(&self) -> bool {
        let base = self.components().len();
        (0..self.n).any(|v| {
            let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
            self.induced(&keep).components().len() > base
        })
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// One cycle per non-tree edge of a BFS spanning forest, as traversal-ordered arcs.
    pub fn fundamental_cycles(&self) -> Vec<Vec<(usize, usize)>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut seen = vec![false; self.n];
        let mut tree = HashSet::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        tree.insert((u.min(w), u.max(w)));
                        q.push_back(w);
                    }
                }
            }
        }
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            if tree.contains(&(u, v)) {
                continue;
            }
            // u -> v, then v up to the meeting point, then down to u
            let (mut a, mut b) = (u, v);
            let mut path_u = vec![u];
            let mut path_v = vec![v];
            while a != b {
                if depth[a] >= depth[b] {
                    a = parent[a];
                    path_u.push(a);
                } else {
                    b = parent[b];
                    path_v.push(b);
                }
            }
            // both paths end at the meeting point
            path_u.pop();
            let mut verts = vec![u];
            verts.extend(path_v.iter().copied());
            verts.extend(path_u.iter().skip(1).rev().copied());
            let k = verts.len();
            let arcs = (0..k).map(|i| (verts[i], verts[(i + 1) % k])).collect();
            out.push(arcs);
        }
        out
    }

    /// All simple cycles, each as a vertex list starting at its least vertex.
    pub fn cycle_subgraphs(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        limits.check_subgraph(self.n)?;
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on = vec![false; self.n];
        for s in 0..self.n {
            path.clear();
            path.push(s);
            on[s] = true;
            self.cycles_from(s, &mut path, &mut on, &mut out, limits)?;
            on[s] = false;
        }
        Ok(out)
    }

    fn cycles_from(
        &self,
        s: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        let u = *path.last().unwrap();
        for &w in &self.adj[u] {
            if w == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(path.clone());
                if out.len() > limits.subgraph_results {
                    return Err(Error::budget("cycle subgraphs", limits.subgraph_results as u64, out.len() as u64));
                }
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                self.cycles_from(s, path, on, out, limits)?;
                path.pop();
                on[w] = false;
            }
        }
        Ok(())
    }

    /// Simple paths from any vertex of `from` to the first vertex of `to` reached,
    /// with inner vertices outside `blocked`.
    fn connecting_paths(&self, from: &[usize], to: &HashSet<usize>, blocked: &HashSet<usize>) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut on = vec![false; self.n];
        for &s in from {
            let mut path = vec![s];
            on[s] = true;
            self.paths_dfs(&mut path, &mut on, to, blocked, &mut out);
            on[s] = false;
        }
        out
    }

    fn paths_dfs(
        &self,
        path: &mut Vec<usize>,
        on: &mut [bool],
        to: &HashSet<usize>,
        blocked: &HashSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        for &w in &self.adj[u] {
            if on[w] {
                continue;
            }
            if to.contains(&w) {
                let mut p = path.clone();
                p.push(w);
                out.push(p);
            } else if !blocked.contains(&w) {
                on[w] = true;
                path.push(w);
                self.paths_dfs(path, on, to, blocked, out);
                path.pop();
                on[w] = false;
            }
        }
    }

    pub fn find_barbells(&self) -> Result<Vec<BarbellDecomposition>> {
        self.find_barbells_with(&Limits::default())
    }

    pub fn find_barbells_with(&self, limits: &Limits) -> Result<Vec<BarbellDecomposition>> {
        let cycles = self.cycle_subgraphs(limits)?;
        let sets: Vec<HashSet<usize>> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                let shared: Vec<usize> = cycles[i].iter().copied().filter(|v| sets[j].contains(v)).collect();
                let paths = match shared.len() {
                    1 => vec![vec![shared[0]]],
                    0 => {
                        let blocked: HashSet<usize> = sets[i].union(&sets[j]).copied().collect();
                        self.connecting_paths(&cycles[i], &sets[j], &blocked)
                    }
                    _ => continue,
                };
                for p in paths {
                    let b = BarbellDecomposition { cycle1: cycles[i].clone(), cycle2: cycles[j].clone(), path: p };
                    if seen.insert(b.edge_key()) {
                        out.push(b);
                        if out.len() > limits.subgraph_results {
                            return Err(Error::budget(
                                "barbell subgraphs",
                                limits.subgraph_results as u64,
                                out.len() as u64,
                            ));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn find_thetas(&self) -> Result<Vec<ThetaWitness>> {
        self.find_thetas_with(&Limits::default())
    }

    pub fn find_thetas_with(&self, limits: &Limits) -> Result<Vec<ThetaWitness>> {
        let cycles = self.cycle_subgraphs(limits)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in &cycles {
            let on_cycle: HashSet<usize> = c.iter().copied().collect();
            let cyc_edges: HashSet<(usize, usize)> = cycle_edges(c).into_iter().collect();
            for (idx, &p) in c.iter().enumerate() {
                let targets: HashSet<usize> = c[idx + 1..].iter().copied().collect();
                for ear in self.connecting_paths(&[p], &targets, &on_cycle) {
                    if ear.len() == 2 && cyc_edges.contains(&(ear[0].min(ear[1]), ear[0].max(ear[1]))) {
                        continue;
                    }
                    let t = ThetaWitness { base_cycle: c.clone(), ear };
                    if seen.insert(t.edge_key()) {
                        out.push(t);
                        if out.len() > limits.subgraph_results {
                            return Err(Error::budget(
                                "theta subgraphs",
                                limits.subgraph_results as u64,
                                out.len() as u64,
                            ));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Text form: `n` on the first line, then `u v` per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("expected `u v`, got `{l}`")));
            }
            let p = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex `{s}`")));
            edges.push((p(parts[0])?, p(parts[1])?));
        }
        Self::new(n, edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        Self::new(j.n, j.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

fn cycle_edges(c: &[usize]) -> Vec<(usize, usize)> {
    let k = c.len();
    (0..k).map(|i| (c[i].min(c[(i + 1) % k]), c[i].max(c[(i + 1) % k]))).collect()
}

fn path_edges(p: &[usize]) -> Vec<(usize, usize)> {
    p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
}

fn check_cycle(g: &SimpleGraph, c: &[usize]) -> Result<()> {
    let distinct: HashSet<usize> = c.iter().copied().collect();
    if c.len() < 3 || distinct.len() != c.len() {
        return Err(Error::InvalidGraph(format!("{c:?} is not a simple cycle")));
    }
    for (u, v) in cycle_edges(c) {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("cycle edge {{{u},{v}}} missing")));
        }
    }
    Ok(())
}

fn check_path(g: &SimpleGraph, p: &[usize]) -> Result<()> {
    let distinct: HashSet<usize> = p.iter().copied().collect();
    if p.is_empty() || distinct.len() != p.len() {
        return Err(Error::InvalidGraph(format!("{p:?} is not a simple path")));
    }
    for (u, v) in path_edges(p) {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("path edge {{{u},{v}}} missing")));
        }
    }
    Ok(())
}

/// Two cycles joined by a path, or sharing exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarbellDecomposition {
    pub cycle1: Vec<usize>,
    pub cycle2: Vec<usize>,
    pub path: Vec<usize>,
}

impl BarbellDecomposition {
    /// Number of inner vertices of the connecting path (`None` when the cycles share a vertex).
    pub fn inner_path_vertices(&self) -> Option<usize> {
        if self.path.len() == 1 {
            None
        } else {
            Some(self.path.len() - 2)
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.cycle1.iter().chain(&self.cycle2).chain(&self.path).copied().collect();
        s.into_iter().collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let s: BTreeSet<(usize, usize)> = cycle_edges(&self.cycle1)
            .into_iter()
            .chain(cycle_edges(&self.cycle2))
            .chain(path_edges(&self.path))
            .collect();
        s.into_iter().collect()
    }

    fn edge_key(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        (self.vertices(), self.edges())
    }

    /// Target length of the shortest closed star walk over this shape.
    pub fn formula_length(&self) -> usize {
        let n0 = self.vertices().len();
        match self.inner_path_vertices() {
            None => 2 * n0 + 2,
            Some(0) => 2 * n0 + 4,
            Some(d) => 2 * (self.cycle1.len() + self.cycle2.len() + 2 * d + 2),
        }
    }

    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        check_cycle(g, &self.cycle1)?;
        check_cycle(g, &self.cycle2)?;
        check_path(g, &self.path)?;
        let c1: HashSet<usize> = self.cycle1.iter().copied().collect();
        let c2: HashSet<usize> = self.cycle2.iter().copied().collect();
        let shared: Vec<usize> = c1.intersection(&c2).copied().collect();
        if self.path.len() == 1 {
            if shared != vec![self.path[0]] {
                return Err(Error::InvalidGraph("single-vertex path must be the only shared vertex".into()));
            }
        } else {
            if !shared.is_empty() {
                return Err(Error::InvalidGraph("joined cycles must be vertex-disjoint".into()));
            }
            let (a, b) = (self.path[0], *self.path.last().unwrap());
            if !c1.contains(&a) || !c2.contains(&b) {
                return Err(Error::InvalidGraph("path endpoints must lie one in each cycle".into()));
            }
            for v in &self.path[1..self.path.len() - 1] {
                if c1.contains(v) || c2.contains(v) {
                    return Err(Error::InvalidGraph("inner path vertex on a cycle".into()));
                }
            }
        }
        let e1: HashSet<_> = cycle_edges(&self.cycle1).into_iter().collect();
        let e2: HashSet<_> = cycle_edges(&self.cycle2).into_iter().collect();
        let ep: HashSet<_> = path_edges(&self.path).into_iter().collect();
        if !e1.is_disjoint(&e2) || !e1.is_disjoint(&ep) || !e2.is_disjoint(&ep) {
            return Err(Error::InvalidGraph("barbell parts share an edge".into()));
        }
        Ok(())
    }
}

/// A cycle plus one ear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub base_cycle: Vec<usize>,
    pub ear: Vec<usize>,
}

impl ThetaWitness {
    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.base_cycle.iter().chain(&self.ear).copied().collect();
        s.into_iter().collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let s: BTreeSet<(usize, usize)> =
            cycle_edges(&self.base_cycle).into_iter().chain(path_edges(&self.ear)).collect();
        s.into_iter().collect()
    }

    fn edge_key(&self) -> Vec<(usize, usize)> {
        self.edges()
    }

    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        check_cycle(g, &self.base_cycle)?;
        check_path(g, &self.ear)?;
        if self.ear.len() < 2 {
            return Err(Error::InvalidGraph("ear must have at least one edge".into()));
        }
        let on: HashSet<usize> = self.base_cycle.iter().copied().collect();
        let (a, b) = (self.ear[0], *self.ear.last().unwrap());
        if a == b || !on.contains(&a) || !on.contains(&b) {
            return Err(Error::InvalidGraph("ear endpoints must be distinct cycle vertices".into()));
        }
        if self.ear[1..self.ear.len() - 1].iter().any(|v| on.contains(v)) {
            return Err(Error::InvalidGraph("ear interior meets the base cycle".into()));
        }
        if self.ear.len() == 2 && cycle_edges(&self.base_cycle).contains(&(a.min(b), a.max(b))) {
            return Err(Error::InvalidGraph("ear repeats a cycle edge".into()));
        }
        Ok(())
    }
}
