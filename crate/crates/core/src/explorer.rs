//! Exhaustive search over `FS(X, Y)`.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fs::{factorial, rank_slice, unrank_into, Configuration, FsContext};

const UNSEEN: u32 = u32::MAX;

/// One component of `FS(X, Y)` as an explicit graph.
#[derive(Clone, Debug)]
pub struct ComponentGraph {
    n: usize,
    perms: Vec<u8>,
    offsets: Vec<usize>,
    adj: Vec<u32>,
    index: HashMap<u64, u32>,
}

fn friendly_moves<'a>(ctx: &'a FsContext, p: &'a [u8]) -> impl Iterator<Item = (usize, usize)> + 'a {
    ctx.x()
        .edges()
        .iter()
        .copied()
        .filter(move |&(a, b)| ctx.y().has_edge(p[a] as usize, p[b] as usize))
}

fn to_u8(sigma: &Configuration) -> Vec<u8> {
    sigma.as_slice().iter().map(|&v| v as u8).collect()
}

impl ComponentGraph {
    /// BFS closure of `seed`.
    pub fn build(ctx: &FsContext, seed: &Configuration) -> Result<Self> {
        let n = ctx.n();
        ctx.limits().check_explorer(n)?;
        if seed.len() != n {
            return Err(Error::InvalidConfiguration("seed length differs from n".into()));
        }
        let cap = ctx.limits().max_states;
        let mut perms: Vec<u8> = to_u8(seed);
        let mut index = HashMap::from([(seed.rank(), 0u32)]);
        let mut offsets = vec![0usize];
        let mut adj = Vec::new();
        let mut head = 0usize;
        let mut cur = vec![0u8; n];
        while head * n < perms.len() {
            cur.copy_from_slice(&perms[head * n..(head + 1) * n]);
            for (a, b) in friendly_moves(ctx, &cur).collect::<Vec<_>>() {
                cur.swap(a, b);
                let r = rank_slice(&cur);
                let id = match index.get(&r) {
                    Some(&id) => id,
                    None => {
                        let id = index.len() as u32;
                        if id as u64 >= cap {
                            return Err(Error::budget("component states", cap, id as u64 + 1));
                        }
                        index.insert(r, id);
                        perms.extend_from_slice(&cur);
                        id
                    }
                };
                adj.push(id);
                cur.swap(a, b);
            }
            offsets.push(adj.len());
            head += 1;
        }
        Ok(ComponentGraph { n, perms, offsets, adj, index })
    }

    pub fn size(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn configuration(&self, i: usize) -> Configuration {
        Configuration::from_vec_unchecked(self.perms[i * self.n..(i + 1) * self.n].iter().map(|&v| v as usize).collect())
    }

    pub fn configurations(&self) -> Vec<Configuration> {
        (0..self.size()).map(|i| self.configuration(i)).collect()
    }

    pub fn index_of(&self, sigma: &Configuration) -> Option<usize> {
        self.index.get(&sigma.rank()).map(|&i| i as usize)
    }

    pub fn contains(&self, sigma: &Configuration) -> bool {
        self.index_of(sigma).is_some()
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn distances_from(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.size()];
        let mut q = VecDeque::new();
        self.bfs_into(s, &mut dist, &mut q);
        dist
    }

    fn bfs_into(&self, s: usize, dist: &mut [u32], q: &mut VecDeque<u32>) -> u32 {
        dist.iter_mut().for_each(|d| *d = UNSEEN);
        dist[s] = 0;
        q.clear();
        q.push_back(s as u32);
        let mut far = 0;
        while let Some(u) = q.pop_front() {
            let du = dist[u as usize];
            far = du;
            for &w in self.neighbors(u as usize) {
                if dist[w as usize] == UNSEEN {
                    dist[w as usize] = du + 1;
                    q.push_back(w);
                }
            }
        }
        far
    }

    pub fn eccentricity(&self, s: usize) -> usize {
        let mut dist = vec![UNSEEN; self.size()];
        self.bfs_into(s, &mut dist, &mut VecDeque::new()) as usize
    }

    /// Exact diameter, one BFS per vertex.
    pub fn diameter(&self) -> usize {
        let size = self.size();
        (0..size)
            .into_par_iter()
            .map_init(
                || (vec![UNSEEN; size], VecDeque::new()),
                |(dist, q), s| self.bfs_into(s, dist, q),
            )
            .max()
            .unwrap_or(0) as usize
    }

    /// Lower bound from two BFS sweeps; not exact.
    pub fn two_sweep_lower_bound(&self, s: usize) -> usize {
        let d = self.distances_from(s);
        let far = (0..self.size()).max_by_key(|&i| d[i]).unwrap_or(s);
        self.eccentricity(far)
    }

    /// Connected, every vertex of degree exactly 2.
    pub fn is_cycle(&self) -> bool {
        self.size() >= 3 && (0..self.size()).all(|i| {
            let nb = self.neighbors(i);
            nb.len() == 2 && nb[0] != nb[1]
        })
    }

    fn shortest_cycle_from(&self, s: usize, bound: usize, dist: &mut [u32], parent: &mut [u32]) -> Option<(usize, u32, u32)> {
        dist.iter_mut().for_each(|d| *d = UNSEEN);
        dist[s] = 0;
        parent[s] = UNSEEN;
        let mut q = VecDeque::from([s as u32]);
        let mut best: Option<(usize, u32, u32)> = None;
        let limit = |b: &Option<(usize, u32, u32)>| b.map_or(bound, |x| x.0.min(bound));
        while let Some(u) = q.pop_front() {
            let du = dist[u as usize] as usize;
            if 2 * du >= limit(&best) {
                break;
            }
            for &w in self.neighbors(u as usize) {
                if dist[w as usize] == UNSEEN {
                    dist[w as usize] = du as u32 + 1;
                    parent[w as usize] = u;
                    q.push_back(w);
                } else if parent[u as usize] != w {
                    let len = du + dist[w as usize] as usize + 1;
                    if len < limit(&best) {
                        best = Some((len, u, w));
                    }
                }
            }
        }
        best
    }

    /// Shortest cycle length together with a cycle achieving it (vertex indices in order).
    pub fn girth_with_witness(&self) -> Option<(usize, Vec<usize>)> {
        let size = self.size();
        let best = AtomicUsize::new(usize::MAX);
        (0..size).into_par_iter().for_each_init(
            || (vec![UNSEEN; size], vec![UNSEEN; size]),
            |(dist, parent), s| {
                let b = best.load(Ordering::Relaxed);
                if let Some((len, _, _)) = self.shortest_cycle_from(s, b, dist, parent) {
                    best.fetch_min(len, Ordering::Relaxed);
                }
            },
        );
        let g = best.load(Ordering::Relaxed);
        if g == usize::MAX {
            return None;
        }
        let mut dist = vec![UNSEEN; size];
        let mut parent = vec![UNSEEN; size];
        for s in 0..size {
            if let Some((len, u, w)) = self.shortest_cycle_from(s, g + 1, &mut dist, &mut parent) {
                if len != g {
                    continue;
                }
                let cyc = splice_cycle(&parent, u, w);
                if cyc.len() == g && is_simple(&cyc) {
                    return Some((g, cyc));
                }
            }
        }
        None
    }
}

fn path_to_root(parent: &[u32], mut v: u32) -> Vec<usize> {
    let mut out = vec![v as usize];
    while parent[v as usize] != UNSEEN {
        v = parent[v as usize];
        out.push(v as usize);
    }
    out.reverse();
    out
}

fn splice_cycle(parent: &[u32], u: u32, w: u32) -> Vec<usize> {
    let mut a = path_to_root(parent, u);
    let b = path_to_root(parent, w);
    a.extend(b.iter().skip(1).rev());
    a
}

fn is_simple(c: &[usize]) -> bool {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

pub fn component_of(ctx: &FsContext, sigma: &Configuration) -> Result<Vec<Configuration>> {
    Ok(ComponentGraph::build(ctx, sigma)?.configurations())
}

pub fn distance(ctx: &FsContext, sigma: &Configuration, tau: &Configuration) -> Result<Option<usize>> {
    let n = ctx.n();
    ctx.limits().check_explorer(n)?;
    if sigma == tau {
        return Ok(Some(0));
    }
    let target = tau.rank();
    let cap = ctx.limits().max_states;
    let mut seen: HashMap<u64, u32> = HashMap::from([(sigma.rank(), 0)]);
    let mut q = VecDeque::from([to_u8(sigma)]);
    while let Some(mut cur) = q.pop_front() {
        let d = seen[&rank_slice(&cur)];
        for (a, b) in friendly_moves(ctx, &cur.clone()).collect::<Vec<_>>() {
            cur.swap(a, b);
            let r = rank_slice(&cur);
            if r == target {
                return Ok(Some(d as usize + 1));
            }
            if !seen.contains_key(&r) {
                if seen.len() as u64 >= cap {
                    return Err(Error::budget("distance search states", cap, seen.len() as u64 + 1));
                }
                seen.insert(r, d + 1);
                q.push_back(cur.clone());
            }
            cur.swap(a, b);
        }
    }
    Ok(None)
}

pub fn component_diameter(ctx: &FsContext, sigma: &Configuration) -> Result<usize> {
    Ok(ComponentGraph::build(ctx, sigma)?.diameter())
}

/// Calls `f` once per component, seeds in lexicographic order.
pub fn for_each_component(ctx: &FsContext, mut f: impl FnMut(ComponentGraph) -> Result<()>) -> Result<()> {
    let n = ctx.n();
    ctx.limits().check_explorer(n)?;
    let total = factorial(n).ok_or_else(|| Error::Overflow(format!("{n}!")))?;
    if total > ctx.limits().max_states {
        return Err(Error::budget("configurations", ctx.limits().max_states, total));
    }
    let mut seen = vec![false; total as usize];
    let mut seed = vec![0usize; n];
    for r in 0..total {
        if seen[r as usize] {
            continue;
        }
        unrank_into(n, r, &mut seed);
        let comp = ComponentGraph::build(ctx, &Configuration::from_vec_unchecked(seed.clone()))?;
        for i in 0..comp.size() {
            seen[rank_slice(&comp.perms[i * n..(i + 1) * n]) as usize] = true;
        }
        f(comp)?;
    }
    Ok(())
}

pub fn components(ctx: &FsContext) -> Result<Vec<ComponentGraph>> {
    let mut out = Vec::new();
    for_each_component(ctx, |c| {
        out.push(c);
        Ok(())
    })?;
    Ok(out)
}

pub fn component_count(ctx: &FsContext) -> Result<usize> {
    let mut k = 0;
    for_each_component(ctx, |_| {
        k += 1;
        Ok(())
    })?;
    Ok(k)
}

pub fn max_component_diameter(ctx: &FsContext) -> Result<usize> {
    let mut best = 0;
    for_each_component(ctx, |c| {
        best = best.max(c.diameter());
        Ok(())
    })?;
    Ok(best)
}

pub fn is_connected_fs(ctx: &FsContext) -> Result<bool> {
    let n = ctx.n();
    let total = factorial(n).ok_or_else(|| Error::Overflow(format!("{n}!")))?;
    let comp = ComponentGraph::build(ctx, &Configuration::identity(n))?;
    Ok(comp.size() as u64 == total)
}

/// True iff the configurations form one connected component of `FS(X,Y)` that is a cycle.
pub fn is_cycle_component(ctx: &FsContext, component: &[Configuration]) -> bool {
    if component.len() < 3 {
        return false;
    }
    let members: HashMap<&Configuration, usize> = component.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut nbrs = Vec::with_capacity(component.len());
    for c in component {
        let ns = ctx.neighbors(c);
        if ns.len() != 2 || ns.iter().any(|t| !members.contains_key(t)) {
            return false;
        }
        nbrs.push([members[&ns[0]], members[&ns[1]]]);
    }
    let mut seen = vec![false; component.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &nbrs[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == component.len()
}

/// Implicit bounded-depth girth search from a set of seeds.
fn implicit_girth(ctx: &FsContext, seeds: &[Configuration]) -> Result<Option<Vec<Configuration>>> {
    let n = ctx.n();
    let cap = ctx.limits().max_states;
    let mut best: Option<Vec<Configuration>> = None;
    for seed in seeds {
        let bound = best.as_ref().map_or(usize::MAX, |c| c.len());
        // rank -> (depth, parent rank)
        let mut info: HashMap<u64, (u32, u64)> = HashMap::new();
        let root = seed.rank();
        info.insert(root, (0, u64::MAX));
        let mut q = VecDeque::from([(to_u8(seed), root)]);
        let mut found: Option<(usize, u64, u64)> = None;
        while let Some((mut cur, r)) = q.pop_front() {
            let (du, pu) = info[&r];
            let du = du as usize;
            let limit = found.map_or(bound, |f| f.0.min(bound));
            if 2 * du >= limit {
                break;
            }
            for (a, b) in friendly_moves(ctx, &cur.clone()).collect::<Vec<_>>() {
                cur.swap(a, b);
                let w = rank_slice(&cur);
                match info.get(&w) {
                    None => {
                        if info.len() as u64 >= cap {
                            return Err(Error::budget("girth search states", cap, info.len() as u64 + 1));
                        }
                        info.insert(w, (du as u32 + 1, r));
                        q.push_back((cur.clone(), w));
                    }
                    Some(&(dw, _)) if w != pu => {
                        let len = du + dw as usize + 1;
                        if len < found.map_or(bound, |f| f.0.min(bound)) {
                            found = Some((len, r, w));
                        }
                    }
                    _ => {}
                }
                cur.swap(a, b);
            }
        }
        if let Some((len, u, w)) = found {
            let up = |mut v: u64| {
                let mut out = vec![v];
                while info[&v].1 != u64::MAX {
                    v = info[&v].1;
                    out.push(v);
                }
                out.reverse();
                out
            };
            let mut cyc = up(u);
            cyc.extend(up(w).into_iter().skip(1).rev());
            let mut sorted = cyc.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if cyc.len() == len && sorted.len() == len {
                best = Some(cyc.into_iter().map(|r| Configuration::unrank(n, r)).collect());
            }
        }
    }
    Ok(best)
}

/// A shortest cycle of `FS(X, Y)` as a closed list of configurations, if any.
pub fn fs_girth_witness(ctx: &FsContext) -> Result<Option<Vec<Configuration>>> {
    let n = ctx.n();
    ctx.limits().check_explorer(n)?;
    if n >= 3 {
        if let Some(center) = ctx.y().star_center() {
            // relabelling leaves is an automorphism, so one seed per center position suffices
            let leaves: Vec<usize> = (0..n).filter(|&v| v != center).collect();
            let seeds: Vec<Configuration> = (0..n)
                .map(|p| {
                    let mut m = Vec::with_capacity(n);
                    let mut it = leaves.iter();
                    for x in 0..n {
                        m.push(if x == p { center } else { *it.next().unwrap() });
                    }
                    Configuration::from_vec_unchecked(m)
                })
                .collect();
            return implicit_girth(ctx, &seeds);
        }
    }
    let mut best: Option<Vec<Configuration>> = None;
    for_each_component(ctx, |c| {
        if let Some((g, cyc)) = c.girth_with_witness() {
            if best.as_ref().is_none_or(|b| g < b.len()) {
                best = Some(cyc.into_iter().map(|i| c.configuration(i)).collect());
            }
        }
        Ok(())
    })?;
    Ok(best)
}

pub fn fs_girth(ctx: &FsContext) -> Result<Option<usize>> {
    Ok(fs_girth_witness(ctx)?.map(|c| c.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub diameter: usize,
    pub is_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreReport {
    pub components: Vec<ComponentSummary>,
    pub girth: Option<usize>,
    pub connected: bool,
}

pub fn explore_report(ctx: &FsContext) -> Result<ExploreReport> {
    let mut components = Vec::new();
    let mut girth: Option<usize> = None;
    for_each_component(ctx, |c| {
        if let Some((g, _)) = c.girth_with_witness() {
            girth = Some(girth.map_or(g, |x| x.min(g)));
        }
        components.push(ComponentSummary { size: c.size(), diameter: c.diameter(), is_cycle: c.is_cycle() });
        Ok(())
    })?;
    let connected = components.len() == 1;
    Ok(ExploreReport { components, girth, connected })
}
