//! Brute-force oracles built from nothing but edge lists.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use fsgraph::SimpleGraph;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `FS(X, Y)` as an explicit adjacency list over all `n!` bijections.
pub struct Explicit {
    pub states: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    pub adj: Vec<Vec<usize>>,
}

pub fn explicit(x: &SimpleGraph, y: &SimpleGraph) -> Explicit {
    let states = permutations(x.n());
    let index: HashMap<Vec<usize>, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let adj = states
        .iter()
        .map(|s| {
            x.edges()
                .iter()
                .filter(|&&(a, b)| y.edges().contains(&(s[a].min(s[b]), s[a].max(s[b]))))
                .map(|&(a, b)| {
                    let mut t = s.clone();
                    t.swap(a, b);
                    index[&t]
                })
                .collect()
        })
        .collect();
    Explicit { states, index, adj }
}

impl Explicit {
    pub fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.states.len()];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if d[w].is_none() {
                    d[w] = Some(d[u].unwrap() + 1);
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// Component sizes, sorted.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut sizes = Vec::new();
        for s in 0..self.states.len() {
            if seen[s] {
                continue;
            }
            let d = self.bfs(s);
            let mut k = 0;
            for (i, x) in d.iter().enumerate() {
                if x.is_some() {
                    seen[i] = true;
                    k += 1;
                }
            }
            sizes.push(k);
        }
        sizes.sort_unstable();
        sizes
    }

    pub fn max_diameter(&self) -> usize {
        (0..self.states.len()).map(|s| self.bfs(s).into_iter().flatten().max().unwrap()).max().unwrap()
    }

    /// Shortest cycle through edge removal: for each edge, the BFS distance between its ends without it.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for u in 0..self.states.len() {
            for &w in &self.adj[u] {
                if w < u {
                    continue;
                }
                let mut d = vec![usize::MAX; self.states.len()];
                d[u] = 0;
                let mut q = VecDeque::from([u]);
                while let Some(a) = q.pop_front() {
                    for &b in &self.adj[a] {
                        if (a == u && b == w) || (a == w && b == u) {
                            continue;
                        }
                        if d[b] == usize::MAX {
                            d[b] = d[a] + 1;
                            q.push_back(b);
                        }
                    }
                }
                if d[w] != usize::MAX {
                    best = Some(best.map_or(d[w] + 1, |g| g.min(d[w] + 1)));
                }
            }
        }
        best
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

pub fn graph(n: usize, mask: u64) -> SimpleGraph {
    SimpleGraph::from_mask(n, mask & ((1u64 << (n * (n - 1) / 2)) - 1))
}
