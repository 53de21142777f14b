//! Constructive swap sequences.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fs::{Configuration, FsContext, SwapSequence};
use crate::graph::SimpleGraph;
use crate::orientations::{inflip_sequence, orientation_from, outflip_sequence, AcyclicOrientation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionReport {
    pub count: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Pairs `i < j` of `Y`-vertices whose relative order differs between `σ` and `τ`.
pub fn inversions(sigma: &Configuration, tau: &Configuration) -> Result<InversionReport> {
    if sigma.len() != tau.len() {
        return Err(Error::InvalidConfiguration("configurations of different lengths".into()));
    }
    let (ps, pt) = (sigma.inverse(), tau.inverse());
    let n = sigma.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (ps.get(i) < ps.get(j)) != (pt.get(i) < pt.get(j)) {
                pairs.push((i, j));
            }
        }
    }
    Ok(InversionReport { count: pairs.len(), pairs })
}

pub fn inversion_count(sigma: &Configuration, tau: &Configuration) -> usize {
    let (ps, pt) = (sigma.inverse(), tau.inverse());
    let n = sigma.len();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            k += ((ps.get(i) < ps.get(j)) != (pt.get(i) < pt.get(j))) as usize;
        }
    }
    k
}

fn check_same_len(sigma: &Configuration, tau: &Configuration, n: usize) -> Result<()> {
    if sigma.len() != n || tau.len() != n {
        return Err(Error::InvalidConfiguration(format!("configurations must have length {n}")));
    }
    Ok(())
}

fn is_path_graph(x: &SimpleGraph) -> bool {
    x.edge_count() + 1 == x.n().max(1) && (1..x.n()).all(|i| x.has_edge(i - 1, i))
}

/// Bubble sort toward `τ`, fixing positions left to right. Needs `X = Path_n`.
pub fn path_sort(ctx: &FsContext, sigma: &Configuration, tau: &Configuration) -> Result<SwapSequence> {
    if !is_path_graph(ctx.x()) {
        return Err(Error::Precondition("path_sort needs X = Path_n".into()));
    }
    path_sort_on(ctx.y(), sigma, tau)
}

/// [`path_sort`] with `X = Path_n` implied.
pub fn path_sort_on(y: &SimpleGraph, sigma: &Configuration, tau: &Configuration) -> Result<SwapSequence> {
    let n = y.n();
    check_same_len(sigma, tau, n)?;
    let yc = y.complement();
    if orientation_from(sigma, &yc) != orientation_from(tau, &yc) {
        return Err(Error::Precondition("configurations lie in different components".into()));
    }
    let mut cur = sigma.clone();
    let mut seq = SwapSequence::new(sigma.clone());
    bubble_into(y, &mut cur, tau, &mut seq)?;
    Ok(seq)
}

fn bubble_into(y: &SimpleGraph, cur: &mut Configuration, tau: &Configuration, seq: &mut SwapSequence) -> Result<()> {
    let n = cur.len();
    for p in 0..n {
        let q = (p..n).find(|&q| cur.get(q) == tau.get(p)).expect("bijection");
        for k in (p + 1..=q).rev() {
            if !y.has_edge(cur.get(k - 1), cur.get(k)) {
                return Err(Error::Unfriendly { a: k - 1, b: k, ya: cur.get(k - 1), yb: cur.get(k) });
            }
            cur.swap_in_place(k - 1, k);
            seq.swaps.push((k - 1, k));
        }
    }
    Ok(())
}

fn bfs_path(x: &SimpleGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; x.n()];
    prev[from] = from;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut v = to;
            while v != from {
                v = prev[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        for &w in x.neighbors(u) {
            if prev[w] == usize::MAX {
                prev[w] = u;
                q.push_back(w);
            }
        }
    }
    None
}

/// Token swapping with `Y = K_n`: for each vertex `i` of `X`, bring `τ(i)` in along a shortest path
/// and send the displaced token back.
pub fn token_swap_complete(x: &SimpleGraph, sigma: &Configuration, tau: &Configuration) -> Result<SwapSequence> {
    let n = x.n();
    check_same_len(sigma, tau, n)?;
    let mut cur = sigma.clone();
    let mut seq = SwapSequence::new(sigma.clone());
    for i in 0..n {
        if cur.get(i) == tau.get(i) {
            continue;
        }
        let j = cur.inverse().get(tau.get(i));
        let path = bfs_path(x, i, j).ok_or_else(|| {
            Error::Precondition(format!("token {} cannot reach vertex {i} in X", tau.get(i)))
        })?;
        let k = path.len() - 1;
        for t in (0..k).rev() {
            cur.swap_in_place(path[t], path[t + 1]);
            seq.swaps.push(edge(path[t], path[t + 1]));
        }
        for t in 1..k {
            cur.swap_in_place(path[t], path[t + 1]);
            seq.swaps.push(edge(path[t], path[t + 1]));
        }
    }
    Ok(seq)
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub fn token_swap_bound(n: usize) -> usize {
    (2 * n * n + 3).saturating_sub(5 * n)
}

/// `4n^3 + |E(Y)|`.
pub fn cycle_route_bound(n: usize, y_edges: usize) -> usize {
    4 * n * n * n + y_edges
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Coefficients `x_i` with `Σ x_i m_i ≡ 1 (mod modulus)`.
fn bezout_mod(ms: &[usize], modulus: usize) -> Option<Vec<i64>> {
    let mut g = modulus as i64;
    let mut coeffs: Vec<i64> = vec![0; ms.len()];
    // g stays congruent to Σ coeffs[i] * ms[i] modulo `modulus`
    for (i, &m) in ms.iter().enumerate() {
        let (ng, a, b) = ext_gcd(g, m as i64);
        for c in coeffs.iter_mut().take(i) {
            *c *= a;
        }
        coeffs[i] = b;
        g = ng;
    }
    (g == 1).then_some(coeffs)
}

/// Components of the complement of `Y`, sorted by size and then least vertex.
fn sorted_components(yc: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut comps = yc.components();
    for c in comps.iter_mut() {
        c.sort_unstable();
    }
    comps.sort_by_key(|c| (c.len(), c[0]));
    comps
}

/// One double-flip: inflip the source `v`, outflip the sink `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleFlip {
    pub source: usize,
    pub sink: usize,
}

/// The schedule of double-flips carrying `α` to `α''`, built component by component.
pub fn double_flip_schedule(alpha: &AcyclicOrientation, target: &AcyclicOrientation) -> Result<Vec<DoubleFlip>> {
    let yc = alpha.base();
    let comps = sorted_components(yc);
    let r = comps.len();
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    if sizes.iter().fold(0i64, |g, &s| gcd(g, s as i64)) != 1 {
        return Err(Error::Precondition(format!("complement component sizes {sizes:?} are not coprime")));
    }
    let mut comp_of = vec![0usize; yc.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let ins = inflip_sequence(alpha, target)?
        .ok_or_else(|| Error::Precondition("configurations lie in different components".into()))?;
    let outs = outflip_sequence(alpha, target)?
        .ok_or_else(|| Error::Precondition("configurations lie in different components".into()))?;

    let last = r - 1;
    let seq_r: Vec<usize> = ins.iter().copied().filter(|&v| comp_of[v] == last).collect();
    let mut seq_l: Vec<usize> = Vec::new();
    for i in 0..last {
        seq_l.extend(outs.iter().copied().filter(|&v| comp_of[v] == i));
    }

    // linear extension of the target, restricted to each component
    let ext = target.topological_order().expect("acyclic");
    let ext_of = |i: usize| -> Vec<usize> { ext.iter().copied().filter(|&v| comp_of[v] == i).collect() };
    let cyc_in = ext_of(last);
    let cyc_out = |i: usize| -> Vec<usize> {
        let mut e = ext_of(i);
        e.reverse();
        e
    };

    let (a, b) = (seq_l.len(), seq_r.len());
    let n1 = sizes[0];
    let phase1 = if a >= b { a } else { a + (b - a).div_ceil(n1) * n1 };
    let out1 = cyc_out(0);
    let left: Vec<usize> =
        seq_l.iter().copied().chain((0..phase1 - a).map(|t| out1[t % n1])).collect();
    let mut right: Vec<usize> =
        seq_r.iter().copied().chain((0..phase1 - b).map(|t| cyc_in[t % sizes[last]])).collect();
    let mut ri = phase1 - b;

    let nr = sizes[last];
    let c = ri % nr;
    let t = ((nr - c) % nr) as i64;
    let xs = bezout_mod(&sizes[..last], nr).expect("coprime sizes");
    let mut left2 = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        let d = (x * t).rem_euclid(nr as i64) as usize;
        let o = cyc_out(i);
        for s in 0..d * sizes[i] {
            left2.push(o[s % sizes[i]]);
            right.push(cyc_in[ri % nr]);
            ri += 1;
        }
    }
    debug_assert_eq!(ri % nr, 0);
    let left: Vec<usize> = left.into_iter().chain(left2).collect();
    Ok(left.into_iter().zip(right).map(|(w, v)| DoubleFlip { source: v, sink: w }).collect())
}

/// A route in `FS(Cycle_n, Y)`: double-flips compiled into swaps, then a bubble sort that avoids the cut edge `{0, n-1}`.
pub fn cycle_route(y: &SimpleGraph, sigma: &Configuration, tau: &Configuration) -> Result<SwapSequence> {
    let n = y.n();
    if n < 3 {
        return Err(Error::Precondition("cycle_route needs n >= 3".into()));
    }
    check_same_len(sigma, tau, n)?;
    let mut seq = SwapSequence::new(sigma.clone());
    if sigma == tau {
        return Ok(seq);
    }
    let yc = Arc::new(y.complement());
    let alpha = orientation_from(sigma, &yc);
    let target = orientation_from(tau, &yc);
    let schedule = double_flip_schedule(&alpha, &target)?;
    let mut cur = sigma.clone();
    let mut orient = alpha;
    for (i, df) in schedule.iter().enumerate() {
        orient = orient
            .double_flip(df.source, df.sink)
            .map_err(|e| Error::InvalidStep { index: i, reason: Box::new(e) })?;
        compile_double_flip(y, &mut cur, df.source, df.sink, &mut seq)?;
    }
    debug_assert_eq!(orient, target);
    bubble_into(y, &mut cur, tau, &mut seq)?;
    Ok(seq)
}

fn compile_double_flip(y: &SimpleGraph, cur: &mut Configuration, v: usize, w: usize, seq: &mut SwapSequence) -> Result<()> {
    let n = cur.len();
    let mut push = |cur: &mut Configuration, a: usize, b: usize| -> Result<()> {
        if !y.has_edge(cur.get(a), cur.get(b)) {
            return Err(Error::Unfriendly { a, b, ya: cur.get(a), yb: cur.get(b) });
        }
        cur.swap_in_place(a, b);
        seq.swaps.push((a.min(b), a.max(b)));
        Ok(())
    };
    let mut p = cur.inverse().get(v);
    while p > 0 {
        push(cur, p - 1, p)?;
        p -= 1;
    }
    let mut q = cur.inverse().get(w);
    while q < n - 1 {
        push(cur, q, q + 1)?;
        q += 1;
    }
    push(cur, 0, n - 1)
}

/// Double-flips read off the swaps across `{0, n-1}`; checks each against the running orientation
/// and that the last one lands on `α(τ)`.
pub fn double_flip_skeleton(y: &SimpleGraph, seq: &SwapSequence) -> Result<Vec<DoubleFlip>> {
    let n = y.n();
    let yc = y.complement();
    let mut cur = seq.start.clone();
    let mut orient = orientation_from(&cur, &yc);
    let mut out = Vec::new();
    for (i, &(a, b)) in seq.swaps.iter().enumerate() {
        if (a, b) == (0, n - 1) {
            let df = DoubleFlip { source: cur.get(0), sink: cur.get(n - 1) };
            if orientation_from(&cur, &yc) != orient {
                return Err(Error::InvalidStep {
                    index: i,
                    reason: Box::new(Error::Precondition("configuration left its orientation class".into())),
                });
            }
            orient = orient
                .double_flip(df.source, df.sink)
                .map_err(|e| Error::InvalidStep { index: i, reason: Box::new(e) })?;
            out.push(df);
        }
        cur.swap_in_place(a, b);
    }
    if orientation_from(&cur, &yc) != orient {
        return Err(Error::Precondition("skeleton does not end at the final orientation".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(v: &[usize]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    #[test]
    fn inversion_examples() {
        let id = Configuration::identity(4);
        assert_eq!(inversions(&id, &id).unwrap().count, 0);
        assert_eq!(inversions(&id, &Configuration::reverse(4)).unwrap().count, 6);
        assert_eq!(inversions(&cfg(&[1, 0, 2]), &Configuration::identity(3)).unwrap().pairs, vec![(0, 1)]);
    }

    #[test]
    fn path_sort_examples() {
        let ctx = FsContext::new(SimpleGraph::path(4), SimpleGraph::complete(4)).unwrap();
        let id = Configuration::identity(4);
        assert!(path_sort(&ctx, &id, &id).unwrap().is_empty());
        let s = path_sort(&ctx, &id, &Configuration::reverse(4)).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(ctx.validate_sequence(&s).unwrap(), Configuration::reverse(4));
    }

    #[test]
    fn path_sort_rejects_other_components() {
        let y = SimpleGraph::path(3);
        assert!(matches!(
            path_sort_on(&y, &Configuration::identity(3), &Configuration::reverse(3)),
            Err(Error::Precondition(_))
        ));
        let ctx = FsContext::new(SimpleGraph::cycle(3).unwrap(), SimpleGraph::complete(3)).unwrap();
        assert!(path_sort(&ctx, &Configuration::identity(3), &Configuration::identity(3)).is_err());
    }

    #[test]
    fn token_swap_examples() {
        let x = SimpleGraph::path(4);
        let id = Configuration::identity(4);
        assert!(token_swap_complete(&x, &id, &id).unwrap().is_empty());
        let s = token_swap_complete(&x, &id, &Configuration::reverse(4)).unwrap();
        assert!(s.len() >= 6 && s.len() <= token_swap_bound(4));
        let ctx = FsContext::new(x, SimpleGraph::complete(4)).unwrap();
        assert_eq!(ctx.validate_sequence(&s).unwrap(), Configuration::reverse(4));
        let star = SimpleGraph::star(4);
        let t = cfg(&[2, 3, 0, 1]);
        let s = token_swap_complete(&star, &id, &t).unwrap();
        let ctx = FsContext::new(star, SimpleGraph::complete(4)).unwrap();
        assert_eq!(ctx.validate_sequence(&s).unwrap(), t);
    }

    #[test]
    fn token_swap_needs_connected_tokens() {
        let x = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(token_swap_complete(&x, &Configuration::identity(4), &cfg(&[2, 1, 0, 3])).is_err());
    }

    #[test]
    fn bezout_examples() {
        for (ms, m) in [(vec![2usize], 3usize), (vec![1], 4), (vec![2, 3], 4), (vec![4, 6], 9)] {
            let xs = bezout_mod(&ms, m).unwrap();
            let s: i64 = xs.iter().zip(&ms).map(|(x, &k)| x * k as i64).sum();
            assert_eq!(s.rem_euclid(m as i64), 1 % m as i64);
        }
        assert!(bezout_mod(&[2], 4).is_none());
    }

    #[test]
    fn cycle_route_k5() {
        let y = SimpleGraph::complete(5);
        let ctx = FsContext::new(SimpleGraph::cycle(5).unwrap(), y.clone()).unwrap();
        let s = cfg(&[3, 1, 4, 0, 2]);
        let t = cfg(&[2, 0, 1, 4, 3]);
        let seq = cycle_route(&y, &s, &t).unwrap();
        assert_eq!(ctx.validate_sequence(&seq).unwrap(), t);
        assert!(seq.len() <= cycle_route_bound(5, 10));
        double_flip_skeleton(&y, &seq).unwrap();
        assert!(cycle_route(&y, &s, &s).unwrap().is_empty());
    }

    #[test]
    fn cycle_route_rejects_common_divisor() {
        let y = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap().complement();
        assert!(cycle_route(&y, &Configuration::identity(4), &cfg(&[1, 0, 2, 3])).is_err());
    }
}
