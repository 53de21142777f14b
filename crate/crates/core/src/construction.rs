//! The layered graphs `X_L`, `Y_L`, the start configuration `σ_s`, extraction programs and the
//! invariant checkers that go with them.
//!
//! Numbering is layer-major. Within a layer: the new vertices of `C_a` in cycle order, then those of
//! `C_b`, then `P_a` (away from `v_a`), then `P_b` (away from `v_b`). On the `Y` side layer 1 starts
//! with `κ_a^1, κ_b^1`; every layer then lists 14 `S_a` leaves, 14 `S_b` leaves, `K_a` and `K_b`.
//! The last vertex of `K_a^ℓ` is `κ_a^{ℓ+1}` and the first vertex of `K_b^ℓ` is `κ_b^{ℓ+1}`.
//!
//! Cycle slots: `C_a` has `v_a` at 0, the upper junction (or the knob's home on layer 1) at 4, `v` at 8
//! and the lower junction at 12. `C_b` has `v` at 0, the upper junction at 4, `v_b` at 8 and the lower
//! junction at 12.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fs::{Configuration, SwapSequence};
use crate::graph::SimpleGraph;
use crate::limits::Limits;

pub const CYCLE_LEN: usize = 16;
pub const PATH_A_LEN: usize = 16;
pub const PATH_B_LEN: usize = 15;
pub const LEAVES: usize = 14;
pub const PARTITE: usize = 15;
/// Items per run; one run moves all of `K^ℓ` across.
pub const RUN_ITEMS: usize = 31;

const TOP: usize = 4;
const BOT: usize = 12;
const A_OUTER: usize = 0;
const A_MID: usize = 8;
const B_MID: usize = 0;
const B_OUTER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Knob moves up the slot numbers.
    Forward,
    Reverse,
}

/// Distinguished vertices of one layer. `X` vertices and `Y` vertices live in separate fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub cycle_a: Vec<usize>,
    pub cycle_b: Vec<usize>,
    /// `[v_a, p_1, ..., p_15]`, `p_15` leftmost.
    pub path_a: Vec<usize>,
    /// `[v_b, q_1, ..., q_14]`, `q_14` rightmost.
    pub path_b: Vec<usize>,
    pub v_a: usize,
    pub v_b: usize,
    pub v: usize,
    pub v_a_up: Option<usize>,
    pub v_b_up: Option<usize>,
    pub v_a_down: Option<usize>,
    pub v_b_down: Option<usize>,
    pub knob_a: usize,
    pub knob_b: usize,
    pub star_a: Vec<usize>,
    pub star_b: Vec<usize>,
    pub k_a: Vec<usize>,
    pub k_b: Vec<usize>,
}

impl Layer {
    pub fn cycle(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.cycle_a,
            Side::B => &self.cycle_b,
        }
    }

    pub fn knob(&self, side: Side) -> usize {
        match side {
            Side::A => self.knob_a,
            Side::B => self.knob_b,
        }
    }

    pub fn star(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.star_a,
            Side::B => &self.star_b,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LayeredConstruction {
    l: usize,
    x: SimpleGraph,
    y: SimpleGraph,
    sigma_s: Configuration,
    layers: Vec<Layer>,
    /// `x -> layer index` (the lower layer for shared junctions).
    x_layer: Vec<usize>,
    on_path_a: Vec<Option<usize>>,
    on_path_b: Vec<Option<usize>>,
    /// Position in `Y` bookkeeping: `y -> (layer, role)`.
    y_role: Vec<(usize, Role)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Knob(Side),
    Leaf(Side),
    Part(Side),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleId {
    pub layer: usize,
    pub side: Side,
}

/// `X` and `Y` on `58L + 2` vertices with `σ_s`.
pub fn build(l: usize) -> Result<LayeredConstruction> {
    if l == 0 {
        return Err(Error::Precondition("L must be at least 1".into()));
    }
    let n = 58 * l + 2;
    let mut next_x = 0usize;
    let mut fresh = |k: usize| -> Vec<usize> {
        let v: Vec<usize> = (next_x..next_x + k).collect();
        next_x += k;
        v
    };
    let mut layers: Vec<Layer> = Vec::with_capacity(l);
    let mut x_edges = Vec::new();
    let mut next_y = 0usize;
    let mut fresh_y = |k: usize| -> Vec<usize> {
        let v: Vec<usize> = (next_y..next_y + k).collect();
        next_y += k;
        v
    };
    for li in 0..l {
        let mut cycle_a = vec![usize::MAX; CYCLE_LEN];
        let up_a = layers.last().map(|p: &Layer| p.cycle_a[BOT]);
        let up_b = layers.last().map(|p: &Layer| p.cycle_b[BOT]);
        let slots_a: Vec<usize> = (0..CYCLE_LEN).filter(|&s| !(s == TOP && up_a.is_some())).collect();
        for (s, x) in slots_a.iter().zip(fresh(slots_a.len())) {
            cycle_a[*s] = x;
        }
        if let Some(u) = up_a {
            cycle_a[TOP] = u;
        }
        let mut cycle_b = vec![usize::MAX; CYCLE_LEN];
        cycle_b[B_MID] = cycle_a[A_MID];
        let slots_b: Vec<usize> =
            (0..CYCLE_LEN).filter(|&s| s != B_MID && !(s == TOP && up_b.is_some())).collect();
        for (s, x) in slots_b.iter().zip(fresh(slots_b.len())) {
            cycle_b[*s] = x;
        }
        if let Some(u) = up_b {
            cycle_b[TOP] = u;
        }
        let mut path_a = vec![cycle_a[A_OUTER]];
        path_a.extend(fresh(PATH_A_LEN - 1));
        let mut path_b = vec![cycle_b[B_OUTER]];
        path_b.extend(fresh(PATH_B_LEN - 1));
        for c in [&cycle_a, &cycle_b] {
            for s in 0..CYCLE_LEN {
                x_edges.push((c[s], c[(s + 1) % CYCLE_LEN]));
            }
        }
        for p in [&path_a, &path_b] {
            for w in p.windows(2) {
                x_edges.push((w[0], w[1]));
            }
        }

        let (knob_a, knob_b) = match layers.last() {
            None => {
                let k = fresh_y(2);
                (k[0], k[1])
            }
            Some(p) => (p.k_a[PARTITE - 1], p.k_b[0]),
        };
        let star_a = fresh_y(LEAVES);
        let star_b = fresh_y(LEAVES);
        let k_a = fresh_y(PARTITE);
        let k_b = fresh_y(PARTITE);
        let last = li + 1 == l;
        layers.push(Layer {
            v_a: cycle_a[A_OUTER],
            v_b: cycle_b[B_OUTER],
            v: cycle_a[A_MID],
            v_a_up: up_a,
            v_b_up: up_b,
            v_a_down: (!last).then_some(cycle_a[BOT]),
            v_b_down: (!last).then_some(cycle_b[BOT]),
            cycle_a,
            cycle_b,
            path_a,
            path_b,
            knob_a,
            knob_b,
            star_a,
            star_b,
            k_a,
            k_b,
        });
    }
    debug_assert_eq!(next_y, n);

    let mut y_edges = Vec::new();
    for ly in &layers {
        for side in [Side::A, Side::B] {
            for &leaf in ly.star(side) {
                y_edges.push((ly.knob(side), leaf));
            }
            for &k in ly.k_a.iter().chain(&ly.k_b) {
                y_edges.push((ly.knob(side), k));
            }
        }
        for &a in &ly.k_a {
            for &b in &ly.k_b {
                y_edges.push((a, b));
            }
        }
    }
    let x = SimpleGraph::new(n, x_edges)?;
    let y = SimpleGraph::new(n, y_edges)?;

    let mut map = vec![usize::MAX; n];
    for (li, ly) in layers.iter().enumerate() {
        for (i, &k) in ly.k_a.iter().enumerate() {
            map[ly.path_a[i + 1]] = k;
        }
        for (i, &k) in ly.k_b.iter().enumerate() {
            map[ly.path_b[i]] = k;
        }
        if li == 0 {
            map[ly.cycle_a[TOP]] = ly.knob_a;
            map[ly.cycle_b[TOP]] = ly.knob_b;
        }
        let free_a = (0..CYCLE_LEN).filter(|&s| s != A_MID && s != TOP).map(|s| ly.cycle_a[s]);
        for (x, &leaf) in free_a.zip(&ly.star_a) {
            map[x] = leaf;
        }
        let free_b = (0..CYCLE_LEN).filter(|&s| s != B_OUTER && s != TOP).map(|s| ly.cycle_b[s]);
        for (x, &leaf) in free_b.zip(&ly.star_b) {
            map[x] = leaf;
        }
    }
    let sigma_s = Configuration::new(map)?;

    let mut x_layer = vec![0; n];
    let mut on_path_a = vec![None; n];
    let mut on_path_b = vec![None; n];
    for (li, ly) in layers.iter().enumerate().rev() {
        for &v in ly.cycle_a.iter().chain(&ly.cycle_b).chain(&ly.path_a).chain(&ly.path_b) {
            x_layer[v] = li;
        }
        for (i, &v) in ly.path_a.iter().enumerate() {
            on_path_a[v] = Some(i);
        }
        for (i, &v) in ly.path_b.iter().enumerate() {
            on_path_b[v] = Some(i);
        }
    }
    let mut y_role = vec![(0, Role::Leaf(Side::A)); n];
    for (li, ly) in layers.iter().enumerate() {
        for side in [Side::A, Side::B] {
            for &leaf in ly.star(side) {
                y_role[leaf] = (li, Role::Leaf(side));
            }
        }
        for &k in &ly.k_a {
            y_role[k] = (li, Role::Part(Side::A));
        }
        for &k in &ly.k_b {
            y_role[k] = (li, Role::Part(Side::B));
        }
        if li == 0 {
            y_role[ly.knob_a] = (0, Role::Knob(Side::A));
            y_role[ly.knob_b] = (0, Role::Knob(Side::B));
        }
    }
    Ok(LayeredConstruction { l, x, y, sigma_s, layers, x_layer, on_path_a, on_path_b, y_role })
}

/// `X_L`, `Y_L`, `σ_s` with isolated vertices appended up to `n`.
pub fn padded(l: usize, n: usize) -> Result<(SimpleGraph, SimpleGraph, Configuration)> {
    let lc = build(l)?;
    let base = lc.n();
    if n < base {
        return Err(Error::Precondition(format!("n = {n} is below 58L+2 = {base}")));
    }
    let x = SimpleGraph::new(n, lc.x.edges().iter().copied())?;
    let y = SimpleGraph::new(n, lc.y.edges().iter().copied())?;
    let mut map = lc.sigma_s.as_slice().to_vec();
    map.extend(base..n);
    Ok((x, y, Configuration::new(map)?))
}

/// `25^{L-1}`.
pub fn lower_bound(l: usize) -> Result<u64> {
    if l == 0 {
        return Err(Error::Precondition("L must be at least 1".into()));
    }
    let e = u32::try_from(l - 1).map_err(|_| Error::Overflow(format!("25^{}", l - 1)))?;
    25u64.checked_pow(e).ok_or_else(|| Error::Overflow(format!("25^{}", l - 1)))
}

/// Serializable snapshot of a construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub l: usize,
    pub n: usize,
    pub x: crate::graph::GraphJson,
    pub y: crate::graph::GraphJson,
    pub sigma_s: Configuration,
    pub layers: Vec<Layer>,
}

impl LayeredConstruction {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn x(&self) -> &SimpleGraph {
        &self.x
    }

    pub fn y(&self) -> &SimpleGraph {
        &self.y
    }

    pub fn sigma_s(&self) -> &Configuration {
        &self.sigma_s
    }

    /// Layer `ℓ`, 1-based.
    pub fn layer(&self, l: usize) -> &Layer {
        &self.layers[l - 1]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn to_json(&self) -> ConstructionJson {
        ConstructionJson {
            l: self.l,
            n: self.n(),
            x: self.x.to_json(),
            y: self.y.to_json(),
            sigma_s: self.sigma_s.clone(),
            layers: self.layers.clone(),
        }
    }

    /// The vertices of `X^ℓ`.
    pub fn layer_vertices(&self, l: usize) -> Vec<usize> {
        let ly = self.layer(l);
        let mut v: Vec<usize> =
            ly.cycle_a.iter().chain(&ly.cycle_b).chain(&ly.path_a).chain(&ly.path_b).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn boundary(&self, c: CycleId) -> Result<Vec<usize>> {
        if c.layer == 0 || c.layer > self.l {
            return Err(Error::Precondition(format!("no layer {}", c.layer)));
        }
        let ly = self.layer(c.layer);
        let mut out = match c.side {
            Side::A => vec![Some(ly.v_a), ly.v_a_up, ly.v_a_down, Some(ly.v)],
            Side::B => vec![Some(ly.v_b), ly.v_b_up, ly.v_b_down, Some(ly.v)],
        }
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
        out.sort_unstable();
        Ok(out)
    }

    fn in_layer_x(&self, l: usize, x: usize) -> bool {
        let li = l - 1;
        self.x_layer[x] == li || {
            let ly = &self.layers[li];
            ly.v_a_up == Some(x) || ly.v_b_up == Some(x)
        }
    }

    fn in_side_x(&self, l: usize, side: Side, x: usize) -> bool {
        let ly = self.layer(l);
        match side {
            Side::A => ly.cycle_a.contains(&x) || self.on_path_a[x].is_some() && self.x_layer[x] == l - 1,
            Side::B => ly.cycle_b.contains(&x) || self.on_path_b[x].is_some() && self.x_layer[x] == l - 1,
        }
    }

    fn on_paths(&self, l: usize, x: usize) -> bool {
        self.x_layer[x] == l - 1 && (self.on_path_a[x].is_some() || self.on_path_b[x].is_some())
    }

    fn on_path(&self, l: usize, side: Side, x: usize) -> Option<usize> {
        if self.x_layer[x] != l - 1 {
            return None;
        }
        match side {
            Side::A => self.on_path_a[x],
            Side::B => self.on_path_b[x],
        }
    }
}

fn inverse(map: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        pos[y] = x;
    }
    pos
}

/// Every star leaf sits on its own cycle.
pub fn check_rule_of_two(lc: &LayeredConstruction, sigma: &Configuration) -> bool {
    rule_of_two_raw(lc, &inverse(sigma.as_slice()))
}

fn rule_of_two_raw(lc: &LayeredConstruction, pos: &[usize]) -> bool {
    lc.layers.iter().all(|ly| {
        [Side::A, Side::B].iter().all(|&s| ly.star(s).iter().all(|&leaf| ly.cycle(s).contains(&pos[leaf])))
    })
}

/// The four layer-independence properties, in order.
pub fn check_layer_independence(lc: &LayeredConstruction, sigma: &Configuration) -> [bool; 4] {
    layer_independence_raw(lc, &inverse(sigma.as_slice()))
}

fn layer_independence_raw(lc: &LayeredConstruction, pos: &[usize]) -> [bool; 4] {
    let l1 = lc.layer(1);
    let p1 = lc.in_side_x(1, Side::A, pos[l1.knob_a]) && lc.in_side_x(1, Side::B, pos[l1.knob_b]);
    let p2 = (2..=lc.l).all(|l| {
        let ly = lc.layer(l);
        [ly.knob_a, ly.knob_b].iter().all(|&k| lc.in_layer_x(l - 1, pos[k]) || lc.in_layer_x(l, pos[k]))
    });
    let p3 = (1..=lc.l).all(|l| {
        let ly = lc.layer(l);
        let next = (l < lc.l).then(|| lc.layer(l + 1));
        ly.k_a
            .iter()
            .chain(&ly.k_b)
            .filter(|&&k| next.is_none_or(|nx| k != nx.knob_a && k != nx.knob_b))
            .all(|&k| lc.in_layer_x(l, pos[k]))
    });
    let p4 = (1..=lc.l).all(|l| {
        let ly = lc.layer(l);
        ly.k_a.iter().chain(&ly.k_b).filter(|&&k| !lc.on_paths(l, pos[k])).count() <= 1
    });
    [p1, p2, p3, p4]
}

fn is_part(lc: &LayeredConstruction, l: usize, y: usize) -> bool {
    let (li, role) = lc.y_role[y];
    li == l - 1 && matches!(role, Role::Part(_))
}

/// The two path-image statements, for every layer.
pub fn check_path_images(lc: &LayeredConstruction, sigma: &Configuration) -> bool {
    path_images_raw(lc, sigma.as_slice(), &inverse(sigma.as_slice()))
}

fn path_images_raw(lc: &LayeredConstruction, map: &[usize], pos: &[usize]) -> bool {
    (1..=lc.l).all(|l| {
        let ly = lc.layer(l);
        let all_on = ly.k_a.iter().chain(&ly.k_b).all(|&k| lc.on_paths(l, pos[k]));
        let interior = |x: usize, side: Side| lc.on_path(l, side, x).is_some_and(|i| i > 0);
        let knobs = [pos[ly.knob_a], pos[ly.knob_b]];
        let va_k = is_part(lc, l, map[ly.v_a]);
        let vb_k = is_part(lc, l, map[ly.v_b]);
        if all_on {
            !(va_k && vb_k)
                || knobs.iter().filter(|&&x| interior(x, Side::A) || interior(x, Side::B)).count() == 1
        } else {
            (!va_k || knobs.iter().any(|&x| interior(x, Side::A)))
                && (!vb_k || knobs.iter().any(|&x| interior(x, Side::B)))
        }
    })
}

/// Whether `μ₁` is left of `μ₂`; `None` unless both sit on layer `ℓ`'s paths and share a partite set.
pub fn is_left(lc: &LayeredConstruction, sigma: &Configuration, l: usize, mu1: usize, mu2: usize) -> Option<bool> {
    is_left_raw(lc, &inverse(sigma.as_slice()), l, mu1, mu2)
}

fn is_left_raw(lc: &LayeredConstruction, pos: &[usize], l: usize, mu1: usize, mu2: usize) -> Option<bool> {
    if l == 0 || l > lc.l || mu1 == mu2 {
        return None;
    }
    let (r1, r2) = (lc.y_role[mu1], lc.y_role[mu2]);
    if r1.0 != l - 1 || r2.0 != l - 1 || r1.1 != r2.1 || !matches!(r1.1, Role::Part(_)) {
        return None;
    }
    let (x1, x2) = (pos[mu1], pos[mu2]);
    let (a1, a2) = (lc.on_path(l, Side::A, x1), lc.on_path(l, Side::A, x2));
    let (b1, b2) = (lc.on_path(l, Side::B, x1), lc.on_path(l, Side::B, x2));
    match (a1, b1, a2, b2) {
        (Some(d1), _, Some(d2), _) => Some(d2 < d1),
        (_, Some(d1), _, Some(d2)) => Some(d1 < d2),
        (Some(_), _, _, Some(_)) => Some(true),
        (_, Some(_), Some(_), _) => Some(false),
        _ => None,
    }
}

/// Every pair on the paths keeps the left/right relation it has at `σ_s`.
pub fn check_order_invariance(lc: &LayeredConstruction, sigma: &Configuration) -> bool {
    order_invariance_raw(lc, sigma.as_slice())
}

fn order_invariance_raw(lc: &LayeredConstruction, map: &[usize]) -> bool {
    // Left-to-right: P_a from its far end in to v_a, then P_b from v_b outwards. At σ_s this order
    // lists K_a by decreasing index and K_b by increasing index.
    (1..=lc.l).all(|l| {
        let ly = lc.layer(l);
        let mut last_a: Option<usize> = None;
        let mut last_b: Option<usize> = None;
        for &x in ly.path_a.iter().rev().chain(&ly.path_b) {
            let y = map[x];
            let (li, role) = lc.y_role[y];
            if li != l - 1 {
                continue;
            }
            match role {
                Role::Part(Side::A) => {
                    if last_a.is_some_and(|p| y >= p) {
                        return false;
                    }
                    last_a = Some(y);
                }
                Role::Part(Side::B) => {
                    if last_b.is_some_and(|p| y <= p) {
                        return false;
                    }
                    last_b = Some(y);
                }
                _ => {}
            }
        }
        true
    })
}

/// Knob-extraction statements for `ℓ < L`.
pub fn check_knob_extract(lc: &LayeredConstruction, sigma: &Configuration) -> bool {
    knob_extract_raw(lc, sigma.as_slice(), &inverse(sigma.as_slice()))
}

fn knob_extract_raw(lc: &LayeredConstruction, map: &[usize], pos: &[usize]) -> bool {
    (1..lc.l).all(|l| {
        let ly = lc.layer(l);
        let nx = lc.layer(l + 1);
        let on_pa = |set: &[usize]| set.iter().all(|&k| lc.on_path(l, Side::A, pos[k]).is_some());
        let _ = map;
        (lc.on_paths(l, pos[nx.knob_a]) || on_pa(&ly.k_b)) && (lc.on_paths(l, pos[nx.knob_b]) || on_pa(&ly.k_a))
    })
}

fn path_a_counts(lc: &LayeredConstruction, l: usize, map: &[usize]) -> (usize, usize) {
    let ly = lc.layer(l);
    let mut a = 0;
    let mut b = 0;
    for &x in &ly.path_a {
        match lc.y_role[map[x]] {
            (li, Role::Part(Side::A)) if li == l - 1 => a += 1,
            (li, Role::Part(Side::B)) if li == l - 1 => b += 1,
            _ => {}
        }
    }
    (a, b)
}

fn extraction_from_counts(before: (usize, usize), after: (usize, usize)) -> bool {
    (before.0 == PARTITE && after.0 == 0 && after.1 == PARTITE) || (before.1 == PARTITE && after.1 == 0 && after.0 == PARTITE)
}

/// Whether `τ` is an `ℓ`-extraction of `σ`.
pub fn is_extraction(lc: &LayeredConstruction, sigma: &Configuration, tau: &Configuration, l: usize) -> bool {
    if l == 0 || l > lc.l {
        return false;
    }
    extraction_from_counts(path_a_counts(lc, l, sigma.as_slice()), path_a_counts(lc, l, tau.as_slice()))
}

/// Greedy chain of nested `ℓ`-extractions along `seq`, starting from its first configuration.
pub fn count_extraction_chain(lc: &LayeredConstruction, seq: &SwapSequence, l: usize) -> usize {
    extraction_chain_indices(lc, seq, l).len()
}

/// Swap indices (configuration numbers) of the greedy chain's checkpoints, excluding the start.
pub fn extraction_chain_indices(lc: &LayeredConstruction, seq: &SwapSequence, l: usize) -> Vec<usize> {
    if l == 0 || l > lc.l {
        return Vec::new();
    }
    let mut map = seq.start.as_slice().to_vec();
    let ly = lc.layer(l);
    let mut on_pa = vec![false; map.len()];
    for &x in &ly.path_a {
        on_pa[x] = true;
    }
    let class = |y: usize| -> Option<Side> {
        match lc.y_role[y] {
            (li, Role::Part(s)) if li == l - 1 => Some(s),
            _ => None,
        }
    };
    let mut counts = path_a_counts(lc, l, &map);
    let mut anchor = counts;
    let mut out = Vec::new();
    for (i, &(a, b)) in seq.swaps.iter().enumerate() {
        if on_pa[a] != on_pa[b] {
            let (inside, outside) = if on_pa[a] { (a, b) } else { (b, a) };
            for (y, delta) in [(map[inside], -1i64), (map[outside], 1)] {
                match class(y) {
                    Some(Side::A) => counts.0 = (counts.0 as i64 + delta) as usize,
                    Some(Side::B) => counts.1 = (counts.1 as i64 + delta) as usize,
                    None => {}
                }
            }
        }
        map.swap(a, b);
        if extraction_from_counts(anchor, counts) {
            out.push(i + 1);
            anchor = counts;
        }
    }
    out
}

/// One recorded knob rotation inside a program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationRecord {
    pub level: usize,
    pub side: Side,
    pub companion: usize,
    pub loops: usize,
    pub direction: Direction,
    /// Configuration index where the rotation starts.
    pub start: usize,
    pub end: usize,
    /// Another layer's swaps were spliced in.
    pub interrupted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProgramEvent {
    Swap(usize, usize),
    Rotation(RotationRecord),
    Checkpoint(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramSummary {
    pub level: usize,
    pub repetitions: usize,
    pub swaps: u64,
    pub checkpoints: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtractionProgram {
    pub level: usize,
    pub repetitions: usize,
    pub program: SwapSequence,
    pub checkpoints: Vec<usize>,
    pub rotations: Vec<RotationRecord>,
}

impl ExtractionProgram {
    pub fn end(&self) -> Configuration {
        self.program.end_unchecked()
    }
}

/// Companion slots in the order a forward loop walks them backwards.
fn ring_index(slot: usize) -> usize {
    (slot + CYCLE_LEN - TOP - 1) % CYCLE_LEN
}

fn item_side(k: usize) -> Side {
    if k.is_multiple_of(2) { Side::B } else { Side::A }
}

struct Generator<'a> {
    lc: &'a LayeredConstruction,
    map: Vec<usize>,
    pos: Vec<usize>,
    top: usize,
    swaps: u64,
    needed: Vec<u64>,
    fired: Vec<u64>,
    runs: Vec<u64>,
    fired_this_segment: Vec<bool>,
    checkpoints: Vec<usize>,
    sink: &'a mut dyn FnMut(ProgramEvent) -> Result<()>,
}

impl Generator<'_> {
    fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        let (ya, yb) = (self.map[a], self.map[b]);
        if !self.lc.y.has_edge(ya, yb) {
            return Err(Error::Unfriendly { a, b, ya, yb });
        }
        self.map.swap(a, b);
        self.pos[ya] = b;
        self.pos[yb] = a;
        self.swaps += 1;
        (self.sink)(ProgramEvent::Swap(a.min(b), a.max(b)))
    }

    fn slot_of(&self, cycle: &[usize], y: usize) -> Option<usize> {
        let x = self.pos[y];
        cycle.iter().position(|&c| c == x)
    }

    /// Rotates the level-`m` knob of `side` until the occupant of `from` reaches `to`.
    fn rotate(&mut self, m: usize, side: Side, from: usize, to: usize) -> Result<()> {
        let lc = self.lc;
        let ly = lc.layer(m);
        let cycle = ly.cycle(side).to_vec();
        let knob = ly.knob(side);
        if self.slot_of(&cycle, knob) != Some(TOP) {
            return Err(Error::Precondition(format!("knob of layer {m} is not at its home slot")));
        }
        let companion = self.map[cycle[from]];
        let (a, b) = (ring_index(from), ring_index(to));
        let fwd = (a + 15 - b) % 15;
        let rev = (b + 15 - a) % 15;
        let junction = ring_index(BOT);
        let fwd_passes = (1..fwd).any(|t| (a + 15 - t) % 15 == junction);
        let next = (m < self.top).then(|| lc.layer(m + 1));
        let hook = next.is_some_and(|nx| nx.knob(side) == companion)
            && self.fired[m] < self.needed[m]
            && !self.fired_this_segment[m - 1]
            && item_side((self.fired[m] % RUN_ITEMS as u64) as usize) == side;
        let (dir, loops) = if hook {
            if fwd_passes { (Direction::Forward, fwd) } else { (Direction::Reverse, rev) }
        } else if rev < fwd {
            (Direction::Reverse, rev)
        } else {
            (Direction::Forward, fwd)
        };
        let start = self.swaps as usize;
        let mut at = TOP;
        let mut pending = hook;
        for _ in 0..loops * CYCLE_LEN {
            let nxt = match dir {
                Direction::Forward => (at + 1) % CYCLE_LEN,
                Direction::Reverse => (at + CYCLE_LEN - 1) % CYCLE_LEN,
            };
            self.swap(cycle[at], cycle[nxt])?;
            at = nxt;
            if pending && self.map[cycle[BOT]] == companion {
                pending = false;
                let k = (self.fired[m] % RUN_ITEMS as u64) as usize;
                self.fired[m] += 1;
                self.fired_this_segment[m - 1] = true;
                self.item(m + 1, k)?;
            }
        }
        if pending {
            return Err(Error::Precondition(format!("hook at layer {m} never reached the junction")));
        }
        if self.map[cycle[to]] != companion {
            return Err(Error::Precondition(format!("rotation at layer {m} missed its target slot")));
        }
        (self.sink)(ProgramEvent::Rotation(RotationRecord {
            level: m,
            side,
            companion,
            loops,
            direction: dir,
            start,
            end: self.swaps as usize,
            interrupted: hook,
        }))
    }

    fn push(&mut self, path: &[usize]) -> Result<()> {
        let mut i = 0;
        while i + 1 < path.len() && self.lc.y.has_edge(self.map[path[i]], self.map[path[i + 1]]) {
            self.swap(path[i], path[i + 1])?;
            i += 1;
        }
        Ok(())
    }

    /// Item `k` (0-based) of a level-`m` run.
    fn item(&mut self, m: usize, k: usize) -> Result<()> {
        let ly = self.lc.layer(m);
        let (pa, pb) = (ly.path_a.clone(), ly.path_b.clone());
        if k == 0 {
            self.rotate(m, Side::B, B_OUTER, B_MID)?;
        } else if k % 2 == 1 {
            self.rotate(m, Side::A, A_MID, A_OUTER)?;
            self.push(&pa)?;
            self.rotate(m, Side::A, A_OUTER, A_MID)?;
        } else {
            self.rotate(m, Side::B, B_MID, B_OUTER)?;
            self.push(&pb)?;
            if k + 1 < RUN_ITEMS {
                self.rotate(m, Side::B, B_OUTER, B_MID)?;
            }
        }
        if k + 1 == RUN_ITEMS {
            self.runs[m - 1] += 1;
            self.fired_this_segment[m - 1] = false;
            if m == self.top {
                self.checkpoints.push(self.swaps as usize);
                (self.sink)(ProgramEvent::Checkpoint(self.swaps as usize))?;
            }
        }
        Ok(())
    }
}

/// Streams the swaps of an `ℓ`-extraction program with `η` repetitions.
pub fn stream_extraction_program(
    lc: &LayeredConstruction,
    l: usize,
    eta: usize,
    sink: &mut dyn FnMut(ProgramEvent) -> Result<()>,
) -> Result<ProgramSummary> {
    if l == 0 || l > lc.l {
        return Err(Error::Precondition(format!("level {l} outside 1..={}", lc.l)));
    }
    if eta == 0 {
        return Err(Error::Precondition("need at least one repetition".into()));
    }
    let map = lc.sigma_s.as_slice().to_vec();
    let pos = inverse(&map);
    // needed[m] = items to fire at level m+1 (index m, 1-based levels)
    let mut runs_needed = vec![0u64; l + 1];
    runs_needed[l] = eta as u64;
    for m in (1..l).rev() {
        runs_needed[m] = runs_needed[m + 1]
            .checked_mul(RUN_ITEMS as u64)
            .ok_or_else(|| Error::Overflow("run count".into()))?;
    }
    let mut needed = vec![0u64; l + 1];
    for m in 1..l {
        needed[m] = runs_needed[m + 1] * RUN_ITEMS as u64;
    }
    let mut g = Generator {
        lc,
        map,
        pos,
        top: l,
        swaps: 0,
        needed,
        fired: vec![0; l + 1],
        runs: vec![0; l],
        fired_this_segment: vec![false; l],
        checkpoints: Vec::new(),
        sink,
    };
    for _ in 0..runs_needed[1] {
        for k in 0..RUN_ITEMS {
            g.item(1, k)?;
        }
    }
    for m in 1..l {
        if g.fired[m] != g.needed[m] {
            return Err(Error::Precondition(format!(
                "layer {} fired {} of {} items",
                m + 1,
                g.fired[m],
                g.needed[m]
            )));
        }
    }
    let mut checkpoints = vec![0];
    checkpoints.extend(g.checkpoints.iter().copied());
    if let Some(last) = checkpoints.last_mut() {
        *last = g.swaps as usize;
    }
    Ok(ProgramSummary { level: l, repetitions: eta, swaps: g.swaps, checkpoints })
}

/// Materialized `ℓ`-extraction program, subject to `limits.program_swaps`.
pub fn l_extraction_program(lc: &LayeredConstruction, l: usize, eta: usize, limits: &Limits) -> Result<ExtractionProgram> {
    let cap = limits.program_swaps;
    let mut swaps = Vec::new();
    let mut rotations = Vec::new();
    let mut sink = |e: ProgramEvent| -> Result<()> {
        match e {
            ProgramEvent::Swap(a, b) => {
                if swaps.len() as u64 >= cap {
                    return Err(Error::budget("program swaps", cap, swaps.len() as u64 + 1));
                }
                swaps.push((a, b));
            }
            ProgramEvent::Rotation(r) => rotations.push(r),
            ProgramEvent::Checkpoint(_) => {}
        }
        Ok(())
    };
    let summary = stream_extraction_program(lc, l, eta, &mut sink)?;
    Ok(ExtractionProgram {
        level: l,
        repetitions: eta,
        program: SwapSequence { start: lc.sigma_s.clone(), swaps },
        checkpoints: summary.checkpoints,
        rotations,
    })
}

/// The level-1 program.
pub fn one_layer_extraction(lc: &LayeredConstruction, eta: usize, limits: &Limits) -> Result<ExtractionProgram> {
    l_extraction_program(lc, 1, eta, limits)
}

/// Endpoint of the single top-level extraction.
pub fn sigma_f(lc: &LayeredConstruction, limits: &Limits) -> Result<Configuration> {
    let mut map = lc.sigma_s.as_slice().to_vec();
    let mut sink = |e: ProgramEvent| -> Result<()> {
        if let ProgramEvent::Swap(a, b) = e {
            map.swap(a, b);
        }
        Ok(())
    };
    let _ = limits;
    stream_extraction_program(lc, lc.l, 1, &mut sink)?;
    Configuration::new(map)
}

/// `k` loops of the knob of cycle `c` starting from `σ`; `μ` must be the single non-leaf companion.
pub fn knob_rotation(
    lc: &LayeredConstruction,
    sigma: &Configuration,
    c: CycleId,
    companion: usize,
    loops: usize,
    direction: Direction,
) -> Result<SwapSequence> {
    if c.layer == 0 || c.layer > lc.l {
        return Err(Error::Precondition(format!("no layer {}", c.layer)));
    }
    let ly = lc.layer(c.layer);
    let cycle = ly.cycle(c.side);
    let knob = ly.knob(c.side);
    let mut expect: Vec<usize> = ly.star(c.side).to_vec();
    expect.push(knob);
    expect.push(companion);
    expect.sort_unstable();
    let mut have: Vec<usize> = cycle.iter().map(|&x| sigma.get(x)).collect();
    have.sort_unstable();
    if have != expect {
        return Err(Error::Precondition("cycle does not hold exactly the leaves, the knob and the companion".into()));
    }
    if !lc.y.has_edge(knob, companion) {
        return Err(Error::Precondition(format!("{companion} is not a neighbor of the knob")));
    }
    let mut at = cycle.iter().position(|&x| sigma.get(x) == knob).expect("knob on cycle");
    let mut seq = SwapSequence::new(sigma.clone());
    for _ in 0..loops * CYCLE_LEN {
        let nxt = match direction {
            Direction::Forward => (at + 1) % CYCLE_LEN,
            Direction::Reverse => (at + CYCLE_LEN - 1) % CYCLE_LEN,
        };
        let (a, b) = (cycle[at], cycle[nxt]);
        seq.swaps.push((a.min(b), a.max(b)));
        at = nxt;
    }
    Ok(seq)
}

/// Replays a program with every invariant checker at every configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub configurations: usize,
    pub rule_of_two: usize,
    pub layer_independence: [usize; 4],
    pub path_images: usize,
    pub order_invariance: usize,
    pub knob_extract: usize,
    pub unfriendly: usize,
}

impl InvariantReport {
    pub fn clean(&self) -> bool {
        self.rule_of_two == 0
            && self.layer_independence == [0; 4]
            && self.path_images == 0
            && self.order_invariance == 0
            && self.knob_extract == 0
            && self.unfriendly == 0
    }
}

/// Counts violations of each checker along `seq`. `stride` samples every `stride`-th configuration
/// (the start and end are always checked).
pub fn check_invariants_along(lc: &LayeredConstruction, seq: &SwapSequence, stride: usize) -> InvariantReport {
    let mut map = seq.start.as_slice().to_vec();
    let mut pos = inverse(&map);
    let mut rep = InvariantReport::default();
    let stride = stride.max(1);
    let check = |map: &[usize], pos: &[usize], rep: &mut InvariantReport| {
        rep.configurations += 1;
        rep.rule_of_two += !rule_of_two_raw(lc, pos) as usize;
        for (i, ok) in layer_independence_raw(lc, pos).iter().enumerate() {
            rep.layer_independence[i] += !ok as usize;
        }
        rep.path_images += !path_images_raw(lc, map, pos) as usize;
        rep.order_invariance += !order_invariance_raw(lc, map) as usize;
        rep.knob_extract += !knob_extract_raw(lc, map, pos) as usize;
    };
    check(&map, &pos, &mut rep);
    let total = seq.swaps.len();
    for (i, &(a, b)) in seq.swaps.iter().enumerate() {
        let (ya, yb) = (map[a], map[b]);
        if !lc.x.has_edge(a, b) || !lc.y.has_edge(ya, yb) {
            rep.unfriendly += 1;
        }
        map.swap(a, b);
        pos[ya] = b;
        pos[yb] = a;
        if (i + 1) % stride == 0 || i + 1 == total {
            check(&map, &pos, &mut rep);
        }
    }
    rep
}

/// Def. of a knob rotation, checked literally on `seq[start..end]`.
pub fn is_knob_rotation(lc: &LayeredConstruction, seq: &SwapSequence, r: &RotationRecord) -> bool {
    let len = r.end - r.start;
    if len == 0 || !len.is_multiple_of(CYCLE_LEN) || r.end > seq.swaps.len() {
        return false;
    }
    let mut map = seq.start.as_slice().to_vec();
    for &(a, b) in &seq.swaps[..r.start] {
        map.swap(a, b);
    }
    let ly = lc.layer(r.level);
    let cycle = ly.cycle(r.side);
    let knob = ly.knob(r.side);
    if !lc.y.has_edge(knob, r.companion) {
        return false;
    }
    let mut expect: Vec<usize> = ly.star(r.side).to_vec();
    expect.push(knob);
    expect.push(r.companion);
    expect.sort_unstable();
    let content_ok = |map: &[usize]| {
        let mut have: Vec<usize> = cycle.iter().map(|&x| map[x]).collect();
        have.sort_unstable();
        have == expect
    };
    let Some(v0) = cycle.iter().position(|&x| map[x] == knob) else { return false };
    let step: isize = match r.direction {
        Direction::Forward => 1,
        Direction::Reverse => -1,
    };
    if !content_ok(&map) {
        return false;
    }
    for (j, &(a, b)) in seq.swaps[r.start..r.end].iter().enumerate() {
        map.swap(a, b);
        if !content_ok(&map) {
            return false;
        }
        let want = (v0 as isize + step * (j as isize + 1)).rem_euclid(CYCLE_LEN as isize) as usize;
        if map[cycle[want]] != knob {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs::FsContext;

    #[test]
    fn sizes() {
        for l in 1..=5 {
            let lc = build(l).unwrap();
            assert_eq!(lc.n(), 58 * l + 2);
            assert_eq!(lc.x().edge_count(), 61 * l);
            assert_eq!(lc.y().edge_count(), 313 * l);
            for ly in lc.layers() {
                assert_eq!(ly.cycle_a.len(), 16);
                assert_eq!(ly.path_a.len(), 16);
                assert_eq!(ly.path_b.len(), 15);
            }
        }
        assert_eq!(build(1).unwrap().n(), 60);
        assert_eq!(build(3).unwrap().n(), 176);
        assert!(build(0).is_err());
    }

    #[test]
    fn adjacent_cycles_share_one_vertex() {
        let lc = build(3).unwrap();
        let inter = |a: &[usize], b: &[usize]| a.iter().filter(|v| b.contains(v)).count();
        for l in 1..=3 {
            let ly = lc.layer(l);
            assert_eq!(inter(&ly.cycle_a, &ly.cycle_b), 1);
            if l < 3 {
                let nx = lc.layer(l + 1);
                assert_eq!(inter(&ly.cycle_a, &nx.cycle_a), 1);
                assert_eq!(inter(&ly.cycle_b, &nx.cycle_b), 1);
                assert_eq!(inter(&ly.cycle_a, &nx.cycle_b), 0);
            }
        }
    }

    #[test]
    fn inner_vertex_counts() {
        let lc = build(3).unwrap();
        let gap = |c: &[usize], a: usize, b: usize| {
            let i = c.iter().position(|&x| x == a).unwrap();
            let j = c.iter().position(|&x| x == b).unwrap();
            let d = (j + 16 - i) % 16;
            d.min(16 - d) - 1
        };
        let l2 = lc.layer(2);
        assert_eq!(gap(&l2.cycle_a, l2.v_a, l2.v_a_down.unwrap()), 3);
        assert_eq!(gap(&l2.cycle_a, l2.v, l2.v_a_up.unwrap()), 3);
        let l1 = lc.layer(1);
        assert_eq!(gap(&l1.cycle_a, l1.v_a, l1.v), 7);
        let l3 = lc.layer(3);
        assert_eq!(gap(&l3.cycle_b, l3.v_b, l3.v), 7);
    }

    #[test]
    fn sigma_s_placement() {
        let lc = build(2).unwrap();
        let s = lc.sigma_s();
        let (l1, l2) = (lc.layer(1), lc.layer(2));
        assert_eq!(s.get(l1.cycle_a[TOP]), l1.knob_a);
        assert_eq!(s.get(l1.cycle_b[TOP]), l1.knob_b);
        assert_eq!(s.get(*l1.path_a.last().unwrap()), l2.knob_a);
        assert_eq!(s.get(l1.v_b), l2.knob_b);
        assert!(l1.k_a.contains(&l2.knob_a) && l1.k_b.contains(&l2.knob_b));
        for ly in lc.layers() {
            for side in [Side::A, Side::B] {
                let leaves = ly.star(side);
                let non_leaf = ly.cycle(side).iter().filter(|&&x| !leaves.contains(&s.get(x))).count();
                assert_eq!(non_leaf, 2);
            }
        }
    }

    #[test]
    fn boundaries() {
        let lc = build(1).unwrap();
        let l1 = lc.layer(1);
        let mut want = vec![l1.v_a, l1.v];
        want.sort_unstable();
        assert_eq!(lc.boundary(CycleId { layer: 1, side: Side::A }).unwrap(), want);
        let lc = build(3).unwrap();
        assert_eq!(lc.boundary(CycleId { layer: 2, side: Side::A }).unwrap().len(), 4);
        let lc = build(2).unwrap();
        let l2 = lc.layer(2);
        let mut want = vec![l2.v_b, l2.v_b_up.unwrap(), l2.v];
        want.sort_unstable();
        assert_eq!(lc.boundary(CycleId { layer: 2, side: Side::B }).unwrap(), want);
    }

    #[test]
    fn checkers_at_sigma_s() {
        for l in 1..=3 {
            let lc = build(l).unwrap();
            let s = lc.sigma_s();
            assert!(check_rule_of_two(&lc, s));
            assert_eq!(check_layer_independence(&lc, s), [true; 4]);
            assert!(check_path_images(&lc, s));
            assert!(check_knob_extract(&lc, s));
            assert!(check_order_invariance(&lc, s));
        }
    }

    #[test]
    fn checkers_catch_violations() {
        let lc = build(1).unwrap();
        let l1 = lc.layer(1);
        let s = lc.sigma_s();
        let leaf_x = l1.cycle_a[1];
        let path_x = l1.path_a[3];
        assert!(!check_rule_of_two(&lc, &s.swapped(leaf_x, path_x)));
        let knob_x = l1.cycle_a[TOP];
        let far_b = l1.path_b[5];
        assert!(!check_layer_independence(&lc, &s.swapped(knob_x, far_b))[0]);
        let two = s.swapped(l1.path_a[1], l1.cycle_a[1]).swapped(l1.path_a[2], l1.cycle_a[2]);
        assert!(!check_layer_independence(&lc, &two)[3]);
        let flipped = s.swapped(l1.path_a[1], l1.path_a[2]);
        assert!(!check_order_invariance(&lc, &flipped));
    }

    #[test]
    fn is_left_cases() {
        let lc = build(1).unwrap();
        let l1 = lc.layer(1);
        let s = lc.sigma_s();
        assert_eq!(is_left(&lc, s, 1, l1.k_a[5], l1.k_a[2]), Some(true));
        assert_eq!(is_left(&lc, s, 1, l1.k_b[1], l1.k_b[4]), Some(true));
        let moved = s.swapped(l1.path_a[1], l1.path_b[3]);
        assert_eq!(is_left(&lc, &moved, 1, l1.k_b[0], l1.k_b[3]), Some(false));
        assert_eq!(is_left(&lc, &moved, 1, l1.k_b[3], l1.k_b[0]), Some(true));
        assert_eq!(is_left(&lc, s, 1, l1.k_a[0], l1.k_b[0]), None);
        assert_eq!(is_left(&lc, s, 1, l1.star_a[0], l1.star_a[1]), None);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(1).unwrap(), 1);
        assert_eq!(lower_bound(3).unwrap(), 625);
        assert_eq!(lower_bound(5).unwrap(), 390625);
        assert!(matches!(lower_bound(20), Err(Error::Overflow(_))));
    }

    #[test]
    fn padding() {
        let (x, y, s) = padded(1, 60).unwrap();
        assert_eq!((x.n(), y.n(), s.len()), (60, 60, 60));
        let (x, y, s) = padded(1, 61).unwrap();
        assert_eq!(x.isolated_vertices(), vec![60]);
        assert_eq!(y.isolated_vertices(), vec![60]);
        assert_eq!(s.get(60), 60);
        let lc = build(1).unwrap();
        let plain = FsContext::new(lc.x().clone(), lc.y().clone()).unwrap();
        let pad = FsContext::new(x, y).unwrap();
        assert_eq!(plain.degree(lc.sigma_s()), pad.degree(&s));
        assert!(padded(1, 59).is_err());
    }

    #[test]
    fn knob_rotation_examples() {
        let lc = build(1).unwrap();
        let l1 = lc.layer(1);
        let s = lc.sigma_s();
        let c = CycleId { layer: 1, side: Side::B };
        let mu = s.get(l1.v_b);
        assert!(knob_rotation(&lc, s, c, mu, 0, Direction::Forward).unwrap().is_empty());
        let one = knob_rotation(&lc, s, c, mu, 1, Direction::Forward).unwrap();
        assert_eq!(one.len(), 16);
        let ctx = FsContext::new(lc.x().clone(), lc.y().clone()).unwrap();
        let end = ctx.validate_sequence(&one).unwrap();
        assert_eq!(end.get(l1.cycle_b[TOP]), l1.knob_b);
        let wrong = knob_rotation(&lc, s, c, l1.k_a[0], 1, Direction::Forward);
        assert!(wrong.is_err());
    }

    #[test]
    fn knob_rotation_shifts_companions() {
        let lc = build(1).unwrap();
        let l1 = lc.layer(1);
        let s = lc.sigma_s();
        let c = CycleId { layer: 1, side: Side::B };
        let mu = s.get(l1.v_b);
        let ring: Vec<usize> = (0..15).map(|i| l1.cycle_b[(TOP + 1 + i) % 16]).collect();
        for k in [1usize, 4, 15] {
            let seq = knob_rotation(&lc, s, c, mu, k, Direction::Forward).unwrap();
            let end = seq.end_unchecked();
            for i in 0..15 {
                assert_eq!(end.get(ring[(i + 15 - k % 15) % 15]), s.get(ring[i]));
            }
        }
    }

    #[test]
    fn one_layer_program() {
        let lc = build(1).unwrap();
        let p = one_layer_extraction(&lc, 1, &Limits::default()).unwrap();
        let ctx = FsContext::new(lc.x().clone(), lc.y().clone()).unwrap();
        let end = ctx.validate_sequence(&p.program).unwrap();
        let l1 = lc.layer(1);
        let mut on_pb: Vec<usize> = l1.path_b.iter().map(|&x| end.get(x)).collect();
        on_pb.sort_unstable();
        assert_eq!(on_pb, l1.k_a);
        let mut on_pa: Vec<usize> = l1.path_a[1..].iter().map(|&x| end.get(x)).collect();
        on_pa.sort_unstable();
        assert_eq!(on_pa, l1.k_b);
        assert!(is_extraction(&lc, lc.sigma_s(), &end, 1));
        assert!(!is_extraction(&lc, lc.sigma_s(), lc.sigma_s(), 1));
        assert_eq!(p.checkpoints, vec![0, p.program.len()]);
    }
}
