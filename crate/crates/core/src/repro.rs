//! The acceptance table: one pass/fail line per criterion, each backed by an exhaustive or seeded check.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construction::{self as cons, LayeredConstruction};
use crate::error::{Error, Result};
use crate::explorer::{component_diameter, for_each_component, fs_girth, is_connected_fs, max_component_diameter, ComponentGraph};
use crate::fs::{factorial, Configuration, FsContext, SwapSequence};
use crate::girth_probe::{barbell_walk, cycle_walk, path_induced, star_start, walk_stats};
use crate::graph::SimpleGraph;
use crate::limits::Limits;
use crate::markov::{chi_square_passes, chi_square_uniform, pair_selection_counts, transition_matrix, tv_curve};
use crate::orientations::{acyclic_orientations, cycle_connectivity_predicate, linear_extensions};
use crate::solvers::{cycle_route, cycle_route_bound, double_flip_skeleton, inversion_count};

pub const ROW_SUM_TOL: f64 = 1e-12;
pub const TV_MONOTONE_TOL: f64 = 1e-12;
pub const CHI_SQUARE_SAMPLES: u64 = 1_000_000;
pub const ROUTE_INSTANCES: usize = 100;
pub const EDGE_COUNT_INSTANCES: usize = 50;
pub const WALK_STEPS: usize = 100_000;
pub const CHAIN_MIN: usize = 25;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproOptions {
    /// Also run the gated minutes-long checks.
    pub slow: bool,
    pub seed: u64,
}

pub const NAMES: [&str; 11] = [
    "path diameter with K_n",
    "cycle diameter with K_n",
    "cycle-star components are cycles",
    "cycle connectivity predicate",
    "path components are linear extensions",
    "diameter upper bounds",
    "cycle_route certificates",
    "construction certificates",
    "girth probe",
    "edge count",
    "markov chain",
];

pub fn acceptance_suite(opts: &ReproOptions) -> Vec<CriterionResult> {
    (1..=11).map(|id| criterion(id, opts)).collect()
}

pub fn criterion(id: u8, opts: &ReproOptions) -> CriterionResult {
    let t = Instant::now();
    let out = match id {
        1 => c1_path_diameter(),
        2 => c2_cycle_diameter(),
        3 => c3_cycle_star(),
        4 => c4_connectivity(),
        5 => c5_linear_extensions(),
        6 => c6_diameter_bounds(),
        7 => c7_cycle_route(opts.seed),
        8 => c8_construction(opts.seed),
        9 => c9_girth(opts.slow),
        10 => c10_edge_count(opts.seed),
        11 => c11_markov(opts.seed),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let (passed, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name: NAMES.get(id as usize - 1).unwrap_or(&"unknown").to_string(),
        passed,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

type Outcome = Result<(bool, String)>;

fn ctx(x: SimpleGraph, y: SimpleGraph) -> Result<FsContext> {
    FsContext::new(x, y)
}

fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn c1_path_diameter() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=7 {
        let d = component_diameter(&ctx(SimpleGraph::path(n), SimpleGraph::complete(n))?, &Configuration::identity(n))?;
        if d != binom2(n) {
            bad.push(format!("n={n}: {d} != {}", binom2(n)));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "n=3..7 match C(n,2)".into() } else { bad.join("; ") }))
}

fn c2_cycle_diameter() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=7 {
        let d = component_diameter(&ctx(SimpleGraph::cycle(n)?, SimpleGraph::complete(n))?, &Configuration::identity(n))?;
        if d != n * n / 4 {
            bad.push(format!("n={n}: {d} != {}", n * n / 4));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "n=3..7 match floor(n^2/4)".into() } else { bad.join("; ") }))
}

fn c3_cycle_star() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=7 {
        let c = ctx(SimpleGraph::cycle(n)?, SimpleGraph::star(n))?;
        let mut count = 0u64;
        let mut wrong = 0u64;
        for_each_component(&c, |comp| {
            count += 1;
            if comp.size() != n * (n - 1) || !comp.is_cycle() {
                wrong += 1;
            }
            Ok(())
        })?;
        let want = factorial(n).unwrap() / (n * (n - 1)) as u64;
        if wrong > 0 || count != want {
            bad.push(format!("n={n}: {count} components ({want} expected), {wrong} not n(n-1)-cycles"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "n=3..7: (n-2)! components, each Cycle_{n(n-1)}".into() } else { bad.join("; ") }))
}

fn c4_connectivity() -> Outcome {
    let mut disagreements = 0;
    let mut checked = 0;
    for n in [4usize, 5] {
        let x = SimpleGraph::cycle(n)?;
        for mask in 0..1u64 << binom2(n) {
            let y = SimpleGraph::from_mask(n, mask);
            let fs = is_connected_fs(&ctx(x.clone(), y.clone())?)?;
            if fs != cycle_connectivity_predicate(&y)? {
                disagreements += 1;
            }
            checked += 1;
        }
    }
    Ok((disagreements == 0, format!("{checked} graphs, {disagreements} disagreements")))
}

fn c5_linear_extensions() -> Outcome {
    let limits = Limits::default();
    let mut orientations = 0usize;
    let mut pairs = 0usize;
    let mut bad = 0usize;
    for n in 2..=5usize {
        let x = SimpleGraph::path(n);
        for mask in 0..1u64 << binom2(n) {
            let y = SimpleGraph::from_mask(n, mask);
            let c = ctx(x.clone(), y.clone())?;
            for alpha in acyclic_orientations(&y.complement(), &limits)? {
                orientations += 1;
                let comp = ComponentGraph::build(&c, &alpha.linear_extension())?;
                let got: HashSet<Configuration> = comp.configurations().into_iter().collect();
                let want: HashSet<Configuration> = linear_extensions(&alpha, &limits)?.into_iter().collect();
                if got != want {
                    bad += 1;
                    continue;
                }
                let confs = comp.configurations();
                for i in 0..comp.size() {
                    let d = comp.distances_from(i);
                    for j in 0..comp.size() {
                        pairs += 1;
                        if d[j] as usize != inversion_count(&confs[i], &confs[j]) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((bad == 0, format!("{orientations} orientations, {pairs} distance pairs, {bad} disagreements")))
}

fn c6_diameter_bounds() -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 2..=5usize {
        for mask in 0..1u64 << binom2(n) {
            let y = SimpleGraph::from_mask(n, mask);
            let e = y.edge_count();
            let dp = max_component_diameter(&ctx(SimpleGraph::path(n), y.clone())?)?;
            checked += 1;
            if dp > e {
                violations.push(format!("path n={n} mask={mask}: {dp} > {e}"));
            }
            if n < 3 {
                continue;
            }
            let dc = max_component_diameter(&ctx(SimpleGraph::cycle(n)?, y.clone())?)?;
            if (!y.isolated_vertices().is_empty() || e + 2 <= n) && dc > e {
                violations.push(format!("cycle n={n} mask={mask}: {dc} > {e}"));
            }
            let sizes: Vec<usize> = y.complement().components().iter().map(Vec::len).collect();
            if sizes.iter().fold(0, |g, &s| gcd(g, s)) == 1 && dc > cycle_route_bound(n, e) {
                violations.push(format!("cycle gcd-1 n={n} mask={mask}: {dc} > {}", cycle_route_bound(n, e)));
            }
        }
    }
    Ok((violations.is_empty(), format!("{checked} graphs, {} violations {}", violations.len(), violations.join("; "))))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn random_walk(c: &FsContext, start: &Configuration, steps: usize, rng: &mut ChaCha8Rng) -> Configuration {
    let mut cur = start.clone();
    for _ in 0..steps {
        let e = c.friendly_edges(&cur);
        if let Some(&(a, b)) = e.choose(rng) {
            cur = cur.swapped(a, b);
        }
    }
    cur
}

fn c7_cycle_route(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let mut bad = Vec::new();
    let mut longest = 0usize;
    for n in [5usize, 6] {
        let mut done = 0;
        while done < ROUTE_INSTANCES {
            let y = SimpleGraph::from_mask(n, rng.gen::<u64>() & ((1 << binom2(n)) - 1));
            let sizes: Vec<usize> = y.complement().components().iter().map(Vec::len).collect();
            if sizes.iter().fold(0, |g, &s| gcd(g, s)) != 1 {
                continue;
            }
            done += 1;
            let c = ctx(SimpleGraph::cycle(n)?, y.clone())?;
            let mut m: Vec<usize> = (0..n).collect();
            m.shuffle(&mut rng);
            let sigma = Configuration::new(m)?;
            let tau = random_walk(&c, &sigma, 60, &mut rng);
            let seq = match cycle_route(&y, &sigma, &tau) {
                Ok(s) => s,
                Err(e) => {
                    bad.push(format!("n={n}: {e}"));
                    continue;
                }
            };
            longest = longest.max(seq.len());
            match c.validate_sequence(&seq) {
                Ok(end) if end == tau => {}
                Ok(_) => bad.push(format!("n={n}: wrong endpoint")),
                Err(e) => bad.push(format!("n={n}: {e}")),
            }
            if seq.len() > cycle_route_bound(n, y.edge_count()) {
                bad.push(format!("n={n}: length {} over bound", seq.len()));
            }
            if let Err(e) = double_flip_skeleton(&y, &seq) {
                bad.push(format!("n={n}: skeleton {e}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{} instances, longest route {longest}, {} failures {}", 2 * ROUTE_INSTANCES, bad.len(), bad.join("; "))))
}

/// A uniformly random friendly walk from `σ_s`.
pub fn construction_random_walk(lc: &LayeredConstruction, steps: usize, seed: u64) -> SwapSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = lc.sigma_s().as_slice().to_vec();
    let mut seq = SwapSequence::new(lc.sigma_s().clone());
    let mut friendly = Vec::new();
    for _ in 0..steps {
        friendly.clear();
        friendly.extend(lc.x().edges().iter().copied().filter(|&(a, b)| lc.y().has_edge(map[a], map[b])));
        let &(a, b) = friendly.choose(&mut rng).expect("σ_s has friendly swaps");
        map.swap(a, b);
        seq.swaps.push((a, b));
    }
    seq
}

fn c8_construction(seed: u64) -> Outcome {
    let limits = Limits::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for l in 1..=5 {
        let lc = cons::build(l)?;
        if lc.n() != 58 * l + 2 || lc.x().edge_count() != 61 * l || lc.y().edge_count() != 313 * l {
            ok = false;
            notes.push(format!("L={l}: wrong size"));
        }
    }
    let l1 = cons::build(1)?;
    let l2 = cons::build(2)?;
    let mut programs = Vec::new();
    for eta in [1, 2] {
        programs.push((format!("L=1 eta={eta}"), &l1, cons::one_layer_extraction(&l1, eta, &limits)?.program));
    }
    let p2 = cons::l_extraction_program(&l2, 2, 1, &limits)?;
    let chain = cons::count_extraction_chain(&l2, &p2.program, 1);
    programs.push(("L=2 level 2".into(), &l2, p2.program));
    for (name, lc, seq) in &programs {
        let rep = cons::check_invariants_along(lc, seq, 1);
        if !rep.clean() {
            ok = false;
            notes.push(format!("{name}: {rep:?}"));
        } else {
            notes.push(format!("{name}: {} swaps clean", seq.len()));
        }
    }
    for (i, lc) in [&l1, &l2].into_iter().enumerate() {
        let walk = construction_random_walk(lc, WALK_STEPS, seed.wrapping_add(i as u64));
        let rep = cons::check_invariants_along(lc, &walk, 1);
        if !rep.clean() {
            ok = false;
            notes.push(format!("walk L={}: {rep:?}", i + 1));
        }
    }
    notes.push(format!("random walks of {WALK_STEPS} steps clean"));
    if chain < CHAIN_MIN {
        ok = false;
    }
    notes.push(format!("level-1 chain {chain}"));
    let mut pow = 1u64;
    for l in 1..=10 {
        if cons::lower_bound(l)? != pow {
            ok = false;
            notes.push(format!("lower_bound({l}) wrong"));
        }
        pow *= 25;
    }
    Ok((ok, notes.join("; ")))
}

fn c9_girth(slow: bool) -> Outcome {
    let limits = Limits::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 4..=6 {
        let g = fs_girth(&ctx(SimpleGraph::cycle(n)?, SimpleGraph::star(n))?)?;
        if g != Some(n * (n - 1)) {
            ok = false;
            notes.push(format!("cycle n={n}: {g:?}"));
        }
        let c = ctx(SimpleGraph::cycle(n)?, SimpleGraph::star(n))?;
        let w = cycle_walk(&c, &(0..n).collect::<Vec<_>>(), &star_start(n, 0, 0))?;
        if !walk_stats(&c, &w)?.metrics_agree() {
            ok = false;
        }
    }
    let bowtie = SimpleGraph::barbell(3, 3, 0)?;
    let g = fs_girth(&ctx(bowtie, SimpleGraph::star(5))?)?;
    if g != Some(6) {
        ok = false;
        notes.push(format!("bowtie: {g:?}"));
    }
    let mut walks = 0;
    for a in 5..=7 {
        for b in a..=7 {
            for e in 0..=3 {
                let x = SimpleGraph::barbell(a, b, e)?;
                let bars = x.find_barbells_with(&Limits { subgraph_vertices: 32, ..limits.clone() })?;
                let [bar] = bars.as_slice() else {
                    ok = false;
                    notes.push(format!("barbell({a},{b},{e}): {} decompositions", bars.len()));
                    continue;
                };
                let c = ctx(x.clone(), SimpleGraph::star(x.n()))?;
                let seq = barbell_walk(&x, bar, &limits)?;
                let closed = c.validate_sequence(&seq)? == seq.start;
                let covers = path_induced(&c, &seq)?.edges == bar.edges();
                let metrics = walk_stats(&c, &seq)?.metrics_agree();
                if !(closed && covers && metrics && seq.len() == bar.formula_length()) {
                    ok = false;
                    notes.push(format!("barbell({a},{b},{e}) failed"));
                }
                walks += 1;
            }
        }
    }
    notes.push(format!("{walks} barbell walks at formula length"));
    if slow {
        let x = SimpleGraph::barbell(5, 5, 0)?;
        let g = fs_girth(&ctx(x, SimpleGraph::star(9))?)?;
        if g != Some(20) {
            ok = false;
        }
        notes.push(format!("slow: girth(two 5-cycles at a vertex, Star_9) = {g:?}"));
    } else {
        notes.push("slow check skipped".into());
    }
    Ok((ok, notes.join("; ")))
}

/// Adjacent pairs counted one configuration at a time.
pub fn brute_force_edge_count(c: &FsContext) -> u64 {
    let n = c.n();
    let total = factorial(n).expect("small n");
    let mut twice = 0u64;
    for r in 0..total {
        let s = Configuration::unrank(n, r);
        for a in 0..n {
            for b in a + 1..n {
                if c.x().has_edge(a, b) && c.y().has_edge(s.get(a), s.get(b)) {
                    twice += 1;
                }
            }
        }
    }
    twice / 2
}

fn c10_edge_count(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10);
    let mut bad = 0;
    for _ in 0..EDGE_COUNT_INSTANCES {
        let n = rng.gen_range(2..=6usize);
        let m = (1u64 << binom2(n)) - 1;
        let c = ctx(SimpleGraph::from_mask(n, rng.gen::<u64>() & m), SimpleGraph::from_mask(n, rng.gen::<u64>() & m))?;
        if c.fs_edge_count()? != brute_force_edge_count(&c) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{EDGE_COUNT_INSTANCES} instances, {bad} mismatches")))
}

fn c11_markov(seed: u64) -> Outcome {
    let mut worst_row = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    let mut contexts = vec![
        ctx(SimpleGraph::cycle(4)?, SimpleGraph::star(4))?,
        ctx(SimpleGraph::path(4), SimpleGraph::complete(4))?,
    ];
    for _ in 0..5 {
        contexts.push(ctx(SimpleGraph::cycle(5)?, SimpleGraph::from_mask(5, rng.gen::<u64>() & 1023))?);
    }
    for c in &contexts {
        for_each_component(c, |comp| {
            let p = transition_matrix(c, &comp)?;
            for i in 0..p.nrows() {
                worst_row = worst_row.max((p.row(i).sum() - 1.0).abs());
            }
            Ok(())
        })?;
    }
    let c = &contexts[0];
    let comp = ComponentGraph::build(c, &Configuration::identity(4))?;
    let curve = tv_curve(&transition_matrix(c, &comp)?, 300)?;
    let monotone = curve.windows(2).all(|w| w[1] <= w[0] + TV_MONOTONE_TOL);
    let k5 = ctx(SimpleGraph::complete(5), SimpleGraph::complete(5))?;
    let counts = pair_selection_counts(&k5, &Configuration::identity(5), CHI_SQUARE_SAMPLES, seed);
    let (stat, df) = chi_square_uniform(&counts);
    let chi_ok = chi_square_passes(stat, df);
    let ok = worst_row <= ROW_SUM_TOL && monotone && chi_ok;
    Ok((
        ok,
        format!(
            "max row error {worst_row:.1e}; TV nonincreasing over 300 steps: {monotone}; chi-square {stat:.2} on {df} df over {} draws",
            counts.iter().sum::<u64>()
        ),
    ))
}
