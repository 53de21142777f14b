use fsgraph::construction::{self as cons, ProgramEvent};
use fsgraph::explorer::{explore_report, fs_girth_witness, max_component_diameter, ComponentGraph};
use fsgraph::girth_probe::conjecture_probe;
use fsgraph::markov::{tv_curve, transition_matrix, ChainState, RngAlgorithm};
use fsgraph::orientations::{
    acyclic_orientations, class_report, double_flip_classes, linear_extensions, orientation_from, toric_classes,
};
use fsgraph::repro::{criterion, ReproOptions};
use fsgraph::solvers::{cycle_route, double_flip_skeleton, inversion_count, path_sort_on, token_swap_complete};
use fsgraph::{Configuration, FsContext, SwapSequence};
use serde::Serialize;
use serde_json::json;

use crate::input::{configuration, graph};
use crate::{CliError, Command, Emit, Env, Pair, SortMethod, Table};

type Res = Result<(), CliError>;

pub fn dispatch(cmd: Command, env: &mut Env) -> Res {
    match cmd {
        Command::Explore(pair) => explore(&pair, env),
        Command::Diameter { pair, from, two_sweep } => diameter(&pair, from.as_deref(), two_sweep, env),
        Command::Girth { pair, witness } => girth(&pair, witness, env),
        Command::Orient { graph, sigma } => orient(&graph, sigma.as_deref(), env),
        Command::Sort { y, from, to, method, x } => sort(&y, &from, &to, method, x.as_deref(), env),
        Command::Route { y, from, to, skeleton } => route(&y, &from, &to, skeleton, env),
        Command::Construct { l, emit, level, eta } => construct(l, emit, level.unwrap_or(l), eta, env),
        Command::GirthProbe { graph, budget } => girth_probe(&graph, budget, env),
        Command::Chain { pair, steps, seed, start, every, table, rng } => {
            chain(&pair, steps, seed, start.as_deref(), every, table, &rng, env)
        }
        Command::Repro { slow, seed, only, .. } => repro(slow, seed, &only, env),
    }
}

fn context(pair: &Pair, env: &Env) -> Result<FsContext, CliError> {
    Ok(FsContext::with_limits(graph(&pair.x)?, graph(&pair.y)?, env.limits.clone())?)
}

fn emit_json<T: Serialize>(env: &mut Env, value: &T) -> Res {
    serde_json::to_writer_pretty(&mut *env.out, value)?;
    writeln!(env.out)?;
    Ok(())
}

fn explore(pair: &Pair, env: &mut Env) -> Res {
    let ctx = context(pair, env)?;
    let report = explore_report(&ctx)?;
    if env.json {
        return emit_json(env, &report);
    }
    writeln!(env.out, "{} components", report.components.len())?;
    for (i, c) in report.components.iter().enumerate() {
        let shape = if c.is_cycle { ", cycle" } else { "" };
        writeln!(env.out, "  {i}: size {} diameter {}{shape}", c.size, c.diameter)?;
    }
    match report.girth {
        Some(g) => writeln!(env.out, "girth {g}")?,
        None => writeln!(env.out, "girth none")?,
    }
    writeln!(env.out, "connected {}", report.connected)?;
    Ok(())
}

fn diameter(pair: &Pair, from: Option<&str>, two_sweep: bool, env: &mut Env) -> Res {
    let ctx = context(pair, env)?;
    let (d, scope) = match from {
        None => (max_component_diameter(&ctx)?, "max"),
        Some(w) => {
            let sigma = configuration(w, ctx.n())?;
            let comp = ComponentGraph::build(&ctx, &sigma)?;
            if two_sweep {
                let s = comp.index_of(&sigma).expect("seed is in its component");
                (comp.two_sweep_lower_bound(s), "component")
            } else {
                (comp.diameter(), "component")
            }
        }
    };
    if env.json {
        return emit_json(env, &json!({ "diameter": d, "exact": !two_sweep, "scope": scope }));
    }
    if two_sweep {
        writeln!(env.out, "{d} (two-sweep lower bound)")?;
    } else {
        writeln!(env.out, "{d}")?;
    }
    Ok(())
}

fn girth(pair: &Pair, witness: bool, env: &mut Env) -> Res {
    let ctx = context(pair, env)?;
    let cycle = fs_girth_witness(&ctx)?;
    let g = cycle.as_ref().map(Vec::len);
    if env.json {
        let mut v = json!({ "girth": g });
        if witness {
            v["witness"] = json!(cycle.as_ref().map(|c| c.iter().map(Configuration::word).collect::<Vec<_>>()));
        }
        return emit_json(env, &v);
    }
    match g {
        Some(g) => writeln!(env.out, "{g}")?,
        None => writeln!(env.out, "none")?,
    }
    if witness {
        for c in cycle.iter().flatten() {
            writeln!(env.out, "  {}", c.word())?;
        }
    }
    Ok(())
}

fn orient(g: &str, sigma: Option<&str>, env: &mut Env) -> Res {
    let g = graph(g)?;
    env.limits.check_orientation(g.n())?;
    if let Some(w) = sigma {
        let sigma = configuration(w, g.n())?;
        let alpha = orientation_from(&sigma, &g);
        let extensions = linear_extensions(&alpha, &env.limits)?.len();
        if env.json {
            return emit_json(
                env,
                &json!({
                    "arcs": alpha.arcs(),
                    "sources": alpha.sources(),
                    "sinks": alpha.sinks(),
                    "comparable_pairs": alpha.comparable_pairs(),
                    "linear_extensions": extensions,
                }),
            );
        }
        let arcs: Vec<String> = alpha.arcs().iter().map(|(a, b)| format!("{a}->{b}")).collect();
        writeln!(env.out, "arcs {}", arcs.join(" "))?;
        writeln!(env.out, "sources {:?}", alpha.sources())?;
        writeln!(env.out, "sinks {:?}", alpha.sinks())?;
        writeln!(env.out, "linear extensions {extensions}")?;
        return Ok(());
    }
    let count = acyclic_orientations(&g, &env.limits)?.len();
    let toric = class_report(&toric_classes(&g, &env.limits)?);
    let double = class_report(&double_flip_classes(&g, &env.limits)?);
    if env.json {
        return emit_json(env, &json!({ "acyclic_orientations": count, "toric": toric, "double_flip": double }));
    }
    writeln!(env.out, "acyclic orientations {count}")?;
    writeln!(env.out, "toric classes {} sizes {:?}", toric.class_count, toric.sizes)?;
    writeln!(env.out, "double-flip classes {} sizes {:?}", double.class_count, double.sizes)?;
    Ok(())
}

fn trace_steps(env: &mut Env, seq: &SwapSequence, target: &Configuration) -> Res {
    if !env.trace {
        return Ok(());
    }
    let mut cur = seq.start.clone();
    writeln!(env.err, "step 0 start {} inv {}", cur.word(), inversion_count(&cur, target))?;
    for (i, &(a, b)) in seq.swaps.iter().enumerate() {
        cur = cur.swapped(a, b);
        writeln!(env.err, "step {} edge {a} {b} inv {}", i + 1, inversion_count(&cur, target))?;
    }
    Ok(())
}

fn print_sequence(env: &mut Env, seq: &SwapSequence) -> Res {
    if env.json {
        return emit_json(env, seq);
    }
    writeln!(env.out, "# {} swaps from {}", seq.len(), seq.start.word())?;
    for &(a, b) in &seq.swaps {
        writeln!(env.out, "{a} {b}")?;
    }
    Ok(())
}

fn sort(y: &str, from: &str, to: &str, method: SortMethod, x: Option<&str>, env: &mut Env) -> Res {
    let y = graph(y)?;
    let sigma = configuration(from, y.n())?;
    let tau = configuration(to, y.n())?;
    let seq = match method {
        SortMethod::Path => path_sort_on(&y, &sigma, &tau)?,
        SortMethod::Token => {
            let x = graph(x.expect("clap requires --x"))?;
            if y.edge_count() != y.n() * (y.n() - 1) / 2 {
                return Err(CliError::Input("--method token needs Y complete".into()));
            }
            token_swap_complete(&x, &sigma, &tau)?
        }
    };
    trace_steps(env, &seq, &tau)?;
    print_sequence(env, &seq)
}

fn route(y: &str, from: &str, to: &str, skeleton: bool, env: &mut Env) -> Res {
    let y = graph(y)?;
    let sigma = configuration(from, y.n())?;
    let tau = configuration(to, y.n())?;
    let seq = cycle_route(&y, &sigma, &tau)?;
    trace_steps(env, &seq, &tau)?;
    if !skeleton {
        return print_sequence(env, &seq);
    }
    let flips = double_flip_skeleton(&y, &seq)?;
    if env.trace {
        for (i, f) in flips.iter().enumerate() {
            writeln!(env.err, "flip {} source {} sink {}", i + 1, f.source, f.sink)?;
        }
    }
    if env.json {
        return emit_json(env, &json!({ "start": seq.start, "swaps": seq.swaps, "skeleton": flips }));
    }
    print_sequence(env, &seq)?;
    writeln!(env.out, "# skeleton: {} double-flips", flips.len())?;
    for f in &flips {
        writeln!(env.out, "# flip {} {}", f.source, f.sink)?;
    }
    Ok(())
}

fn construct(l: usize, emit: Emit, level: usize, eta: usize, env: &mut Env) -> Res {
    let lc = cons::build(l)?;
    match emit {
        Emit::Graphs => {
            if env.json {
                return emit_json(env, &lc.to_json());
            }
            writeln!(env.out, "# X_{l}")?;
            write!(env.out, "{}", lc.x().to_text())?;
            writeln!(env.out, "# Y_{l}")?;
            write!(env.out, "{}", lc.y().to_text())?;
        }
        Emit::SigmaS => {
            if env.json {
                return emit_json(env, lc.sigma_s());
            }
            writeln!(env.out, "{}", lc.sigma_s().word())?;
        }
        Emit::Program => {
            let json = env.json;
            let trace = env.trace;
            let mut swaps = 0u64;
            let (out, err) = (&mut *env.out, &mut *env.err);
            cons::stream_extraction_program(&lc, level, eta, &mut |ev| {
                let r = match ev {
                    ProgramEvent::Swap(a, b) => {
                        swaps += 1;
                        if json { writeln!(out, "[{a},{b}]") } else { writeln!(out, "{a} {b}") }
                    }
                    ProgramEvent::Checkpoint(i) if trace => writeln!(err, "checkpoint at swap {i}"),
                    ProgramEvent::Rotation(r) if trace => writeln!(
                        err,
                        "rotation level {} side {:?} companion {} loops {} swaps {}..{}",
                        r.level, r.side, r.companion, r.loops, r.start, r.end
                    ),
                    _ => Ok(()),
                };
                r.map_err(|e| fsgraph::Error::Precondition(format!("write failed: {e}")))
            })?;
            if trace {
                writeln!(env.err, "{swaps} swaps")?;
            }
        }
    }
    Ok(())
}

fn girth_probe(g: &str, budget: Option<u64>, env: &mut Env) -> Res {
    let x = graph(g)?;
    let mut limits = env.limits.clone();
    if let Some(b) = budget {
        limits.max_states = b;
    }
    let report = conjecture_probe(&x, &limits)?;
    if env.json {
        return emit_json(env, &report);
    }
    match report.oracle_girth {
        Some(g) => writeln!(env.out, "oracle girth {g}")?,
        None => writeln!(env.out, "oracle girth none")?,
    }
    match report.candidate_min {
        Some(m) => writeln!(env.out, "shortest candidate {m}")?,
        None => writeln!(env.out, "shortest candidate none")?,
    }
    if let Some(t) = report.witness_subgraph_type {
        writeln!(env.out, "witness subgraph {}", serde_json::to_value(t)?.as_str().unwrap_or("?"))?;
    }
    for c in &report.candidates {
        let len = c.formula_len.map_or("-".to_string(), |l| l.to_string());
        let kind = serde_json::to_value(c.kind)?;
        writeln!(env.out, "  {} {:?} formula {len}", kind.as_str().unwrap_or("?"), c.subgraph.vertices)?;
    }
    writeln!(env.out, "agree {}", report.agree)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn chain(
    pair: &Pair,
    steps: u64,
    seed: u64,
    start: Option<&str>,
    every: Option<u64>,
    table: Table,
    rng: &str,
    env: &mut Env,
) -> Res {
    RngAlgorithm::parse(rng)?;
    let ctx = context(pair, env)?;
    let start = match start {
        Some(w) => configuration(w, ctx.n())?,
        None => Configuration::identity(ctx.n()),
    };
    match table {
        Table::Trajectory => {
            let every = every.unwrap_or((steps / 100).max(1)).max(1);
            let mut chain = ChainState::new(ctx, start, seed)?;
            let mut rows = Vec::new();
            let (mut swaps, mut stays, mut frozen) = (0u64, 0u64, 0u64);
            rows.push((0, 0, 0, 0, chain.current().word()));
            let mut done = 0;
            while done < steps {
                let k = every.min(steps - done);
                let s = chain.run(k);
                done += k;
                swaps += s.swaps;
                stays += s.stays;
                frozen += s.frozen;
                rows.push((done, swaps, stays, frozen, s.end.word()));
            }
            if env.json {
                return emit_json(
                    env,
                    &json!({ "steps": steps, "seed": seed, "swaps": swaps, "stays": stays,
                             "frozen": frozen, "end": chain.current() }),
                );
            }
            let mut w = csv::Writer::from_writer(&mut *env.out);
            w.write_record(["step", "swaps", "stays", "frozen", "state"])?;
            for (t, a, b, c, s) in rows {
                w.write_record([t.to_string(), a.to_string(), b.to_string(), c.to_string(), s])?;
            }
            w.flush()?;
        }
        Table::Tv => {
            let comp = ComponentGraph::build(&ctx, &start)?;
            let p = transition_matrix(&ctx, &comp)?;
            let t_max = usize::try_from(steps).map_err(|_| CliError::Input("too many steps".into()))?;
            let curve = tv_curve(&p, t_max)?;
            if env.json {
                return emit_json(env, &json!({ "component_size": comp.size(), "tv": curve }));
            }
            let mut w = csv::Writer::from_writer(&mut *env.out);
            w.write_record(["t", "tv"])?;
            for (t, tv) in curve.iter().enumerate() {
                w.write_record([t.to_string(), format!("{tv:.12e}")])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn repro(slow: bool, seed: u64, only: &[u8], env: &mut Env) -> Res {
    let opts = ReproOptions { slow, seed };
    let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    let mut results = Vec::new();
    for id in ids {
        let r = criterion(id, &opts);
        if !env.json {
            writeln!(env.out, "{}", r.line())?;
            env.out.flush()?;
        }
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if env.json {
        emit_json(env, &json!({ "passed": failed == 0, "criteria": results }))?;
    } else {
        writeln!(env.out, "{} of {} criteria passed", results.len() - failed, results.len())?;
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} criteria failed")));
    }
    Ok(())
}
