mod common;

use std::process::Command;

use common::{assert_valid, run, schema, validate};
use fsgraph::{Configuration, FsContext, SimpleGraph, SwapSequence};
use serde_json::json;

fn tmp(name: &str, body: &str) -> String {
    let p = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

/// Y on 5 vertices whose complement is an edge plus a 3-path.
fn coprime_y() -> String {
    let y = SimpleGraph::complete(5);
    let edges = y.edges().iter().copied().filter(|e| ![(0, 1), (2, 3), (3, 4)].contains(e));
    tmp("coprime_y.txt", &SimpleGraph::new(5, edges).unwrap().to_text())
}

#[test]
fn diameter_of_path_with_complete() {
    let o = run(&["diameter", "--x", "path:4", "--y", "complete:4"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "6\n"));
}

#[test]
fn explore_cycle_star_json() {
    let o = run(&["explore", "--x", "cycle:4", "--y", "star:4", "--json"]);
    assert_eq!(o.code, 0);
    let v = assert_valid("explore", &o.stdout);
    let c = json!({"size": 12, "is_cycle": true});
    let comps: Vec<_> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| json!({"size": c["size"], "is_cycle": c["is_cycle"]}))
        .collect();
    assert_eq!(comps, vec![c.clone(), c]);
}

#[test]
fn binary_examples_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fsgraph");
    let out = Command::new(bin).args(["diameter", "--x", "path:4", "--y", "complete:4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "6\n");
    let out = Command::new(bin).args(["diameter", "--nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).args(["explore", "--x", "zigzag:4", "--y", "star:4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .args(["explore", "--x", "cycle:5", "--y", "complete:5"])
        .env("FSGRAPH_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["explore", "--x", "path:3"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--threads", "0", "explore", "--x", "path:3", "--y", "path:3"]).code, 2);
    assert_eq!(run(&["repro", "--only", "12"]).code, 2);
    assert_eq!(run(&["--set", "max_states", "explore", "--x", "path:3", "--y", "path:3"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn input_errors() {
    let bad = tmp("bad_graph.txt", "3\n0 7\n");
    assert_eq!(run(&["explore", "--x", &bad, "--y", "path:3"]).code, 3);
    let garbage = tmp("garbage.json", "{\"n\": 3, \"edges\": [[0]]}");
    assert_eq!(run(&["explore", "--x", &garbage, "--y", "path:3"]).code, 3);
    assert_eq!(run(&["explore", "--x", "path:3", "--y", "path:4"]).code, 3);
    assert_eq!(run(&["explore", "--x", "cycle:x", "--y", "path:3"]).code, 3);
    assert_eq!(run(&["diameter", "--x", "path:3", "--y", "path:3", "--from", "0 0 1"]).code, 3);
    assert_eq!(run(&["--set", "colour=blue", "explore", "--x", "path:3", "--y", "path:3"]).code, 3);
    let cfg = tmp("bad.cfg", "max_states = lots\n");
    assert_eq!(run(&["--config", &cfg, "explore", "--x", "path:3", "--y", "path:3"]).code, 3);
    let o = run(&["route", "--y", "path:5", "--from", "0 1 2 3 4", "--to", "1 0 2 3 4"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("coprime"));
}

#[test]
fn budget_errors() {
    let o = run(&["--set", "max_states=10", "explore", "--x", "cycle:5", "--y", "complete:5"]);
    assert_eq!(o.code, 4);
    assert!(o.stderr.contains("budget"));
    let cfg = tmp("tight.cfg", "# tight\nexplorer_vertices = 4\nrng = chacha8\n");
    assert_eq!(run(&["--config", &cfg, "girth", "--x", "cycle:5", "--y", "star:5"]).code, 4);
    assert_eq!(run(&["girth-probe", "--graph", "cycle:6", "--budget", "3"]).code, 4);
}

#[test]
fn graph_files_in_both_formats() {
    let text = tmp("c4.txt", "4\n0 1\n1 2\n2 3\n3 0\n");
    let json_file = tmp("s4.json", "{\"n\": 4, \"edges\": [[0,1],[0,2],[0,3]]}");
    let a = run(&["explore", "--x", &text, "--y", &json_file, "--json"]);
    let b = run(&["explore", "--x", "cycle:4", "--y", "star:4", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn diameter_modes() {
    let v = assert_valid("diameter", &run(&["diameter", "--x", "cycle:5", "--y", "complete:5", "--json"]).stdout);
    assert_eq!(v["diameter"], 6);
    let o = run(&["diameter", "--x", "cycle:5", "--y", "complete:5", "--from", "0 1 2 3 4", "--two-sweep", "--json"]);
    let v = assert_valid("diameter", &o.stdout);
    assert_eq!(v["exact"], false);
    assert!(v["diameter"].as_u64().unwrap() <= 6);
}

#[test]
fn girth_with_witness() {
    let o = run(&["girth", "--x", "bowtie", "--y", "star:5", "--witness", "--json"]);
    let v = assert_valid("girth", &o.stdout);
    assert_eq!(v["girth"], 6);
    let words: Vec<Configuration> =
        v["witness"].as_array().unwrap().iter().map(|w| Configuration::parse_word(w.as_str().unwrap()).unwrap()).collect();
    assert_eq!(words.len(), 6);
    let ctx = FsContext::new(SimpleGraph::barbell(3, 3, 0).unwrap(), SimpleGraph::star(5)).unwrap();
    for i in 0..6 {
        assert!(ctx.neighbors(&words[i]).contains(&words[(i + 1) % 6]));
    }
    let o = run(&["girth", "--x", "path:3", "--y", "path:3", "--json"]);
    assert_eq!(assert_valid("girth", &o.stdout)["girth"], serde_json::Value::Null);
}

#[test]
fn orient_reports() {
    let v = assert_valid("orient", &run(&["orient", "--graph", "cycle:4", "--json"]).stdout);
    assert_eq!(v["acyclic_orientations"], 14);
    let v = assert_valid("orient", &run(&["orient", "--graph", "path:4", "--sigma", "3 2 1 0", "--json"]).stdout);
    assert_eq!(v["linear_extensions"], 1);
    assert_eq!(v["comparable_pairs"], 6);
}

#[test]
fn sort_replays_and_traces() {
    let o = run(&["--trace", "sort", "--y", "complete:5", "--from", "4 3 2 1 0", "--to", "0 1 2 3 4", "--json"]);
    assert_eq!(o.code, 0);
    let v = assert_valid("sequence", &o.stdout);
    let seq: SwapSequence = serde_json::from_value(v).unwrap();
    assert_eq!(seq.len(), 10);
    let ctx = FsContext::new(SimpleGraph::path(5), SimpleGraph::complete(5)).unwrap();
    assert_eq!(ctx.validate_sequence(&seq).unwrap(), Configuration::identity(5));
    assert_eq!(o.stderr.lines().count(), 11);
    assert!(o.stderr.lines().last().unwrap().ends_with("inv 0"));

    let o = run(&["sort", "--method", "token", "--x", "star:5", "--y", "complete:5", "--from", "1 2 3 4 0", "--to", "0 1 2 3 4", "--json"]);
    let seq: SwapSequence = serde_json::from_value(assert_valid("sequence", &o.stdout)).unwrap();
    let ctx = FsContext::new(SimpleGraph::star(5), SimpleGraph::complete(5)).unwrap();
    assert_eq!(ctx.validate_sequence(&seq).unwrap(), Configuration::identity(5));
    assert_eq!(run(&["sort", "--method", "token", "--y", "complete:3", "--from", "0 1 2", "--to", "0 1 2"]).code, 2);
}

#[test]
fn route_with_skeleton() {
    let y = coprime_y();
    let o = run(&["route", "--y", &y, "--from", "0 1 2 3 4", "--to", "4 3 2 1 0", "--skeleton", "--json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = assert_valid("sequence", &o.stdout);
    let swaps: Vec<(usize, usize)> = serde_json::from_value(v["swaps"].clone()).unwrap();
    let seq = SwapSequence { start: Configuration::identity(5), swaps };
    let yg = fsgraph_cli::input::graph(&y).unwrap();
    let ctx = FsContext::new(SimpleGraph::cycle(5).unwrap(), yg).unwrap();
    assert_eq!(ctx.validate_sequence(&seq).unwrap(), Configuration::reverse(5));
}

#[test]
fn construct_outputs() {
    let v = assert_valid("construction", &run(&["construct", "--L", "2", "--json"]).stdout);
    assert_eq!(v["n"], 118);
    let v = assert_valid("sigma_s", &run(&["construct", "--L", "1", "--emit", "sigma-s", "--json"]).stdout);
    assert_eq!(v.as_array().unwrap().len(), 60);
    let o = run(&["construct", "--L", "1", "--emit", "program"]);
    assert_eq!(o.code, 0);
    let lc = fsgraph::construction::build(1).unwrap();
    let swaps: Vec<(usize, usize)> = o
        .stdout
        .lines()
        .map(|l| {
            let (a, b) = l.split_once(' ').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let seq = SwapSequence { start: lc.sigma_s().clone(), swaps };
    let ctx = FsContext::new(lc.x().clone(), lc.y().clone()).unwrap();
    let end = ctx.validate_sequence(&seq).unwrap();
    assert!(fsgraph::construction::is_extraction(&lc, lc.sigma_s(), &end, 1));
    assert_eq!(run(&["construct", "--L", "1", "--emit", "program", "--level", "2"]).code, 3);
}

#[test]
fn girth_probe_report() {
    let o = run(&["girth-probe", "--graph", "bowtie", "--json"]);
    let v = assert_valid("girth_probe", &o.stdout);
    assert_eq!(v["oracle_girth"], 6);
    assert_eq!(v["agree"], true);
    assert_eq!(v["witness_subgraph_type"], "cycle");
}

#[test]
fn chain_csv_is_deterministic() {
    let args = ["chain", "--graph-x", "cycle:4", "--graph-y", "star:4", "--steps", "500", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let mut r = csv::Reader::from_reader(a.stdout.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["step", "swaps", "stays", "frozen", "state"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 101);
    let last = rows.last().unwrap();
    let total: u64 = (1..4).map(|i| last[i].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 500);
    let c = run(&["chain", "--x", "cycle:4", "--y", "star:4", "--steps", "500", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
    assert_valid("chain", &run(&["chain", "--x", "cycle:4", "--y", "star:4", "--steps", "50", "--json"]).stdout);
}

#[test]
fn chain_tv_table() {
    let o = run(&["chain", "--x", "cycle:4", "--y", "star:4", "--steps", "40", "--table", "tv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_bytes());
    let tv: Vec<f64> = r.records().map(|x| x.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(tv.len(), 41);
    assert!(tv.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    let v = assert_valid("chain", &run(&["chain", "--x", "cycle:4", "--y", "star:4", "--steps", "5", "--table", "tv", "--json"]).stdout);
    assert_eq!(v["component_size"], 12);
    assert_eq!(run(&["chain", "--x", "cycle:4", "--y", "star:4", "--steps", "5", "--rng", "mt"]).code, 3);
}

#[test]
fn repro_subset() {
    let o = run(&["repro", "--suite", "acceptance", "--only", "1,10"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let v = assert_valid("repro", &run(&["repro", "--only", "3", "--json"]).stdout);
    assert_eq!(v["passed"], true);
}

#[test]
fn threads_do_not_change_results() {
    let one = run(&["--threads", "1", "explore", "--x", "cycle:6", "--y", "path:6", "--json"]);
    let many = run(&["--threads", "4", "explore", "--x", "cycle:6", "--y", "path:6", "--json"]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema("explore");
    assert!(!validate(&s, &json!({"components": [], "girth": null})).is_empty());
    assert!(!validate(&s, &json!({"components": [{"size": 0, "diameter": 0, "is_cycle": true}], "girth": null, "connected": true})).is_empty());
    assert!(!validate(&s, &json!({"components": [], "girth": 5.5, "connected": true, "extra": 1})).is_empty());
    assert!(validate(&s, &json!({"components": [], "girth": null, "connected": true})).is_empty());
    assert!(!validate(&schema("chain"), &json!({"component_size": 3})).is_empty());
}

#[test]
fn repro_full_table_exits_zero() {
    let o = run(&["repro", "--suite", "acceptance"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(o.stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
