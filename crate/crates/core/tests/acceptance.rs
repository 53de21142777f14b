//! Acceptance table. Set `FSGRAPH_SLOW=1` to include the gated girth check.

use std::io::Write;

use fsgraph::repro::{acceptance_suite, ReproOptions};

#[test]
fn acceptance() {
    let slow = std::env::var("FSGRAPH_SLOW").is_ok_and(|v| v == "1");
    let results = acceptance_suite(&ReproOptions { slow, seed: 0 });
    let mut err = std::io::stderr().lock();
    for r in &results {
        writeln!(err, "{}", r.line()).unwrap();
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
