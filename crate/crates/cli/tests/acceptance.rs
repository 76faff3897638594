//! One line per acceptance criterion, computed from two `--grid` runs.

use std::collections::BTreeMap;
use std::path::PathBuf;

fn report_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qfft-grid-{}-{tag}.json", std::process::id()))
}

fn grid_run(tag: &str) -> (i32, String) {
    let path = report_path(tag);
    let code = qfft::run(["qfft", "--grid", "--output", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).expect("grid report written");
    let _ = std::fs::remove_file(&path);
    (code, text)
}

fn main() {
    let (code, first) = grid_run("a");
    let (_, second) = grid_run("b");
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();

    // criterion number -> (passed, total, first failure)
    let mut tally: BTreeMap<u32, (usize, usize, Option<String>)> = BTreeMap::new();
    for suite in report["suites"].as_array().unwrap() {
        let name = suite["name"].as_str().unwrap();
        let c: u32 = name
            .strip_prefix("[criterion ")
            .and_then(|r| r.split(']').next())
            .and_then(|d| d.parse().ok())
            .unwrap_or_else(|| panic!("untagged grid suite {name}"));
        let t = tally.entry(c).or_default();
        for e in suite["entries"].as_array().unwrap() {
            t.1 += 1;
            if e["pass"].as_bool().unwrap() {
                t.0 += 1;
            } else if t.2.is_none() {
                t.2 = Some(format!("{name}: {} | {}", e["citation"], e["instance"]));
            }
        }
    }

    let titles = [
        "braiding suite",
        "flatness tables",
        "oracle equivalence",
        "invariance",
        "relation suites",
        "FFT desk verification",
        "skew duality",
        "classical-limit regression",
        "determinism of --grid",
    ];
    let mut all = true;
    for (i, title) in titles.iter().enumerate() {
        let c = i as u32 + 1;
        let (ok, detail) = if c == 9 {
            (first == second, format!("{} bytes", first.len()))
        } else {
            let (p, t, fail) = tally.get(&c).cloned().unwrap_or_default();
            (
                t > 0 && p == t,
                fail.unwrap_or_else(|| format!("{p}/{t} checks")),
            )
        };
        all &= ok;
        println!(
            "criterion {c} ({title}): {} [{detail}]",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    assert_eq!(
        code,
        if all { 0 } else { 1 },
        "grid exit code disagrees with its entries"
    );
    if !all {
        eprintln!("some acceptance criteria failed");
        std::process::exit(1);
    }
}
