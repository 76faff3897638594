use std::process::Command;

fn qfft(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qfft"))
        .args(args)
        .env_remove(qfft::FUEL_ENV)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("json report")
}

#[test]
fn dims_matches_binomials() {
    let (code, out, _) = qfft(&[
        "dims",
        "--family",
        "D",
        "--rank",
        "2",
        "--copies",
        "2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(code, 0);
    let r = json(&out);
    let instances: Vec<String> = r["suites"][0]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["instance"].as_str().unwrap().to_string())
        .collect();
    // C(8 + k - 1, k)
    for (k, want) in [1, 8, 36, 120, 330].iter().enumerate() {
        assert!(
            instances
                .iter()
                .any(|i| i.ends_with(&format!("degree {k}: {want} vs {want}"))),
            "{k}"
        );
    }
    assert_eq!(r["summary"]["all_pass"], true);
    assert_eq!(r["config"]["command"], "dims");
}

#[test]
fn relations_and_fft_examples() {
    assert_eq!(
        qfft(&["relations", "--family", "C", "--rank", "2", "--copies", "3"]).0,
        0
    );
    assert_eq!(
        qfft(&[
            "fft",
            "--family",
            "GL",
            "--rank",
            "2",
            "--k",
            "2",
            "--l",
            "2",
            "--max-degree",
            "2"
        ])
        .0,
        0
    );
}

#[test]
fn report_schema_and_residual_policy() {
    let (code, out, _) = qfft(&[
        "oracle-diff",
        "--family",
        "B",
        "--rank",
        "1",
        "--copies",
        "2",
        "--max-degree",
        "2",
    ]);
    assert_eq!(code, 0);
    let r = json(&out);
    for key in ["config", "suites", "summary"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    let entries = r["suites"][1]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e.get("residual").is_none()));

    let (_, out, _) = qfft(&[
        "oracle-diff",
        "--family",
        "B",
        "--rank",
        "1",
        "--copies",
        "2",
        "--max-degree",
        "2",
        "--verbose",
    ]);
    let r = json(&out);
    let residuals: Vec<&str> = r["suites"][1]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|e| e["residual"].as_str())
        .collect();
    assert!(residuals
        .iter()
        .any(|s| s.starts_with("as printed: differs")));
}

#[test]
fn strict_rules_fail_with_exit_one() {
    let (code, out, _) = qfft(&[
        "oracle-diff",
        "--family",
        "B",
        "--rank",
        "1",
        "--copies",
        "2",
        "--max-degree",
        "2",
        "--strict-paper",
    ]);
    assert_eq!(code, 1);
    let r = json(&out);
    assert_eq!(r["summary"]["all_pass"], false);
    assert!(r["suites"][0]["entries"][0].get("residual").is_some());
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = qfft(&["relations", "--family", "D"]);
    assert_eq!(code, 2);
    assert!(err.contains("--rank"));
    assert_eq!(qfft(&["dims", "--family", "Q", "--rank", "2"]).0, 2);
    assert_eq!(qfft(&["dims", "--family", "D", "--rank", "1"]).0, 2);
    assert_eq!(qfft(&[]).0, 2);
    assert_eq!(
        qfft(&[
            "relations",
            "--family",
            "GL",
            "--rank",
            "2",
            "--copies",
            "2"
        ])
        .0,
        2
    );
}

#[test]
fn fuel_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qfft"))
        .args(["dims", "--family", "B", "--rank", "1", "--max-degree", "2"])
        .env(qfft::FUEL_ENV, "1234")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&String::from_utf8(out.stdout).unwrap())["config"]["fuel"],
        1234
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_qfft"))
        .args(["dims", "--family", "B", "--rank", "1"])
        .env(qfft::FUEL_ENV, "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tiny_fuel_is_reported_as_a_failed_check() {
    let (code, out, _) = qfft(&[
        "relations",
        "--family",
        "D",
        "--rank",
        "2",
        "--copies",
        "3",
        "--fuel",
        "3",
    ]);
    assert_eq!(code, 1);
    let r = json(&out);
    let first = &r["suites"][0]["entries"][0];
    assert_eq!(first["citation"], "computation completed");
}

#[test]
fn text_format_and_other_commands() {
    let (code, out, _) = qfft(&[
        "braiding", "--family", "D", "--rank", "2", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS projector ranks add up to dim V^2 | D2: [9, 6, 1]"));
    assert!(out.trim_end().ends_with("0 failed"));
    assert_eq!(qfft(&["skew-duality", "--m", "2", "--n", "2"]).0, 0);
    assert_eq!(
        qfft(&[
            "invariance",
            "--family",
            "B",
            "--rank",
            "1",
            "--copies",
            "2",
            "--sigma"
        ])
        .0,
        0
    );
    let (code, out, _) = qfft(&[
        "dump-presentation",
        "--family",
        "C",
        "--rank",
        "1",
        "--copies",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(!json(&out)["suites"][0]["entries"]
        .as_array()
        .unwrap()
        .is_empty());
}
