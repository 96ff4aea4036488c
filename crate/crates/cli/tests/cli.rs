use std::process::{Command, Output};

fn mcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcurve"))
        .args(args)
        .env_remove("MCURVE_CAP_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(report: &serde_json::Value, name: &str) -> serde_json::Value {
    report[name]["value"].clone()
}

#[test]
fn invariants_verify_gorenstein_arithmetic() {
    let out = mcurve(&["invariants", "-m", "10,13,16,19,22", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(field(&report, "regularity"), 6);
    assert_eq!(field(&report, "cm_type"), 1);
    assert_eq!(field(&report, "gorenstein"), true);
    for name in [
        "cm",
        "cm_type",
        "gorenstein",
        "regularity",
        "betti1",
        "hs_numerator",
        "hilbert_polynomial",
    ] {
        assert_eq!(report[name]["provenance"], "both_agree", "{name}");
    }
}

#[test]
fn invariants_verify_generalized() {
    let out = mcurve(&["invariants", "-m", "7,30,39,48,57,66", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(field(&report, "cm"), false);
    assert_eq!(field(&report, "regularity"), 14);
}

#[test]
fn invariants_json_round_trips() {
    let out = mcurve(&["invariants", "-m", "4,5,6,7,8", "--json"]);
    let text = stdout(&out);
    let report: mcurve_core::report::InvariantReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim(), text.trim());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(mcurve(&["invariants", "-m", "2,1"]).status.code(), Some(2));
    assert_eq!(mcurve(&["invariants", "-m", "a,b"]).status.code(), Some(2));
    assert_eq!(mcurve(&["invariants"]).status.code(), Some(2));
    assert_eq!(mcurve(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn gb_closed_source() {
    let out = mcurve(&["gb", "-m", "1,2,3", "--source", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let elements: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(elements.len(), 3);
    assert!(text.starts_with("# order=degrevlex vars=4 seq=1,2,3"));
}

#[test]
fn gb_diff_is_empty() {
    let out = mcurve(&["gb", "-m", "7,30,39,48,57,66", "--diff"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim().is_empty());
}

#[test]
fn gb_closed_without_closed_form_exits_2() {
    assert_eq!(
        mcurve(&["gb", "-m", "1,2,5", "--source", "closed"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gb_listing_parses_back() {
    let out = mcurve(&["gb", "-m", "10,13,16,19,22"]);
    let gb = mcurve_core::grobner::GroebnerBasis::from_text(&stdout(&out)).unwrap();
    assert_eq!(gb.len(), 9);
}

fn hilbert_rows(args: &[&str]) -> Vec<i64> {
    let out = mcurve(args);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            assert_eq!(r["agrees"], true);
            r["counted"].as_i64().unwrap()
        })
        .collect()
}

#[test]
fn hilbert_tables() {
    assert_eq!(
        hilbert_rows(&["hilbert", "-m", "4,5,6,7,8", "--max-degree", "6", "--json"]),
        vec![1, 6, 14, 22, 30, 38, 46]
    );
    assert_eq!(
        hilbert_rows(&[
            "hilbert",
            "-m",
            "10,13,16,19,22",
            "--max-degree",
            "7",
            "--json"
        ])[7],
        110
    );
    assert_eq!(
        hilbert_rows(&["hilbert", "-m", "1,2", "--max-degree", "3", "--json"]),
        vec![1, 3, 5, 7]
    );
}

#[test]
fn sweep_writes_jsonl() {
    let path = std::env::temp_dir().join(format!("mcurve-n3-{}.jsonl", std::process::id()));
    let out = mcurve(&[
        "sweep",
        "--family",
        "n3",
        "--max-m3",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(summary["failures"], 0);
    let lines = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(
        lines.lines().count() as u64,
        summary["instances"].as_u64().unwrap()
    );
    for line in lines.lines() {
        let record: mcurve_core::verify::InstanceRecord = serde_json::from_str(line).unwrap();
        assert!(record.passed);
    }
}

#[test]
fn random_sweep_reports_seed() {
    let out = mcurve(&[
        "sweep", "--family", "random", "--seed", "11", "--count", "5", "--max-mn", "15",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(summary["seed"], 11);
}

#[test]
fn degree_cap_failure_exits_1() {
    let out = mcurve(&[
        "--cap-degree",
        "3",
        "invariants",
        "-m",
        "10,13,16,19,22",
        "--source",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
