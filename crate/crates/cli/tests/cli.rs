use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_pauli2_sweep() {
    let o = run(&["verify", "--group", "pauli:2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.trim_end()
            .ends_with("all lemma/theorem checks passed, 375-line sweep"),
        "{text}"
    );
    assert_eq!(text.lines().filter(|l| l.starts_with("N = <")).count(), 375);
}

#[test]
fn usage_errors_exit_one() {
    let o = run(&["info", "--group", "klein:4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("klein:4"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["info", "--group", "pauli:x"]).status.code(), Some(1));
    let o = run(&["code", "--group", "pauli:1", "--subgroup", "Z,-1", "--component", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn code_json_for_z_eigenspace() {
    let o = run(&[
        "code",
        "--group",
        "pauli:1",
        "--subgroup",
        "Z,-1",
        "--component",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["n_order"], 4);
    let p: Vec<Vec<String>> = serde_json::from_value(v["projector"].clone()).unwrap();
    assert_eq!(p, vec![vec!["1", "0"], vec!["0", "0"]]);
}

#[test]
fn info_weyl3() {
    let o = run(&["info", "--group", "weyl:3:1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order: 27\n"), "{text}");
    assert!(text.contains("degree: 3\n"), "{text}");
    let o = run(&["info", "--group", "weyl:3:1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 27);
    assert_eq!(v["degree"], 3);
}

#[test]
fn json_outputs_round_trip() {
    for args in [
        &["search", "--group", "pauli:1", "--format", "json"][..],
        &[
            "decompose",
            "--group",
            "pauli:1",
            "--subgroup",
            "Z,-1",
            "--format",
            "json",
        ],
        &["normal-subgroups", "--group", "pauli:1", "--format", "json"],
        &["verify", "--group", "pauli:1", "--format", "json"],
    ] {
        let text = stdout(&run(args));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn csv_has_header_and_rows() {
    let text = stdout(&run(&["search", "--group", "pauli:1", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("group,N_order,N_gens,chi_deg,mult,dim,distance,abelian_N,stab_equal,checks_passed")
    );
    assert!(lines.count() > 0);
}

#[test]
fn search_filters_apply() {
    let text = stdout(&run(&[
        "search",
        "--group",
        "pauli:2",
        "--min-distance",
        "2",
        "--format",
        "json",
    ]));
    let v: Value = serde_json::from_str(&text).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["distance"].as_u64().unwrap() >= 2));
}

#[test]
fn detect_table_lists_every_error() {
    let o = run(&[
        "code",
        "--group",
        "pauli:1",
        "--subgroup",
        "Z,-1",
        "--detect-table",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17, "{text}");
}

#[test]
fn non_normal_subgroup_is_a_usage_error() {
    let o = run(&["decompose", "--group", "pauli:1", "--subgroup", "Z"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not normal"));
}
