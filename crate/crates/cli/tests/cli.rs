use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn actkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actkit")).current_dir(dir).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("every line is JSON")).collect()
}

fn z2_files(dir: &Path) {
    let out = actkit(dir, &["monoid", "new", "cyclic_group", "2", "-o", "z2.json"]);
    assert!(out.status.success());
    std::fs::write(dir.join("reg.json"), r#"{"kind":"act","monoid":"z2.json","size":2,"action":[[0,1],[1,0]]}"#)
        .unwrap();
    std::fs::write(dir.join("pt.json"), r#"{"kind":"act","monoid":"z2.json","size":1,"action":[[0,0]]}"#).unwrap();
    std::fs::write(dir.join("f.json"), r#"{"kind":"map","domain":"reg.json","codomain":"pt.json","values":[0,0]}"#)
        .unwrap();
}

#[test]
fn monoid_new_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = actkit(dir.path(), &["monoid", "new", "symmetric_inverse", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = &lines(&out)[0];
    assert_eq!(doc["kind"], "monoid");
    assert_eq!(doc["size"], 7);

    std::fs::write(dir.path().join("chain.json"), r#"{"kind":"monoid","size":2,"identity":0,"table":[[0,1],[1,1]]}"#)
        .unwrap();
    let out = actkit(dir.path(), &["monoid", "validate", "chain.json"]);
    assert_eq!(out.status.code(), Some(0), "2-chain with identity 0 is a monoid");

    std::fs::write(dir.path().join("bad.json"), r#"{"kind":"monoid","size":2,"identity":1,"table":[[0,1],[1,1]]}"#)
        .unwrap();
    let out = actkit(dir.path(), &["monoid", "validate", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["valid"], false);
}

#[test]
fn check_purity_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    z2_files(dir.path());
    let out = actkit(dir.path(), &["check", "--act", "reg.json", "--class", "SF"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["holds"], true);

    let out = actkit(dir.path(), &["check", "--act", "pt.json", "--class", "Pr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(lines(&out)[0]["witness"].is_object());

    let out = actkit(dir.path(), &["purity", "--map", "f.json", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1), "the regular act of Z2 has no fixed point to lift to");
    let out = actkit(dir.path(), &["purity", "--map", "f.json", "--full"]);
    assert_eq!(out.status.code(), Some(1));

    let out = actkit(dir.path(), &["check", "--act", "missing.json", "--class", "SF"]);
    assert_eq!(out.status.code(), Some(2));
    let out = actkit(dir.path(), &["check", "--act", "reg.json", "--class", "XX"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn act_commands() {
    let dir = tempfile::tempdir().unwrap();
    z2_files(dir.path());
    let out = actkit(dir.path(), &["act", "validate", "reg.json"]);
    assert_eq!(out.status.code(), Some(0));

    std::fs::write(
        dir.path().join("broken.json"),
        r#"{"kind":"act","monoid":"z2.json","size":2,"action":[[0,0],[1,0]]}"#,
    )
    .unwrap();
    let out = actkit(dir.path(), &["act", "validate", "broken.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = actkit(dir.path(), &["act", "quotient", "--act", "reg.json", "--pair", "0,1"]);
    let q = &lines(&out)[0];
    assert_eq!(q["quotient"]["size"], 1);

    std::fs::write(
        dir.path().join("two.json"),
        r#"{"kind":"act","monoid":"z2.json","size":3,"action":[[0,1],[1,0],[2,2]]}"#,
    )
    .unwrap();
    let out = actkit(dir.path(), &["act", "decompose", "two.json"]);
    assert_eq!(lines(&out)[0]["components"], serde_json::json!([[0, 1], [2]]));

    // Z2 is commutative, so it is its own opposite
    let out = actkit(dir.path(), &["act", "tensor", "--act", "reg.json", "--left", "reg.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["size"], 2);
}

#[test]
fn colimit_and_cover() {
    let dir = tempfile::tempdir().unwrap();
    z2_files(dir.path());
    std::fs::write(
        dir.path().join("d.json"),
        r#"{"kind":"system","indices":2,"leq":[[true,true],[false,true]],"acts":["reg.json","pt.json"],
            "transitions":{"0,1":"f.json"}}"#,
    )
    .unwrap();
    // transitions hold map documents, not paths
    let out = actkit(dir.path(), &["colimit", "--system", "d.json"]);
    assert_eq!(out.status.code(), Some(2));

    let map = std::fs::read_to_string(dir.path().join("f.json")).unwrap();
    std::fs::write(
        dir.path().join("d.json"),
        format!(
            r#"{{"kind":"system","indices":2,"leq":[[true,true],[false,true]],"acts":["reg.json","pt.json"],
                "transitions":{{"0,1":{map}}}}}"#
        ),
    )
    .unwrap();
    let out = actkit(dir.path(), &["colimit", "--system", "d.json", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let c = &lines(&out)[0];
    assert_eq!(c["apex"]["size"], 1);
    assert_eq!(c["universal_property"], true);

    let out = actkit(dir.path(), &["cover", "--act", "pt.json", "--class", "CP"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &lines(&out)[0];
    assert_eq!(c["carrier"]["size"], 1, "the one-point act is already in CP");

    let out = actkit(dir.path(), &["cover", "--act", "pt.json", "--class", "Pr", "--precover-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out)[0]["certificate"]["factorizations"].is_array());
}

#[test]
fn corpus_and_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = actkit(
        dir.path(),
        &[
            "corpus",
            "generate",
            "--max-monoid-order",
            "2",
            "--max-act-size",
            "2",
            "--builder",
            "cyclic_group(2)",
            "-o",
            "c",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(lines(&out)[0]["monoids"], 3, "cyclic_group(2), the trivial monoid and the 2-chain");

    let run = |args: &[&str]| actkit(dir.path(), args);
    let a = run(&["suite", "run", "purity-chain", "--corpus", "c"]);
    let b = run(&["suite", "run", "purity-chain", "--corpus", "c"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "reports are byte-identical");
    let report = &lines(&a)[0];
    assert_eq!(report["suite"], "purity-chain");
    assert!(report.get("timing_ms").is_none());

    let out = run(&["suite", "run", "p-system", "--corpus", "c", "--timing"]);
    assert!(lines(&out)[0]["timing_ms"].is_u64());

    let out = run(&["suite", "run", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["suite", "list"]);
    assert_eq!(lines(&out).len(), 10);
}

#[test]
fn budget_variable_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    z2_files(dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_actkit"))
        .current_dir(dir.path())
        .env("ACTKIT_BUDGET", "0")
        .args(["cover", "--act", "pt.json", "--class", "SF"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn human_output_is_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let out = actkit(dir.path(), &["--human", "monoid", "new", "trivial"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() > 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["size"], 1);
}
