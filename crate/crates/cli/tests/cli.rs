//! Runs the binary and compares its JSON output with files under `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn data(name: &str) -> String {
    dir("data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcoideal"))
        .args(args)
        .env_remove("QCOIDEAL_DATA")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Timings are the only nondeterministic field.
fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(o) => {
            o.remove("runtime_ms");
            o.values_mut().for_each(strip_runtime);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn golden(name: &str, args: &[&str], code: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (got_code, stdout, stderr) = run(&full);
    assert_eq!(got_code, code, "{name}: stderr {stderr}");
    let mut got: Value = serde_json::from_str(&stdout).unwrap();
    strip_runtime(&mut got);
    let path = dir("golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file exists")).unwrap();
    assert_eq!(got, want, "{name} differs from its golden file");
    got
}

#[test]
fn borel_commutator_is_scalar() {
    let subs = data("borel_subs.json");
    let v = golden(
        "qcomm_borel",
        &[
            "qcomm",
            "--system",
            "A1",
            "--subs",
            &subs,
            "--c",
            "q^2",
            "E[a]*K[a]^-1 + K[a]^-1",
            "F[a] + l*K[a]^-1",
        ],
        0,
    );
    assert_eq!(v["scalar"], "q^3 / q^2 - 1");
    // the same constant written in the `num / den` text form
    let subs = data("borel_subs_text.json");
    let (code, out, _) = run(&[
        "--json",
        "qcomm",
        "--system",
        "A1",
        "--subs",
        &subs,
        "--c",
        "q^2",
        "E[a]*K[a]^-1 + K[a]^-1",
        "F[a] + l*K[a]^-1",
    ]);
    assert_eq!(code, 0);
    let w: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(w["scalar"], v["scalar"]);
}

#[test]
fn root_vector_from_commutator() {
    let v = golden("normalize_eab", &["normalize", "E[a]*E[b] - q^-1 * E[b]*E[a]"], 0);
    assert_eq!(v["text"], "E[ab]");
}

#[test]
fn coproduct_of_root_vector() {
    golden("coproduct_eab", &["coproduct", "E[ab]"], 0);
}

#[test]
fn failed_check_reports_witness() {
    let v = golden(
        "check_bad",
        &["check", "--system", "A1", "--gens", &data("bad.json"), "--degree", "2"],
        1,
    );
    assert_eq!(v["status"], "failed");
    assert_eq!(v["witnesses"][0]["left"], "K[a]");
}

#[test]
fn catalog_entry_verifies() {
    let v = golden(
        "catalog_2a1",
        &["catalog", "verify", "--id", "sl3-2a-1", "--degree", "3"],
        0,
    );
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn mutations_do_not_verify() {
    let (code, _, _) = run(&["catalog", "verify", "--mutations", "--degree", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn borel_representation() {
    golden(
        "repr_borel",
        &[
            "repr",
            "--system",
            "A1",
            "--m",
            "1",
            "--subs",
            &data("borel_pair_subs.json"),
            "--gens",
            &data("borel_gens.json"),
        ],
        0,
    );
}

#[test]
fn character_shift() {
    let v = golden(
        "shift_f",
        &[
            "shift",
            "--system",
            "A1",
            "--character",
            &data("shift_f.json"),
            "--gens",
            &data("f.json"),
        ],
        0,
    );
    assert_eq!(v["generators"][0], "2*K[-a] + F[a]");
}

#[test]
fn mixed_generator_is_reduced() {
    let v = golden(
        "reduce_mixed",
        &["reduce", "--system", "A1", "--gens", &data("mixed.json")],
        0,
    );
    assert_eq!(v["span_preserved"], true);
}

#[test]
fn text_commands() {
    for args in [
        &["parts", "E[a]*F[b] + E[a] + F[b] + K[a]"][..],
        &["leading", "--side", "e", "E[a] + E[b]"],
        &["eta-split", "--system", "A1", "E*K^-1 + K"],
        &["mul", "E[a]", "E[b]", "F[ab]"],
        &["catalog", "list"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.trim().is_empty());
    }
    let (_, out, _) = run(&["--json", "eta-split", "--system", "A1", "E*K^-1 + K"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let (_, out, _) = run(&["--json", "leading", "E[a] + E[b]"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["leading"].as_array().unwrap().len(), 2);
}

#[test]
fn printed_output_parses_back() {
    for x in [
        "E[ab]*F[a] + q*K[a-b]",
        "F[ab]*E[b]*K[-a]^2 - (q - q^-1)^-1",
        "E[ba]*E[a]",
    ] {
        let (_, once, _) = run(&["normalize", x]);
        let (_, twice, _) = run(&["normalize", once.trim()]);
        assert_eq!(once, twice);
    }
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run(&["normalize", "E[a*"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 4"), "{err}");
    assert_eq!(run(&["normalize", "E[ab]", "--system", "A1"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["repr", "--m", "1", "E[a]"]).0, 2);
    assert_eq!(run(&["catalog", "verify", "--id", "no-such-entry"]).0, 2);
    assert_eq!(run(&["check", "--gens", "/nonexistent.json"]).0, 2);
    // leading minus signs are expressions, not flags
    assert_eq!(run(&["normalize", "-q*E[a]"]).0, 0);
    assert_eq!(run(&["check", "--system", "A1", "--degree", "2", "-F"]).0, 0);
}
