use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SL2_Q3: &str = r#"{"group":{"preset":"SL2"},"field":{"p":3,"f":1,"m":1}}"#;
const N0: &str = r#"{"torus":[0],"w":{"w0_word":[0],"mu":[0]}}"#;
const ID: &str = r#"{"torus":[0],"w":{"w0_word":[],"mu":[0]}}"#;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prohecke"))
        .current_dir(dir)
        .env_remove("PROHECKE_SEED")
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("sl2.json"), SL2_Q3).unwrap();
    std::fs::write(dir.path().join("n.json"), N0).unwrap();
    std::fs::write(dir.path().join("id.json"), ID).unwrap();
    dir
}

#[test]
fn mul_generator_square() {
    let dir = workspace();
    let out = run(
        dir.path(),
        &["--config", "sl2.json", "--json", "mul", "n.json", "n.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["product"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn mul_identity() {
    let dir = workspace();
    for algebra in ["hecke", "propweyl"] {
        let out = run(
            dir.path(),
            &[
                "--config",
                "sl2.json",
                "--json",
                "mul",
                "id.json",
                "id.json",
                "--algebra",
                algebra,
            ],
        );
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let expected: Value = serde_json::from_str(ID).unwrap();
        let product = &v["product"];
        let got = if algebra == "hecke" {
            &product["terms"][0]["elt"]
        } else {
            product
        };
        assert_eq!(got, &expected);
    }
}

#[test]
fn mismatched_or_bad_input_exits_2() {
    let dir = workspace();
    let other = format!(
        r#"{{"config":{{"group":{{"preset":"SL3"}},"field":{{"p":3,"f":1,"m":1}}}},{}"#,
        &N0[1..]
    );
    std::fs::write(dir.path().join("other.json"), other).unwrap();
    std::fs::write(dir.path().join("junk.json"), "{").unwrap();
    for file in ["other.json", "junk.json", "missing.json"] {
        let out = run(dir.path(), &["--config", "sl2.json", "mul", "n.json", file]);
        assert_eq!(out.status.code(), Some(2), "{file}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = workspace();
    let out = run(
        dir.path(),
        &[
            "--config",
            "sl2.json",
            "--json",
            "verify",
            "assoc",
            "--max-len",
            "3",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "assoc");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["params"]["seed"], 0x5eed_2024u64);
    assert_eq!(v["seed_source"], "default");

    let out = run(
        dir.path(),
        &["--preset", "GL2", "--field", "3", "verify", "decompose"],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = run(
        dir.path(),
        &[
            "--preset",
            "PGL2",
            "--field",
            "3",
            "verify",
            "supersingular",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = run(dir.path(), &["--config", "sl2.json", "verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn supersingular_report_lists_every_case() {
    let dir = workspace();
    let out = run(
        dir.path(),
        &[
            "--preset",
            "SL3",
            "--field",
            "3",
            "--json",
            "verify",
            "supersingular",
            "--max-len",
            "4",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["details"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), v["cases"].as_u64().unwrap() as usize);
    for m in 0..=4 {
        assert!(entries.iter().any(|e| e["m"] == m), "m = {m}");
    }
}

#[test]
fn seeds_and_determinism() {
    let dir = workspace();
    let args = [
        "--preset",
        "Sp4",
        "--field",
        "3",
        "--json",
        "verify",
        "assoc",
        "--max-len",
        "6",
        "--samples",
        "30",
    ];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_prohecke"))
        .current_dir(dir.path())
        .env("PROHECKE_SEED", "7")
        .args(args)
        .output()
        .unwrap();
    let v = json(&env);
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(v["seed_source"], "env");
}

#[test]
fn exports() {
    let dir = workspace();
    let out = run(
        dir.path(),
        &[
            "--config",
            "sl2.json",
            "--json",
            "export",
            "hecke_table",
            "--max-len",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    // 5 Weyl elements of length ≤ 2 times |T_q| = 2
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 100);

    let out = run(
        dir.path(),
        &[
            "--preset", "PGL2", "--field", "3", "--json", "export", "omega",
        ],
    );
    assert_eq!(json(&out)["rows"]["classes"].as_array().unwrap().len(), 2);

    let out = run(
        dir.path(),
        &[
            "--config",
            "sl2.json",
            "--out",
            "chars.json",
            "export",
            "characters",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("chars.json")).unwrap())
            .unwrap();
    let rows = v["rows"].as_array().unwrap();
    let lambdas: std::collections::BTreeSet<String> = rows
        .iter()
        .map(|r| r["character"]["lambda"].to_string())
        .collect();
    assert_eq!(lambdas.len(), 2);
    assert!(rows
        .iter()
        .all(|r| r["classification"]["supersingular"].is_boolean()));
    assert_eq!(
        v["meta"]["config"],
        serde_json::from_str::<Value>(SL2_Q3).unwrap()
    );

    let out = run(
        dir.path(),
        &[
            "--config",
            "sl2.json",
            "--json",
            "export",
            "topmod_table",
            "--max-len",
            "1",
        ],
    );
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 3 * 2 * 2 * 2);

    let out = run(
        dir.path(),
        &[
            "--config",
            "sl2.json",
            "--out",
            "/nonexistent/dir/x.json",
            "export",
            "omega",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coset_commands() {
    let dir = workspace();
    let out = run(
        dir.path(),
        &[
            "--config", "sl2.json", "--json", "coset", "support", "n.json", "n.json",
        ],
    );
    assert_eq!(json(&out)["support"].as_array().unwrap().len(), 3);
    let out = run(
        dir.path(),
        &[
            "--config", "sl2.json", "--json", "coset", "profile", "n.json",
        ],
    );
    let v = json(&out);
    assert_eq!(v["index"], "3");
    assert_eq!(v["profile"], serde_json::json!([1, 1]));
}
