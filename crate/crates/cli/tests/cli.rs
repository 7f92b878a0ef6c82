use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bohrcheck::soundness::CRITERIA;
use serde_json::Value;

fn bohrcheck(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bohrcheck"));
    cmd.args(args).env_remove("BOHRCHECK_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = bohrcheck(&full, None);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Compares against the stored document; `BOHRCHECK_UPDATE_GOLDEN=1`
/// rewrites it instead.
fn assert_golden(name: &str, actual: &Value) {
    let path = golden_path(name);
    let text = serde_json::to_string_pretty(actual).unwrap() + "\n";
    if std::env::var_os("BOHRCHECK_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "golden {name} differs");
}

#[test]
fn golden_certificates() {
    for (name, args) in [
        ("notemb", ["soundness", "notemb"]),
        ("heis", ["soundness", "heis"]),
        ("lgstcpct", ["liecheck", "lgstcpct"]),
    ] {
        let (v, _) = json(&args);
        assert_golden(name, &v);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(json(&["soundness", "notemb"]).1, 0);
    assert_eq!(json(&["soundness", "split-inversion"]).1, 0);
    assert_eq!(json(&["soundness", "heis"]).1, 2);
    assert_eq!(json(&["soundness", "orbit-cycles"]).1, 2);
    assert_eq!(json(&["liecheck", "su2"]).1, 0);

    let missing = bohrcheck(&["soundness", "no-such-request"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    let bad_schema = bohrcheck(&["soundness", r#"{"schema":"bohrcheck/other/v9","family":{}}"#], None);
    assert_eq!(bad_schema.status.code(), Some(1));
    let improper = bohrcheck(&["equalizer", r#"{"group":{"kind":"cyclic","n":3},"generators":[1]}"#], None);
    assert_eq!(improper.status.code(), Some(1));
}

#[test]
fn schemas_come_first() {
    for args in [
        vec!["soundness", "notemb"],
        vec!["liecheck", "bare-torus"],
        vec!["chartable", r#"{"kind":"symmetric","n":3}"#],
        vec!["equalizer", "a3-in-s3"],
        vec!["zmat", "fixed", "[[0,-1],[1,0]]"],
    ] {
        let (v, _) = json(&args);
        let first = v.as_object().unwrap().keys().next().cloned();
        assert_eq!(first.as_deref(), Some("schema"), "{args:?}");
        assert!(v["schema"].as_str().unwrap().starts_with("bohrcheck/"));
    }
}

#[test]
fn criteria_come_from_the_whitelist() {
    let requests = [
        "notemb",
        "heis",
        "split-inversion",
        "split-torus-cycles",
        "split-mixed-kernels",
        "orbit-cycles",
    ];
    for r in requests {
        let (v, _) = json(&["soundness", r]);
        match &v["criterion"] {
            Value::Null => assert_eq!(v["verdict"], "unknown_prefix_only", "{r}"),
            Value::String(c) => assert!(CRITERIA.contains(&c.as_str()), "{r}: {c}"),
            other => panic!("{r}: criterion {other}"),
        }
    }
}

#[test]
fn text_output() {
    let out = bohrcheck(&["amalgam", "nf", "--spec", "sl2z", "--word", "A:a^2 B:b^3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "identity");
    let out = bohrcheck(&["amalgam", "dist", "--spec", "z2z2", "--word", "0:x 1:y 0:x", "--lengths", "regular"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = r#"{"groups":[{"name":"S4","group":{"kind":"symmetric","n":4}},
                              {"name":"Q","group":{"kind":"heisenberg","i":1}}]}"#;
    let warm = bohrcheck(&["--format", "json", "cache", "warm", corpus], Some(dir.path()));
    assert_eq!(warm.status.code(), Some(0), "{}", String::from_utf8_lossy(&warm.stderr));

    let inspect = bohrcheck(&["--format", "json", "cache", "inspect"], Some(dir.path()));
    let v: Value = serde_json::from_slice(&inspect.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);

    let table_args = ["--format", "json", "chartable", r#"{"kind":"symmetric","n":4}"#];
    let cached = bohrcheck(&table_args, Some(dir.path()));
    let fresh = bohrcheck(&table_args, None);
    assert_eq!(cached.stdout, fresh.stdout);
    let eq_args = ["--format", "json", "equalizer", "a3-in-s3"];
    assert_eq!(bohrcheck(&eq_args, Some(dir.path())).stdout, bohrcheck(&eq_args, None).stdout);

    // a damaged entry is recomputed rather than trusted
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{\"not\": \"a table\"}").unwrap();
    for _ in 0..2 {
        let again = bohrcheck(&table_args, Some(dir.path()));
        assert_eq!(again.stdout, fresh.stdout);
    }

    let clear = bohrcheck(&["--format", "json", "cache", "clear"], Some(dir.path()));
    let v: Value = serde_json::from_slice(&clear.stdout).unwrap();
    assert!(v["removed"].as_u64().unwrap() >= 2);
    let inspect = bohrcheck(&["--format", "json", "cache", "inspect"], Some(dir.path()));
    let v: Value = serde_json::from_slice(&inspect.stdout).unwrap();
    assert!(v["entries"].as_array().unwrap().is_empty());

    assert_eq!(bohrcheck(&["cache", "inspect"], None).status.code(), Some(1));
}
