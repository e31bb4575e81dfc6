use coxwalls::algebra::catalog;
use coxwalls_cli::run_command;
use serde_json::Value;

fn matrix_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("coxwalls-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = run_command(std::iter::once("coxwalls").chain(args.iter().copied()));
    (out.code, serde_json::from_str(&out.report).unwrap_or(Value::Null))
}

#[test]
fn envelope_and_codes() {
    let a2 = matrix_file("a2.json", &catalog::affine_a(2).to_json());
    let (code, doc) = run(&["cohopf", "--matrix", &a2]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["co_hopfian"], false);
    assert_eq!(doc["matrix"]["sha256"].as_str().unwrap().len(), 64);

    let bad = matrix_file("bad.json", r#"{"rank": 2, "matrix": [[1, 1], [1, 1]]}"#);
    assert_eq!(run(&["roots", "--matrix", &bad]).0, 2);
    assert_eq!(run(&["roots", "--matrix", "/nonexistent/m.json"]).0, 2);
    assert_eq!(run(&["separate", "--matrix", &a2, "--a", "[1,1,1]", "--b", "[0,1,0]"]).0, 2);

    let a1 = matrix_file("a1.json", &catalog::affine_a(1).to_json());
    let (code, doc) = run(&["cohopf", "--matrix", &a1]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "Not2Spherical");

    let (code, doc) = run(&["roots", "--matrix", &a2, "--depth", "30", "--max-roots", "10"]);
    assert_eq!(code, 3, "{doc}");
}

#[test]
fn text_format_lists_leaves() {
    let a2 = matrix_file("a2t.json", &catalog::a(2).to_json());
    let out = run_command(["coxwalls", "cohopf", "--matrix", &a2, "--format", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.report.contains("result.co_hopfian = true"));
}
