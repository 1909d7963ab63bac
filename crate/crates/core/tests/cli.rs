use dyndeg::cli::{run, EXIT_CAP, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("dyndeg").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, s) = call(args);
    (code, serde_json::from_str(&s).unwrap_or(Value::Null))
}

#[test]
fn degseq_reports_the_drop() {
    let map = r#"{"N":2,"coords":["X*Y","X*Y+Z^2","-1*Y*Z+Z^2"]}"#;
    let (code, v) = json(&["degseq", "--map", map, "--nmax", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["degrees"], serde_json::json!([2, 4, 7, 12]));
    assert_eq!(v["drop_at"], 3);
}

#[test]
fn resource_cap_exit_code() {
    let map = r#"{"N":2,"coords":["X*Y","X*Y+Z^2","-1*Y*Z+Z^2"]}"#;
    let (code, v) = json(&["degseq", "--map", map, "--nmax", "30", "--max-terms", "50"]);
    assert_eq!(code, EXIT_CAP);
    assert!(v["truncated"].is_object());
}

#[test]
fn invalid_input_exit_code() {
    assert_eq!(call(&["degseq", "--map", "{}"]).0, EXIT_INVALID);
    assert_eq!(call(&["no-such-command"]).0, EXIT_INVALID);
    assert_eq!(call(&["degseq", "--bogus-flag"]).0, EXIT_INVALID);
    assert_eq!(call(&["fabc-classify", "-a", "0", "-b", "1", "-c", "1"]).0, EXIT_OK);
    assert_eq!(call(&["monomial", "--matrix", "[[1,2],[2,4]]"]).0, EXIT_INVALID);
}

#[test]
fn modp_table() {
    let (code, v) = json(&["fabc-modp", "-a", "-2", "-b", "1", "-c", "3", "--pmax", "100"]);
    assert_eq!(code, EXIT_OK);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    let m_at = |p: u64| rows.iter().find(|r| r["p"] == p).unwrap()["m"].clone();
    assert_eq!(m_at(5), 3);
    assert_eq!(m_at(31), 4);
    assert_eq!(m_at(2), Value::Null);
}

#[test]
fn verify_suite_is_deterministic() {
    let args = ["verify", "--suite", "monomial", "--count", "1000", "--seed", "42"];
    let (code, first) = call(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(call(&args).1, first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 42);
}

#[test]
fn other_subcommands_run() {
    for args in [
        vec!["stability", "--map", r#"{"N":2,"coords":["X*Y","X*Y+Z^2","Y*Z+Z^2"]}"#, "--nmax", "5"],
        vec!["fabc-locus", "-a", "1", "-b", "1", "-c", "T", "--nmax", "8"],
        vec!["fabc-intersect", "--a1", "1", "--b1", "1", "--c1", "T", "--a2", "1", "--b2", "2", "--c2", "T", "--nmax", "8"],
        vec!["gfam", "-a", "1", "-b", "1", "-t", "3"],
        vec!["gfam", "--compare", "--nmax", "10"],
        vec!["monomial", "--matrix", "[[2,1],[1,1]]", "--epsilon", "1.0"],
        vec!["verify", "--suite", "gfam"],
        vec!["--format", "human", "fabc-classify", "-a", "1", "-b", "-1", "-c", "1"],
    ] {
        let (code, out) = call(&args);
        assert_eq!(code, EXIT_OK, "{args:?}: {out}");
        assert!(out.contains("schema"), "{args:?}: {out}");
    }
}
