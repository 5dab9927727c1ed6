use std::process::{Command, Output};

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("gentle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let a = gentle::corpus::source("A").unwrap();
    assert_eq!(code(&gentle(&["validate", &scratch("a.alg", a)])), 0);
    let long = "quiver X\nvertex 0 1 2 3\narrow a : 0 -> 1\narrow b : 1 -> 2\narrow c : 2 -> 3\nrel c*b*a\n";
    assert_eq!(code(&gentle(&["validate", &scratch("long.alg", long)])), 2);
    let o = gentle(&["validate", &scratch("third.alg", &format!("{a}arrow z : 0 -> 4\n"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("condition (1)"));
}

#[test]
fn hom_report_matches_oracle() {
    let o = gentle(&["hom", "--algebra", "A", "b a c b", "~f c b a", "--check", "--format", "json", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["algebra_hash"], gentle::corpus::algebra("A").unwrap().content_hash());
    let shifts = v["shifts"].as_array().unwrap();
    assert!(shifts.iter().all(|s| s["agrees"] == true));
    assert!(shifts.iter().any(|s| s["maps"].as_array().unwrap().iter().any(|m| m["kind"] == "quasi")));
}

#[test]
fn cone_rendering_and_selectors() {
    let o = gentle(&["cone", "--algebra", "A", "e (d*c) b a ~d", "~e ~f c b (a*f) e", "--shift", "-3", "--verify"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("d f e @anchor=2") && out.contains("e d f e @anchor=-1"));
    assert!(out.contains("P(4)[1] -dc-> P(2)[2]") && out.contains(" = τ3 P(2)[2]"));
    assert!(out.contains("oracle: agrees"));

    let o = gentle(&["cone", "--algebra", "A", "b a c b", "b a c b"]);
    assert!(stdout(&o).contains("0 (contractible)"));
    let o = gentle(&["cone", "--algebra", "A", "b a c b", "b a c b", "--map", "7"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn band_cone_over_both_fields() {
    for field in ["rat", "fp:32003"] {
        let o = gentle(&["cone", "--algebra", "B", "~e ~d c b @scalar=2", "~j ~i ~g f c (b*a) @scalar=3", "--verify", "--field", field]);
        assert_eq!(code(&o), 0, "{field}");
    }
    assert_eq!(code(&gentle(&["hom", "--algebra", "A", "a", "a", "--field", "fp:7"])), 2);
}

#[test]
fn corpus_harness() {
    let small = ["--max-string", "2", "--max-band", "2", "--max-path", "1", "--window", "2"];
    let o = gentle(&[&["verify-corpus"][..], &small].concat());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = gentle(&[&["verify-corpus", "--self-test"][..], &small].concat());
    assert_eq!(code(&o), 4);
    let empty = std::env::temp_dir().join(format!("gentle-empty-{}", std::process::id()));
    std::fs::create_dir_all(&empty).unwrap();
    let o = gentle(&["verify-corpus", "--corpus", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cases"], 0);
}
