use std::path::PathBuf;
use std::process::{Command, Output};

fn algebra(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../algebras");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dabelian")).args(args).env_clear().output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let start = text.find('{').expect("json on stdout");
    (out.status.code().unwrap(), serde_json::from_str(&text[start..]).unwrap())
}

#[test]
fn a2_hereditary_m1_passes_with_d4() {
    let a = algebra("a2.alg");
    let (code, v) = json_of(&["check-axioms", "--algebra", &a, "--hereditary", "--m", "1", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["result"]["d"], 4);
    assert_eq!(v["seed"], 7);
    for k in ["A0", "A1", "A2", "A2op"] {
        assert_eq!(v["result"]["axioms"][k]["status"], "PASS", "{k}");
    }
    assert_eq!(v["algebra_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn rad2_witness_exits_zero() {
    let a = algebra("a3rad2.alg");
    let (code, v) = json_of(&["hereditary-witness", "--algebra", &a, "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "WITNESS");
    assert_eq!(v["result"]["test_object"], "M[1,0,0]");
    assert!(v["result"]["deficit"].as_u64().unwrap() >= 1);
}

#[test]
fn rad2_hereditary_axioms_fail_verified() {
    let a = algebra("a3rad2.alg");
    let (code, v) = json_of(&["check-axioms", "--algebra", &a, "--m", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["axioms"]["A2"]["status"], "FAIL");
    assert!(!v["result"]["axioms"]["A2"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_byte_identical() {
    let a = algebra("a3.alg");
    let args = ["d-cokernel", "--algebra", &a, "--m", "1", "--from", "P2", "--to", "P1", "--seed", "4", "--json", "-"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn kronecker_constructs_but_refuses_axioms() {
    let a = algebra("kronecker.alg");
    let out = run(&["check-axioms", "--algebra", &a, "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension bound"));
    let out = run(&["d-cokernel", "--algebra", &a, "--m", "1", "--from", "P2", "--to", "P1", "--coeffs", "1,-1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_name_the_position() {
    let dir = std::env::temp_dir().join(format!("dab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "[quiver]\nvertices: 1 2\na: 1 -> 2\n[relations]\na*a\n").unwrap();
    let out = run(&["catalog", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":5:"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn field_flag_and_env_agree() {
    let a = algebra("a2.alg");
    let flag = run(&["catalog", "--algebra", &a, "--field", "p=3", "--json", "-"]);
    let env = Command::new(env!("CARGO_BIN_EXE_dabelian"))
        .args(["catalog", "--json", "-"])
        .env_clear()
        .env("DAB_ALGEBRA", &a)
        .env("DAB_FIELD", "p=3")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert!(String::from_utf8_lossy(&flag.stdout).contains("\"field\": \"p=3\""));
}

#[test]
fn usage_errors_exit_two() {
    let a = algebra("a2.alg");
    assert_eq!(run(&["check-axioms", "--algebra", &a, "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["check-axioms", "--algebra", "/nonexistent/x.alg"]).status.code(), Some(2));
    assert_eq!(run(&["cluster-tilting", "--algebra", &algebra("a3rad2.alg"), "--n", "3"]).status.code(), Some(2));
}

#[test]
fn wide_bijection_on_rad2() {
    let a = algebra("a3rad2.alg");
    let (code, v) = json_of(&["wide-bijection", "--algebra", &a, "--n", "2", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["layer"].as_array().unwrap().len(), 8);
}
