use std::process::{Command, Output};

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_algcomp"));
    c.args(args).env_remove("ALGCOMP_BUDGET");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

const GRAPH: &str = r#"{"nodes":[{"id":"a","kind":"input","var":0},{"id":"b","kind":"input","var":1},
{"id":"p","kind":"product"},{"id":"o","kind":"output"}],
"edges":[["a","p"],["b","p"],["p","o"]],"outputs":["o"]}"#;

#[test]
fn detcomp_of_two_by_two_minor() {
    let v = ok(&["detcomp", "--poly", "x1x2 - x3x4", "--max", "3"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "detcomp");
    assert_eq!(v["result"]["c_det"], 2);
    assert_eq!(v["result"]["steps"][0]["solvable"], false);
}

#[test]
fn detcomp_accepts_json_poly() {
    let poly = r#"{"nvars":1,"terms":[{"exps":[0],"coeff":3},{"exps":[1],"coeff":"1"}]}"#;
    let v = ok(&["detcomp", "--poly", poly]);
    assert_eq!(v["result"]["c_det"], 1);
}

#[test]
fn detcomp_above_cap() {
    let v = ok(&["detcomp", "--poly", "x1^2", "--max", "1"]);
    assert_eq!(v["result"]["c_det"], Value::Null);
    assert_eq!(v["result"]["above_cap"], true);
}

#[test]
fn schedule_c45_values() {
    let v = ok(&["schedule", "c45", "--nprime", "2", "--r", "1"]);
    let r = &v["result"];
    assert_eq!((r["n"].as_u64(), r["p"].as_u64(), r["m"].as_u64(), r["s"].as_u64()),
        (Some(10), Some(5), Some(4), Some(2)));
    assert_eq!(v["command"], "schedule c45");
}

#[test]
fn schedule_super_side_condition() {
    let out = run(&["schedule", "super", "--n", "2", "--rprime", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_off_the_parabola() {
    let v = ok(&["member", "--point", "(2,5)", "--map", "(t,t^2)"]);
    assert_eq!(v["result"]["in_image"], false);
    assert_eq!(v["result"]["in_closure"], false);
    assert!(v["result"]["separating_generator"].is_object());
    let v = ok(&["member", "--point", "(3,9)", "--map", "(t,t²)"]);
    assert_eq!(v["result"]["in_image"], true);
}

#[test]
fn member_closure_but_not_image() {
    // (x1, x1 x2) misses (0, 1) but its closure is the whole plane.
    let v = ok(&["member", "--point", "(0,1)", "--map", "(x1, x1x2)"]);
    assert_eq!(v["result"]["in_closure"], true);
    assert_eq!(v["result"]["in_image"], false);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["image-ideal", "--map", "(t,t^2,t^3)"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["detcomp", "--poly", "x1x2-x3x4", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn seed_enters_digest() {
    let a = ok(&["detcomp", "--poly", "x1+3", "--seed", "1"]);
    let b = ok(&["detcomp", "--poly", "x1+3", "--seed", "2"]);
    assert_eq!(a["seed"], 1);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
    assert_eq!(a["result"], b["result"]);
    let d = a["inputs_digest"].as_str().unwrap();
    assert_eq!(d.len(), 64);
    assert!(d.chars().all(|c| c.is_ascii_hexdigit()));
}

#[test]
fn text_and_json_inputs_share_a_digest() {
    let a = ok(&["image-ideal", "--map", "(t,t^2)"]);
    let json = serde_json::to_string(&a["inputs"]["map"]).unwrap();
    let b = ok(&["image-ideal", "--map", &json]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
}

#[test]
fn invalid_params_exit_two() {
    let out = run(&["gb", "--gen", "x1^2", "--order", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "parse");
    let out = run(&["member", "--point", "(1,2,3)", "--map", "(t,t^2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "dimension_mismatch");
    let out = run(&["raz-lift", "--map", "(x1,x2,x1x2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(err_kind(&out), "not_a_square");
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_env_exit_three() {
    let out = run_env(
        &["image-ideal", "--map", "(t,t^2,t^3)"],
        &[("ALGCOMP_BUDGET", "max_pairs=1")],
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(err_kind(&out), "resource_budget_exceeded");
    let out = run_env(&["gb", "--gen", "x1"], &[("ALGCOMP_BUDGET", "bogus")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prime_cap_exit_three() {
    let out = run(&["det-hard", "--n", "1", "--m", "2", "--r", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(err_kind(&out), "prime_cap_exceeded");
}

#[test]
fn config_file_sets_seed_and_budget() {
    let dir = std::env::temp_dir().join(format!("algcomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "seed = 42\n[budget]\nmax_pairs = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&["--config", cfg, "image-ideal", "--map", "(t,t^2,t^3)"]);
    assert_eq!(out.status.code(), Some(3));
    let v = ok(&["--config", cfg, "schedule", "c45", "--nprime", "2", "--r", "1"]);
    assert_eq!(v["seed"], 42);
    let v = ok(&["--config", cfg, "--seed", "3", "schedule", "c45", "--nprime", "2", "--r", "1"]);
    assert_eq!(v["seed"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn args_from_file() {
    let dir = std::env::temp_dir().join(format!("algcomp-cli-file-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("map.txt");
    std::fs::write(&p, "(t, t^2)").unwrap();
    let arg = format!("@{}", p.display());
    let v = ok(&["member", "--point", "(2,4)", "--map", &arg]);
    assert_eq!(v["result"]["in_image"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gb_reports_self_check() {
    let v = ok(&["gb", "--gen", "x1^2 - x2", "--gen", "x1^3 - x3", "--order", "lex"]);
    assert_eq!(v["result"]["spolys_reduce_to_zero"], true);
    assert_eq!(v["result"]["is_unit"], false);
    assert_eq!(v["params"]["order"], "lex");
    let v = ok(&["gb", "--gen", "x1", "--gen", "x1 - 1"]);
    assert_eq!(v["result"]["is_unit"], true);
}

#[test]
fn image_ideal_of_parabola() {
    let v = ok(&["image-ideal", "--map", "(t,t^2)"]);
    let text: Vec<String> = serde_json::from_value(v["result"]["text"].clone()).unwrap();
    assert_eq!(text, vec!["x1^2 + -1*x2".to_string()]);
    let v = ok(&["image-ideal", "--map", "(t,t^2,t^3)"]);
    assert_eq!(v["result"]["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn resultant_value_and_poly() {
    let v = ok(&["resultant-test", "--map", "(t,t^2)", "--point", "(2,5)"]);
    assert_eq!(v["result"]["certificate"]["value"], "-1");
    assert_eq!(v["result"]["certifies_outside"], true);
    let v = ok(&["resultant-test", "--map", "(t,t^2)", "--point", "(3,9)"]);
    assert_eq!(v["result"]["certificate"]["value"], "0");
    assert_eq!(v["result"]["certifies_outside"], false);
    let v = ok(&["resultant-test", "--map", "(t,t^2)"]);
    assert!(v["result"]["test_poly"].is_object());
}

#[test]
fn check_elusive_tuple_and_map() {
    let witness = "(0,0); (1,0); (0,1); (2,4); (3,9)";
    let v = ok(&["check-elusive", "--tuple", witness, "--s", "1", "--r", "1"]);
    assert_eq!(v["result"]["elusive"], true);
    assert_eq!(v["result"]["k"], 5);
    let line = "[[0,0],[1,1],[2,2],[3,3],[\"1/2\",\"1/2\"]]";
    let v = ok(&["check-elusive", "--tuple", line, "--s", "1", "--method", "affine"]);
    assert_eq!(v["result"]["elusive"], false);
    let v = ok(&["check-elusive", "--map", "(t,t^2)", "--s", "0"]);
    assert_eq!(v["result"]["strongly_elusive"], true);
    let v = ok(&["check-elusive", "--map", "(t,t^2)", "--s", "1", "--index"]);
    assert_eq!(v["result"]["strong_index"], 1);
    let out = run(&["check-elusive", "--tuple", witness, "--s", "1", "--r", "2", "--method", "affine"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_elusive_flags_and_spec_agree() {
    let a = ok(&["build-elusive", "--n", "1", "--p", "1", "--s", "0", "--r", "1", "--m", "1", "--threshold", "3"]);
    let spec = r#"{"n":1,"p":1,"s":0,"r":1,"m":1,"field":"complex","basis":"monomial","threshold":3}"#;
    let b = ok(&["build-elusive", "--spec", spec]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["certificate"]["heuristic"], true);
}

#[test]
fn klps_point_small() {
    let v = ok(&["klps-point", "--s", "1", "--m", "3", "--degree-bound", "1", "--threshold", "3", "--tail", "(7)"]);
    assert_eq!(v["result"]["primes"], serde_json::json!([3, 5]));
    assert_eq!(v["result"]["point"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["point"][2], "7");
    let v = ok(&["klps-point", "--s", "0", "--m", "1", "--r", "1"]);
    assert_eq!(v["result"]["meets_proven_threshold"], true);
}

#[test]
fn raz_lift_roundtrip() {
    let v = ok(&["raz-lift", "--map", "(x1, x2, x1x2, 1)"]);
    assert!(v["result"]["lift"].is_object());
    assert!(v["result"]["flattened"].is_object());
}

#[test]
fn interp_recovers_map() {
    // f(t) = t^2 + 1 sampled at t = 0, 1, 2.
    let table = r#"{"s":1,"r":2,"values":[["1"],["2"],["5"]]}"#;
    let v = ok(&["interp", "--table", table]);
    assert_eq!(v["result"]["text"].as_str().unwrap().replace(' ', ""), "(x1^2+1)");
}

#[test]
fn gamma_and_syndeg() {
    let v = ok(&["gamma", "--graph", GRAPH, "--assignment", "(2,3,5)"]);
    assert_eq!(v["result"]["coeff_vector"], serde_json::json!(["0", "0", "0", "0", "30", "0"]));
    let v = ok(&["syndeg", "--graph", GRAPH]);
    assert_eq!(v["result"]["syntactic_degree"], 2);
    assert_eq!(v["result"]["node_degrees"]["p"], 2);
    let out = run(&["syndeg", "--graph", GRAPH, "--emit", "dot"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph"));
    let cyclic = r#"{"nodes":[{"id":"a","kind":"sum"},{"id":"b","kind":"sum"}],"edges":[["a","b"],["b","a"]],"outputs":["a"]}"#;
    assert_eq!(run(&["syndeg", "--graph", cyclic]).status.code(), Some(2));
}
