use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e8trig")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

const NODAL: &str = r#"{"mode":"mult","values":["2","3","5","7","11","13","17","19"],"kind":"nodal","base":"1"}"#;
const CUSPIDAL: &str = r#"{"mode":"add","values":["2","3","5","7","11","13","17","19"],"kind":"cuspidal","base":"0"}"#;

#[test]
fn fundamental_group_orders() {
    for (t, n) in [("E8", 1), ("E7", 2), ("E6", 3), ("A4", 5), ("D4", 4)] {
        let out = run(&["fundamental-group", t]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["order"], n, "{t}");
    }
    assert_eq!(run(&["fundamental-group", "G2"]).status.code(), Some(2));
}

#[test]
fn roots_summary() {
    let v = json(&run(&["roots"]));
    assert_eq!(v["count"], 240);
    assert_eq!(v["c_l_even"]["type"], "D8");
    assert_eq!(v["orthogonal_to"]["count"], 126);
}

#[test]
fn rss_check_exit_codes() {
    let good = r#"{"mode":"mult","values":["2","3","5","7","11","13","17","19"]}"#;
    let out = run(&["rss-check", good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["regular_semisimple"], true);
    let unit = r#"{"mode":"mult","values":["1","3","5","7","11","13","17","19"]}"#;
    let out = run(&["rss-check", unit]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["discriminant"], "0");
    assert_eq!(run(&["rss-check", r#"{"mode":"mult","values":["2"]}"#]).status.code(), Some(2));
    assert_eq!(run(&["rss-check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn kac_classes_of_order_two() {
    let v = json(&run(&["kac-classes", "E8", "2"]));
    let mut types: Vec<String> =
        v["classes"].as_array().unwrap().iter().map(|c| c["fixed_type"].as_str().unwrap().to_string()).collect();
    types.sort();
    assert_eq!(types, ["D8", "E7+A1", "E8"]);
}

#[test]
fn alcove_normalize_rejects_wrong_rank() {
    assert_eq!(run(&["alcove-normalize", "A2", "1/2"]).status.code(), Some(2));
    let v = json(&run(&["alcove-normalize", "A2", "3/2,-1/3"]));
    assert_eq!(v["point"], serde_json::json!(["1/2", "1/6"]));
}

#[test]
fn lie_verify_sampled() {
    let out = run(&["lie-verify", "--jacobi", "sampled", "--samples", "2000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimension"], 248);
    assert_eq!(v["theta_trace_on_cartan"], -8);
    assert_eq!(v["fixed_subalgebra_type"], "D8");
}

#[test]
fn construct_and_downstream_commands() {
    let dir = std::env::temp_dir().join(format!("e8trig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (input, index, fiber) in [(NODAL, 2, "simple"), (CUSPIDAL, 3, "total")] {
        let out = run(&["construct", input]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["ram_index"], index);
        assert_eq!(v["provenance"]["ladder"], serde_json::json!([2, 4, 7, 22]));
        let path = dir.join(format!("curve{index}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let path = path.to_str().unwrap();

        let c = json(&run(&["classify", path]));
        assert_eq!(c["fiber_type"], fiber);
        assert_eq!(c["discriminant_order"], index - 1);
        assert_eq!(c["smoothness"], "smooth");

        let m = json(&run(&["canonical-model", path]));
        assert_eq!(m["quadric"], "(1)*x0*x2 + (-1)*x1^2");
        assert_eq!(run(&["signature", path]).status.code(), Some(0));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_validation_errors() {
    let non_rss = r#"{"mode":"mult","values":["1","3","5","7","11","13","17","19"],"kind":"nodal","base":"1"}"#;
    let out = run(&["construct", non_rss]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in T^rss"));
    let mismatch = r#"{"mode":"mult","values":["2","3","5","7","11","13","17","19"],"kind":"cuspidal","base":"1"}"#;
    assert_eq!(run(&["construct", mismatch]).status.code(), Some(2));
    let zero_base = r#"{"mode":"mult","values":["2","3","5","7","11","13","17","19"],"kind":"nodal","base":"0"}"#;
    assert_eq!(run(&["construct", zero_base]).status.code(), Some(2));
}

#[test]
fn batch_reports_items_in_order() {
    let non_rss = r#"{"mode":"add","values":["0","3","5","7","11","13","17","19"],"kind":"cuspidal","base":"0"}"#;
    let batch = format!("[{CUSPIDAL},{non_rss}]");
    let out = run(&["construct", &batch, "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v[0]["ram_index"], 3);
    assert_eq!(v[1]["exit_code"], 2);
}

#[test]
fn inconclusive_smoothness_exits_3() {
    // w³ + (s² − 2t²)²(s² + t²): no repeated factor has a rational root.
    let curve = r#"{"f0":"1","f2":["0","0","0"],"f4":["0","0","0","0","0"],
        "f6":["1","0","-3","0","0","0","4"],"marked_fiber":["1","0"],"w0":"0","ram_index":3}"#;
    let out = run(&["classify", curve]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn equivariance_under_simple_reflections() {
    let out = run(&["equivariance-test", CUSPIDAL, "--word", "1,8,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["root_value_multiset_equal"], true);
    assert_eq!(v["signature_equal"], true);
    assert_eq!(run(&["equivariance-test", CUSPIDAL, "--word", "9"]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["construct", CUSPIDAL],
        &["lie-verify", "--jacobi", "sampled", "--samples", "500", "--seed", "11"],
        &["equivariance-test", CUSPIDAL, "--seed", "5", "--length", "2"],
        &["kac-classes", "E7", "3", "--format", "text"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
