use std::io::Write;
use std::process::{Command, Stdio};

use critgroup::decomposition::{sweep, DecompositionContext};
use critgroup::families::{circulant, concentric_polygon};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_critgroup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap().ok();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn family(args: &[&str]) -> String {
    let mut all = vec!["family"];
    all.extend_from_slice(args);
    let r = run(&all, None);
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

fn factors(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn compute_factors() {
    for (args, want) in [(&["intro"][..], vec![2, 2, 4, 12]), (&["klein"][..], vec![2, 2, 8])] {
        let r = run(&["--format", "json", "compute", "-"], Some(&family(args)));
        assert_eq!(r.code, 0);
        let j = r.json();
        assert_eq!(factors(&j["invariant_factors"]), want);
        let order: i64 = want.iter().product();
        assert_eq!((j["order"].as_i64(), j["spanning_trees"].as_i64()), (Some(order), Some(order)));
    }
}

#[test]
fn compute_single_edge_is_trivial() {
    let r = run(&["compute", "-"], Some(r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#));
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("invariant factors: []"), "{}", r.stdout);
    assert!(r.stdout.contains("spanning trees: 1"));
}

#[test]
fn compute_reads_files() {
    let dir = std::env::temp_dir().join(format!("critgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("intro.json");
    std::fs::write(&path, family(&["intro"])).unwrap();
    let r = run(&["compute", path.to_str().unwrap()], None);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("invariant factors: [2, 2, 4, 12]"), "{}", r.stdout);
}

#[test]
fn family_sizes() {
    for (args, v, e) in [
        (&["circulant", "--n", "9", "--steps", "1,3"][..], 9, 18),
        (&["concentric", "--n", "4"][..], 12, 20),
        (&["klein"][..], 6, 8),
    ] {
        let j: Value = serde_json::from_str(&family(args)).unwrap();
        assert_eq!(j["vertices"].as_array().unwrap().len(), v);
        assert_eq!(j["edges"].as_array().unwrap().len(), e);
        assert!(j["actions"]["sigma1"].is_object() && j["actions"]["sigma2"].is_object());
    }
}

#[test]
fn verify_c7() {
    let r = run(&["--format", "json", "verify", "-"], Some(&family(&["circulant", "--n", "7", "--steps", "1,2"])));
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    assert_eq!(j["pass"], true);
    let q = j["report"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "Jac(G)/J").unwrap().clone();
    assert_eq!(q["status"], "pass");
    assert_eq!(factors(&q["computed"]["invariant_factors"]), vec![7]);
}

#[test]
fn verify_g4() {
    let r = run(&["--format", "json", "verify", "-"], Some(&family(&["concentric", "--n", "4"])));
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    let mut orders: Vec<i64> = j["report"]["quotients"].as_array().unwrap()[..3]
        .iter()
        .map(|q| factors(&q["jacobian"]["invariant_factors"]).iter().product())
        .collect();
    orders.sort();
    assert_eq!(orders, vec![5, 30, 40]);
    let q = j["report"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "Jac(G)/J").unwrap().clone();
    assert_eq!(factors(&q["computed"]["invariant_factors"]), vec![4]);
}

#[test]
fn verify_intro_reports_certificate() {
    let intro = family(&["intro"]);
    let r = run(&["verify", "-"], Some(&intro));
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("ORBIT_SIZE"), "{}", r.stderr);
    assert!(r.stderr.contains("576 does not divide 192"), "{}", r.stderr);
    let j = run(&["--format", "json", "verify", "-"], Some(&intro)).json();
    assert_eq!(j["error"], "orbit_size");
    assert_eq!(j["certificate"]["direct_sum_order"], 576);
    assert_eq!(j["certificate"]["jacobian_order"], 192);
    assert_eq!(j["certificate"]["divides"], false);
}

#[test]
fn klein_labeling_is_impossible() {
    let r = run(&["verify", "-"], Some(&family(&["klein"])));
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("LABELING_IMPOSSIBLE"), "{}", r.stderr);
}

#[test]
fn family_round_trip_matches_in_process() {
    for (args, f) in [
        (&["circulant", "--n", "7", "--steps", "1,2"][..], circulant(7, &[1, 2]).unwrap()),
        (&["concentric", "--n", "3"][..], concentric_polygon(3).unwrap()),
    ] {
        let r = run(&["--format", "json", "verify", "-", "--trials", "40", "--seed", "9"], Some(&family(args)));
        assert_eq!(r.code, 0, "{}", r.stdout);
        let ctx = DecompositionContext::new(&f.graph, &f.action).unwrap();
        let mut report = ctx.report().unwrap();
        report.attach_sweep(sweep(&ctx, 40, 9).unwrap());
        assert_eq!(r.json()["report"], serde_json::to_value(&report).unwrap());
    }
}

fn numbers(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Number(x) => out.push(x.to_string()),
        Value::Array(xs) => xs.iter().for_each(|x| numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| numbers(x, out)),
        _ => {}
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let input = family(&["chained", "--base", "square", "--n", "3"]);
    let text = run(&["verify", "-", "--oracle"], Some(&input));
    let json = run(&["--format", "json", "verify", "-", "--oracle"], Some(&input));
    assert_eq!(text.code, json.code);
    let j = json.json();
    let mut nums = Vec::new();
    for key in ["checks", "quotients"] {
        numbers(&j["report"][key], &mut nums);
    }
    numbers(&j["report"]["sweep"], &mut nums);
    numbers(&j["oracle"], &mut nums);
    for x in nums {
        assert!(text.stdout.contains(&x), "{x} missing from text output");
    }
    assert!(text.stdout.contains("FLAGGED"));
}

#[test]
fn oracle_refuses_large_graphs() {
    let r = run(&["verify", "-", "--oracle", "--trials", "0"], Some(&family(&["concentric", "--n", "5"])));
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("oracle refused: 15 vertices / 25 edges"), "{}", r.stdout);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["compute", "-"], Some("{not json")).code, 2);
    assert_eq!(run(&["compute", "/nonexistent/graph.json"], None).code, 2);
    assert_eq!(run(&["compute", "-"], Some(r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#)).code, 3);
    let no_actions = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;
    assert_eq!(run(&["verify", "-"], Some(no_actions)).code, 2);
    let r = run(&["--format", "json", "family", "circulant", "--n", "4", "--steps", "2"], None);
    assert_eq!(r.code, 5);
    assert_eq!(r.json()["error"], "non_harmonic");
    assert_eq!(run(&["family", "circulant"], None).code, 2);
    assert_eq!(run(&["family", "chained", "--base", "pentagon", "--n", "3"], None).code, 2);
}

#[test]
fn non_harmonic_file_exits_5() {
    // K4 with the square's symmetries: sigma1 fixes the diagonal a-c and both its endpoints
    let file = r#"{"vertices":["a","b","c","d"],
        "edges":[["a","b"],["b","c"],["c","d"],["d","a"],["a","c"],["b","d"]],
        "actions":{"sigma1":{"b":"d","d":"b"},"sigma2":{"a":"b","b":"a","c":"d","d":"c"}}}"#;
    let r = run(&["verify", "-"], Some(file));
    assert_eq!(r.code, 5, "{}", r.stderr);
    assert!(r.stderr.contains("not harmonic"));
}
