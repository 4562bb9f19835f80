use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_choosability"));
    c.env_remove("CHOOSABILITY_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C4: &str = r#"{"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[2,3],[0,3]]}"#;
const K33: &str = r#"{"vertices":[0,1,2,3,4,5],"edges":[[0,3],[0,4],[0,5],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5]]}"#;
const K24: &str = r#"{"vertices":[0,1,2,3,4,5],"edges":[[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[1,5]]}"#;

#[test]
fn check_c4_is_two_choosable() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", C4);
    let out = run(&["check", "--graph", s(&g), "--a", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["choosable"], true);
}

#[test]
fn check_k33_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k33.json", K33);
    let out = run(&["check", "--graph", s(&g), "--a", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["witness"]["verdict"], "bad_assignment");
    assert_eq!(v["witness"]["assignment"].as_object().unwrap().len(), 6);
}

#[test]
fn f_choosability_flag() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", C4);
    let out = run(&["check", "--graph", s(&g), "--f", "0:1,1:2,2:3,3:2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "--graph", s(&g), "--f", "0:1,1:2,2:2,3:2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chk_k24_is_three() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k24.json", K24);
    let out = run(&["chk", "--graph", s(&g), "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3");
}

#[test]
fn budget_exhaustion_exits_three() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k33.json", K33);
    let out = run(&["--budget", "5", "check", "--graph", s(&g), "--a", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .env("CHOOSABILITY_BUDGET", "5")
        .args(["check", "--graph", s(&g), "--a", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--graph", "/nonexistent.json", "--a", "2"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"vertices":[0],"edges":[[0,1]]}"#);
    assert_eq!(run(&["core", "--graph", s(&bad)]).status.code(), Some(2));
}

#[test]
fn choose_methods_agree_on_validity() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", C4);
    let lists = write(&dir, "l.json", r#"{"0":[1,2,3,4],"1":[1,2,5,6],"2":[3,4,5,6],"3":[1,3,5,7]}"#);
    for method in ["exact", "kernel", "two-four", "brooks", "random"] {
        let out = run(&["choose", "--graph", s(&g), "--lists", s(&lists), "--k", "2", "--method", method]);
        assert_eq!(out.status.code(), Some(0), "{method}: {}", String::from_utf8_lossy(&out.stderr));
        let choice = json(&out)["choice"].clone();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            let a = choice[u.to_string()].as_array().unwrap();
            let b = choice[v.to_string()].as_array().unwrap();
            assert_eq!(a.len(), 2);
            assert!(a.iter().all(|c| !b.contains(c)), "{method}");
        }
    }
}

#[test]
fn random_choose_echoes_seed_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", C4);
    let lists = write(&dir, "l.json", r#"{"0":[0,1,2,3,4,5,6,7,8,9],"1":[0,1,2,3,4,5,6,7,8,9],"2":[0,1,2,3,4,5,6,7,8,9],"3":[0,1,2,3,4,5,6,7,8,9]}"#);
    let args = ["choose", "--graph", s(&g), "--lists", s(&lists), "--method", "random", "--seed", "42", "--max-attempts", "16"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["max_attempts"], 16);
    assert!(v["attempts"].as_u64().unwrap() >= 1);
}

#[test]
fn kernel_orient_core_and_two_choosable() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", r#"{"vertices":[0,1,2,3],"arcs":[[0,1],[1,2],[2,3],[3,0]]}"#);
    let out = run(&["kernel", "--graph", s(&d)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kernel"].as_array().unwrap().len(), 2);

    let g = write(&dir, "c4.json", C4);
    let out = run(&["orient", "--graph", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["density"], "1/1");
    assert_eq!(v["max_out_degree"], 1);
    let out = run(&["orient", "--graph", s(&g), "--acyclic"]);
    assert_eq!(json(&out)["max_out_degree"], 2);

    let pendant = write(&dir, "p.json", r#"{"vertices":[0,1,2,3,4],"edges":[[0,1],[1,2],[2,3],[0,3],[3,4]]}"#);
    let out = run(&["core", "--graph", s(&pendant)]);
    let v = json(&out);
    assert_eq!(v["core"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["class"]["tag"], "EvenCycle");

    assert_eq!(run(&["two-choosable", "--graph", s(&pendant)]).status.code(), Some(0));
    let k33 = write(&dir, "k33.json", K33);
    let out = run(&["two-choosable", "--graph", s(&k33)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["two_choosable"], false);
}

#[test]
fn gadgets_and_output_file() {
    let out = run(&["gadget", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().len() >= 8);

    let out = run(&["gadget", "strong-lower-bound", "--d", "2"]);
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(v["parts"].as_array().unwrap().len(), 3);

    let out = run(&["gadget", "theta", "--a", "2", "--b", "2", "--c", "4", "--dot"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph G {"));

    let dir = TempDir::new().unwrap();
    let target = dir.path().join("h.json");
    let out = run(&["gadget", "hamilton-clique", "--k", "1", "--n", "2", "--out", s(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);

    assert_eq!(run(&["gadget", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["gadget", "theta", "--a", "2"]).status.code(), Some(2));
}

#[test]
fn strong_lift_and_scale() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "m.json", r#"{"vertices":[0,1,2,3],"edges":[[0,1],[2,3]]}"#);
    let parts = write(&dir, "p.json", "[[0,2,3]]");
    let out = run(&["strong", "--graph", s(&g), "--parts", s(&parts), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["coloring"];
    assert_ne!(c["0"], c["2"]);
    assert_ne!(c["2"], c["3"]);
    assert_ne!(c["0"], c["1"]);

    let parts = write(&dir, "q.json", "[[0,1,2,3]]");
    let lists = write(&dir, "l.json", r#"{"0":[0,1,2,3],"1":[0,1,2,3],"2":[0,1,2,3],"3":[0,1,2,3]}"#);
    let out = run(&["strong", "--graph", s(&g), "--parts", s(&parts), "--k", "2", "--m", "2", "--lists", s(&lists)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ch = json(&out)["choice"].clone();
    let picked: Vec<&Value> = (0..4).map(|v| &ch[v.to_string()][0]).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            assert_ne!(picked[i], picked[j]);
        }
    }
}

#[test]
fn gadget_suite_passes() {
    let out = run(&["suite", "gadget-verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "gadget-verify");
    assert_eq!(v["criteria"][0]["passed"], true);
    assert!(String::from_utf8(out.stderr).unwrap().contains("PASS"));
}
