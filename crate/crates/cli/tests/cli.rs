use std::path::Path;
use std::process::{Command, Output};

use tuza_core::construction::{random_uniform_hypergraph, RandomSpec};
use tuza_core::transversal::{tau_bruteforce, tau_exact};
use tuza_core::Hypergraph;

fn tuza(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tuza")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_writes_instance() {
    let dir = tempfile::tempdir().unwrap();
    for (k, n) in [(7, 14), (8, 16)] {
        let file = dir.path().join(format!("k{k}.json"));
        let o = tuza(&["construct", "--k", &k.to_string(), "--output", path_str(&file)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains(&format!("n = {n}, m = 6")));
        let h = Hypergraph::from_json(&std::fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (n, 6, Some(k)));
    }
}

#[test]
fn construct_round_trips_for_all_small_k() {
    for k in 2..=40 {
        let o = tuza(&["construct", "--k", &k.to_string()]);
        assert!(o.status.success());
        let h = Hypergraph::from_json(&stdout(&o)).unwrap();
        assert!(h.validate().is_empty());
        assert_eq!(h.n(), 2 * k);
    }
}

#[test]
fn construct_rejects_small_k() {
    let o = tuza(&["construct", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("out of domain"));
}

#[test]
fn tau_examples() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k7.json");
    assert!(tuza(&["construct", "--k", "7", "--output", path_str(&file)]).status.success());
    for method in ["exact", "brute"] {
        let o = tuza(&["tau", path_str(&file), "--method", method]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with("tau = 3\n"), "{}", stdout(&o));
    }
    let o = tuza(&["tau", path_str(&file), "--method", "greedy"]);
    assert!(stdout(&o).starts_with("greedy = 3\n"));

    let single = dir.path().join("single.json");
    std::fs::write(&single, r#"{"n": 7, "k": 7, "edges": [[0,1,2,3,4,5,6]]}"#).unwrap();
    let o = tuza(&["tau", path_str(&single)]);
    assert!(stdout(&o).starts_with("tau = 1\n"));

    let o = tuza(&["tau", path_str(&file), "--method", "brute", "--limit", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tau_exact_and_brute_agree_on_random_files() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..50 {
        let spec = RandomSpec { k: 3, n: 9, m: 6, seed, require_connected: false, require_distinct_edges: true };
        let h = random_uniform_hypergraph(spec).unwrap();
        let file = dir.path().join(format!("r{seed}.json"));
        std::fs::write(&file, h.to_json()).unwrap();
        let exact = stdout(&tuza(&["tau", path_str(&file), "--format", "json"]));
        let brute = stdout(&tuza(&["tau", path_str(&file), "--method", "brute", "--format", "json"]));
        let e: serde_json::Value = serde_json::from_str(&exact).unwrap();
        let b: serde_json::Value = serde_json::from_str(&brute).unwrap();
        assert_eq!(e["size"], b["size"], "seed {seed}");
        assert_eq!(e["witness"], b["witness"], "seed {seed}");
        assert_eq!(e["size"].as_u64().unwrap() as usize, tau_exact(&h).tau);
        assert_eq!(tau_bruteforce(&h, 9).unwrap().tau, tau_exact(&h).tau);
    }
}

#[test]
fn tau_reports_input_errors_with_lines() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 3, \"k\": 2,\n \"edges\": [\n  [0, 1],\n  [1, 5]\n ]}").unwrap();
    let o = tuza(&["tau", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4: vertex id out of range"), "{}", stderr(&o));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"n\": 3,\n \"edges\": [[0, 1]").unwrap();
    let o = tuza(&["tau", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let o = tuza(&["tau", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weights_check_lemma() {
    let o = tuza(&["weights", "check", "--k", "7", "--scheme", "lemma7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verdict: all constraints satisfied"));
    assert!(out.contains("0.19156"));
    assert!(out.contains("96511"));

    let o = tuza(&["weights", "check", "--k", "7", "--scheme", "lemma7", "--format", "markdown"]);
    let md = stdout(&o);
    assert!(md.starts_with("| constraint | detail | LHS | RHS | slack | binding |"), "{md}");
    assert!(md.contains("| case-ii-single | `w4 + 4wm + (4(k-1)-1)(w4-w3) + (w3-w2) >= C` | 96569 | 96050 | 519 |"));

    let o = tuza(&["weights", "check", "--k", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn weights_optimize_twelve() {
    let o = tuza(&["weights", "optimize", "--k", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("optimal bound: 1/6 (0.166667)"), "{}", stdout(&o));
    assert!(stdout(&o).contains("case-i"));
}

#[test]
fn weights_fuzz_seeded() {
    let o = tuza(&["weights", "fuzz", "--k", "7", "--trials", "100", "--seed", "42"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("counterexamples: 0"));
    assert_eq!(stdout(&o), stdout(&tuza(&["weights", "fuzz", "--k", "7", "--trials", "100", "--seed", "42"])));
}

#[test]
fn weights_monotone_range() {
    let o = tuza(&["weights", "monotone", "--scheme", "table2:9", "--range", "9..17"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("feasible for every k in 9..=17: yes"));
}

#[test]
fn invalid_scheme_is_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("scheme.json");
    std::fs::write(&file, r#"{"k": 7, "w1": "5", "w2": "4", "w3": "6", "w4": "7", "wm": "7", "c": "100"}"#).unwrap();
    let o = tuza(&["weights", "check", "--k", "7", "--scheme", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("w1 <= w2"), "{}", stderr(&o));

    let o = tuza(&["weights", "check", "--k", "7", "--scheme", "table2:40"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_rows() {
    let o = tuza(&["table", "--format", "markdown"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("| 7 | .1428 | .1500* | .1916* | .2780 |"));
    assert!(out.contains("| 16 | .0800 | .0789 | .1667* |"));
    assert!(out.contains("| 9 | .1250 | .1250 | .1667* |"));

    let o = tuza(&["table", "--range", "7..8", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = tuza(&["table", "--range", "9..7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("table.csv");
    let o = tuza(&["table", "--format", "csv", "--output", path_str(&file)]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&file).unwrap().starts_with("k,known_lb"));

    let o = tuza(&["table", "--output", "/nonexistent-dir/table.txt"]);
    assert_eq!(o.status.code(), Some(2));
}
