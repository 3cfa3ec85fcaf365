use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vassiliev")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn compute_v2_of_trefoil() {
    let out = run(&["compute", "--format", "gauss", "--code", "O1+ U2+ O3+ U1+ O2+ U3+", "--invariant", "v2"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["value"], "1");
    assert_eq!(v["invariant"], "v2");
    assert_eq!(v["input"], "O1+ U2+ O3+ U1+ O2+ U3+");
}

#[test]
fn compute_on_empty_diagram() {
    let out = run(&["compute", "--format", "gauss", "--code", "", "--invariant", "v4_1"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["value"], "0");
}

#[test]
fn compute_prints_fractions() {
    let out = run(&["compute", "--format", "dt", "--code", "4 6 8 2", "--invariant", "v4_2"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["value"], "-3/2");
}

#[test]
fn compute_conway_from_pd() {
    let out = run(&["compute", "--format", "pd", "--code", "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]", "--invariant", "conway"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["value"]["polynomial"], "1 + z^2");
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["compute", "--format", "gauss", "--code", "O1+ U2"],
        vec!["compute", "--format", "pd", "--code", "[[1,2,3]]"],
        vec!["compute", "--format", "dt", "--code", "4 6 8 10 2"],
        vec!["compute", "--invariant", "v9", "--code", ""],
        vec!["weights", "--degree", "7"],
        vec!["weights", "--degree", "3", "--constrain", "k4-zero"],
        vec!["verify", "--suite", "nope"],
    ] {
        let out = run(&args);
        assert_eq!(status(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn missing_file_exits_1() {
    let out = run(&["compute", "--file", "/nonexistent/knot.txt"]);
    assert_eq!(status(&out), 1);
}

#[test]
fn weight_space_dimensions() {
    for (args, dim) in [
        (vec!["weights", "--degree", "4"], 3),
        (vec!["weights", "--degree", "4", "--constrain", "k4-zero"], 2),
        (vec!["weights", "--degree", "2"], 1),
    ] {
        let out = run(&args);
        assert_eq!(status(&out), 0);
        let v = json(&out);
        assert_eq!(v["dimension"], dim, "{args:?}");
        assert_eq!(v["basis"].as_array().unwrap().len(), dim);
    }
    let v = json(&run(&["weights", "--degree", "3", "--relations"]));
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 5);
    assert_eq!(v["relations"]["one_term"].as_array().unwrap().len(), v["relation_counts"]["one_term"].as_u64().unwrap() as usize);
}

#[test]
fn verify_v2_invariance_passes() {
    let out = run(&["verify", "--suite", "reidemeister", "--invariant", "v2", "--trials", "100", "--seed", "7", "--json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["trials"], 100);
    assert_eq!(v["seed"], 7);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_degree_bound_passes() {
    let out = run(&["verify", "--suite", "degree", "--invariant", "v4_1", "--k", "5", "--trials", "50", "--seed", "7"]);
    assert_eq!(status(&out), 0);
}

#[test]
fn verify_with_no_trials_passes_vacuously() {
    let out = run(&["verify", "--suite", "reidemeister", "--trials", "0", "--json"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["trials"], 0);
}

#[test]
fn verify_reports_are_reproducible() {
    let args = ["verify", "--suite", "symbol", "--invariant", "v4_2", "--trials", "30", "--seed", "3", "--json"];
    let (a, b) = (json(&run(&args)), json(&run(&args)));
    assert_eq!(a["stats"], b["stats"]);
    assert_eq!(a["passed"], true);
}

#[test]
fn failing_suite_exits_1_with_replay_data() {
    let out = run(&["verify", "--suite", "reidemeister", "--invariant", "v4_1", "--trials", "200", "--fail-fast", "--json"]);
    assert_eq!(status(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let f = &v["failures"][0];
    assert!(f["seed"].is_u64() && f["input"].is_string() && f["expected"] != f["got"]);
}

#[test]
fn table_v2_matches_conway() {
    let out = run(&["table", "--invariant", "v2,c2", "--output", "json"]);
    assert_eq!(status(&out), 0);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert!(rows.len() >= 36);
    for r in rows {
        assert_eq!(r["values"]["v2"], r["values"]["c2"], "{}", r["name"]);
    }
}

#[test]
fn table_of_the_unknot() {
    let dir = std::env::temp_dir().join(format!("vassiliev-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unknot.csv");
    std::fs::write(&path, "name,pd_code\nunknot,[]\n").unwrap();
    let out = run(&["table", "--file", path.to_str().unwrap(), "--invariant", "v2"]);
    assert_eq!(status(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "name,crossings,v2\nunknot,0,0\n");

    std::fs::write(&path, "name,pd_code,c2\nbad,[],5\n").unwrap();
    let out = run(&["table", "--file", path.to_str().unwrap(), "--invariant", "c2"]);
    assert_eq!(status(&out), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

/// Rank of a small matrix of fractions.
fn rank(rows: &[Vec<(i64, i64)>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&(p, q)| p as f64 / q as f64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c].abs() > 1e-9) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c] / m[r][c];
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    r
}

fn fraction(s: &str) -> (i64, i64) {
    match s.split_once('/') {
        Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

#[test]
fn v4_columns_are_independent() {
    let out = run(&["table", "--invariant", "v4_1,v4_2", "--output", "json"]);
    assert_eq!(status(&out), 0);
    let rows: Vec<Vec<(i64, i64)>> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| vec![fraction(r["values"]["v4_1"].as_str().unwrap()), fraction(r["values"]["v4_2"].as_str().unwrap())])
        .collect();
    assert_eq!(rank(&rows), 2);
}
