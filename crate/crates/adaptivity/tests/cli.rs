use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adaptivity")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_search_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let o = run(&["gen", "--family", "er_styled", "--n", "20", "--seed", "3", "--out", p(&g)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g.txt.json")).unwrap()).unwrap();
    assert_eq!(sidecar["family"], "er_styled");
    assert_eq!(sidecar["seed"], 3);

    let o = run(&["search", "--graph", p(&g), "--r", "2"]);
    assert!(o.status.success());
    let t: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(t["total_rounds_used"].as_u64().unwrap() <= 2);
    assert!(t["rounds"][0]["interventions"].is_array());
    assert!(t["rounds"][0]["oriented"].is_array());

    for algo in ["adaptive_rn", "separating"] {
        let o = run(&["search", "--graph", p(&g), "--algo", algo, "--k", "2"]);
        assert!(o.status.success(), "{algo}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["search", "--graph", p(&g), "--r", "3", "--k", "3", "--checks", "true", "--vc", "true"]);
    assert!(o.status.success());

    let o = run(&["verify", "--graph", p(&g)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"].as_array().unwrap().len() as u64, v["nu1"].as_u64().unwrap());
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1 0\n0 9\n").unwrap();
    assert_eq!(run(&["verify", "--graph", p(&bad)]).status.code(), Some(2));
    let cyc = dir.path().join("cyc.txt");
    std::fs::write(&cyc, "3 0 3\n0 1\n1 2\n2 0\n").unwrap();
    assert_eq!(run(&["search", "--graph", p(&cyc)]).status.code(), Some(2));
    let und = dir.path().join("und.txt");
    std::fs::write(&und, "2 1 0\n0 1\n").unwrap();
    assert_eq!(run(&["search", "--graph", p(&und)]).status.code(), Some(2));
    let dag = dir.path().join("dag.txt");
    std::fs::write(&dag, "# triangle\n3 0 3\n0 1\n1 2\n0 2\n").unwrap();
    assert_eq!(run(&["search", "--graph", p(&dag), "--r", "0"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--graph", p(&dag), "--algo", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--graph", p(&dag), "--algo", "path"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "tree_like", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bench_then_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"generators":[{"family":"gnp_union_tree","p":0.03,"n":[10,20]}],
            "algorithms":["adaptive_r1","adaptive_r2","adaptive_rlogn"],"trials":5}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = run(&["bench", "--spec", p(&spec), "--out", p(&out), "--master-seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ndjson = std::fs::read_to_string(out.join("results.ndjson")).unwrap();
    assert_eq!(ndjson.lines().count(), 30);
    let first: serde_json::Value = serde_json::from_str(ndjson.lines().next().unwrap()).unwrap();
    for key in [
        "family",
        "params",
        "algorithm",
        "r",
        "k",
        "seed",
        "n",
        "intervention_count",
        "rounds_used",
        "checks_used",
        "nu1_reference",
        "wall_time_ns",
    ] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 31);

    let summary = dir.path().join("summary.csv");
    let o = run(&["summarize", "--in", p(&out), "--csv", p(&summary)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&summary).unwrap();
    assert!(text.starts_with("family,params,algorithm,k,n,trials,completed,mean_interventions,stderr_interventions"));
    assert_eq!(text.lines().count(), 1 + 6);

    let again = dir.path().join("out2");
    run(&["bench", "--spec", p(&spec), "--out", p(&again), "--master-seed", "7"]);
    let strip = |s: &str| -> Vec<(u64, u64)> {
        s.lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (v["seed"].as_u64().unwrap(), v["intervention_count"].as_u64().unwrap())
            })
            .collect()
    };
    assert_eq!(strip(&ndjson), strip(&std::fs::read_to_string(again.join("results.ndjson")).unwrap()));
}
