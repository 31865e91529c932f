use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphdepth"))
        .args(args)
        .env_remove("GRAPHDEPTH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const C4: &str = "n=4;edges=0-1,1-2,2-3,3-0";

#[test]
fn invariants_of_c4() {
    let o = run(&["invariants", "--graph", C4]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("ν_o                   1"), "{s}");
    assert!(s.contains("min maximal matching  2"));
    assert!(s.contains("reg(S/I(G))           1"));
}

#[test]
fn graph_files_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p4.txt");
    std::fs::write(&file, "# path on four vertices\nn 4\ne 0 1\ne 1 2\ne 2 3\n").unwrap();
    let json = dir.path().join("out.json");
    let o = run(&["invariants", "--graph", file.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["nu_o"], 2);
    assert_eq!(v["min_maximal_matching"], 1);
    assert_eq!(v["edge_ideal"]["reg_quotient"], 1);
}

#[test]
fn ideal_and_decompose() {
    let o = run(&["ideal", "--graph", "n=2;edges=0-1", "--which", "cover", "--power", "2"]);
    assert_eq!(stdout(&o).trim(), "(x2^2, x1*x2, x1^2)");
    let o = run(&["ideal", "--graph", "n=2;edges=0-1", "--which", "edge", "--symbolic"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["decompose", "--graph", C4, "--module", "quotient", "--power", "2", "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verified"));
}

#[test]
fn sdepth_exact_and_over_budget() {
    let o = run(&["sdepth", "--graph", C4, "--module", "ideal"]);
    assert!(stdout(&o).contains("sdepth = 3"), "{}", stdout(&o));
    let o = run(&["sdepth", "--graph", C4, "--module", "ideal", "--budget", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("budget exceeded"));
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    let csv = dir.path().join("r.csv");
    for p in &paths {
        let o = run(&[
            "verify", "--suite", "thm2.4", "--nmax", "4", "--seed", "9", "--json", p.to_str().unwrap(), "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["total"], 71);
    assert_eq!(v["seed"], 9);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 72);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "thm2.4", "--nmax", "9"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--graph", "n=3;edges=0-0"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--graph", "n 3\ne 0 x"]).status.code(), Some(2));
    let args = ["verify", "--suite", "cor3.4", "--nmax", "4", "--budget", "1"];
    assert_eq!(run(&args).status.code(), Some(0));
    let strict: Vec<&str> = args.iter().copied().chain(["--strict"]).collect();
    assert_eq!(run(&strict).status.code(), Some(3));
}

#[test]
fn cache_directory_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_graphdepth"))
            .args(["verify", "--suite", "cor2.5", "--nmax", "4"])
            .env("GRAPHDEPTH_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains(" 0 hits"));
    let second = go();
    assert!(second.status.success());
    assert!(String::from_utf8_lossy(&second.stderr).contains(" 0 misses"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--n", "3", "--min-edges", "1"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = run(&["enumerate", "--n", "2", "--min-edges", "1", "--format", "graph6"]);
    assert_eq!(stdout(&o).trim(), "A_");
    assert_eq!(run(&["enumerate", "--n", "7"]).status.code(), Some(2));
}
