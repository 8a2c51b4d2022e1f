use std::process::{Command, Output};

use serde_json::Value;

fn caustica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caustica")).args(args).env_remove("CAUSTICA_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn trace_example() {
    let o = caustica(&["trace", "--phi", "2,-3,1", "--num", "1", "--den", "0,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "trace = 3/2 = 1.5\n");
    let o = caustica(&["trace", "--phi", "2,-3,1", "--num", "1", "--den", "0,1", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["trace"], "3/2");
    assert_eq!(v["value"].as_str().unwrap().parse::<f64>().unwrap(), 1.5);
}

#[test]
fn newton_example() {
    let o = caustica(&["newton", "--phi", "2,-3,1", "--upto", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "N0 = 2\nN1 = 3\n");
}

#[test]
fn rational_and_negative_coefficients() {
    let o = caustica(&["newton", "--phi=-1/2,0,1", "--upto", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "N0 = 2\nN1 = 0\nN2 = 1\n");
}

#[test]
fn verify_report_schema_and_tolerance() {
    let o = caustica(&["verify", "--singularity", "D4plus", "--trials", "200", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    assert!(v["config"]["tolerances"]["sum_tol"].is_string());
    let trials = v["per_trial"].as_array().unwrap();
    assert_eq!(trials.len(), 200);
    for (k, t) in trials.iter().enumerate() {
        assert_eq!(t["trial"], k);
        assert_eq!(t["algebraic_trace"], "0");
    }
    let summary = &v["summary"];
    let worst: f64 = summary["max_rel_residual"].as_str().unwrap().parse().unwrap();
    assert!(worst <= 1e-9);
    assert!(summary["n_rejected"].is_u64());
    assert_eq!(summary["epsilon_signs"]["D4plus"], 1);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "--singularity", "E6", "--trials", "25", "--seed", "11"];
    let a = caustica(&args);
    let b = caustica(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = caustica(&["verify", "--singularity", "E6", "--trials", "25", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_caustica"));
        cmd.args(["verify", "-s", "A3", "--trials", "3"]).args(extra).env_remove("CAUSTICA_SEED");
        if let Some(s) = env {
            cmd.env("CAUSTICA_SEED", s);
        }
        cmd.output().unwrap()
    };
    let from_env = run(Some("99"), &[]);
    assert_eq!(json(&from_env)["seed"], 99);
    assert_eq!(from_env.stdout, run(None, &["--seed", "99"]).stdout);
}

#[test]
fn verify_all_covers_every_singularity() {
    let o = caustica(&["verify-all", "--trials", "5", "--seed", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let labels = [
        "A2", "A3", "A4", "D4minus", "D4plus", "A5", "D5", "A6", "E6", "D6minus", "D6plus",
    ];
    let seen: Vec<&str> = v["config"]["singularities"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(seen, labels);
    for l in labels {
        let n = v["per_trial"].as_array().unwrap().iter().filter(|t| t["singularity"] == l).count();
        assert_eq!(n, 5, "{l}");
        assert!(v["summary"]["epsilon_signs"][l].is_i64(), "{l}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(caustica(&["bogus"]).status.code(), Some(2));
    assert_eq!(caustica(&["verify", "--singularity", "Z9"]).status.code(), Some(2));
    assert_eq!(caustica(&["verify", "-s", "A2", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(caustica(&["trace", "--phi", "1,x"]).status.code(), Some(2));
    assert_eq!(caustica(&["verify", "-s", "A2", "--tol", "nonsense=1"]).status.code(), Some(2));
    // repeated roots
    assert_eq!(caustica(&["trace", "--phi", "1,2,1", "--num", "1"]).status.code(), Some(2));
    // on the cusp point
    assert_eq!(caustica(&["preimages", "-s", "A4", "--c=-2", "--s", "0,0"]).status.code(), Some(3));
    let strict = caustica(&["verify", "-s", "D5", "--trials", "20", "--tol", "sum_tol=1e-30"]);
    assert_eq!(strict.status.code(), Some(3));
    assert_eq!(caustica(&["identities", "-s", "E6", "--trials", "3"]).status.code(), Some(0));
}

#[test]
fn identities_report() {
    let o = caustica(&["identities", "--trials", "4", "--format", "json", "--seed", "5"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["summary"]["n_trials"], 44);
    assert_eq!(v["summary"]["n_failed"], 0);
    assert_eq!(v["summary"]["epsilon_signs"]["A2"], -1);
}

#[test]
fn scan_writes_cells_and_caustics() {
    let dir = tempfile::tempdir().unwrap();
    let cells = dir.path().join("a3.csv");
    let o = caustica(&["scan", "-s", "A3", "--resolution", "30", "-o", cells.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&cells).unwrap();
    assert_eq!(text.lines().next(), Some("s1,s2,n_real,disc_sign"));
    assert_eq!(text.lines().count(), 1 + 900);
    let caustics = std::fs::read_to_string(dir.path().join("a3_caustics.csv")).unwrap();
    assert_eq!(caustics.lines().next(), Some("s1,s2"));
    assert!(caustics.lines().count() > 1);
}

#[test]
fn preimages_json() {
    let o = caustica(&["preimages", "-s", "D4minus", "--c", "1", "--s=-0.1,0.05", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let pre = v["preimages"].as_array().unwrap();
    assert_eq!(pre.len(), 4);
    assert!(pre.iter().all(|p| p["real"] == true));
}
