use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn replica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_replica")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_then_check_refutes_heisenberg() {
    let dir = tempfile::tempdir().unwrap();
    let cat = replica(&["catalog", "heisenberg4", "--alpha", "1", "--beta", "1"]);
    assert_eq!(cat.status.code(), Some(0));
    assert_eq!(stdout_json(&cat)["basis"].as_array().unwrap().len(), 3);
    let h = write(dir.path(), "h.json", &cat.stdout);

    let check = replica(&["check", "--basis", &h]);
    assert_eq!(check.status.code(), Some(1));
    let v = stdout_json(&check);
    assert_eq!(v["kind"], "NotAlgebraic");
    assert_eq!(v["witness"]["element"], stdout_json(&cat)["basis"][0]);
    assert_eq!(v["seed"], 0);
}

#[test]
fn hull_and_decompose_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.json", &replica(&["catalog", "heisenberg4", "--alpha", "2", "--beta", "-1"]).stdout);
    let m_out = replica(&["catalog", "hull-m", "--alpha", "2", "--beta", "-1"]);
    let m = write(dir.path(), "m.json", &m_out.stdout);

    let hull = replica(&["hull", "--basis", &h]);
    assert_eq!(hull.status.code(), Some(0));
    let report = stdout_json(&hull);
    assert_eq!(report["hull"]["basis"].as_array().unwrap().len(), 4);
    assert_eq!(report["adjoined"].as_array().unwrap().len(), 1);

    assert_eq!(replica(&["check", "--basis", &m, "--samples", "64"]).status.code(), Some(0));
    assert_eq!(replica(&["decompose", "--basis", &m]).status.code(), Some(0));
    let dh = replica(&["decompose", "--basis", &h]);
    assert_eq!(dh.status.code(), Some(1));
    assert_eq!(stdout_json(&dh)["valid"], false);

    let capped = replica(&["hull", "--basis", &h, "--max-rounds", "0"]);
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(stdout_json(&capped)["status"], "RoundLimitExceeded");
}

#[test]
fn jordan_of_zero_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let z = write(dir.path(), "z.json", br#"{"dim":3,"entries":[["0","0","0"],["0","0","0"],["0","0","0"]]}"#);
    let out = replica(&["jordan", "--matrix", &z]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    let zero: Value = serde_json::from_str(&std::fs::read_to_string(&z).unwrap()).unwrap();
    assert_eq!(j["semisimple"], zero);
    assert_eq!(j["nilpotent"], zero);
}

#[test]
fn replica_of_irrational_spectrum_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", br#"{"dim":2,"entries":[["0","2"],["1","0"]]}"#);
    let out = replica(&["replica", "--matrix", &x]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["kind"], "SplitFailure");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", b"{not json");
    for args in [
        vec!["jordan", "--matrix", bad.as_str()],
        vec!["jordan", "--matrix", "/nonexistent/file.json"],
        vec!["catalog", "heisenberg4", "--alpha", "1/0", "--beta", "1"],
        vec!["catalog", "filiform", "--alpha", "1", "--beta", "1", "--a", "1"],
        vec!["catalog", "nonesuch"],
        vec!["frobnicate"],
    ] {
        let out = replica(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_are_json_objects() {
    let out = replica(&["catalog", "heisenberg4", "--alpha", "1", "--beta", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"]["kind"], "ParamDomain");
    let out = replica(&["catalog", "filiform", "--alpha", "1", "--beta", "1", "--a", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_json(&out)["error"]["message"].as_str().unwrap().contains("heisenberg_h"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let h =
        write(dir.path(), "h.json", &replica(&["catalog", "heisenberg4", "--alpha", "1/2", "--beta", "1/2"]).stdout);
    for args in [
        vec!["check", "--basis", h.as_str(), "--seed", "7"],
        vec!["hull", "--basis", h.as_str(), "--seed", "7", "--samples", "8"],
        vec!["catalog", "filiform", "--alpha", "2", "--beta", "-1", "--a", "-2", "--n", "6"],
    ] {
        assert_eq!(replica(&args).stdout, replica(&args).stdout, "{args:?}");
    }
}

#[test]
fn emitted_json_reparses_through_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &replica(&["catalog", "hull-m", "--alpha", "-3", "--beta", "5"]).stdout);
    let hull = stdout_json(&replica(&["hull", "--basis", &m]));
    // the hull itself is a valid basis input, and re-emitting it is stable
    let again = write(dir.path(), "hull.json", serde_json::to_string(&hull["hull"]).unwrap().as_bytes());
    let hull2 = stdout_json(&replica(&["hull", "--basis", &again]));
    assert_eq!(hull2["hull"], hull["hull"]);
    let x4 = write(dir.path(), "x4.json", &replica(&["catalog", "x4", "--alpha", "-3", "--beta", "5"]).stdout);
    let r = replica(&["replica", "--matrix", &x4]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(stdout_json(&r)["total"].as_array().unwrap().len(), 1);
}

/// The filiform closed form fails for n = 4 with alpha != beta, so the suite
/// reports exactly one failed claim for every seed.
#[test]
fn verify_paper_reports_every_claim() {
    for seed in 0..10 {
        let s = seed.to_string();
        let out = replica(&["verify-paper", "--seed", &s]);
        let report = stdout_json(&out);
        let claims = report["claims"].as_array().unwrap();
        assert_eq!(claims.len(), 9);
        let failed: Vec<u64> =
            claims.iter().filter(|c| c["passed"] == false).map(|c| c["id"].as_u64().unwrap()).collect();
        assert_eq!(failed, vec![5], "seed {seed}");
        assert_eq!(out.status.code(), Some(1), "seed {seed}");
        let c5 = &claims[4]["failures"];
        assert!(c5.as_array().unwrap().iter().all(|f| f.as_str().unwrap().starts_with("n=4 ")));
        assert_eq!(report["seed"], seed);
    }
}
