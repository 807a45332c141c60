use std::process::{Command, Output};

fn rdexact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdexact")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sampling_is_deterministic() {
    let args = ["sample", "--family", "fisher/u2", "-p", "c=0.25", "--x", "-5,5", "--nx", "33", "--t", "0,1", "--nt", "9"];
    assert_eq!(rdexact(&args).stdout, rdexact(&args).stdout);
}

#[test]
fn constant_plane_wave_samples_its_value() {
    // c2 = 0 leaves u = c1^k with k = 2/(n - 1)
    let out = stdout(&rdexact(&["sample", "--family", "plane_wave", "-p", "n=3", "-p", "c1=0.5", "-p", "c2=0", "--nx", "9", "--nt", "9"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,t,u,defined"));
    let rows: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    assert_eq!(rows.len(), 81);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[3], "1");
        assert!((f[2].parse::<f64>().unwrap() - 0.5).abs() < 1e-15, "{row}");
    }
}

#[test]
fn verify_reports_fourth_order() {
    let out = stdout(&rdexact(&["verify", "--family", "fisher/u1"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    let order = v["result"]["report"]["order_estimate"].as_f64().unwrap();
    assert!(order > 3.5, "{order}");
}

#[test]
fn simulate_writes_outputs_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = rdexact(&["simulate", "--family", "fisher/u1", "--window", "-20,20,401,0,1", "--checkpoints", "3", "--out-dir", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 5);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report["result"]["report"]["max_error"].as_f64().unwrap() < 1e-3);
    let csv = std::fs::read_to_string(dir.path().join("checkpoint_002.csv")).unwrap();
    assert_eq!(csv.lines().count(), 402);
}

#[test]
fn figure_two_starts_after_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = rdexact(&["figures", "--id", "2", "--gnuplot", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("figure2.csv")).unwrap();
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[1].parse::<f64>().unwrap(), 2.0);
    assert!(dir.path().join("figure2.gp").exists());
}

#[test]
fn usage_errors_name_the_valid_choices() {
    let o = rdexact(&["sample", "--family", "no/such"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("fisher/u1"));

    let o = rdexact(&["verify", "--family", "fisher/u1", "-p", "bogus=1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("reflect"));

    let o = rdexact(&["sample", "--family", "fisher/u1", "-p", "c"]);
    assert!(!o.status.success());

    let o = rdexact(&["figures", "--id", "9"]);
    assert!(!o.status.success());
}

#[test]
fn chain_table_lists_constants() {
    let out = stdout(&rdexact(&["chain", "--depth", "3", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let c: Vec<f64> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["c_n"].as_f64().unwrap()).collect();
    assert_eq!(c, [-0.25, 1.0, -4.0, 16.0]);
}
