use std::process::{Command, Output};

use disperse_core::SystemParams;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lambda-disperse"));
    c.env_remove("LAMBDA_DISPERSE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lambda-disperse")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_two_with_message() {
    for args in [&[][..], &["spectrum", "--rate", "-1"], &["spectrum", "--nope"], &["validate", "--rabi", "0"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("Usage") || err.contains("--help"), "{args:?}: {err}");
    }
    let o = bin().args(["spectrum"]).env("LAMBDA_DISPERSE_THREADS", "four").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn saturated_centre_row() {
    let o = run(&["spectrum", "--rate", "1", "--omega", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta_p,re_chi,im_chi,slope"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1601);
    assert_eq!(rows[800], "0,0,0,0");
}

#[test]
fn regime_map_row() {
    let o = run(&[
        "regime-map",
        "--r-min",
        "0",
        "--r-max",
        "2",
        "--n-r",
        "5",
        "--omega-min",
        "1",
        "--omega-max",
        "8",
        "--n-omega",
        "8",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("r,omega,class"));
    assert!(text.lines().any(|l| l == "2,8,superluminal-gain"));
    assert!(text.lines().any(|l| l == "1,5,saturated"));
    assert_eq!(text.lines().count(), 41);
}

#[test]
fn group_index_columns() {
    let o = run(&["group-index", "--omegas", "1,8", "--n-r", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "omega,r,ng_minus_1");
    assert_eq!(lines.len(), 1 + 2 * 9);
    assert_eq!(lines[2], "1,1,0");
    assert_eq!(lines[11], "8,1,0");
}

#[test]
fn json_round_trips_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = run(&[
        "spectrum",
        "--rate",
        "0.3",
        "--r2",
        "2.3",
        "--omega",
        "8",
        "--gamma1",
        "1.25",
        "--gamma2",
        "0.7",
        "--rabi",
        "0.005",
        "--alpha",
        "0.1",
        "--nu-p",
        "3.3",
        "--points",
        "11",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "spectrum");
    let params: SystemParams = serde_json::from_value(doc["params"].clone()).unwrap();
    let expected = SystemParams {
        gamma1: 1.25,
        gamma2: 0.7,
        r1: 0.3,
        r2: 2.3,
        omega: 8.0,
        omega_p_rabi: 0.005,
        alpha: 0.1,
        nu_p: 3.3,
        ..SystemParams::default()
    };
    assert_eq!(params, expected);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].as_object().unwrap().keys().collect::<Vec<_>>(), ["delta_p", "im_chi", "re_chi", "slope"]);
}

#[test]
fn json_matches_csv_digits() {
    let csv = stdout(&run(&["spectrum", "--rate", "2.3", "--omega", "8", "--points", "21"]));
    let json = stdout(&run(&["spectrum", "--rate", "2.3", "--omega", "8", "--points", "21", "--format", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    for (line, row) in csv.lines().skip(1).zip(doc["rows"].as_array().unwrap()) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let json_fields: Vec<f64> =
            ["delta_p", "re_chi", "im_chi", "slope"].iter().map(|k| row[*k].as_f64().unwrap()).collect();
        assert_eq!(fields, json_fields);
    }
}

#[test]
fn validate_exit_code_follows_report() {
    let o = run(&["validate", "--omegas", "8", "--rates", "2.3", "--points", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("case_id,delta_p,re_a,im_a,re_n,im_n,abs_err"));
    assert_eq!(text.lines().count(), 22);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pass"));

    // The weak-probe closed form is only accurate to O(Ω_p²); 1e-7 is too tight.
    let o = run(&["validate", "--omegas", "1", "--rates", "0.8", "--points", "21", "--tolerance", "1e-7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));

    // The unpumped case has no unique steady state for the oracle.
    let o = run(&["validate", "--omegas", "1", "--rates", "0", "--points", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["pass"], false);
    assert_eq!(doc["failures"][0]["case_id"], 0);
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = run(&["spectrum", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out.csv"));
}
