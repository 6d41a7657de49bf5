//! End-to-end checks of the binary: exit-code contract, JSON round-trips,
//! and graceful handling of malformed input.

use std::process::{Command, Output};

use qcurrent_core::QRational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcurrent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn classify_output_round_trips() {
    let out = run(&["classify", "--n", "2", "--Q", "0", "--phi", "beta=1;roots=2", "--T", "3"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    let node = &value[0];
    assert_eq!(node["node"], 1);
    // every scalar string re-parses to an equal value
    let lambda: QRational = node["lambda"].as_str().unwrap().parse().unwrap();
    assert_eq!(lambda, QRational::q());
    for (t, u) in node["u"].as_array().unwrap().iter().enumerate() {
        let u: QRational = u.as_str().unwrap().parse().unwrap();
        let expected = &QRational::q_pow(-1) * &QRational::from_int(2).pow(t as i64 + 1).unwrap();
        assert_eq!(u, expected);
        // second round trip is the identity on strings
        assert_eq!(u.to_string().parse::<QRational>().unwrap(), u);
    }
}

#[test]
fn canonicalize_matches_documented_example() {
    let out = run(&["canonicalize", "--Q", "1", "--phi", "beta=1/q;roots=q^2"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["canonical"]["beta"], "(1)/(1)");
    assert_eq!(value["canonical"]["roots"].as_array().unwrap().len(), 0);
    assert_eq!(value["equivalent"], true);
}

#[test]
fn pbw_run_passes_and_reports_slices() {
    let out = run(&["pbw", "--n", "2", "--maxweight", "2", "--maxs", "2", "--T", "2"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["pass"], true);
    for slice in value["slices"].as_array().unwrap() {
        assert_eq!(slice["match"], true);
        assert_eq!(slice["dim"], slice["pbw_count"]);
    }
}

#[test]
fn verify_tensor_module_exits_zero() {
    let spec = r#"{"type":"tensor","factors":[{"type":"onedim","Q":["2"],"beta":["3"]},{"type":"sl2eval","gamma":"5"}]}"#;
    let out = run(&["verify", "--spec", spec, "--T", "3"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["dim"], 2);
    let checks = value["relationChecks"].as_object().unwrap();
    assert!(checks.values().all(|f| f["failures"] == 0));
    // highest weight present and parseable
    let lambda = value["hw"]["nodes"][0]["lambda"].as_str().unwrap();
    let lambda: QRational = lambda.parse().unwrap();
    assert_eq!(lambda, &QRational::from_int(3) * &QRational::q());
}

#[test]
fn weyl_hw_runs() {
    let out = run(&[
        "weyl-hw",
        "--shape",
        "2,2",
        "--lpartition",
        "[[2],[]]",
        "--Qhat",
        "3,5",
        "--T",
        "3",
    ]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value.as_array().unwrap().len(), 3);
    assert_eq!(value[1]["node"], 2);
}

#[test]
fn identities_small_run_exits_zero() {
    let out = run(&["identities", "--k", "2", "--tmax", "2", "--seeds", "2", "--seed", "9"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["pass"], true);
}

#[test]
fn malformed_inputs_exit_two_without_panicking() {
    for args in [
        vec!["classify", "--n", "2", "--Q", "0", "--phi", "beta=banana"],
        vec!["classify", "--n", "2", "--Q", "0", "--phi", "beta=2;roots=1"],
        vec!["classify", "--n", "2", "--Q", "0,0", "--phi", "beta=1"],
        vec!["canonicalize", "--Q", "0)", "--phi", "beta=1"],
        vec!["build", "--spec", "{\"type\":\"mystery\"}"],
        vec!["pbw", "--n", "1", "--maxweight", "1", "--maxs", "1", "--T", "1"],
        vec!["weyl-hw", "--shape", "2", "--lpartition", "[[3,1]", "--Qhat", "1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(
            !String::from_utf8_lossy(&out.stderr).contains("panicked"),
            "args {args:?}"
        );
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("qcurrent-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&[
        "classify",
        "--n",
        "2",
        "--Q",
        "0",
        "--phi",
        "beta=-1;roots=",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value[0]["lambda"], "(-1)/(1)");
    std::fs::remove_file(&path).ok();
}
