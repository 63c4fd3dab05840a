use std::process::{Command, Output};

fn desitter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desitter")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_small_space_has_reduced_coverage() {
    let out = desitter(&["verify", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["coverage"]["full"], false);
    let skipped: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "skipped")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(skipped, ["six_set_leaves_span", "ten_set_closes", "representation_independence"]);
}

#[test]
fn verify_rejects_tiny_cutoff() {
    let out = desitter(&["verify", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_reports_discrepancies() {
    let v = json(&desitter(&["verify", "--n-max", "6"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["discrepancies"]["s0_positive_sum"]["failing"].as_array().unwrap().len(), 9);
    let candidates = v["discrepancies"]["candidate_translation_relations"].as_array().unwrap();
    assert_eq!(candidates.iter().filter(|p| p["holds"] == false).count(), 3);
    assert_eq!(v["discrepancies"]["translation_exponential"]["residual_reversed_time"], 0.0);
    let leaving = &v["completion_deficit"]["leaving"];
    assert_eq!(leaving.as_array().unwrap().len(), 4);
}

#[test]
fn verify_csv() {
    let out = desitter(&["verify", "--n-max", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,status,value,bound,tolerance\n"));
}

#[test]
fn contract_default_scan() {
    let out = desitter(&["contract"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,generator,deviation");
    assert_eq!(lines.len(), 1 + 3 * 5);
    let err = String::from_utf8(out.stderr).unwrap();
    for g in ["cQ1", "cQ2", "cQ3", "cS0"] {
        assert!(err.contains(&format!("slope {g}: 2.0000")), "{err}");
    }
}

#[test]
fn contract_unit_epsilon() {
    let out = desitter(&["contract", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",1.0"), "{line}");
    }
    assert!(String::from_utf8(out.stderr).unwrap().contains("n/a"));
}

#[test]
fn contract_rejects_bad_epsilon() {
    assert_eq!(desitter(&["contract", "--eps", "0.1", "--eps", "-0.5"]).status.code(), Some(2));
    assert_eq!(desitter(&["contract", "--eps", "0"]).status.code(), Some(2));
    assert_eq!(desitter(&["contract", "--eps", "abc"]).status.code(), Some(2));
}

#[test]
fn contract_json() {
    let v = json(&desitter(&["contract", "--eps", "0.5", "--eps", "0.25", "--format", "json"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["slopes"][0]["generator"], "cQ1");
    assert!((v["slopes"][0]["slope"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["results"][0]["generators"][0]["matrix"]["label"], "cQ1");
}

#[test]
fn squeeze_vacuum_and_half() {
    let v = json(&desitter(&["squeeze", "--r", "0"]));
    let amps = v["amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 1);
    assert_eq!(amps[0]["index"], 0);
    assert_eq!(amps[0]["amplitude"], serde_json::json!([1.0, 0.0]));

    let v = json(&desitter(&["squeeze", "--r", "0.5", "--n-max", "20"]));
    let n = v["mean_photon_number"].as_f64().unwrap();
    assert!((n - 2.0 * 0.5f64.sinh().powi(2)).abs() < 1e-8);
}

#[test]
fn squeeze_truncation_and_config_errors() {
    let out = desitter(&["squeeze", "--r", "5", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("insufficient"));
    assert_eq!(desitter(&["squeeze", "--r", "-1"]).status.code(), Some(2));
}

#[test]
fn ellipse_axes_and_output_file() {
    let out = desitter(&["ellipse", "--eta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("z,t,psi_abs\n"));

    let dir = std::env::temp_dir().join(format!("desitter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ellipse.json");
    let out = desitter(&["ellipse", "--eta", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert!((v["semi_axes"]["u"].as_f64().unwrap() - 1f64.exp()).abs() < 1e-6);
    assert!((v["semi_axes"]["v"].as_f64().unwrap() - (-1f64).exp()).abs() < 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = desitter(&["ellipse", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn deterministic_exports() {
    for args in [["squeeze", "--r", "0.3"], ["contract", "--eps", "0.2"], ["ellipse", "--eta", "0.5"]] {
        assert_eq!(desitter(&args).stdout, desitter(&args).stdout);
    }
}
