use std::process::{Command, Output};

use serde_json::Value;

fn hypcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcat"))
        .args(args)
        .env_remove("HYPCAT_MAX_EVALS")
        .output()
        .expect("spawn hypcat")
}

fn json(args: &[&str]) -> Value {
    let out = hypcat(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn constants_include_every_reference() {
    let v = json(&["constants"]);
    let list = v["constants"].as_array().unwrap();
    let get = |name: &str| {
        list.iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("missing {name}"))
    };
    for (name, reference, tol) in [
        ("a_c", 0.49577, 1e-4),
        ("varrho_a_c", 0.501143, 1e-5),
        ("a_l", 1.10055, 1e-4),
        ("K", 0.40093, 1e-5),
        ("abar_c", 2.17968, 1e-4),
        ("A3", 0.530638, 1e-6),
        ("A4", 0.715548, 1e-6),
    ] {
        let c = get(name);
        assert_eq!(c["reference"].as_f64().unwrap(), reference);
        assert!((c["value"].as_f64().unwrap() - reference).abs() <= tol, "{name}");
        assert!(c["paper_ref"].as_str().is_some_and(|s| !s.is_empty()));
    }
    assert!(get("delta")["value"].as_f64().is_some());
    assert!(v["paper_ref"].is_string());
}

#[test]
fn area_matches_reference_triple() {
    let v = json(&["area", "--a", "1.2", "--y1", "2.4"]);
    assert!((v["x1"].as_f64().unwrap() - 0.330439).abs() < 1e-5);
    assert!((v["band_area"].as_f64().unwrap() - 54.6636).abs() < 1e-3);
    assert!((v["disks_area"].as_f64().unwrap() - 57.2643).abs() < 1e-3);
    assert_eq!(v["band_smaller"], Value::Bool(true));
}

#[test]
fn helicoid_classification() {
    let v = json(&["classify-helicoid", "--pitch", "2.3"]);
    assert_eq!(v["kind"], "UnstableInfiniteIndex");
    let a = v["conjugate"]["a_ball"].as_f64().unwrap();
    assert!((a - (1.0f64 / 2.3).atanh()).abs() < 1e-10);
    assert!(a < 0.49577);
    let flat = json(&["classify-helicoid", "--pitch", "0"]);
    assert_eq!(flat["conjugate"]["kind"], "Plane");
    assert_eq!(flat["kind"], "GloballyStable");
}

#[test]
fn catenoid_classification() {
    let v = json(&["classify-catenoid", "--a", "0.3"]);
    assert_eq!(v["kind"], "UnstableIndexOne");
    assert!(v["z"].as_f64().unwrap() > 0.0);
    let v = json(&["classify-catenoid", "--a", "1.2"]);
    assert_eq!(v["kind"], "GloballyStable");
    assert_eq!(v["least_area"], Value::Bool(true));
    assert!(v["z"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(hypcat(&["classify-catenoid", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(hypcat(&["classify-catenoid", "--b", "1"]).status.code(), Some(2));
    assert_eq!(hypcat(&["nonsense"]).status.code(), Some(2));
    assert_eq!(hypcat(&["area", "--a", "1.0", "--y1", "0.5"]).status.code(), Some(2));
    let out = hypcat(&["constants", "--output", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    // An invalid budget is a usage error; a starved one a computation failure.
    assert_eq!(hypcat(&["classify-catenoid", "--a", "0.3", "--max-evals", "20"]).status.code(), Some(2));
    let starved = ["area", "--a", "0.8", "--y1", "1.5", "--abs-tol", "1e-15", "--rel-tol", "1e-15", "--max-evals", "100"];
    assert_eq!(hypcat(&starved).status.code(), Some(1));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypcat"))
        .args(["area", "--a", "0.8", "--y1", "1.5", "--abs-tol", "1e-15", "--rel-tol", "1e-15"])
        .env("HYPCAT_MAX_EVALS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = hypcat(&["jacobi-profile", "--a", "0.3", "--s-max", "3", "--samples", "31"]);
    let b = hypcat(&["jacobi-profile", "--a", "0.3", "--s-max", "3", "--samples", "31"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let footer = text.lines().last().unwrap();
    assert!(footer.starts_with("# "));
    let meta: Value = serde_json::from_str(&footer[2..]).unwrap();
    assert!((meta["z"].as_f64().unwrap() - 0.518456).abs() < 1e-5);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 32);
}

#[test]
fn csv_subcommands() {
    let out = hypcat(&["rho-curve", "--a-min", "0.1", "--a-max", "1.0", "--samples", "10", "--derivative", "1"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["a", "varrho_prime"]);
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows[0][1] > 0.0 && rows[9][1] < 0.0);

    let out = hypcat(&["envelope", "--a-min", "0.1", "--a-max", "0.4", "--samples", "4"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    for r in rdr.records() {
        let residual: f64 = r.unwrap()[4].parse().unwrap();
        assert!(residual.abs() < 1e-6);
    }
    assert_eq!(hypcat(&["envelope", "--a-min", "0.1", "--a-max", "0.6", "--samples", "4"]).status.code(), Some(2));

    let out = hypcat(&["catenary-curve", "--a", "0.4", "--s-max", "2", "--samples", "5"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("s,x,y,sin_theta\n"));
}

#[test]
fn intersect_json() {
    let v = json(&["intersect", "--a1", "0.1", "--a2", "0.2"]);
    assert_eq!(v["exists"], Value::Bool(true));
    let none = json(&["intersect", "--a1", "0.1", "--a2", "3.0"]);
    assert_eq!(none["exists"], Value::Bool(false));
    assert!(none["y"].is_null());
}

#[test]
fn mesh_writes_obj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.obj");
    let out = hypcat(&[
        "mesh", "--surface", "helicoid", "--model", "upper", "--param", "2", "--n1", "10", "--n2", "12", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (models, _) = tobj::load_obj(&path, &tobj::LoadOptions::default()).unwrap();
    assert_eq!(models[0].mesh.positions.len(), 3 * 120);
    assert_eq!(hypcat(&["mesh", "--surface", "catenoid", "--param", "0.5", "--format", "json"]).status.code(), Some(2));
}

#[test]
fn lemmas_verify_reports_all_hold() {
    let v = json(&["lemmas-verify", "--grid", "100"]);
    assert_eq!(v["all_hold"], Value::Bool(true));
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 5);
    assert_eq!(hypcat(&["lemmas-verify", "--grid", "10"]).status.code(), Some(2));
}
