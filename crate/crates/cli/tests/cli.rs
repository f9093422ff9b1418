use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn conekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(args)
        .env_remove("CONEKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn checked_in_golden() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/golden")
}

#[test]
fn dk_nef_x25_has_27_inequalities() {
    let out = conekit(&["dk", "--n", "2", "--s", "5", "--k", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["halfspaces"].as_array().unwrap().len(), 27);
    assert!(!v["cone"]["rays"].as_array().unwrap().is_empty());
}

#[test]
fn dk_degenerate_levels_print_the_same_cone() {
    let a = conekit(&["dk", "--n", "5", "--s", "3", "--k", "1", "--format", "json"]);
    let b = conekit(&["dk", "--n", "5", "--s", "3", "--k", "2", "--format", "json"]);
    let cone = |o: &Output| serde_json::to_string_pretty(&json(o)["cone"]).unwrap();
    assert_eq!(cone(&a), cone(&b));
}

#[test]
fn dk_out_of_range_is_usage_error() {
    let out = conekit(&["dk", "--n", "2", "--s", "5", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k = 9"));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(conekit(&["duality", "--n", "3"]).status.code(), Some(2));
    assert_eq!(conekit(&["lm", "sideways"]).status.code(), Some(2));
}

#[test]
fn eff_is_dk_at_level_zero() {
    let a = conekit(&["eff", "--n", "3", "--s", "5", "--format", "json"]);
    let b = conekit(&["dk", "--n", "3", "--s", "5", "--k", "0", "--format", "json"]);
    assert_eq!(out_bytes(&a), out_bytes(&b));
}

fn out_bytes(o: &Output) -> &[u8] {
    assert_eq!(o.status.code(), Some(0));
    &o.stdout
}

#[test]
fn duality_x47_lists_conics_and_quintics() {
    let out = conekit(&[
        "duality", "--n", "4", "--s", "7", "--k", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "equal");
    assert!(v["wallclock_ms"].is_null());
    let gens = v["generators"].as_array().unwrap();
    let count = |delta: &str, twos: usize, ones: usize| {
        gens.iter()
            .filter(|g| {
                let c: Vec<&str> = g["coords"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_str().unwrap())
                    .collect();
                c[0] == delta
                    && c[1..].iter().filter(|x| **x == "2").count() == twos
                    && c[1..].iter().filter(|x| **x == "1").count() == ones
            })
            .count()
    };
    assert_eq!(count("2", 0, 3), 35);
    assert_eq!(count("5", 1, 6), 7);
}

#[test]
fn duality_json_is_byte_identical() {
    let args = [
        "duality", "--n", "3", "--s", "6", "--k", "1", "--format", "json",
    ];
    assert_eq!(out_bytes(&conekit(&args)), out_bytes(&conekit(&args)));
}

#[test]
fn timing_flag_records_wallclock() {
    let out = conekit(&[
        "duality", "--n", "2", "--s", "3", "--k", "1", "--format", "json", "--timing",
    ]);
    assert!(json(&out)["wallclock_ms"].is_u64());
}

#[test]
fn duality_all_small() {
    let out = conekit(&["duality", "--all", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("28 of 28 instances equal"));
}

fn cache_entries(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect()
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "duality",
        "--n",
        "3",
        "--s",
        "5",
        "--k",
        "1",
        "--format",
        "json",
        "--cache-dir",
        cache,
    ];
    let first = conekit(&args);
    let entries = cache_entries(dir.path());
    assert_eq!(entries.len(), 1);

    let cached = conekit(&args);
    assert_eq!(first.stdout, cached.stdout);
    assert!(stderr(&cached).is_empty());

    std::fs::write(&entries[0], "{ not json").unwrap();
    let again = conekit(&args);
    assert_eq!(again.status.code(), Some(0));
    assert!(stderr(&again).contains("corrupted cache entry"));
    assert_eq!(first.stdout, again.stdout);
    let repaired: Value =
        serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    assert_eq!(repaired["verdict"], "equal");
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(["duality", "--n", "2", "--s", "4", "--k", "0"])
        .env("CONEKIT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(cache_entries(dir.path()).len(), 1);
}

#[test]
fn chambers_x25() {
    let out = conekit(&["chambers", "--n", "2", "--s", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("X^2_5: 393 chambers cut by 16 hyperplanes"));
    assert!(text.contains("consistent: true"));
    let ample = format!("  {}  empty base locus", "-".repeat(16));
    assert!(text.contains(&ample), "no chamber with all kappa negative");
}

#[test]
fn lm_verify_passes() {
    let out = conekit(&["lm", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("PASS").count(), 4);
    let v = json(&conekit(&["lm", "verify", "--format", "json"]));
    assert_eq!(v["gamma"]["pair_e1"], -1);
    assert_eq!(v["gamma"]["pair_e123"], 1);
}

#[test]
fn lm_fan_lists_14_rays_and_24_cones() {
    let v = json(&conekit(&["lm", "fan", "--format", "json"]));
    assert_eq!(v["rays"].as_array().unwrap().len(), 14);
    assert_eq!(v["max_cones"].as_array().unwrap().len(), 24);
}

#[test]
fn weyl_mu15_reaches_a_conic() {
    let out = conekit(&[
        "weyl", "--n", "4", "--s", "8", "--class", "mu15:1", "--target", "conic", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["path"].as_array().unwrap().len(), 3);
    assert!(v["endpoint"].as_str().unwrap().starts_with("2h"));
    let text = stdout(&conekit(&["weyl", "--class", "mu15:1"]));
    assert_eq!(text.matches("Cr").count(), 3);
}

#[test]
fn weyl_explicit_target_on_x47() {
    let out = conekit(&[
        "weyl",
        "--n",
        "4",
        "--s",
        "7",
        "--class",
        "5,2,1,1,1,1,1,1",
        "--target",
        "2,1,1,1,0,0,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["path"], serde_json::json!([[1, 4, 5, 6, 7]]));
}

#[test]
fn weyl_depth_zero_not_found() {
    let out = conekit(&["weyl", "--class", "mu15:1", "--max-depth", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not found"));
}

#[test]
fn weyl_bad_class_is_usage_error() {
    assert_eq!(
        conekit(&["weyl", "--class", "mu99:1"]).status.code(),
        Some(2)
    );
    assert_eq!(conekit(&["weyl", "--class", "1,2"]).status.code(), Some(2));
}

#[test]
fn dual_of_a_cone_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadrant.json");
    std::fs::write(
        &path,
        r#"{"version":1,"dim":2,"rays":[["1","0"],["1","1"]]}"#,
    )
    .unwrap();
    let out = conekit(&["dual", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rays"], serde_json::json!([["0", "1"], ["1", "-1"]]));

    let back = dir.path().join("dual.json");
    std::fs::write(&back, &out.stdout).unwrap();
    let twice = json(&conekit(&[
        "dual",
        back.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(twice["rays"], serde_json::json!([["1", "0"], ["1", "1"]]));
}

#[test]
fn dual_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"version":1,"dim":2,"rays":[["1"]]}"#).unwrap();
    assert_eq!(
        conekit(&["dual", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        conekit(&["dual", "/nonexistent/cone.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn golden_drift_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().to_str().unwrap();
    let args = [
        "duality", "--n", "2", "--s", "5", "--k", "1", "--golden", golden,
    ];
    let missing = conekit(&args);
    assert_eq!(missing.status.code(), Some(1));

    let mut update = args.to_vec();
    update.push("--update-golden");
    assert_eq!(conekit(&update).status.code(), Some(0));
    assert_eq!(conekit(&args).status.code(), Some(0));

    let file = dir.path().join("v1/duality/n2_s5_k1.json");
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replace("equal", "not_contained")).unwrap();
    let drift = conekit(&args);
    assert_eq!(drift.status.code(), Some(1));
    assert!(stderr(&drift).contains("golden drift"));
}

#[test]
fn checked_in_goldens_match() {
    let out = conekit(&[
        "duality",
        "--all",
        "--max-n",
        "4",
        "--golden",
        checked_in_golden(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = conekit(&["lm", "verify", "--golden", checked_in_golden()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}
