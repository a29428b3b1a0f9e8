use std::process::Command;

use permpoly::cli::{run, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permpoly").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let doc = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, doc, String::from_utf8(err).unwrap())
}

#[test]
fn construct_zieve11_verifies() {
    let (code, doc, _) = call(&[
        "construct",
        "--field",
        "3^2/1",
        "--family",
        "zieve11",
        "--beta",
        "1,0",
        "--gamma",
        "1,1",
        "--n",
        "3",
        "--k",
        "0",
        "--verify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["predicted"], true);
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["field"], "3^2/1:1,0,1");
}

#[test]
fn construct_predicted_false_is_not_a_mismatch() {
    // gcd(n, q + 1) = gcd(2, 4) != 1
    let (code, doc, _) = call(&[
        "construct",
        "--field",
        "3^2/1",
        "--family",
        "zieve11",
        "--beta",
        "1",
        "--gamma",
        "1,1",
        "--n",
        "2",
        "--k",
        "0",
        "--verify",
        "--jobs",
        "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["predicted"], false);
    assert_eq!(doc["verified"], false);
    assert!(doc["collision_witness"].is_array());
}

#[test]
fn construct_from_spec_file() {
    let dir = std::env::temp_dir().join(format!("permpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z12.txt");
    std::fs::write(
        &path,
        "family = zieve12\nfield = 5^2/1\nbeta = 1\ndelta = 0,1\nn = 1\nk = 0\n",
    )
    .unwrap();
    let (code, doc, _) = call(&[
        "construct",
        "--spec-file",
        path.to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["family"], "zieve12");
    assert_eq!(doc["predicted"], doc["verified"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = call(&[
        "construct",
        "--field",
        "3^2/1",
        "--family",
        "zieve11",
        "--beta",
        "1,0",
        "--n",
        "3",
        "--k",
        "0",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("gamma"), "{err}");
    let (code, _, err) = call(&[
        "construct",
        "--field",
        "3^2/1",
        "--family",
        "zieve11",
        "--beta",
        "1,1",
        "--gamma",
        "1,1",
        "--n",
        "3",
        "--k",
        "0",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("beta"), "{err}");
    assert_eq!(
        call(&["construct", "--field", "6^2/1", "--family", "zieve11"]).0,
        EXIT_USAGE
    );
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify-poly", "--field", "3^2/1"]).0, EXIT_USAGE);
    assert_eq!(
        call(&[
            "check-agw",
            "--field",
            "3^2/1",
            "--r",
            "1",
            "--d",
            "3",
            "--h",
            "1"
        ])
        .0,
        EXIT_USAGE
    );
}

#[test]
fn classify_degree1_cross_checks() {
    let (code, doc, _) = call(&["classify-degree1", "--field", "3^2/1"]);
    assert_eq!(code, EXIT_OK);
    for key in ["mu_permuters", "line_bijections"] {
        assert_eq!(doc[key]["agree"], true);
        assert_eq!(doc[key]["count"], doc[key]["brute_force_count"]);
    }
    // |PGL_2(F_3)| = 24 degree-one maps in each class
    assert_eq!(doc["mu_permuters"]["count"], 24);
}

#[test]
fn search_good_pairs_matches_closed_form() {
    let (code, doc, _) = call(&[
        "search-good-pairs",
        "--field",
        "2^4/2",
        "--degree",
        "2",
        "--k",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["matches_closed_form"], true);
    assert_eq!(doc["distinct_l"], 150);
    let (code, doc, _) = call(&["search-good-pairs", "--field", "3^2/1", "--degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["count"], 0);
}

#[test]
fn verify_poly_and_agw_and_mu_table() {
    let (code, doc, _) = call(&["verify-poly", "--field", "3^2/1", "--poly", "3:1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["is_permutation"], true);
    assert_eq!(doc["image_size"], 9);
    let (_, doc, _) = call(&["verify-poly", "--field", "3^2/1", "--poly", "2:1"]);
    assert_eq!(doc["is_permutation"], false);

    let (code, doc, _) = call(&[
        "check-agw",
        "--field",
        "3^2/1",
        "--r",
        "3",
        "--d",
        "4",
        "--h",
        "0:1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["lhs"], doc["rhs"]);
    assert_eq!(doc["lhs"], true);

    let (code, doc, _) = call(&[
        "mu-table", "--field", "3^2/1", "--num", "0:1", "--den", "1:1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["order"], 4);
    assert_eq!(doc["values"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "search-good-pairs",
        "--field",
        "2^4/2",
        "--degree",
        "1",
        "--k",
        "0",
    ];
    let a = call(&args).1;
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    assert_eq!(a, call(&with_jobs).1);
}

#[test]
fn timing_only_on_request() {
    let (_, doc, _) = call(&["mu-table", "--field", "2^2/1"]);
    assert!(doc.get("elapsed_ms").is_none());
    let (_, doc, _) = call(&["mu-table", "--field", "2^2/1", "--timing"]);
    assert!(doc["elapsed_ms"].is_number());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_permpoly");
    let ok = Command::new(bin)
        .args(["mu-table", "--field", "3^2/1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
    let bad = Command::new(bin)
        .args(["mu-table", "--field", "3^2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}
