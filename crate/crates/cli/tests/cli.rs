use serde_json::{json, Value};

use segre_cli::run;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ok(args: &[&str]) -> Value {
    let out = run(std::iter::once("segre").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn fails(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("segre").chain(args.iter().copied()));
    assert!(out.stdout.is_empty());
    (out.code, out.stderr)
}

#[test]
fn anticanonical_example() {
    let v = ok(&["classify", "anticanonical", "--rho", "3,2"]);
    assert_eq!(v["is_cm"], true);
    assert_eq!(v["closed_form"], true);
    assert!(!v["assumptions"].as_array().unwrap().is_empty());
}

#[test]
fn interval_example() {
    let v = ok(&["classify", "interval", "--rho", "4,2"]);
    assert_eq!(v["kind"], "open_interval");
    assert_eq!(
        (v["lo"].clone(), v["hi"].clone()),
        (json!("-1"), json!("2"))
    );
    assert_eq!(v["integer_points"], json!([0, 1]));

    let flat = ok(&["classify", "interval", "--rho", "3,3"]);
    assert_eq!(flat["kind"], "all_integers");
    let thirds = ok(&["classify", "interval", "--rho", "4,3"]);
    assert_eq!(
        (thirds["lo"].clone(), thirds["hi"].clone()),
        (json!("-3"), json!("4"))
    );
}

#[test]
fn toric_segre_example() {
    let i2 = data("I2.mat");
    let v = ok(&[
        "toric", "segre", "--left", &i2, "--right", &i2, "--census", "2",
    ]);
    assert_eq!(v["kernel_rank"], 1);
    assert_eq!(v["counts"], json!([1, 4, 9]));
    assert_eq!(v["grading"].as_array().unwrap().len(), 4);
}

#[test]
fn toric_commands() {
    let cubic = data("twisted_cubic.mat");
    let v = ok(&["toric", "validate", "--matrix", &cubic]);
    assert_eq!(
        (v["rows"].clone(), v["cols"].clone(), v["rank"].clone()),
        (json!(2), json!(3), json!(2))
    );
    let k = ok(&["toric", "kernel", "--matrix", &cubic]);
    assert_eq!(k["kernel_rank"], 1);
    let c = ok(&["toric", "census", "--matrix", &cubic, "--n", "4"]);
    assert_eq!(c["counts"], json!([1, 3, 5, 7, 9]));
    let t = ok(&[
        "toric",
        "tensor",
        "--left",
        &cubic,
        "--right",
        &data("I2.mat"),
        "--census",
        "2",
    ]);
    // convolution of (1, 3, 5) and (1, 2, 3)
    assert_eq!(t["counts"], json!([1, 5, 14]));
}

#[test]
fn hilbert_commands() {
    let plane = "num: 1 0 ; den: 2";
    assert_eq!(
        ok(&["hilbert", "coeff", "--series", plane, "--n", "4"])["value"],
        "5"
    );
    let w = ok(&["hilbert", "window", "--series", plane, "--window", "-1..3"]);
    assert_eq!(w["values"], json!(["0", "1", "2", "3", "4"]));
    let s = ok(&["hilbert", "shift", "--series", plane, "--a", "2"]);
    assert_eq!(s["series"], "num: 1 -2 ; den: 2");
    let h = ok(&["hilbert", "hadamard", "--left", plane, "--right", plane]);
    assert_eq!(h["series"], "num: 1 0 1 1 ; den: 3");
    assert_eq!(h["window_matches"], true);
}

#[test]
fn depth_report_fields() {
    let v = ok(&[
        "classify", "depth", "--dims", "3,2", "--ainv", "-3,-2", "--shifts", "0,-4",
    ]);
    assert_eq!(
        (v["dim"].clone(), v["depth"].clone(), v["is_cm"].clone()),
        (json!(4), json!(2), json!(false))
    );
    assert_eq!(v["closed_form"]["agrees"], true);
    assert_eq!(v["witnesses"][0]["subset"], json!([2]));
    let cm = ok(&["classify", "cm-twist", "--rho", "4,2", "--a", "2"]);
    assert_eq!(
        (
            cm["is_cm"].clone(),
            cm["subset_test"].clone(),
            cm["ratio_chain"].clone()
        ),
        (json!(false), json!(false), json!(false))
    );
    let zero = ok(&["classify", "cm-twist", "--rho", "4,2", "--a", "0"]);
    assert_eq!(
        (zero["is_cm"].clone(), zero["ratio_chain"].clone()),
        (json!(true), Value::Null)
    );
}

#[test]
fn oracle_reports() {
    let v = ok(&[
        "oracle", "friendly", "--ring1", "x:3", "--ring2", "y:2", "--shift1", "2", "--shift2", "1",
    ]);
    assert_eq!(v["verdict"], "not_friendly_certified");
    assert_eq!(v["inputs"]["window"], json!([-6, 6]));
    let same = ok(&[
        "oracle", "friendly", "--ring1", "x:3", "--ring2", "y:2", "--window", "-3..3",
    ]);
    assert_eq!(same["verdict"], "consistent");
    assert!(!same["assumptions"].as_array().unwrap().is_empty());
    let i2 = data("I2.mat");
    let toric = ok(&[
        "oracle", "friendly", "--toric1", &i2, "--toric2", &i2, "--shift1", "-1", "--window",
        "-2..2",
    ]);
    assert_eq!(toric["verdict"], "consistent");
    assert_eq!(toric["right"]["nonzero"], json!({"0": 2, "1": 6, "2": 12}));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "segre", "oracle", "friendly", "--ring1", "x:2,y:2", "--ring2", "z:3", "--shift1", "1",
    ];
    let first = run(args);
    let second = run(args);
    assert_eq!(first, second);
    let text = run([
        "segre", "--format", "text", "classify", "interval", "--rho", "4,2",
    ]);
    assert!(text.stdout.contains("integer_points: [0,1]\n"));
}

#[test]
fn exit_codes_name_the_offending_token() {
    let (code, msg) = fails(&["classify", "cm-twist", "--rho", "2,3", "--a", "2"]);
    assert_eq!(code, 3);
    assert!(msg.contains("2,3"));

    let (code, msg) = fails(&[
        "classify", "depth", "--dims", "2,q", "--ainv", "-1,-1", "--shifts", "0,0",
    ]);
    assert_eq!(code, 2);
    assert!(msg.contains("`q`"));

    let (code, msg) = fails(&["toric", "validate", "--matrix", &data("weighted.mat")]);
    assert_eq!(code, 3);
    assert!(msg.contains("weighted.mat"));

    let (code, msg) = fails(&[
        "toric",
        "census",
        "--matrix",
        &data("I2.mat"),
        "--n",
        "5",
        "--cap",
        "3",
    ]);
    assert_eq!(code, 4);
    assert!(msg.contains("I2.mat"));

    let (code, msg) = fails(&["toric", "kernel", "--matrix", "/nonexistent.mat"]);
    assert_eq!(code, 2);
    assert!(msg.contains("/nonexistent.mat"));

    let (code, msg) = fails(&[
        "hilbert",
        "coeff",
        "--series",
        "num: 1 ; den: 2",
        "--n",
        "0",
    ]);
    assert_eq!(code, 2);
    assert!(msg.contains("num: 1 ; den: 2"));

    let (code, msg) = fails(&["oracle", "friendly", "--ring1", "x:0", "--ring2", "y"]);
    assert_eq!(code, 2);
    assert!(msg.contains("x:0"));

    let (code, msg) = fails(&["classify", "interval", "--rho", "1,1", "--window", "3..1"]);
    assert_eq!(code, 2);
    assert!(msg.contains("3..1"));

    let (code, _) = fails(&["classify", "frobnicate"]);
    assert_eq!(code, 2);
    let help = run(["segre", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("classify"));
}
