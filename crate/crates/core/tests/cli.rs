use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pellab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pellab")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = pellab(args);
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (out.status.code().unwrap(), doc)
}

fn all_checks_pass(doc: &Value) -> bool {
    doc["checks"].as_object().unwrap().values().all(|v| v == &json!(true))
}

#[test]
fn pell_on_chebyshev_radicand() {
    let (code, doc) = run(&["pell", "-i", fixture("R_cheb.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["X"], json!(["0", "1"]));
    assert_eq!(doc["Y"], json!(["1"]));
    assert_eq!(doc["input"], json!({"R": ["-1", "0", "1"]}));
    assert!(all_checks_pass(&doc));
}

#[test]
fn realize_exit_codes() {
    let (code, doc) = run(&["realize", "-i", fixture("form_mixed.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"]["kind"], "Realized");
    assert_eq!(
        doc["period"]["blocks"],
        json!([
            {"p": ["0", "1"], "epsilon": 1, "beta": "1"},
            {"p": ["0", "1"], "epsilon": -1, "beta": "1"}
        ])
    );
    assert!(all_checks_pass(&doc));

    let (code, doc) = run(&["realize", "--period", fixture("form_bad.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], json!({"kind": "NotRealizable", "reason": "normalization obstruction"}));

    // λ⁴ + λ + 1 has no polynomial Pell solution
    let nonpell = fixture("form_nonpell.json");
    let (code, doc) = run(&["realize", "-i", nonpell.to_str().unwrap(), "--max-steps", "8", "--max-power", "2"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], json!({"kind": "Inconclusive", "bound_hit": "max_cf_steps"}));
    let (code, doc) = run(&["pell", "-i", nonpell.to_str().unwrap(), "--max-steps", "8"]);
    assert_eq!(code, 2);
    assert_eq!(doc["X"], Value::Null);
}

#[test]
fn period_commands() {
    let period = fixture("period_gap.json");
    let p = period.to_str().unwrap();
    let (code, doc) = run(&["monodromy", "-i", p]);
    assert_eq!(code, 0);
    assert_eq!(doc["monodromy"], json!({"M": [[["4"], ["0", "-1"]], [["0", "-4"], ["1", "0", "1"]]], "D": "4"}));
    assert!(all_checks_pass(&doc));

    let (code, doc) = run(&["spectrum", "-i", p, "--grid", "64"]);
    assert_eq!(code, 0);
    assert_eq!(doc["spectrum"]["eigenvalues"].as_array().unwrap().len(), 1);
    assert_eq!(doc["spectrum"]["band_endpoints"].as_array().unwrap().len(), 4);
    assert!(all_checks_pass(&doc));

    let (code, doc) = run(&["dump", "-i", p, "--blocks", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["H"], json!([["0", "-1"], ["1", "0"]]));
    assert_eq!(doc["G"], json!([["1", "0"], ["0", "-1"]]));
    assert!(all_checks_pass(&doc));

    let (code, doc) = run(&["series", "-i", fixture("period_free.json").to_str().unwrap(), "--moments", "6"]);
    assert_eq!(code, 0);
    assert_eq!(doc["moments"], json!(["1", "0", "1", "0", "2", "0"]));
    assert!(all_checks_pass(&doc));
}

#[test]
fn mfunc_reports_values_and_refusals() {
    let (code, doc) = run(&[
        "mfunc",
        "-i",
        fixture("period_free.json").to_str().unwrap(),
        "--points",
        fixture("points.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v = doc["values"].as_array().unwrap();
    assert_eq!(v[0]["m"]["re"].as_f64().unwrap(), -0.5);
    assert_eq!(v[0]["m"]["re"].to_string(), "-5.0000000000000000e-1");
    assert_eq!(v[1]["error"]["kind"], "OnSpectrum");
}

#[test]
fn matrix_commands() {
    let (code, doc) = run(&["reconstruct", "-i", fixture("monodromy_mixed.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["period"]["blocks"][1]["epsilon"], -1);
    assert!(all_checks_pass(&doc));

    let bad = fixture("monodromy_bad.json");
    let (code, doc) = run(&["admissible", "-i", bad.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["expandable"], false);
    assert_eq!(doc["report"]["verdict"], false);
    let (code, doc) = run(&["reconstruct", "-i", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "NotAdmissible");
}

#[test]
fn expand_surd_tail() {
    let (code, doc) = run(&["expand", "-i", fixture("tail_surd.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["terminal"], json!({"kind": "Periodic", "period": 2}));
    assert!(all_checks_pass(&doc));
}

#[test]
fn malformed_input_is_located() {
    let dir = std::env::temp_dir().join(format!("pellab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.json");
    std::fs::write(&f, r#"{"blocks": [{"p": ["0", "1"], "epsilon": 1, "beta": "x/2"}]}"#).unwrap();
    let (code, doc) = run(&["monodromy", "-i", f.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "BadRational");
    assert_eq!(doc["error"]["location"], "$.blocks[0].beta");

    std::fs::write(&f, "{not json").unwrap();
    let (code, doc) = run(&["monodromy", "-i", f.to_str().unwrap()]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (3, Some("Json")));

    let (code, doc) = run(&["frobnicate"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (3, Some("Usage")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("pellab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("r.json");
    let input = fixture("form_mixed.json");
    let res = pellab(&["realize", "-i", input.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    assert!(res.stdout.is_empty());
    let first = std::fs::read(&out).unwrap();
    let second = pellab(&["realize", "-i", input.to_str().unwrap()]).stdout;
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).unwrap();
}
