use std::process::{Command, Output};

use serde_json::Value;

fn rp2ido(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rp2ido")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = rp2ido(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn classify_cartan_example() {
    let v = json(&["classify", "--m", "0", "--l", "1", "--lambda", "0", "--nu", "3/2", "--alpha", "+", "--beta", "-"]);
    assert_eq!(v["family"], "Cartan");
    assert_eq!(v["k"], 1);
    assert_eq!(v["order"], 1);
}

#[test]
fn classify_wrong_parity_is_none() {
    let v = json(&["classify", "--m", "0", "--l", "1", "--lambda", "0", "--nu", "3/2", "--alpha", "+", "--beta", "+"]);
    assert_eq!(v["family"], "None");
    assert_eq!(v["k"], Value::Null);
}

#[test]
fn exactness_example() {
    let v = json(&["verify", "exactness", "--m", "0", "--k", "0", "--max-degree", "4"]);
    assert_eq!(v["exact"], true);
    assert_eq!(v["kernel_dim"], 1);
    assert_eq!(v["status"], "exact");
}

#[test]
fn oracle_hom_without_solutions() {
    let v = json(&["oracle", "hom", "--m", "2", "--l", "2", "--k", "2"]);
    assert_eq!(v["solutions"], Value::Array(vec![]));
}

#[test]
fn prv_out_of_range_is_usage_error() {
    let out = rp2ido(&["construct", "--family", "prv", "--m", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_rational_is_usage_error() {
    let out = rp2ido(&["classify", "--m", "0", "--l", "1", "--lambda", "x", "--nu", "0", "--alpha", "+", "--beta", "+"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_verification_exits_one() {
    let out = rp2ido(&["verify", "intertwine", "--family", "cartan", "--m", "1", "--k", "1", "--shift", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], false);
}

#[test]
fn text_and_json_agree() {
    let args = ["classify", "--m", "1", "--l", "0", "--lambda", "3/2", "--nu", "3", "--alpha", "+", "--beta", "-"];
    let v = json(&args);
    let mut text_args = vec!["--format", "text"];
    text_args.extend_from_slice(&args);
    let text = String::from_utf8(rp2ido(&text_args).stdout).unwrap();
    assert_eq!(v["family"], "PRV");
    assert!(text.contains("P^{0}_{1,1}") || text.contains("PRV"), "{text}");
    assert!(text.contains(&format!("order {}", v["order"])), "{text}");

    let e = json(&["verify", "exactness", "--m", "1", "--k", "0"]);
    let t = String::from_utf8(rp2ido(&["--format", "text", "verify", "exactness", "--m", "1", "--k", "0"]).stdout).unwrap();
    assert!(t.contains(&format!("kernel dim {}", e["kernel_dim"])), "{t}");
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("rp2ido-out-{}.json", std::process::id()));
    let args = ["construct", "--family", "cartan", "--m", "1", "--k", "2"];
    let stdout = rp2ido(&args).stdout;
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend_from_slice(&["--out", p]);
    let out = rp2ido(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn dualize_matches_closed_form() {
    for fam in ["cartan", "prv"] {
        let v = json(&["dualize", "--family", fam, "--m", "2", "--k", "1"]);
        assert_eq!(v["matches_closed_form"], true, "{fam}");
    }
}

#[test]
fn bgg_composite_vanishes() {
    let v = json(&["bgg", "--m", "1", "--k", "1"]);
    assert_eq!(v["composite_zero"], true);
    assert_eq!(v["kernel_dim"], 8);
}
