use cdc_wasm::{bound_report_json, construct_verify_json, ratio_series_json};
use serde_json::Value;

#[test]
fn bound_report() {
    let r: Value = serde_json::from_str(&bound_report_json(2, 7, 4, 3).unwrap()).unwrap();
    assert_eq!(r["best_lower"]["value"], "333");
    assert_eq!(r["best_upper"]["value"], "381");
    assert!(bound_report_json(6, 7, 4, 3).is_err());
}

#[test]
fn series() {
    let s: Value = serde_json::from_str(&ratio_series_json("mrd", 2, 3, 4, 6, 20).unwrap()).unwrap();
    let pts = s[1]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 15);
    let last = pts.last().unwrap()["y"].as_f64().unwrap();
    assert!((last - 1.3056442377).abs() < 1e-9);
    let s: Value = serde_json::from_str(&ratio_series_json("lmrd", 2, 3, 4, 6, 40).unwrap()).unwrap();
    let ys: Vec<f64> = s[0]["points"].as_array().unwrap().iter().map(|p| p["y"].as_f64().unwrap()).collect();
    assert!(ys.windows(2).all(|w| w[1] <= w[0]));
    assert!(ratio_series_json("nope", 2, 3, 4, 6, 10).is_err());
}

#[test]
fn construct() {
    let c: Value = serde_json::from_str(&construct_verify_json(2, 7, 4, 3).unwrap()).unwrap();
    assert_eq!(c["n"], 265);
    assert_eq!(c["min_distance"], 4);
    assert_eq!(c["ok"], true);
    assert!(construct_verify_json(2, 19, 4, 3).is_err());
}
