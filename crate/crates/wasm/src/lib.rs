//! Browser bindings: bound reports, ratio series and small constructions.
//!
//! Every export returns a JSON string; errors surface as thrown strings.

use cdc_core::asymptotics::{
    better_than_mrd_envelope_ratio, better_than_mrd_ratio, lmrd_anticode_ratio, lmrd_singleton_ratio,
};
use cdc_core::build::Builder;
use cdc_core::field::FieldSpec;
use cdc_core::verify::verify_code;
use cdc_core::{Bounds, Params};
use num_traits::ToPrimitive;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest Grassmannian-free construction the page will build.
pub const MAX_DEMO_CODEWORDS: usize = 20_000;

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

pub fn bound_report_json(q: u64, v: u32, d: u32, k: u32) -> Result<String, String> {
    let p = Params::new(q, v, d, k).map_err(|e| e.to_string())?;
    Ok(to_json(&Bounds::with_builtin_seeds().report(p)))
}

#[derive(Serialize)]
struct SeriesPoint {
    v: u32,
    y: f64,
}

#[derive(Serialize)]
struct Series {
    name: String,
    points: Vec<SeriesPoint>,
}

/// Ratio curves over `v_min..=v_max`. `kind` is `mrd` (best lower bound on
/// A_q(v,4;3) over the MRD bound and over its envelope) or `lmrd` (lifted MRD
/// size over the Singleton and Anticode bounds for the given k, d).
pub fn ratio_series_json(kind: &str, q: u64, k: u32, d: u32, v_min: u32, v_max: u32) -> Result<String, String> {
    if v_max < v_min || v_max > 200 {
        return Err(format!("need v_min <= v_max <= 200, got {v_min}..{v_max}"));
    }
    Params::new(q, v_max, d, k).map_err(|e| e.to_string())?;
    let f = |r: num_rational::BigRational| r.to_f64().unwrap_or(f64::NAN);
    let out = match kind {
        "mrd" => {
            let mut e = Bounds::with_builtin_seeds();
            let (mut exact, mut env) = (Vec::new(), Vec::new());
            for v in v_min.max(6)..=v_max {
                exact.push(SeriesPoint { v, y: f(better_than_mrd_ratio(&mut e, q, v).map_err(|e| e.to_string())?) });
                env.push(SeriesPoint {
                    v,
                    y: f(better_than_mrd_envelope_ratio(&mut e, q, v).map_err(|e| e.to_string())?),
                });
            }
            vec![
                Series { name: "lower / MRD bound".into(), points: exact },
                Series { name: "lower / envelope".into(), points: env },
            ]
        }
        "lmrd" => {
            let (mut single, mut anti) = (Vec::new(), Vec::new());
            for v in v_min.max(2 * k)..=v_max {
                single.push(SeriesPoint { v, y: f(lmrd_singleton_ratio(q, v, k, d).map_err(|e| e.to_string())?) });
                anti.push(SeriesPoint { v, y: f(lmrd_anticode_ratio(q, v, k, d).map_err(|e| e.to_string())?) });
            }
            vec![
                Series { name: "LMRD / Singleton".into(), points: single },
                Series { name: "LMRD / Anticode".into(), points: anti },
            ]
        }
        _ => return Err(format!("unknown series {kind:?}; use mrd or lmrd")),
    };
    Ok(to_json(&out))
}

#[derive(Serialize)]
struct Constructed {
    n: usize,
    how: String,
    claimed_d: Option<u32>,
    min_distance: Option<u32>,
    ok: bool,
    /// First few codewords as rref rows.
    sample: Vec<Vec<Vec<u32>>>,
}

/// Builds the largest explicit code the library knows and verifies it.
pub fn construct_verify_json(q: u64, v: u32, d: u32, k: u32) -> Result<String, String> {
    Params::new(q, v, d, k).map_err(|e| e.to_string())?;
    let field = FieldSpec::of_order(q).map_err(|e| e.to_string())?;
    let mut b = Builder::new(field, d as usize).map_err(|e| e.to_string())?;
    let upper = Bounds::with_builtin_seeds().best_upper(Params::new(q, v, d, k).map_err(|e| e.to_string())?);
    if upper.value > MAX_DEMO_CODEWORDS.into() {
        return Err(format!(
            "codes here may have up to {} codewords; the demo stops at {MAX_DEMO_CODEWORDS}",
            upper.value
        ));
    }
    let built = b.best(v as usize, k as usize).map_err(|e| e.to_string())?;
    let r = verify_code(&built.code);
    let sample =
        built.code.codewords.iter().take(8).map(|u| (0..u.dim()).map(|i| u.rep().row(i).to_vec()).collect()).collect();
    Ok(to_json(&Constructed {
        n: r.n,
        how: built.how,
        claimed_d: r.claimed_d,
        min_distance: r.min_distance,
        ok: r.ok(),
        sample,
    }))
}

#[wasm_bindgen]
pub fn bound_report(q: u32, v: u32, d: u32, k: u32) -> Result<String, JsValue> {
    bound_report_json(q as u64, v, d, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ratio_series(kind: &str, q: u32, k: u32, d: u32, v_min: u32, v_max: u32) -> Result<String, JsValue> {
    ratio_series_json(kind, q as u64, k, d, v_min, v_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn construct_verify(q: u32, v: u32, d: u32, k: u32) -> Result<String, JsValue> {
    construct_verify_json(q as u64, v, d, k).map_err(|e| JsValue::from_str(&e))
}
