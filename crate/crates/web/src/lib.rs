//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each export returns JSON text. The plain functions beside them do the
//! work and are what the native tests call.

use knotq::curves::{parse_open_gauss, realize, verify_lemma_bounds};
use knotq::diagrams::{parse_pd, q_at_minus_one, q_polynomial_with_budget};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Browsers get a smaller budget than the CLI so a bad paste cannot hang the tab.
pub const WEB_NODE_BUDGET: u64 = 2_000_000;
/// Largest crossing count the page will enumerate.
pub const WEB_CURVE_CAP: usize = 5;

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct QSummary {
    pub q: String,
    pub maxdeg: i64,
    pub m: u32,
    /// `(exponent, coefficient)` pairs, highest exponent first.
    pub terms: Vec<(i64, String)>,
    pub crossings: usize,
    pub components: usize,
    pub bridge_length: usize,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct CurveSummary {
    pub crossings: usize,
    pub regions: usize,
    pub distance: usize,
}

pub fn q_summary(pd: &str) -> Result<QSummary, String> {
    let d = parse_pd(pd).map_err(|e| e.to_string())?;
    let poly = q_polynomial_with_budget(&d, WEB_NODE_BUDGET)
        .map_err(|e| e.to_string())?
        .poly;
    let m = q_at_minus_one(&poly).map_err(|e| e.to_string())?.exponent;
    Ok(QSummary {
        q: poly.to_string(),
        maxdeg: poly.max_degree().expect("Q is never zero"),
        m,
        terms: poly
            .terms()
            .rev()
            .map(|(e, c)| (e, c.to_string()))
            .collect(),
        crossings: d.crossing_count(),
        components: d.component_count(),
        bridge_length: d.bridge_length(),
    })
}

pub fn curve_summary(word: &str) -> Result<CurveSummary, String> {
    let code = parse_open_gauss(word).map_err(|e| e.to_string())?;
    let map = realize(&code).map_err(|e| e.to_string())?;
    Ok(CurveSummary {
        crossings: map.crossing_count(),
        regions: map.regions().len(),
        distance: map.distance(),
    })
}

pub fn lemma_text(n: usize) -> Result<String, String> {
    verify_lemma_bounds(n, WEB_CURVE_CAP)
        .map(|r| r.to_text())
        .map_err(|e| e.to_string())
}

fn js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("serializable"))
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = qPolynomial)]
pub fn q_polynomial_js(pd: &str) -> Result<String, JsError> {
    js(q_summary(pd))
}

#[wasm_bindgen(js_name = curveDistance)]
pub fn curve_distance_js(word: &str) -> Result<String, JsError> {
    js(curve_summary(word))
}

#[wasm_bindgen(js_name = lemmaTable)]
pub fn lemma_table_js(n: usize) -> Result<String, JsError> {
    lemma_text(n).map_err(|e| JsError::new(&e))
}
