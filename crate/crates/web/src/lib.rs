//! Browser bindings: classify a matrix, find and check a witness, and plot a
//! rank-2 fan. Every export returns a string; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use gfan_core::json::{
    certificate_to_json, exchange_matrix_from_json, report_to_json, verdict_to_json,
};
use gfan_core::svg::render_rank2;
use gfan_core::{decide_finite_type, find_witness, verify_witness, Rank2Params, WitnessOutcome};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Mutation-class budget for the page; small enough to answer quickly.
const PAGE_BUDGET: usize = 200_000;
const MAX_DEPTH: usize = 12;

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn parse_matrix(text: &str) -> Result<gfan_core::ExchangeMatrix, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    exchange_matrix_from_json(&v).map_err(|e| e.to_string())
}

/// Finite-type verdict for a matrix given as JSON rows.
#[wasm_bindgen]
pub fn classify(matrix: &str) -> String {
    let result = parse_matrix(matrix)
        .and_then(|b| decide_finite_type(&b, PAGE_BUDGET).map_err(|e| e.to_string()));
    match result {
        Ok(v) => verdict_to_json(&v).to_string(),
        Err(e) => error(e),
    }
}

/// Certificate plus a verification report at the given depth (at most 12).
#[wasm_bindgen]
pub fn witness(matrix: &str, depth: usize) -> String {
    let b = match parse_matrix(matrix) {
        Ok(b) => b,
        Err(e) => return error(e),
    };
    match find_witness(&b, PAGE_BUDGET) {
        Ok(WitnessOutcome::FiniteType { class_size }) => {
            json!({ "kind": "finite", "class_size": class_size }).to_string()
        }
        Ok(WitnessOutcome::Witness(cert)) => match verify_witness(&cert, depth.min(MAX_DEPTH)) {
            Ok(report) => json!({
                "kind": "witness",
                "certificate": certificate_to_json(&cert),
                "report": report_to_json(&report),
            })
            .to_string(),
            Err(e) => error(e),
        },
        Err(e) => error(e),
    }
}

/// SVG of the fan of `[[0, c], [-b, 0]]` with `depth` rays per side.
#[wasm_bindgen]
pub fn rank2_svg(b: i32, c: i32, depth: usize) -> String {
    match Rank2Params::new(b, c).and_then(|p| render_rank2(&p, depth.min(200))) {
        Ok(svg) => svg,
        Err(e) => error(e),
    }
}
