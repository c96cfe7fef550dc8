//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON document; failures come back as `{"error": "..."}`.

use dshuffle::mpl::li2_coeffs;
use dshuffle::numeric::mzv_estimate;
use dshuffle::shuffle::{double_shuffle_relation, shuffle_on_indices, stuffle};
use dshuffle::{Index, LinComb};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest weight accepted from the page, to keep the tab responsive.
const MAX_WEIGHT: u32 = 12;
const MAX_GRID: u32 = 24;
const MAX_TERMS: u32 = 2_000_000;

fn parse_index(s: &str) -> Result<Index, String> {
    let idx: Index = s.trim().parse().map_err(|e: dshuffle::Error| e.to_string())?;
    if idx.weight() > MAX_WEIGHT {
        return Err(format!("weight {} is above the demo limit {MAX_WEIGHT}", idx.weight()));
    }
    Ok(idx)
}

fn render(comb: &LinComb<Index>) -> Value {
    comb.iter()
        .map(|(idx, c)| json!({ "index": idx, "coeff": c.to_string() }))
        .collect()
}

fn products(a: &str, b: &str) -> Result<Value, String> {
    let (a, b) = (parse_index(a)?, parse_index(b)?);
    let st = stuffle(&a, &b).map_err(|e| e.to_string())?;
    let mut out = json!({ "stuffle": render(&st) });
    if a.is_admissible() && b.is_admissible() {
        let sh = shuffle_on_indices(&a, &b).map_err(|e| e.to_string())?;
        let rel = double_shuffle_relation(&a, &b).map_err(|e| e.to_string())?;
        out["shuffle"] = render(&sh);
        out["relation"] = render(&rel);
    }
    Ok(out)
}

fn partial_sum(index: &str, n: u32) -> Result<Value, String> {
    let idx = parse_index(index)?;
    if n as u64 * idx.depth() as u64 > MAX_TERMS as u64 {
        return Err(format!("N times depth is above the demo limit {MAX_TERMS}"));
    }
    let e = mzv_estimate(&idx, n).map_err(|e| e.to_string())?;
    Ok(json!({ "value": e.value, "error_bound": e.error_bound }))
}

fn grid(a: &str, b: &str, cap: u32) -> Result<Value, String> {
    let (a, b) = (parse_index(a)?, parse_index(b)?);
    if cap > MAX_GRID {
        return Err(format!("grid size is limited to {MAX_GRID}"));
    }
    let s = li2_coeffs(&a, &b, cap);
    let rows: Vec<Vec<String>> =
        (0..=cap).map(|i| (0..=cap - i).map(|j| s.coeff(i, j).to_string()).collect()).collect();
    Ok(json!({ "cap": cap, "rows": rows }))
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Stuffle and shuffle expansions of `a · b`, and their difference when
/// both indices are admissible.
#[wasm_bindgen]
pub fn product_expansion(a: &str, b: &str) -> String {
    respond(products(a, b))
}

/// Floating partial sum of a multiple zeta value with its error bound.
#[wasm_bindgen]
pub fn mzv_partial_sum(index: &str, n: u32) -> String {
    respond(partial_sum(index, n))
}

/// Coefficients of `x^i y^j` in the two-variable polylogarithm, `i + j ≤ cap`;
/// row `i` lists `j = 0..=cap-i`.
#[wasm_bindgen]
pub fn li2_grid(a: &str, b: &str, cap: u32) -> String {
    respond(grid(a, b, cap))
}
