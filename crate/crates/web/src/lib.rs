//! Browser bindings: three operations returning JSON strings for `www/index.html`.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers turn errors into JS exceptions.

use pathdensity::bounds::{bound_report, crossing_point, sweep, uniform_grid};
use pathdensity::construct::{near_regular, quasi_clique, quasi_star};
use pathdensity::count::{count_p2, count_p4, count_walks4};
use pathdensity::stepfun::{maximize_s_restarts, OptimizerConfig};
use pathdensity::Graph;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page may ask for; keeps counting interactive.
pub const MAX_N: usize = 400;

/// The three density curves on `points` evenly spaced values of `c`, plus the crossing point.
pub fn bound_curves_json(points: usize) -> Result<Value, String> {
    if !(2..=10_000).contains(&points) {
        return Err(format!("points must be in 2..=10000, got {points}"));
    }
    let rows = sweep(&uniform_grid(points)).map_err(|e| e.to_string())?;
    let cp = crossing_point().map_err(|e| e.to_string())?;
    Ok(json!({
        "c": rows.iter().map(|r| r.c).collect::<Vec<_>>(),
        "lower": rows.iter().map(|r| r.lower).collect::<Vec<_>>(),
        "star": rows.iter().map(|r| r.upper_star).collect::<Vec<_>>(),
        "clique": rows.iter().map(|r| r.upper_clique).collect::<Vec<_>>(),
        "c0": cp.c0,
    }))
}

fn graph_summary(g: &Graph) -> Value {
    json!({
        "edges": g.edges(),
        "p2": count_p2(g).to_string(),
        "p4": count_p4(g).to_string(),
        "walks4": count_walks4(g).to_string(),
    })
}

/// Quasi-clique, quasi-star and near-regular graphs for `(n, e)` with their
/// exact counts (as decimal strings) and the asymptotic bounds.
pub fn extremal_graphs_json(n: usize, e: u64) -> Result<Value, String> {
    if n > MAX_N {
        return Err(format!("n is capped at {MAX_N} in the browser"));
    }
    let err = |e: pathdensity::Error| e.to_string();
    let report = bound_report(n, e).map_err(err)?;
    Ok(json!({
        "n": n,
        "e": e,
        "c": report.c,
        "lower": report.lower,
        "upper_star": report.upper_star,
        "upper_clique": report.upper_clique,
        "dominant": report.dominant.to_string(),
        "quasi_clique": graph_summary(&quasi_clique(n, e).map_err(err)?),
        "quasi_star": graph_summary(&quasi_star(n, e).map_err(err)?),
        "near_regular": graph_summary(&near_regular(n, e).map_err(err)?),
    }))
}

/// Best step function found by the hill climber, with the S trace of the best restart.
pub fn optimize_json(c: f64, blocks: usize, restarts: usize, seed: u64) -> Result<Value, String> {
    if !(1..=64).contains(&restarts) || blocks > 12 {
        return Err("use 1..=64 restarts and at most 12 blocks".into());
    }
    let r = maximize_s_restarts(c, blocks, restarts, seed, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
    let f = &r.best.function;
    Ok(json!({
        "s": r.best.s_value,
        "breakpoints": f.breakpoints(),
        "values": f.values(),
        "k": f.k(),
        "trace": r.best.trace.iter().map(|t| t.s_value).collect::<Vec<_>>(),
        "finals": r.finals,
    }))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound_curves(points: usize) -> Result<String, JsValue> {
    to_js(bound_curves_json(points))
}

#[wasm_bindgen]
pub fn extremal_graphs(n: usize, e: u32) -> Result<String, JsValue> {
    to_js(extremal_graphs_json(n, e as u64))
}

#[wasm_bindgen]
pub fn optimize(c: f64, blocks: usize, restarts: usize, seed: u32) -> Result<String, JsValue> {
    to_js(optimize_json(c, blocks, restarts, seed as u64))
}
