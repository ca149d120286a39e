//! Browser bindings. Each export takes a permutation in one-line notation and
//! returns a JSON string; errors come back as a thrown string.

use msvkit::ci::{is_complete_intersection, minimal_generator_count, ORACLE_MAX_N};
use msvkit::detideal::{fulton_generators, GeneratorCells};
use msvkit::poly::Rational;
use msvkit::{Cell, Permutation};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page accepts; the diagram view stays readable up to here.
pub const MAX_N: usize = 12;

fn parse(w: &str) -> Result<Permutation, String> {
    let w: Permutation = w.trim().parse().map_err(|e: msvkit::Error| e.to_string())?;
    if w.size() > MAX_N {
        return Err(format!("the demo supports n <= {MAX_N}, got n = {}", w.size()));
    }
    Ok(w)
}

/// Rows of the permutation matrix: `1` for entries, `*` for positive-rank
/// diagram cells, `.` for rank-zero cells, a space elsewhere. Essential cells
/// are listed with their ranks.
pub fn diagram_json(w: &str) -> Result<Value, String> {
    let w = parse(w)?;
    let n = w.size();
    let d = w.diagram();
    let rows: Vec<String> = (1..=n)
        .map(|p| {
            (1..=n)
                .map(|q| match (w.at(p) == q, d.rank(Cell::new(p, q))) {
                    (true, _) => '1',
                    (false, Some(0)) => '.',
                    (false, Some(_)) => '*',
                    (false, None) => ' ',
                })
                .collect()
        })
        .collect();
    let essential: Vec<Value> = w
        .essential_set()
        .into_iter()
        .map(|(c, r)| json!({ "cell": [c.p, c.q], "rank": r }))
        .collect();
    Ok(json!({
        "w": w.to_string(),
        "n": n,
        "length": w.coxeter_length(),
        "rows": rows,
        "essential": essential,
    }))
}

/// The CI report, with the Nakayama count attached when `n` is small enough.
pub fn classify_json(w: &str) -> Result<Value, String> {
    let w = parse(w)?;
    let mut report = is_complete_intersection(&w);
    if w.size() <= ORACLE_MAX_N {
        let mu = minimal_generator_count::<Rational>(&w, &()).map_err(|e| e.to_string())?;
        report = report.with_mu(mu);
    }
    serde_json::to_value(&report).map_err(|e| e.to_string())
}

/// The distinct Fulton generators after pruning, as label and polynomial.
pub fn generators_json(w: &str) -> Result<Value, String> {
    let w = parse(w)?;
    let ideal = fulton_generators::<Rational>(w.as_partial(), &(), GeneratorCells::Essential);
    let gens: Vec<Value> = ideal
        .pruned()
        .iter()
        .map(|g| json!({ "label": g.label(), "poly": g.poly.render() }))
        .collect();
    Ok(json!({ "w": w.to_string(), "generators": gens }))
}

fn export(result: Result<Value, String>) -> Result<String, JsValue> {
    result.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn diagram(w: &str) -> Result<String, JsValue> {
    export(diagram_json(w))
}

#[wasm_bindgen]
pub fn classify(w: &str) -> Result<String, JsValue> {
    export(classify_json(w))
}

#[wasm_bindgen]
pub fn generators(w: &str) -> Result<String, JsValue> {
    export(generators_json(w))
}
