//! Browser demo. Every export returns a JSON string; failures come back as
//! `{"error": tag, "message": ...}` so the page never sees a panic.

use serde_json::{json, Value};
use su21::classify::{deltoid_verdict, eigenvalues_from_trace, Region};
use su21::modular::{modular_invariants, modular_rep, Family};
use su21::triangle::{word_classify_scan, Angles};
use su21::Cx;
use wasm_bindgen::prelude::*;

fn cx(z: Cx) -> Value {
    json!([z.re, z.im])
}

fn error(e: &su21::Error) -> Value {
    json!({"error": e.tag(), "message": e.to_string()})
}

/// Where a trace sits relative to the deltoid, with the eigenvalues it forces.
pub fn trace_report(re: f64, im: f64) -> Value {
    let z = Cx::new(re, im);
    let v = deltoid_verdict(z);
    let class = match v.region {
        Region::Outside => "Loxodromic",
        Region::Inside => "RegularElliptic",
        Region::OnBoundary => "Boundary",
    };
    json!({
        "trace": cx(z),
        "fValue": v.value,
        "region": v.region,
        "class": class,
        "eigenvalues": eigenvalues_from_trace(z).iter().map(|w| cx(*w)).collect::<Vec<_>>(),
    })
}

pub fn modular_rows(family: &str, steps: usize, tol: f64) -> Value {
    let family = match family {
        "point" => Family::Point,
        "line" => Family::Line,
        other => {
            return json!({"error": "InvalidInput", "message": format!("unknown family {other:?}")})
        }
    };
    let (lo, hi) = family.alpha_range();
    let steps = steps.clamp(2, 2000);
    let rows: Vec<Value> = (0..steps)
        .map(|k| {
            let alpha = lo + (hi - lo) * k as f64 / (steps - 1) as f64;
            match modular_rep(family, alpha).and_then(|r| modular_invariants(&r, tol)) {
                Ok(inv) => json!({
                    "alpha": alpha,
                    "trComm": cx(inv.trace_commutator),
                    "cartan": inv.cartan,
                    "commClass": inv.commutator_class.tag(),
                    "verdict": inv.discreteness_verdict.tag(),
                }),
                Err(e) => json!({"alpha": alpha, "error": e.tag()}),
            }
        })
        .collect();
    json!({"rows": rows})
}

pub fn triangle_rows(p: &str, q: &str, r: &str, steps: usize, words: &str, tol: f64) -> Value {
    let words: Vec<String> = words
        .split(',')
        .map(|w| w.trim().to_string())
        .filter(|w| !w.is_empty())
        .collect();
    let scan = Angles::parse(p, q, r)
        .and_then(|a| word_classify_scan(&a, &words, steps.clamp(2, 2000), tol));
    match scan.map(serde_json::to_value) {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => json!({"error": "Serialization", "message": e.to_string()}),
        Err(e) => error(&e),
    }
}

#[wasm_bindgen]
pub fn classify_trace(re: f64, im: f64) -> String {
    trace_report(re, im).to_string()
}

#[wasm_bindgen]
pub fn modular_scan(family: &str, steps: usize) -> String {
    modular_rows(family, steps, 1e-9).to_string()
}

#[wasm_bindgen]
pub fn triangle_scan(p: &str, q: &str, r: &str, steps: usize, words: &str) -> String {
    triangle_rows(p, q, r, steps, words, 1e-9).to_string()
}
