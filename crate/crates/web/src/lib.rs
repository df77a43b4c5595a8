//! wasm-bindgen entry points for the browser demo. Each export takes plain
//! strings and numbers and returns a JSON string; failures come back as
//! `{"error": {...}}` rather than exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ueda_core::atlas::{Atlas, AtlasParams};
use ueda_core::json::Json;
use ueda_core::linearize::{radius_estimate, MajorantLedger};
use ueda_core::report;
use ueda_core::resolve::CoverConfig;
use ueda_core::series::{parse_rat, Rational, Scalar};
use ueda_core::ueda;

/// Largest orders accepted from the page.
pub const MAX_MAJORANT_ORDER: usize = 40;
pub const MAX_FIBER_ORDER: usize = 10;

fn input_error(msg: String) -> Value {
    json!({"error": {"kind": "input", "message": msg}})
}

fn parse(s: &str, what: &str) -> Result<Rational, Value> {
    parse_rat(s).ok_or_else(|| input_error(format!("{what}: cannot parse {s:?} as p or p/q")))
}

/// Majorant coefficients with their float approximations for display.
pub fn majorant_value(k: &str, r: &str, m: &str, order: usize) -> Value {
    let run = || -> Result<Value, Value> {
        if !(2..=MAX_MAJORANT_ORDER).contains(&order) {
            return Err(input_error(format!(
                "order must be in 2..={MAX_MAJORANT_ORDER}"
            )));
        }
        let (k, r, m) = (parse(k, "K")?, parse(r, "R")?, parse(m, "M")?);
        let l =
            MajorantLedger::new(k, r, m, order).map_err(|e| json!({"error": report::error(&e)}))?;
        let radius = radius_estimate(&l.a).map_err(|e| json!({"error": report::error(&e)}))?;
        Ok(json!({
            "ledger": report::ledger(&l),
            "approx": l.a.iter().map(approx).collect::<Vec<_>>(),
            "radius": radius.to_json(),
            "radius_approx": approx(&radius),
            "functional_equation": l.satisfies_functional_equation(),
        }))
    };
    run().unwrap_or_else(|e| e)
}

fn approx(q: &Rational) -> String {
    // display only; exact values travel as integer pairs
    let (n, d) = (q.numer().to_string(), q.denom().to_string());
    match (n.parse::<f64>(), d.parse::<f64>()) {
        (Ok(n), Ok(d)) => format!("{:.6e}", n / d),
        _ => "?".into(),
    }
}

/// Classifies the trivial fibration with `f_{order+1} = c·ζ` inserted.
pub fn classify_perturbed_value(order: usize, class: &str, n_w: usize, max_order: usize) -> Value {
    let run = || -> Result<Value, Value> {
        if !(2..=MAX_FIBER_ORDER).contains(&n_w) {
            return Err(input_error(format!("N_w must be in 2..={MAX_FIBER_ORDER}")));
        }
        let c: Scalar = class
            .parse()
            .map_err(|e| input_error(format!("class: {e}")))?;
        let p = AtlasParams::new(n_w);
        let lib = |e: ueda_core::Error| json!({"error": report::error(&e)});
        let a = if c == Scalar::from_int(0) {
            Atlas::trivial(&p)
        } else {
            Atlas::perturbed(&p, order, c)
        }
        .map_err(lib)?;
        let verdict = ueda::classify(&a, max_order).map_err(lib)?;
        Ok(report::classification(&verdict))
    };
    run().unwrap_or_else(|e| e)
}

/// The resolution pipeline on the default cover.
pub fn resolve_value(n_bar: i64) -> Value {
    report::resolution(&CoverConfig::default(), Some(n_bar), 0)
        .unwrap_or_else(|e| json!({"error": report::error(&e)}))
}

#[wasm_bindgen]
pub fn majorant(k: &str, r: &str, m: &str, order: usize) -> String {
    majorant_value(k, r, m, order).to_string()
}

#[wasm_bindgen]
pub fn classify_perturbed(order: usize, class: &str, n_w: usize, max_order: usize) -> String {
    classify_perturbed_value(order, class, n_w, max_order).to_string()
}

#[wasm_bindgen]
pub fn resolve(n_bar: i32) -> String {
    resolve_value(n_bar as i64).to_string()
}
