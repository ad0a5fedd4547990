//! Browser bindings. Each export takes and returns JSON text; the plain
//! functions underneath are what the native tests call.

use rsm_core::io;
use rsm_core::solvers::{self, SolverConfig, Strategy};
use rsm_core::{stats, submod};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error_value(e: rsm_core::Error) -> Value {
    json!({"error": e.kind(), "message": e.to_string()})
}

fn to_text(r: rsm_core::Result<Value>) -> String {
    r.unwrap_or_else(error_value).to_string()
}

/// Minimizer lattices of every function in an instance file.
pub fn lattices_json(instance: &str) -> String {
    to_text((|| {
        let inst = io::parse_instance(instance)?;
        let mut out = Vec::new();
        for f in inst.functions() {
            let l = submod::to_lattice(f)?;
            out.push(io::lattice_value(inst.universe(), &l, 100_000));
        }
        Ok(json!({"lattices": out}))
    })())
}

/// Runs the automatic solver; `algo` may name a specific one.
pub fn solve_json(instance: &str, algo: &str) -> String {
    to_text((|| {
        let inst = io::parse_instance(instance)?;
        let strategy: Strategy = if algo.is_empty() { Strategy::Auto } else { algo.parse()? };
        stats::reset();
        let report = solvers::dispatch(&inst, strategy, &SolverConfig::default())?;
        Ok(io::report_value(&inst, &report.outcome, report.algorithm, report.counters, 0.0))
    })())
}

/// Distances from a comma-separated set to each function's minimizers.
pub fn distances_json(instance: &str, x: &str) -> String {
    to_text((|| {
        let inst = io::parse_instance(instance)?;
        let names: Vec<&str> = x.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let x = inst.subset_from_names(&names)?;
        let v = solvers::verify(&inst, &x)?;
        Ok(io::verification_value(&inst, &x, &v))
    })())
}

#[wasm_bindgen]
pub fn lattices(instance: &str) -> String {
    lattices_json(instance)
}

#[wasm_bindgen]
pub fn solve(instance: &str, algo: &str) -> String {
    solve_json(instance, algo)
}

#[wasm_bindgen]
pub fn distances(instance: &str, x: &str) -> String {
    distances_json(instance, x)
}
