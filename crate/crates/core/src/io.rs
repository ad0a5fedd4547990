//! JSON instance files and result reports.
//!
//! Loading sorts the universe by name, so `load(save(load(text)))` equals
//! `load(text)` and saving is byte-stable.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::DiGraph;
use crate::lattice::{self, CompactLattice};
use crate::solvers::{Instance, Outcome, Verification, Witness};
use crate::stats::Counters;
use crate::submod::{CutFunction, ExplicitFamily, FunctionSpec};
use crate::subset::Subset;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    universe: Vec<String>,
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    per_function_d: Option<Vec<usize>>,
    functions: Vec<RawFunction>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawFunction {
    Cut {
        edges: Vec<(String, String, RawCost)>,
    },
    Explicit {
        minimizers: Vec<Vec<String>>,
    },
    Lattice {
        #[serde(rename = "U0")]
        u0: Vec<String>,
        #[serde(rename = "Uinf")]
        u_inf: Vec<String>,
        blocks: Vec<Vec<String>>,
        dag_edges: Vec<(usize, usize)>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawCost {
    Number(serde_json::Number),
    Text(String),
}

impl RawCost {
    fn parse(&self) -> Result<Cost> {
        let text = match self {
            RawCost::Number(n) => n.to_string(),
            RawCost::Text(s) => s.clone(),
        };
        Cost::from_str(&text).map_err(|e| Error::InvalidInstance(e.to_string()))
    }

    fn from_cost(c: Cost) -> RawCost {
        match c {
            Cost::Finite(r) if r.is_integer() => match i64::try_from(*r.numer()) {
                Ok(v) => RawCost::Number(v.into()),
                Err(_) => RawCost::Text(c.to_string()),
            },
            _ => RawCost::Text(c.to_string()),
        }
    }
}

fn malformed(e: serde_json::Error) -> Error {
    Error::InvalidInstance(format!("malformed instance file: {e}"))
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(malformed)?;
    let mut universe = raw.universe.clone();
    universe.sort();
    let n = universe.len();
    let index: HashMap<&str, usize> = universe.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != n {
        return Err(Error::InvalidInstance("duplicate element in universe".into()));
    }
    let element = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidInstance(format!("unknown element {name:?}")))
    };
    let set = |names: &[String]| -> Result<Subset> {
        let mut out = Subset::empty(n);
        for name in names {
            out.insert(element(name)?);
        }
        Ok(out)
    };
    let vertex = |name: &str| match name {
        "s" => Ok(n),
        "t" => Ok(n + 1),
        _ => element(name),
    };
    let mut functions = Vec::with_capacity(raw.functions.len());
    for f in &raw.functions {
        functions.push(match f {
            RawFunction::Cut { edges } => {
                let mut parsed = edges
                    .iter()
                    .map(|(tail, head, cost)| Ok((tail.as_str(), head.as_str(), cost.parse()?)))
                    .collect::<Result<Vec<_>>>()?;
                parsed.sort();
                let mut g = DiGraph::new(n + 2);
                for (tail, head, cost) in parsed {
                    g.add_edge(vertex(tail)?, vertex(head)?, cost)?;
                }
                FunctionSpec::Cut(CutFunction::new(n, g)?)
            }
            RawFunction::Explicit { minimizers } => {
                let sets = minimizers.iter().map(|m| set(m)).collect::<Result<Vec<_>>>()?;
                FunctionSpec::Explicit(ExplicitFamily::new(n, sets)?)
            }
            RawFunction::Lattice {
                u0,
                u_inf,
                blocks,
                dag_edges,
            } => {
                let blocks = blocks.iter().map(|b| set(b)).collect::<Result<Vec<_>>>()?;
                FunctionSpec::Lattice(CompactLattice::new(n, set(u0)?, blocks, set(u_inf)?, dag_edges.clone())?)
            }
        });
    }
    Instance::new(universe, functions, raw.d, raw.per_function_d)
}

fn sorted_names(names: &[String], x: &Subset) -> Vec<String> {
    let mut out: Vec<String> = x.iter().map(|i| names[i].clone()).collect();
    out.sort();
    out
}

fn raw_lattice(names: &[String], l: &CompactLattice) -> RawFunction {
    let mut order: Vec<usize> = (0..l.blocks().len()).collect();
    order.sort_by_key(|&b| sorted_names(names, &l.blocks()[b]));
    let mut position = vec![0; order.len() + 1];
    for (new, &old) in order.iter().enumerate() {
        position[old + 1] = new + 1;
    }
    let mut dag_edges: Vec<(usize, usize)> = l.dag().iter().map(|&(a, b)| (position[a], position[b])).collect();
    dag_edges.sort_unstable();
    RawFunction::Lattice {
        u0: sorted_names(names, l.u0()),
        u_inf: sorted_names(names, l.u_inf()),
        blocks: order.iter().map(|&b| sorted_names(names, &l.blocks()[b])).collect(),
        dag_edges,
    }
}

fn raw_function(names: &[String], f: &FunctionSpec) -> RawFunction {
    match f {
        FunctionSpec::Cut(c) => {
            let n = names.len();
            let vertex = |v: usize| match v {
                _ if v == n => "s".to_string(),
                _ if v == n + 1 => "t".to_string(),
                _ => names[v].clone(),
            };
            let mut edges: Vec<(String, String, Cost)> =
                c.graph().edges().iter().map(|e| (vertex(e.tail), vertex(e.head), e.cost)).collect();
            edges.sort();
            RawFunction::Cut {
                edges: edges.into_iter().map(|(a, b, c)| (a, b, RawCost::from_cost(c))).collect(),
            }
        }
        FunctionSpec::Explicit(e) => {
            let mut minimizers: Vec<Vec<String>> = e.sets().iter().map(|s| sorted_names(names, s)).collect();
            minimizers.sort();
            RawFunction::Explicit { minimizers }
        }
        FunctionSpec::Lattice(l) => raw_lattice(names, l),
    }
}

/// Canonical JSON value of an instance: sorted keys, names and sets.
pub fn instance_value(inst: &Instance) -> Value {
    let names = inst.universe();
    let mut universe = names.to_vec();
    universe.sort();
    let raw = RawInstance {
        universe,
        d: inst.d(),
        per_function_d: inst.per_function_d().map(<[usize]>::to_vec),
        functions: inst.functions().iter().map(|f| raw_function(names, f)).collect(),
    };
    // Round-tripping through `Value` sorts object keys.
    serde_json::to_value(raw).expect("serializable")
}

pub fn instance_to_string(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_value(inst)).expect("serializable");
    s.push('\n');
    s
}

fn witnesses_value(inst: &Instance, ws: &[Witness]) -> Value {
    ws.iter()
        .map(|w| json!({"Y": inst.names_of(&w.y), "distance": w.distance}))
        .collect()
}

/// Solver result with work counters; `wall_time_ms` is measured by the caller.
pub fn report_value(inst: &Instance, outcome: &Outcome, algorithm: &str, counters: Counters, wall_time_ms: f64) -> Value {
    let (x, witnesses) = match outcome.solution() {
        Some(s) => (json!(inst.names_of(&s.x)), witnesses_value(inst, &s.witnesses)),
        None => (Value::Null, json!([])),
    };
    json!({
        "feasible": outcome.is_feasible(),
        "X": x,
        "witnesses": witnesses,
        "algorithm": algorithm,
        "stats": {
            "branch_nodes": counters.branch_nodes,
            "flow_calls": counters.flow_calls,
            "wall_time_ms": wall_time_ms,
        },
    })
}

pub fn verification_value(inst: &Instance, x: &Subset, v: &Verification) -> Value {
    json!({
        "ok": v.ok,
        "X": inst.names_of(x),
        "thresholds": inst.thresholds(),
        "witnesses": witnesses_value(inst, &v.witnesses),
    })
}

/// Blocks, DAG and member count of a lattice, counting up to `cap`.
pub fn lattice_value(names: &[String], l: &CompactLattice, cap: usize) -> Value {
    let count = lattice::count_members(l, cap.saturating_add(1));
    let members = if count > cap { json!(format!("more than {cap}")) } else { json!(count) };
    let mut v = serde_json::to_value(raw_lattice(names, l)).expect("serializable");
    v["members"] = members;
    v.as_object_mut().expect("object").remove("kind");
    v
}

/// Plain-text rendering of [`lattice_value`].
pub fn lattice_text(names: &[String], l: &CompactLattice, cap: usize) -> String {
    let v = lattice_value(names, l, cap);
    let set = |x: &Value| {
        let items: Vec<&str> = x.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        format!("{{{}}}", items.join(", "))
    };
    let mut out = format!("U0   = {}\n", set(&v["U0"]));
    for (i, b) in v["blocks"].as_array().into_iter().flatten().enumerate() {
        out.push_str(&format!("U{:<3} = {}\n", i + 1, set(b)));
    }
    out.push_str(&format!("Uinf = {}\n", set(&v["Uinf"])));
    let edges: Vec<String> = v["dag_edges"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| format!("{}->{}", e[0], e[1]))
        .collect();
    out.push_str(&format!("dag  = [{}]\n", edges.join(", ")));
    out.push_str(&format!("members = {}\n", v["members"].to_string().trim_matches('"')));
    out
}

/// Names in `{"X": [...]}`, as written next to generated instances.
pub fn certificate_value(inst: &Instance, x: &Subset) -> Value {
    json!({ "X": inst.names_of(x) })
}

pub fn parse_certificate(inst: &Instance, text: &str) -> Result<Subset> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Cert {
        #[serde(rename = "X")]
        x: Vec<String>,
    }
    let cert: Cert = serde_json::from_str(text).map_err(malformed)?;
    inst.subset_from_names(&cert.x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_canonical() {
        let text = r#"{"universe": ["b", "a", "c"], "d": 1, "functions": [
            {"kind": "cut", "edges": [["s", "b", 2], ["b", "t", "inf"], ["a", "c", 0.5], ["s", "a", "3/2"]]},
            {"kind": "explicit", "minimizers": [["c", "a"], ["a"]]},
            {"kind": "lattice", "U0": ["c"], "Uinf": [], "blocks": [["b"], ["a"]], "dag_edges": [[1, 0], [2, 1]]}
        ]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.universe(), ["a", "b", "c"]);
        let saved = instance_to_string(&inst);
        let again = parse_instance(&saved).unwrap();
        assert_eq!(again, inst);
        assert_eq!(instance_to_string(&again), saved);
        assert!(saved.contains("\"1/2\""));
        assert!(saved.contains("\"inf\""));
        // Block {a} comes first, so the chain a -> b -> U0 is renumbered.
        let v: Value = serde_json::from_str(&saved).unwrap();
        assert_eq!(v["functions"][2]["dag_edges"], json!([[1, 2], [2, 0]]));
        assert_eq!(v["functions"][2]["blocks"], json!([["a"], ["b"]]));
    }

    #[test]
    fn rejects_bad_files() {
        let closure = r#"{"universe": ["a", "b"], "d": 0, "functions": [{"kind": "explicit", "minimizers": [["a"], ["b"]]}]}"#;
        assert_eq!(parse_instance(closure).unwrap_err(), Error::LatticeClosureViolated);
        let unknown = r#"{"universe": ["a"], "d": 0, "functions": [{"kind": "explicit", "minimizers": [["z"]]}]}"#;
        assert!(parse_instance(unknown).is_err());
        assert!(parse_instance("{").is_err());
        let negative = r#"{"universe": ["a"], "d": 0, "functions": [{"kind": "cut", "edges": [["s", "a", -1]]}]}"#;
        assert!(parse_instance(negative).is_err());
    }
}
