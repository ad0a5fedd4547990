use rsm_demo::{distances_json, lattices_json, solve_json};
use serde_json::Value;

const SAMPLE: &str = r#"{
  "universe": ["a", "b", "c", "d"],
  "d": 1,
  "functions": [
    {"kind": "cut", "edges": [["s", "a", 2], ["a", "b", 1], ["b", "t", 1], ["s", "c", "inf"], ["d", "t", 1]]},
    {"kind": "explicit", "minimizers": [["a", "b"], ["a", "b", "c"]]},
    {"kind": "lattice", "U0": ["c"], "Uinf": ["d"], "blocks": [["a"], ["b"]], "dag_edges": [[1, 0], [2, 1]]}
  ]
}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn page_sample_matches_the_page() {
    let page = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/www/index.html")).unwrap();
    let start = page.find("spellcheck=\"false\">").unwrap() + "spellcheck=\"false\">".len();
    let end = page[start..].find("</textarea>").unwrap() + start;
    assert_eq!(&page[start..end], SAMPLE);
}

#[test]
fn lattices_of_sample() {
    let v = parse(lattices_json(SAMPLE));
    let ls = v["lattices"].as_array().unwrap();
    assert_eq!(ls.len(), 3);
    // The cut's minimum 1 is reached by {a, c} and {a, b, c}.
    assert_eq!(ls[0]["U0"], serde_json::json!(["a", "c"]));
    assert_eq!(ls[0]["blocks"], serde_json::json!([["b"]]));
    assert_eq!(ls[0]["Uinf"], serde_json::json!(["d"]));
    assert_eq!(ls[1]["members"], 2);
    assert_eq!(ls[2]["members"], 3);
}

#[test]
fn solve_and_distances() {
    let v = parse(solve_json(SAMPLE, "auto"));
    assert_eq!(v["feasible"], true);
    let x: Vec<&str> = v["X"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    let d = parse(distances_json(SAMPLE, &x.join(",")));
    assert_eq!(d["ok"], true);
    let brute = parse(solve_json(SAMPLE, "brute"));
    assert_eq!(brute["feasible"], true);
}

#[test]
fn errors_are_reported_as_json() {
    let v = parse(solve_json("{", ""));
    assert_eq!(v["error"], "invalid_instance");
    let v = parse(distances_json(SAMPLE, "zz"));
    assert!(v["error"].is_string());
    let v = parse(solve_json(SAMPLE, "nope"));
    assert_eq!(v["error"], "precondition");
}
