use critgroup_web::{circulant_json, compute_json, family_report_json};
use serde_json::Value;

fn orbit_sizes(drawing: &Value) -> Vec<usize> {
    let orbit: Vec<usize> = drawing["orbit"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    let mut sizes = vec![0; orbit.iter().max().map_or(0, |m| m + 1)];
    for o in orbit {
        sizes[o] += 1;
    }
    sizes.sort();
    sizes
}

#[test]
fn concentric_drawing_has_one_orbit_of_size_n_and_one_of_size_2n() {
    let v = family_report_json(r#"{"family":"concentric","n":5}"#, 0, 0).unwrap();
    assert_eq!(orbit_sizes(&v["drawing"]), vec![5, 10]);
    assert_eq!(v["report"]["s"], 1);
    assert_eq!(v["report"]["t"], 1);
}

#[test]
fn circulant_vertices_form_one_orbit() {
    let v = circulant_json(9, "1,3").unwrap();
    assert_eq!(orbit_sizes(&v["drawing"]), vec![9]);
    assert_eq!(v["drawing"]["edges"].as_array().unwrap().len(), 18);
}

#[test]
fn family_graph_feeds_compute() {
    let v = family_report_json(r#"{"family":"circulant","n":7,"steps":[1,2]}"#, 0, 0).unwrap();
    let c = compute_json(&v["graph"].to_string()).unwrap();
    assert_eq!(c["jacobian"]["invariant_factors"], v["report"]["jacobian"]["invariant_factors"]);
    assert_eq!(c["spanning_trees"], 1183);
    assert_eq!(c["labeling"]["n"], 7);
}
