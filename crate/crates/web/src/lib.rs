//! Browser demo: three operations exposed through wasm-bindgen, each taking
//! and returning JSON strings. The `*_json` functions hold the logic and are
//! what the native tests exercise.

use critgroup::action::classify_dihedral_orbits;
use critgroup::critical::critical_group;
use critgroup::decomposition::{sweep, DecompositionContext, PullbackSum};
use critgroup::families::{circulant, Family, FamilySpec};
use critgroup::io::GraphFile;
use critgroup::json::{value, values};
use critgroup::{FinAbGroup, Multigraph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Sweep size used by the report panel; small enough to stay interactive.
pub const DEMO_TRIALS: usize = 60;

fn group_json(g: &FinAbGroup) -> Value {
    json!({ "invariant_factors": values(g.factors()), "order": value(&g.order()), "text": g.to_string() })
}

/// Vertices on a circle of radius 1, starting at the top.
fn circle_layout(g: &Multigraph) -> Vec<Value> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let t = std::f64::consts::TAU * v as f64 / n as f64;
            json!({ "label": g.label(v), "x": t.sin(), "y": -t.cos() })
        })
        .collect()
}

fn drawing(f: &Family) -> Value {
    let g = &f.graph;
    let orbits = f.action.group().orbits();
    let mut orbit_of = vec![0; g.vertex_count()];
    for (k, o) in orbits.iter().enumerate() {
        for &v in o {
            orbit_of[v] = k;
        }
    }
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.u, e.v])).collect();
    json!({ "vertices": circle_layout(g), "edges": edges, "orbit": orbit_of })
}

/// Circulant `C_n^{steps}` with its drawing, critical group, and the
/// decomposition summary when the orbit hypothesis holds.
pub fn circulant_json(n: usize, steps: &str) -> Result<Value, String> {
    let steps: Vec<usize> = steps
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| format!("bad step {s:?}")))
        .collect::<Result<_, _>>()?;
    let f = circulant(n, &steps).map_err(|e| e.to_string())?;
    let mut out = json!({ "name": f.name, "drawing": drawing(&f), "connected": f.graph.is_connected() });
    if !f.graph.is_connected() {
        return Ok(out);
    }
    let cg = critical_group(&f.graph).map_err(|e| e.to_string())?;
    out["jacobian"] = group_json(cg.group());
    out["decomposition"] = match DecompositionContext::new(&f.graph, &f.action) {
        Ok(ctx) => summary(&ctx)?,
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(out)
}

fn summary(ctx: &DecompositionContext) -> Result<Value, String> {
    let r = ctx.report().map_err(|e| e.to_string())?;
    let quotients: Vec<Value> = r
        .quotients
        .iter()
        .map(|q| json!({ "part": q.part.name(), "vertices": q.vertices, "edges": q.edges, "jacobian": group_json(&q.jacobian) }))
        .collect();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "status": c.status.to_string(), "line": c.to_string() }))
        .collect();
    Ok(json!({
        "n": r.n, "s": r.s, "t": r.t,
        "quotients": quotients,
        "subgroup": group_json(&r.subgroup),
        "checks": checks,
        "pass": r.pass,
    }))
}

/// Full report for a family given as `{"family": "concentric", "n": 4}` etc.
/// When the orbit hypothesis fails, returns the error with the order
/// certificate instead.
pub fn family_report_json(spec: &str, trials: usize, seed: u64) -> Result<Value, String> {
    let spec: FamilySpec = serde_json::from_str(spec).map_err(|e| e.to_string())?;
    let f = spec.build().map_err(|e| e.to_string())?;
    let file = serde_json::to_value(GraphFile::from_graph(&f.graph, Some(&f.action))).expect("graph file");
    match DecompositionContext::new(&f.graph, &f.action) {
        Ok(ctx) => {
            let mut report = ctx.report().map_err(|e| e.to_string())?;
            if trials > 0 {
                report.attach_sweep(sweep(&ctx, trials, seed).map_err(|e| e.to_string())?);
            }
            Ok(json!({ "name": f.name, "drawing": drawing(&f), "graph": file, "report": report }))
        }
        Err(e) => {
            let cert = PullbackSum::new(&f.graph, f.action.sigma1(), f.action.sigma2())
                .ok()
                .map(|s| s.direct_sum_certificate());
            Ok(
                json!({ "name": f.name, "drawing": drawing(&f), "graph": file, "error": e.to_string(), "certificate": cert }),
            )
        }
    }
}

/// Critical group of a graph file; if it carries actions, also whether the
/// orbit labeling exists.
pub fn compute_json(graph: &str) -> Result<Value, String> {
    let file = GraphFile::parse(graph).map_err(|e| e.to_string())?;
    let (g, action) = file.load().map_err(|e| e.to_string())?;
    let cg = critical_group(&g).map_err(|e| e.to_string())?;
    let trees = g.spanning_tree_count().map_err(|e| e.to_string())?;
    let mut out = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "jacobian": group_json(cg.group()),
        "spanning_trees": value(&trees),
    });
    if let Some(a) = action {
        out["labeling"] = match classify_dihedral_orbits(&g, &a) {
            Ok(l) => json!({ "n": l.n(), "s": l.s(), "t": l.t(), "swapped": l.swapped() }),
            Err(e) => json!({ "error": e.to_string() }),
        };
    }
    Ok(out)
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn circulant_view(n: usize, steps: &str) -> Result<String, JsValue> {
    to_js(circulant_json(n, steps))
}

#[wasm_bindgen]
pub fn family_report(spec: &str, seed: u32) -> Result<String, JsValue> {
    to_js(family_report_json(spec, DEMO_TRIALS, u64::from(seed)))
}

#[wasm_bindgen]
pub fn compute(graph: &str) -> Result<String, JsValue> {
    to_js(compute_json(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(v: &Value) -> Vec<i64> {
        v["invariant_factors"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
    }

    #[test]
    fn circulant_view_c7() {
        let v = circulant_json(7, "1,2").unwrap();
        assert_eq!(v["drawing"]["vertices"].as_array().unwrap().len(), 7);
        assert_eq!(v["drawing"]["edges"].as_array().unwrap().len(), 14);
        assert_eq!(factors(&v["jacobian"]), vec![13, 91]);
        assert_eq!(v["decomposition"]["pass"], true);
        assert_eq!(factors(&v["decomposition"]["quotients"][0]["jacobian"]), vec![13]);
    }

    #[test]
    fn circulant_view_errors() {
        assert!(circulant_json(7, "1,x").is_err());
        assert!(circulant_json(4, "2").is_err());
        let v = circulant_json(6, "2").unwrap();
        assert_eq!(v["connected"], false);
        assert!(v.get("jacobian").is_none());
    }

    #[test]
    fn layout_is_on_the_unit_circle() {
        let v = circulant_json(5, "1").unwrap();
        for p in v["drawing"]["vertices"].as_array().unwrap() {
            let (x, y) = (p["x"].as_f64().unwrap(), p["y"].as_f64().unwrap());
            assert!((x * x + y * y - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn family_report_g4_and_intro() {
        let v = family_report_json(r#"{"family":"concentric","n":4}"#, 20, 3).unwrap();
        assert_eq!(v["report"]["pass"], true);
        assert_eq!(factors(&v["report"]["jacobian"]), vec![10, 10, 240]);
        assert_eq!(v["report"]["sweep"]["seed"], 3);
        let v = family_report_json(r#"{"family":"intro"}"#, 0, 0).unwrap();
        assert!(v["error"].as_str().unwrap().starts_with("ORBIT_SIZE"));
        assert_eq!(v["certificate"]["direct_sum_order"], 576);
        assert_eq!(v["certificate"]["jacobian_order"], 192);
        assert!(family_report_json(r#"{"family":"nope"}"#, 0, 0).is_err());
    }

    #[test]
    fn compute_graph_file() {
        let f = family_report_json(r#"{"family":"klein"}"#, 0, 0).unwrap();
        let v = compute_json(&f["graph"].to_string()).unwrap();
        assert_eq!(factors(&v["jacobian"]), vec![2, 2, 8]);
        assert_eq!(v["spanning_trees"], 32);
        assert!(v["labeling"]["error"].as_str().unwrap().starts_with("LABELING_IMPOSSIBLE"));
        let v = compute_json(r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]]}"#).unwrap();
        assert_eq!(factors(&v["jacobian"]), vec![2]);
        assert!(v.get("labeling").is_none());
        assert!(compute_json("[]").is_err());
    }
}
