//! JSON formats: graphs with optional dihedral actions, divisors as
//! label-to-integer maps, and quotients with their projection data.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::action::{ActionError, DihedralAction, VertexPermutation};
use crate::critical::Divisor;
use crate::json::{BigNum, JsonInt};
use crate::multigraph::{GraphError, Multigraph};
use crate::quotient::QuotientResult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge label {0:?}")]
    UnknownEdge(String),
    #[error("{0}")]
    Invalid(String),
}

/// `{"vertices": [...], "edges": [[a, b], ...]}`, optionally with
/// `"edge_labels"` (one per edge), `"actions"` (vertex maps) and
/// `"edge_actions"` (edge-label maps). Omitted entries of a map are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<ActionMaps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_actions: Option<ActionMaps>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionMaps {
    pub sigma1: BTreeMap<String, String>,
    pub sigma2: BTreeMap<String, String>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files always serialize")
    }

    pub fn graph(&self) -> Result<Multigraph, IoError> {
        let index = vertex_index(&self.vertices)?;
        let look = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| IoError::UnknownVertex(s.clone()));
        match &self.edge_labels {
            None => Ok(Multigraph::from_label_pairs(self.vertices.clone(), &self.edges)?),
            Some(labels) => {
                if labels.len() != self.edges.len() {
                    return Err(GraphError::LabelCount { expected: self.edges.len(), found: labels.len() }.into());
                }
                let edges = self
                    .edges
                    .iter()
                    .zip(labels)
                    .map(|((a, b), l)| Ok((look(a)?, look(b)?, l.clone())))
                    .collect::<Result<Vec<_>, IoError>>()?;
                Ok(Multigraph::with_edge_labels(self.vertices.clone(), edges)?)
            }
        }
    }

    /// The graph and, if present, the dihedral action.
    pub fn load(&self) -> Result<(Multigraph, Option<DihedralAction>), IoError> {
        let g = self.graph()?;
        let Some(actions) = &self.actions else {
            if self.edge_actions.is_some() {
                return Err(IoError::Invalid("edge_actions given without actions".into()));
            }
            return Ok((g, None));
        };
        let edge_maps = self.edge_actions.as_ref();
        let s1 = permutation(&g, &actions.sigma1, edge_maps.map(|m| &m.sigma1))?;
        let s2 = permutation(&g, &actions.sigma2, edge_maps.map(|m| &m.sigma2))?;
        let a = DihedralAction::new(&g, s1, s2)?;
        Ok((g, Some(a)))
    }

    /// Serializes a graph, with the action if given. Edge maps are written
    /// when the graph has edge labels.
    pub fn from_graph(g: &Multigraph, action: Option<&DihedralAction>) -> Self {
        let edges = g.edges().iter().map(|e| (g.label(e.u).to_string(), g.label(e.v).to_string())).collect();
        let edge_labels = g
            .has_edge_labels()
            .then(|| g.edges().iter().map(|e| e.label.clone().expect("labelled")).collect::<Vec<_>>());
        let vertex_map = |p: &VertexPermutation| {
            (0..g.vertex_count()).map(|v| (g.label(v).to_string(), g.label(p.apply(v)).to_string())).collect()
        };
        let actions = action.map(|a| ActionMaps { sigma1: vertex_map(a.sigma1()), sigma2: vertex_map(a.sigma2()) });
        let edge_actions = match (action, &edge_labels) {
            (Some(a), Some(labels)) => {
                let edge_map = |p: &VertexPermutation| {
                    (0..g.edge_count()).map(|k| (labels[k].clone(), labels[p.apply_edge(k)].clone())).collect()
                };
                Some(ActionMaps { sigma1: edge_map(a.sigma1()), sigma2: edge_map(a.sigma2()) })
            }
            _ => None,
        };
        GraphFile { vertices: g.labels().to_vec(), edges, edge_labels, actions, edge_actions }
    }
}

fn vertex_index(labels: &[String]) -> Result<HashMap<&str, usize>, IoError> {
    let mut index = HashMap::new();
    for (k, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), k).is_some() {
            return Err(GraphError::DuplicateVertexLabel(l.clone()).into());
        }
    }
    Ok(index)
}

fn permutation(
    g: &Multigraph,
    vertex_map: &BTreeMap<String, String>,
    edge_map: Option<&BTreeMap<String, String>>,
) -> Result<VertexPermutation, IoError> {
    let look = |s: &str| g.index_of(s).ok_or_else(|| IoError::UnknownVertex(s.to_string()));
    let mut images: Vec<usize> = (0..g.vertex_count()).collect();
    for (a, b) in vertex_map {
        images[look(a)?] = look(b)?;
    }
    let Some(em) = edge_map else {
        return Ok(VertexPermutation::new(g, images)?);
    };
    let edge_index: HashMap<&str, usize> =
        g.edges().iter().enumerate().filter_map(|(k, e)| e.label.as_deref().map(|l| (l, k))).collect();
    let look_edge = |s: &str| edge_index.get(s).copied().ok_or_else(|| IoError::UnknownEdge(s.to_string()));
    let mut edge_images: Vec<usize> = (0..g.edge_count()).collect();
    for (a, b) in em {
        edge_images[look_edge(a)?] = look_edge(b)?;
    }
    Ok(VertexPermutation::with_edge_map(g, images, edge_images)?)
}

/// `{label: value}` over all vertices.
pub fn divisor_to_json(g: &Multigraph, d: &Divisor) -> Value {
    let map: Map<String, Value> = d
        .values()
        .iter()
        .enumerate()
        .map(|(v, x)| (g.label(v).to_string(), serde_json::to_value(JsonInt(x)).expect("integer")))
        .collect();
    Value::Object(map)
}

/// Inverse of [`divisor_to_json`]; missing vertices are 0.
pub fn divisor_from_json(g: &Multigraph, value: &Value) -> Result<Divisor, IoError> {
    let map: BTreeMap<String, BigNum> =
        serde_json::from_value(value.clone()).map_err(|e| IoError::Json(e.to_string()))?;
    let mut d = Divisor::zero(g.vertex_count());
    for (label, BigNum(x)) in map {
        let v = g.index_of(&label).ok_or(IoError::UnknownVertex(label))?;
        d.set(v, x);
    }
    Ok(d)
}

/// Quotient in the graph format plus `vertex_map` and `multiplicity`, both
/// keyed by source vertex label.
pub fn quotient_to_json(source: &Multigraph, q: &QuotientResult) -> Value {
    let mut v = serde_json::to_value(GraphFile::from_graph(q.quotient(), None)).expect("graph file");
    let obj = v.as_object_mut().expect("object");
    let vm: Map<String, Value> = (0..source.vertex_count())
        .map(|s| (source.label(s).to_string(), Value::String(q.quotient().label(q.vertex_map()[s]).to_string())))
        .collect();
    let mult: Map<String, Value> =
        (0..source.vertex_count()).map(|s| (source.label(s).to_string(), Value::from(q.multiplicity()[s]))).collect();
    obj.insert("vertex_map".into(), Value::Object(vm));
    obj.insert("multiplicity".into(), Value::Object(mult));
    v
}

/// Divisor values in vertex order, for compact output.
pub fn divisor_values(d: &Divisor) -> Vec<BigInt> {
    d.values().to_vec()
}
