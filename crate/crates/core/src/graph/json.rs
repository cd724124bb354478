use serde::{Deserialize, Serialize};

use super::{Edge, FsmGraph};
use crate::error::{Error, Result};

/// Identifiers may be written as JSON strings or numbers; both become strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawId {
    Str(String),
    Num(serde_json::Number),
}

impl From<RawId> for String {
    fn from(id: RawId) -> String {
        match id {
            RawId::Str(s) => s,
            RawId::Num(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawGraph {
    vertices: Vec<RawId>,
    start: RawId,
    ends: Vec<RawId>,
    edges: Vec<RawEdge>,
}

#[derive(Debug, Deserialize)]
struct RawEdge {
    id: RawId,
    from: RawId,
    to: RawId,
    #[serde(default)]
    input: Option<String>,
    #[serde(default)]
    output: Option<String>,
}

/// Canonical serialized form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub start: String,
    pub ends: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

pub fn parse_graph_json(text: &str) -> Result<FsmGraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    graph_from_raw(raw)
}

pub fn parse_graph_value(value: serde_json::Value) -> Result<FsmGraph> {
    let raw: RawGraph = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    graph_from_raw(raw)
}

fn graph_from_raw(raw: RawGraph) -> Result<FsmGraph> {
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in raw.edges {
        let id: String = e.id.into();
        let edge = Edge::new(id.clone(), e.from, e.to);
        let edge = match (e.input, e.output) {
            (Some(i), Some(o)) => edge.with_label(i, o),
            (None, None) => edge,
            _ => {
                return Err(Error::Model(format!(
                    "edge `{id}` must carry both input and output or neither"
                )))
            }
        };
        edges.push(edge);
    }
    let vertices: Vec<String> = raw.vertices.into_iter().map(String::from).collect();
    let ends: Vec<String> = raw.ends.into_iter().map(String::from).collect();
    let start: String = raw.start.into();
    FsmGraph::new(vertices, &start, ends, edges)
}

impl From<&FsmGraph> for GraphDoc {
    fn from(g: &FsmGraph) -> Self {
        GraphDoc {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_owned()).collect(),
            start: g.vertex_name(g.start()).to_owned(),
            ends: g.ends().iter().map(|&v| g.vertex_name(v).to_owned()).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    from: e.source.clone(),
                    to: e.target.clone(),
                    input: e.label.as_ref().map(|l| l.input.clone()),
                    output: e.label.as_ref().map(|l| l.output.clone()),
                })
                .collect(),
        }
    }
}

/// Canonical JSON text (sorted vertices, ends and edges).
pub fn graph_to_json(g: &FsmGraph) -> String {
    serde_json::to_string(&GraphDoc::from(g)).expect("graph document serializes")
}
