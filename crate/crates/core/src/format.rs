//! JSON (`plumbing-graph/v1`) and Graphviz DOT encodings of plumbing graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, PlumbingGraph, Vertex, VertexId};

pub const GRAPH_FORMAT: &str = "plumbing-graph/v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported graph format tag {0:?}, expected \"{GRAPH_FORMAT}\"")]
    FormatTag(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    format: String,
    vertices: Vec<Vertex>,
    edges: Vec<[VertexId; 2]>,
}

fn document(graph: &PlumbingGraph) -> GraphDocument {
    GraphDocument {
        format: GRAPH_FORMAT.to_string(),
        vertices: graph.vertices().to_vec(),
        edges: graph.edges().iter().map(|&(a, b)| [a, b]).collect(),
    }
}

pub fn graph_to_json_value(graph: &PlumbingGraph) -> serde_json::Value {
    serde_json::to_value(document(graph)).expect("graph documents always serialize")
}

/// Compact JSON with fields in document order.
pub fn graph_to_json(graph: &PlumbingGraph) -> String {
    serde_json::to_string(&document(graph)).expect("graph documents always serialize")
}

pub fn graph_from_json(text: &str) -> Result<PlumbingGraph, FormatError> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    if doc.format != GRAPH_FORMAT {
        return Err(FormatError::FormatTag(doc.format));
    }
    Ok(PlumbingGraph::new(doc.vertices, doc.edges.into_iter().map(|[a, b]| (a, b)))?)
}

/// Undirected DOT graph; arrows become directed edges into point nodes.
pub fn graph_to_dot(graph: &PlumbingGraph) -> String {
    let mut out = String::from("graph plumbing {\n");
    for v in graph.vertices() {
        let _ = writeln!(out, "  v{} [label=\"{} / e={} g={}\"];", v.id, v.id, v.euler, v.genus);
    }
    for &(a, b) in graph.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    for v in graph.vertices() {
        for i in 0..v.arrows {
            let _ = writeln!(out, "  a{}_{} [shape=point, label=\"\"];", v.id, i);
            let _ = writeln!(out, "  v{} -- a{}_{} [dir=forward];", v.id, v.id, i);
        }
    }
    out.push_str("}\n");
    out
}
