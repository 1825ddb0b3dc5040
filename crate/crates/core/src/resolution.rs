//! Blow-ups and blow-downs of plumbing graphs, and the resolution obtained
//! by blowing up the middle edge of every even string.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bnp::{decompose, string_decomposition, BnpError};
use crate::cycles::{anti_degrees, fundamental_cycle, CycleError};
use crate::graph::{shape_classify, GraphError, PlumbingGraph, Shape, Vertex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("no such blow-up site: {0}")]
    NoSuchSite(String),
    #[error("vertex {0} cannot be blown down: {1}")]
    NotBlowDownable(VertexId, &'static str),
    #[error("cannot blow down the last remaining vertex {0}")]
    LastVertex(VertexId),
    #[error("graph is neither a Hirzebruch-Jung chain nor a cusp cycle")]
    NotTautClass,
    #[error("graph is not minimal: vertex {0} can be blown down")]
    NotMinimal(VertexId),
    #[error("string from {0} to {1} has an even number of interior vertices")]
    MalformedString(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Bnp(BnpError),
}

impl From<BnpError> for ResolutionError {
    fn from(e: BnpError) -> Self {
        match e {
            BnpError::NotTautClass => ResolutionError::NotTautClass,
            BnpError::Cycle(c) => ResolutionError::Cycle(c),
            other => ResolutionError::Bnp(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowUpSite {
    /// The intersection point of the curves `a` and `b`.
    EdgePoint(VertexId, VertexId),
    /// A general point of the curve `a`.
    FreePoint(VertexId),
}

pub fn blow_up(graph: &PlumbingGraph, site: BlowUpSite) -> Result<PlumbingGraph, ResolutionError> {
    let new_id = graph.max_id() + 1;
    let (mut vertices, mut edges) = graph.clone().into_parts();
    let lower = |id: VertexId, vertices: &mut Vec<Vertex>| {
        let v = vertices.iter_mut().find(|v| v.id == id).unwrap();
        v.euler -= 1;
    };
    match site {
        BlowUpSite::EdgePoint(a, b) => {
            let key = (a.min(b), a.max(b));
            let pos = edges
                .iter()
                .position(|&e| e == key)
                .ok_or_else(|| ResolutionError::NoSuchSite(format!("edge {{{a},{b}}}")))?;
            edges.remove(pos);
            edges.extend([(a, new_id), (new_id, b)]);
            lower(a, &mut vertices);
            lower(b, &mut vertices);
        }
        BlowUpSite::FreePoint(a) => {
            if !graph.contains(a) {
                return Err(ResolutionError::NoSuchSite(format!("vertex {a}")));
            }
            edges.push((a, new_id));
            lower(a, &mut vertices);
        }
    }
    vertices.push(Vertex::rational(new_id, -1));
    Ok(PlumbingGraph::new(vertices, edges)?)
}

fn blow_down_check(graph: &PlumbingGraph, id: VertexId) -> Result<usize, ResolutionError> {
    let v = graph
        .vertex(id)
        .ok_or_else(|| ResolutionError::NoSuchSite(format!("vertex {id}")))?;
    if v.genus != 0 {
        return Err(ResolutionError::NotBlowDownable(id, "positive genus"));
    }
    if v.euler != -1 {
        return Err(ResolutionError::NotBlowDownable(id, "self-intersection is not -1"));
    }
    if v.arrows != 0 {
        return Err(ResolutionError::NotBlowDownable(id, "vertex carries arrows"));
    }
    let valency = graph.valency(id);
    if valency > 2 {
        return Err(ResolutionError::NotBlowDownable(id, "valency above 2"));
    }
    Ok(valency)
}

pub fn blow_down(graph: &PlumbingGraph, id: VertexId) -> Result<PlumbingGraph, ResolutionError> {
    let valency = blow_down_check(graph, id)?;
    if valency == 0 {
        return Err(ResolutionError::LastVertex(id));
    }
    let neighbors = graph.neighbors(id);
    let (mut vertices, mut edges) = graph.clone().into_parts();
    vertices.retain(|v| v.id != id);
    edges.retain(|&(a, b)| a != id && b != id);
    for &n in &neighbors {
        vertices.iter_mut().find(|v| v.id == n).unwrap().euler += 1;
    }
    if let [a, b] = neighbors[..] {
        edges.push((a, b));
    }
    Ok(PlumbingGraph::new(vertices, edges)?)
}

/// First vertex satisfying the blow-down conditions, ignoring whether the
/// blow-down would leave an empty graph.
pub fn blow_down_candidate(graph: &PlumbingGraph) -> Option<VertexId> {
    graph.ids().find(|&id| blow_down_check(graph, id).is_ok())
}

pub fn is_minimal(graph: &PlumbingGraph) -> bool {
    blow_down_candidate(graph).is_none()
}

/// Blows up the middle edge of every string with an even number of
/// interior vertices, so that every string acquires a central vertex.
pub fn pi_tilde(graph: &PlumbingGraph) -> Result<PlumbingGraph, ResolutionError> {
    if let Some(id) = blow_down_candidate(graph) {
        return Err(ResolutionError::NotMinimal(id));
    }
    let decomposition = string_decomposition(graph)?;
    let mut out = graph.clone();
    for s in &decomposition.strings {
        if let Some((a, b)) = s.middle_edge() {
            out = blow_up(&out, BlowUpSite::EdgePoint(a, b))?;
        }
    }
    Ok(out)
}

/// The central vertex of each string of a graph in which every string has
/// odd length. L-nodes are read off the fundamental cycle, which on a blown
/// up graph is the pull-back of the reduced cycle.
pub fn central_vertices(graph_tilde: &PlumbingGraph) -> Result<Vec<VertexId>, ResolutionError> {
    let (order, cyclic) = match shape_classify(graph_tilde) {
        Shape::Chain(order) => (order, false),
        Shape::Cycle(order) => (order, true),
        Shape::Other => return Err(ResolutionError::NotTautClass),
    };
    let z = fundamental_cycle(graph_tilde)?;
    let k = anti_degrees(graph_tilde, &z);
    if k.values().all(|&x| x <= 0) {
        return Err(ResolutionError::NotTautClass);
    }
    let decomposition = decompose(&order, cyclic, &k);
    decomposition
        .strings
        .iter()
        .map(|s| s.center().ok_or(ResolutionError::MalformedString(s.from, s.to)))
        .collect()
}
