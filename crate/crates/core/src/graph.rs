//! Decorated plumbing multigraphs and their intersection matrices.
//!
//! A [`PlumbingGraph`] is a connected multigraph whose vertices carry a genus,
//! an Euler number (the self-intersection of the exceptional curve) and a
//! count of arrowheads. Edges are unordered pairs of distinct vertex ids;
//! repeated pairs are parallel edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dihedral::{canonical_linear, cyclic_images};

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub genus: u32,
    pub euler: i64,
    #[serde(default)]
    pub arrows: u32,
}

impl Vertex {
    pub fn rational(id: VertexId, euler: i64) -> Self {
        Vertex { id, genus: 0, euler, arrows: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is disconnected: vertex {0} is unreachable from vertex {1}")]
    DisconnectedGraph(VertexId, VertexId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),
    #[error("edge {{{0},{1}}} references missing vertex {2}")]
    DanglingEdge(VertexId, VertexId, VertexId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertexId(VertexId),
    #[error("vertex {0} has non-negative self-intersection {1}")]
    NonNegativeEuler(VertexId, i64),
}

/// A validated, connected plumbing graph.
///
/// Vertices are kept sorted by id and edges as sorted `(min, max)` pairs, so
/// derived equality is equality of labelled multigraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
}

impl PlumbingGraph {
    /// Builds and validates a graph.
    pub fn new(
        mut vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        vertices.sort_by_key(|v| v.id);
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateVertexId(w[0].id));
            }
        }
        if let Some(v) = vertices.iter().find(|v| v.euler >= 0) {
            return Err(GraphError::NonNegativeEuler(v.id, v.euler));
        }
        let ids: BTreeSet<VertexId> = vertices.iter().map(|v| v.id).collect();
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            for end in [a, b] {
                if !ids.contains(&end) {
                    return Err(GraphError::DanglingEdge(a, b, end));
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        let graph = PlumbingGraph { vertices, edges: normalized };
        graph.check_connected()?;
        Ok(graph)
    }

    /// Chain of genus-0 vertices with ids `0..k` and the given Euler numbers.
    pub fn chain(eulers: &[i64]) -> Result<Self, GraphError> {
        let vertices = eulers
            .iter()
            .enumerate()
            .map(|(i, &e)| Vertex::rational(i as VertexId, e))
            .collect();
        let edges = (1..eulers.len()).map(|i| (i as VertexId - 1, i as VertexId));
        PlumbingGraph::new(vertices, edges)
    }

    /// Cycle of genus-0 vertices with ids `0..k`, `k >= 2`; for `k = 2` the
    /// two vertices are joined by a double edge.
    pub fn cycle(eulers: &[i64]) -> Result<Self, GraphError> {
        let k = eulers.len();
        if k == 1 {
            return Err(GraphError::LoopEdge(0));
        }
        let vertices = eulers
            .iter()
            .enumerate()
            .map(|(i, &e)| Vertex::rational(i as VertexId, e))
            .collect();
        let edges = (0..k).map(|i| (i as VertexId, ((i + 1) % k) as VertexId));
        PlumbingGraph::new(vertices, edges)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let root = self.vertices[0].id;
        let adjacency = self.adjacency();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[&v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        match self.vertices.iter().find(|v| !seen.contains(&v.id)) {
            Some(v) => Err(GraphError::DisconnectedGraph(v.id, root)),
            None => Ok(()),
        }
    }

    fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|v| (v.id, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges as sorted `(min, max)` pairs; parallel edges repeat.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.index_of(id).map(|i| &self.vertices[i])
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index_of(id).is_some()
    }

    pub fn max_id(&self) -> VertexId {
        self.vertices.last().map_or(0, |v| v.id)
    }

    /// Neighbours of `id`, repeated according to edge multiplicity.
    pub fn neighbors(&self, id: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Number of edge ends at `id`, counting multiplicity.
    pub fn valency(&self, id: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == id || b == id).count()
    }

    pub fn edge_multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Consumes the graph, returning its raw parts for modification.
    pub fn into_parts(self) -> (Vec<Vertex>, Vec<(VertexId, VertexId)>) {
        (self.vertices, self.edges)
    }

    pub fn eulers(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.euler).collect()
    }

    /// Same graph with every arrow count replaced by `arrows(id)`.
    pub fn with_arrows(&self, arrows: impl Fn(VertexId) -> u32) -> PlumbingGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { arrows: arrows(v.id), ..v.clone() })
            .collect();
        PlumbingGraph { vertices, edges: self.edges.clone() }
    }
}

/// Re-runs the graph invariants on an already-built graph.
pub fn validate(graph: PlumbingGraph) -> Result<PlumbingGraph, GraphError> {
    let (vertices, edges) = graph.into_parts();
    PlumbingGraph::new(vertices, edges)
}

/// Symmetric integer matrix `(E_i . E_j)` indexed by vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    ids: Vec<VertexId>,
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    /// Wraps a square matrix; rows and columns follow `ids`.
    pub fn from_rows(ids: Vec<VertexId>, entries: Vec<Vec<i64>>) -> Self {
        assert_eq!(ids.len(), entries.len(), "one id per row");
        assert!(entries.iter().all(|r| r.len() == ids.len()), "matrix must be square");
        IntersectionMatrix { ids, entries }
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

pub fn intersection_matrix(graph: &PlumbingGraph) -> IntersectionMatrix {
    let n = graph.len();
    let ids: Vec<VertexId> = graph.ids().collect();
    let mut entries = vec![vec![0i64; n]; n];
    for (i, v) in graph.vertices().iter().enumerate() {
        entries[i][i] = v.euler;
    }
    for &(a, b) in graph.edges() {
        let (i, j) = (graph.index_of(a).unwrap(), graph.index_of(b).unwrap());
        entries[i][j] += 1;
        entries[j][i] += 1;
    }
    IntersectionMatrix { ids, entries }
}

/// Sylvester's criterion on `-M`, with leading minors obtained as the
/// pivots of fraction-free (Bareiss) elimination.
pub fn is_negative_definite(matrix: &IntersectionMatrix) -> bool {
    let fast = if matrix.size() <= 12 { negative_definite_i128(matrix) } else { negative_definite_sparse(matrix) };
    fast.unwrap_or_else(|| negative_definite_in::<BigInt>(matrix).unwrap())
}

/// `LDL^T` of `-M` over the rationals, touching only nonzero entries, so
/// chains and cycles cost linear time. The pivots are ratios of
/// consecutive leading minors. `None` on overflow.
fn negative_definite_sparse(matrix: &IntersectionMatrix) -> Option<bool> {
    type Q = Ratio<i128>;
    let n = matrix.size();
    let mut rows: Vec<BTreeMap<usize, Q>> = matrix
        .rows()
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, Q::from_integer(-i128::from(x)))).collect())
        .collect();
    for k in 0..n {
        let d = rows[k].get(&k).copied().unwrap_or_else(Q::zero);
        if !d.is_positive() {
            return Some(false);
        }
        let tail: Vec<(usize, Q)> = rows[k].range(k + 1..).map(|(&j, &x)| (j, x)).collect();
        for &(i, aik) in &tail {
            let f = aik.checked_div(&d)?;
            for &(j, akj) in &tail {
                let entry = rows[i].entry(j).or_insert_with(Q::zero);
                *entry = entry.checked_sub(&f.checked_mul(&akj)?)?;
            }
        }
    }
    Some(true)
}

/// Same elimination in `i128`; `None` as soon as anything overflows.
fn negative_definite_i128(matrix: &IntersectionMatrix) -> Option<bool> {
    negative_definite_in::<i128>(matrix)
}

/// Integers exact enough for Bareiss elimination. `None` means overflow.
trait Exact: Clone + Sized {
    fn from_i64(x: i64) -> Self;
    /// `a * b - c * d`
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn magnitude(&self) -> BigUint;
}

impl Exact for i128 {
    fn from_i64(x: i64) -> Self {
        i128::from(x)
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        i128::checked_mul(*a, *b)?.checked_sub(i128::checked_mul(*c, *d)?)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Exact for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn magnitude(&self) -> BigUint {
        BigInt::magnitude(self).clone()
    }
}

fn lift<T: Exact>(matrix: &IntersectionMatrix, sign: i64) -> Vec<Vec<T>> {
    matrix.rows().iter().map(|r| r.iter().map(|&x| T::from_i64(sign * x)).collect()).collect()
}

/// Sylvester on `-M`: after step `k` of Bareiss, `a[k][k]` is the leading
/// principal minor of order `k + 1`.
fn negative_definite_in<T: Exact>(matrix: &IntersectionMatrix) -> Option<bool> {
    let n = matrix.size();
    let mut a = lift::<T>(matrix, -1);
    let mut prev = T::from_i64(1);
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Some(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = T::mul_sub(&a[i][j], &a[k][k], &a[i][k], &a[k][j])?.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    Some(true)
}

/// `|det M|` by Bareiss elimination with row swaps on zero pivots.
pub fn abs_determinant(matrix: &IntersectionMatrix) -> BigUint {
    abs_determinant_in::<i128>(matrix).unwrap_or_else(|| abs_determinant_in::<BigInt>(matrix).unwrap())
}

fn abs_determinant_in<T: Exact>(matrix: &IntersectionMatrix) -> Option<BigUint> {
    let n = matrix.size();
    if n == 0 {
        return Some(BigUint::one());
    }
    let mut a = lift::<T>(matrix, 1);
    let mut prev = T::from_i64(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => a.swap(i, k),
                None => return Some(BigUint::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = T::mul_sub(&a[i][j], &a[k][k], &a[i][k], &a[k][j])?.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    Some(prev.magnitude())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "lowercase")]
pub enum Shape {
    /// Vertex ids along the chain, oriented so the Euler sequence is
    /// lexicographically no larger than its reverse.
    Chain(Vec<VertexId>),
    /// Vertex ids around the cycle, rotated and reflected so the Euler
    /// sequence is lexicographically minimal.
    Cycle(Vec<VertexId>),
    Other,
}

impl Shape {
    pub fn order(&self) -> Option<&[VertexId]> {
        match self {
            Shape::Chain(o) | Shape::Cycle(o) => Some(o),
            Shape::Other => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Chain(_) => f.write_str("chain"),
            Shape::Cycle(_) => f.write_str("cycle"),
            Shape::Other => f.write_str("other"),
        }
    }
}

pub fn shape_classify(graph: &PlumbingGraph) -> Shape {
    let n = graph.len();
    let adjacency = graph.adjacency();
    if adjacency.values().any(|nb| nb.len() > 2) {
        return Shape::Other;
    }
    let euler = |id: &VertexId| graph.vertex(*id).unwrap().euler;
    let simple = graph.edges().windows(2).all(|w| w[0] != w[1]);
    if graph.edges().len() + 1 == n && simple {
        // Path: walk from an end.
        let start = adjacency
            .iter()
            .find(|(_, nb)| nb.len() <= 1)
            .map(|(&id, _)| id)
            .unwrap();
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while order.len() < n {
            let next = adjacency[&cur].iter().copied().find(|&w| Some(w) != prev).unwrap();
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        let eulers: Vec<i64> = order.iter().map(euler).collect();
        let (sym, canon) = canonical_linear(&eulers);
        let mut oriented = sym.apply(&order);
        if canon == eulers && canon.iter().eq(eulers.iter().rev()) {
            // Palindromic decoration: fall back to the id sequence.
            oriented = canonical_linear(&order).1;
        }
        return Shape::Chain(oriented);
    }
    if n >= 2 && graph.edges().len() == n && adjacency.values().all(|nb| nb.len() == 2) {
        let start = graph.vertices()[0].id;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = adjacency[&start][0];
        while cur != start {
            order.push(cur);
            let next = adjacency[&cur].iter().copied().find(|&w| w != prev).unwrap_or(prev);
            prev = cur;
            cur = next;
        }
        let best = cyclic_images(&order)
            .map(|(_, ids)| (ids.iter().map(euler).collect::<Vec<_>>(), ids))
            .min()
            .unwrap();
        return Shape::Cycle(best.1);
    }
    Shape::Other
}
