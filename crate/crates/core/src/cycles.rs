//! Fundamental cycles by Laufer's algorithm and the reduced maximal cycle of
//! the taut classes (Hirzebruch-Jung chains and cusp cycles).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cusp::is_cusp_graph;
use crate::graph::{intersection_matrix, is_negative_definite, shape_classify, PlumbingGraph, Shape, VertexId};
use crate::lens::is_lens_graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("graph is neither a Hirzebruch-Jung chain nor a cusp cycle")]
    NotTautClass,
    #[error("fundamental cycle is not reduced at vertex {0}")]
    ReducednessViolated(VertexId),
}

/// Non-negative integer combination of exceptional curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor {
    pub coefficients: BTreeMap<VertexId, u64>,
}

impl Divisor {
    /// The reduced divisor: coefficient 1 on every vertex.
    pub fn reduced(graph: &PlumbingGraph) -> Self {
        Divisor { coefficients: graph.ids().map(|id| (id, 1)).collect() }
    }

    pub fn coefficient(&self, id: VertexId) -> u64 {
        self.coefficients.get(&id).copied().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.coefficients.values().all(|&c| c == 1)
    }

    /// Coefficients in the given vertex order.
    pub fn along(&self, order: &[VertexId]) -> Vec<u64> {
        order.iter().map(|&id| self.coefficient(id)).collect()
    }
}

/// The taut classes handled here, with their vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautClass {
    HirzebruchJung(Vec<VertexId>),
    Cusp(Vec<VertexId>),
}

impl TautClass {
    pub fn order(&self) -> &[VertexId] {
        match self {
            TautClass::HirzebruchJung(o) | TautClass::Cusp(o) => o,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, TautClass::Cusp(_))
    }
}

/// Recognizes minimal Hirzebruch-Jung chains and cusp cycles.
pub fn taut_class(graph: &PlumbingGraph) -> Option<TautClass> {
    match shape_classify(graph) {
        Shape::Chain(order) if is_lens_graph(graph) => Some(TautClass::HirzebruchJung(order)),
        Shape::Cycle(order) if is_cusp_graph(graph) => Some(TautClass::Cusp(order)),
        _ => None,
    }
}

/// `z . E_i` for every vertex.
pub fn intersections(graph: &PlumbingGraph, z: &Divisor) -> BTreeMap<VertexId, i64> {
    let m = intersection_matrix(graph);
    let coeffs: Vec<i64> = m.ids().iter().map(|&id| z.coefficient(id) as i64).collect();
    m.ids()
        .iter()
        .zip(m.rows())
        .map(|(&id, row)| (id, row.iter().zip(&coeffs).map(|(a, c)| a * c).sum()))
        .collect()
}

/// `k_i = -(z . E_i)`, the number of arrows a divisor attaches to each
/// vertex.
pub fn anti_degrees(graph: &PlumbingGraph, z: &Divisor) -> BTreeMap<VertexId, i64> {
    intersections(graph, z).into_iter().map(|(id, x)| (id, -x)).collect()
}

/// Laufer's algorithm: start from the reduced divisor and, while some
/// `z . E_j > 0`, raise the coefficient of the smallest such `j` by one.
pub fn fundamental_cycle(graph: &PlumbingGraph) -> Result<Divisor, CycleError> {
    let m = intersection_matrix(graph);
    if !is_negative_definite(&m) {
        return Err(CycleError::NotNegativeDefinite);
    }
    let n = m.size();
    let mut z = vec![1i64; n];
    let mut products: Vec<i64> =
        m.rows().iter().map(|row| row.iter().sum()).collect();
    while let Some(j) = products.iter().position(|&x| x > 0) {
        z[j] += 1;
        for (i, p) in products.iter_mut().enumerate() {
            *p += m.get(i, j);
        }
    }
    Ok(Divisor {
        coefficients: m.ids().iter().zip(z).map(|(&id, c)| (id, c as u64)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub z_min: Divisor,
    pub k: BTreeMap<VertexId, u64>,
    pub reduced: bool,
}

/// For Hirzebruch-Jung and cusp graphs the maximal cycle equals the
/// fundamental cycle and is reduced.
pub fn maximal_cycle_taut(graph: &PlumbingGraph) -> Result<CycleReport, CycleError> {
    taut_class(graph).ok_or(CycleError::NotTautClass)?;
    let z = fundamental_cycle(graph)?;
    if let Some((&id, _)) = z.coefficients.iter().find(|(_, &c)| c != 1) {
        return Err(CycleError::ReducednessViolated(id));
    }
    let k = anti_degrees(graph, &z)
        .into_iter()
        .map(|(id, x)| (id, u64::try_from(x).expect("Laufer output has k_i >= 0")))
        .collect();
    Ok(CycleReport { z_min: z, k, reduced: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    /// E8 in Bourbaki labelling: chain 0-2-3-4-5-6-7 with 1 attached to 3.
    fn e8() -> PlumbingGraph {
        let vertices = (0..8).map(|i| Vertex::rational(i, -2)).collect();
        let edges = [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
        PlumbingGraph::new(vertices, edges).unwrap()
    }

    #[test]
    fn reduced_examples() {
        let g = PlumbingGraph::chain(&[-2, -2, -2]).unwrap();
        assert_eq!(fundamental_cycle(&g).unwrap(), Divisor::reduced(&g));
        let g = PlumbingGraph::cycle(&[-4, -2, -5, -2, -2, -3]).unwrap();
        assert!(fundamental_cycle(&g).unwrap().is_reduced());
    }

    #[test]
    fn e8_fundamental_cycle() {
        let z = fundamental_cycle(&e8()).unwrap();
        assert_eq!(z.along(&[0, 1, 2, 3, 4, 5, 6, 7]), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn non_negative_definite_rejected() {
        let g = PlumbingGraph::cycle(&[-2, -2, -2]).unwrap();
        assert_eq!(fundamental_cycle(&g), Err(CycleError::NotNegativeDefinite));
    }

    #[test]
    fn arrow_counts_on_chain_and_cycle() {
        let check = |g: PlumbingGraph, expected: Vec<i64>| {
            let k = anti_degrees(&g, &Divisor::reduced(&g));
            assert_eq!(k.values().copied().collect::<Vec<_>>(), expected);
        };
        check(PlumbingGraph::chain(&[-4, -2, -3, -2]).unwrap(), vec![3, 0, 1, 1]);
        check(PlumbingGraph::chain(&[-2, -2, -4, -3]).unwrap(), vec![1, 0, 2, 2]);
        check(PlumbingGraph::cycle(&[-4, -2, -5, -2, -2, -3]).unwrap(), vec![2, 0, 3, 0, 0, 1]);
    }

    #[test]
    fn taut_reports() {
        let r = maximal_cycle_taut(&PlumbingGraph::chain(&[-4, -2, -3, -2]).unwrap()).unwrap();
        assert!(r.reduced);
        assert_eq!(r.k.values().copied().collect::<Vec<_>>(), vec![3, 0, 1, 1]);
        for p in 2..12 {
            let r = maximal_cycle_taut(&PlumbingGraph::chain(&[-p]).unwrap()).unwrap();
            assert_eq!(r.k[&0], p as u64);
        }
        let r = maximal_cycle_taut(&PlumbingGraph::cycle(&[-3, -2, -2, -2]).unwrap()).unwrap();
        assert!(r.z_min.is_reduced());
        assert_eq!(maximal_cycle_taut(&e8()), Err(CycleError::NotTautClass));
        let all_two = PlumbingGraph::cycle(&[-2, -2, -2, -2]).unwrap();
        assert_eq!(maximal_cycle_taut(&all_two), Err(CycleError::NotTautClass));
    }
}
