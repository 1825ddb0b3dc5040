//! The inner bilipschitz invariant of Hirzebruch-Jung and cusp
//! singularities.
//!
//! The L-nodes of a taut-class graph are the vertices meeting the reduced
//! maximal cycle negatively. Consecutive L-nodes are joined by strings of
//! `n >= 0` interior (-2)-vertices; each string carries the inner rate
//! `(n + 3)/2` of its special P-node, and each L-node carries its number of
//! curvettes `-(Z_max . E)`. The alternating sequence of these records, up to
//! reversal (chains) or dihedral symmetry (cycles), is the descriptor.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cusp::{cusp_graph, cusp_reverse_orientation, cusp_word_of_graph, CuspError};
use crate::cycles::{maximal_cycle_taut, taut_class, CycleError, TautClass};
use crate::dihedral::{canonical_linear, cyclic_images, cyclic_match, linear_match, Symmetry};
use crate::graph::{PlumbingGraph, VertexId};
use crate::lens::{graph_to_lens, lens_graph, lens_reverse_orientation, LensError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BnpError {
    #[error("graph is neither a Hirzebruch-Jung chain nor a cusp cycle")]
    NotTautClass,
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// A maximal path between consecutive L-nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringPath {
    pub from: VertexId,
    pub interior: Vec<VertexId>,
    pub to: VertexId,
}

impl StringPath {
    pub fn n(&self) -> usize {
        self.interior.len()
    }

    /// Endpoints of the middle edge of a string with an even number of
    /// interior vertices: the first `n/2` interior vertices lie on one side.
    pub fn middle_edge(&self) -> Option<(VertexId, VertexId)> {
        let n = self.n();
        if n % 2 == 1 {
            return None;
        }
        let path: Vec<VertexId> = std::iter::once(self.from)
            .chain(self.interior.iter().copied())
            .chain(std::iter::once(self.to))
            .collect();
        Some((path[n / 2], path[n / 2 + 1]))
    }

    pub fn center(&self) -> Option<VertexId> {
        (self.n() % 2 == 1).then(|| self.interior[self.n() / 2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringDecomposition {
    pub cyclic: bool,
    /// L-nodes in order along the graph; `strings[i]` runs from `l_nodes[i]`
    /// to `l_nodes[i + 1]` (cyclically for cycles).
    pub l_nodes: Vec<VertexId>,
    pub strings: Vec<StringPath>,
}

impl StringDecomposition {
    pub fn ns(&self) -> Vec<usize> {
        self.strings.iter().map(StringPath::n).collect()
    }
}

/// Splits a chain or cycle at the vertices with positive weight.
///
/// Chains are read from the end with the smaller vertex id. Cycles start at
/// the L-node and direction minimizing the word of `(weight, n)` pairs.
pub(crate) fn decompose(
    order: &[VertexId],
    cyclic: bool,
    weight: &BTreeMap<VertexId, i64>,
) -> StringDecomposition {
    let is_l = |id: &VertexId| weight.get(id).copied().unwrap_or(0) > 0;
    if !cyclic {
        let mut order = order.to_vec();
        if order.first() > order.last() {
            order.reverse();
        }
        let l_pos: Vec<usize> = (0..order.len()).filter(|&i| is_l(&order[i])).collect();
        let strings = l_pos
            .windows(2)
            .map(|w| StringPath {
                from: order[w[0]],
                interior: order[w[0] + 1..w[1]].to_vec(),
                to: order[w[1]],
            })
            .collect();
        return StringDecomposition {
            cyclic,
            l_nodes: l_pos.iter().map(|&i| order[i]).collect(),
            strings,
        };
    }

    let walk = |rotated: &[VertexId]| -> StringDecomposition {
        let l_pos: Vec<usize> = (0..rotated.len()).filter(|&i| is_l(&rotated[i])).collect();
        let strings = (0..l_pos.len())
            .map(|j| {
                let a = l_pos[j];
                let b = l_pos.get(j + 1).copied().unwrap_or(rotated.len());
                StringPath {
                    from: rotated[a],
                    interior: rotated[a + 1..b].to_vec(),
                    to: rotated[b % rotated.len()],
                }
            })
            .collect();
        StringDecomposition { cyclic, l_nodes: l_pos.iter().map(|&i| rotated[i]).collect(), strings }
    };
    let word = |d: &StringDecomposition| -> Vec<(i64, usize)> {
        d.strings.iter().map(|s| (weight[&s.from], s.n())).collect()
    };
    cyclic_images(order)
        .filter(|(_, rotated)| is_l(&rotated[0]))
        .map(|(_, rotated)| walk(&rotated))
        .min_by(|a, b| word(a).cmp(&word(b)))
        .expect("cycles handled here have at least one L-node")
}

fn taut(graph: &PlumbingGraph) -> Result<TautClass, BnpError> {
    taut_class(graph).ok_or(BnpError::NotTautClass)
}

fn curvette_map(graph: &PlumbingGraph) -> Result<BTreeMap<VertexId, i64>, BnpError> {
    let report = maximal_cycle_taut(graph)?;
    Ok(report.k.into_iter().map(|(id, k)| (id, k as i64)).collect())
}

pub fn string_decomposition(graph: &PlumbingGraph) -> Result<StringDecomposition, BnpError> {
    let class = taut(graph)?;
    let k = curvette_map(graph)?;
    Ok(decompose(class.order(), class.is_cycle(), &k))
}

/// L-node ids in increasing order.
pub fn l_nodes(graph: &PlumbingGraph) -> Result<Vec<VertexId>, BnpError> {
    let class = taut(graph)?;
    let k = curvette_map(graph)?;
    let by_degree: Vec<VertexId> = k.iter().filter(|(_, &x)| x > 0).map(|(&id, _)| id).collect();
    let order = class.order();
    let by_shape: Vec<VertexId> = graph
        .ids()
        .filter(|&id| {
            graph.vertex(id).unwrap().euler <= -3
                || (!class.is_cycle() && (order.first() == Some(&id) || order.last() == Some(&id)))
        })
        .collect();
    if by_degree != by_shape {
        return Err(BnpError::Inconsistent(format!(
            "L-nodes by degree {by_degree:?} differ from L-nodes by shape {by_shape:?}"
        )));
    }
    Ok(by_degree)
}

/// Exact rational `(n + 3)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InnerRate(pub Ratio<i64>);

impl InnerRate {
    pub fn of_string(n: usize) -> Self {
        InnerRate(Ratio::new(n as i64 + 3, 2))
    }
}

impl fmt::Display for InnerRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for InnerRate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for InnerRate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Ratio<i64>>().map(InnerRate).map_err(serde::de::Error::custom)
    }
}

pub fn inner_rates(graph: &PlumbingGraph) -> Result<Vec<InnerRate>, BnpError> {
    Ok(string_decomposition(graph)?.ns().into_iter().map(InnerRate::of_string).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LNodeRecord {
    pub vertex_id: VertexId,
    pub euler: i64,
    pub valency: u32,
    pub curvettes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringRecord {
    pub n: u32,
    pub inner_rate: InnerRate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BnpRecord {
    L(LNodeRecord),
    S(StringRecord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DescriptorShape {
    Chain,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnpDescriptor {
    pub shape: DescriptorShape,
    pub records: Vec<BnpRecord>,
}

/// Label-free comparison key of a record.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum RecordKey {
    L { curvettes: u64, valency: u32, euler: i64 },
    S { n: u32 },
}

impl BnpDescriptor {
    fn keys(&self) -> Vec<RecordKey> {
        self.records
            .iter()
            .map(|r| match r {
                BnpRecord::L(l) => RecordKey::L { curvettes: l.curvettes, valency: l.valency, euler: l.euler },
                BnpRecord::S(s) => RecordKey::S { n: s.n },
            })
            .collect()
    }

    pub fn l_records(&self) -> impl Iterator<Item = &LNodeRecord> {
        self.records.iter().filter_map(|r| match r {
            BnpRecord::L(l) => Some(l),
            BnpRecord::S(_) => None,
        })
    }

    pub fn s_records(&self) -> impl Iterator<Item = &StringRecord> {
        self.records.iter().filter_map(|r| match r {
            BnpRecord::S(s) => Some(s),
            BnpRecord::L(_) => None,
        })
    }

    pub fn curvettes(&self) -> Vec<u64> {
        self.l_records().map(|l| l.curvettes).collect()
    }

    pub fn rates(&self) -> Vec<InnerRate> {
        self.s_records().map(|s| s.inner_rate).collect()
    }

    /// Inner rates sorted ascending.
    pub fn rate_multiset(&self) -> Vec<InnerRate> {
        let mut r = self.rates();
        r.sort();
        r
    }

    /// Compact text form, e.g. `L(3) S(2) L(1) S(3/2) L(1)`.
    pub fn word(&self) -> String {
        let parts: Vec<String> = self
            .records
            .iter()
            .map(|r| match r {
                BnpRecord::L(l) => format!("L({})", l.curvettes),
                BnpRecord::S(s) => format!("S({})", s.inner_rate),
            })
            .collect();
        parts.join(" ")
    }
}

pub fn bnp_descriptor(graph: &PlumbingGraph) -> Result<BnpDescriptor, BnpError> {
    let class = taut(graph)?;
    let k = curvette_map(graph)?;
    let dec = decompose(class.order(), class.is_cycle(), &k);
    let l_record = |id: VertexId| {
        let v = graph.vertex(id).unwrap();
        let valency = graph.valency(id) as u32;
        let curvettes = k[&id] as u64;
        debug_assert_eq!(curvettes as i64, -v.euler - valency as i64);
        BnpRecord::L(LNodeRecord { vertex_id: id, euler: v.euler, valency, curvettes })
    };
    let mut records = Vec::with_capacity(2 * dec.l_nodes.len());
    for (i, &l) in dec.l_nodes.iter().enumerate() {
        records.push(l_record(l));
        if let Some(s) = dec.strings.get(i) {
            records.push(BnpRecord::S(StringRecord {
                n: s.n() as u32,
                inner_rate: InnerRate::of_string(s.n()),
            }));
        }
    }
    let shape = if class.is_cycle() { DescriptorShape::Cycle } else { DescriptorShape::Chain };
    Ok(BnpDescriptor { shape, records })
}

/// The symmetry carrying `a`'s record sequence onto `b`'s, if any.
pub fn bnp_match(a: &BnpDescriptor, b: &BnpDescriptor) -> Option<Symmetry> {
    if a.shape != b.shape {
        return None;
    }
    let (ka, kb) = (a.keys(), b.keys());
    match a.shape {
        DescriptorShape::Chain => linear_match(&ka, &kb),
        DescriptorShape::Cycle => cyclic_match(&ka, &kb),
    }
}

pub fn bnp_equal(a: &BnpDescriptor, b: &BnpDescriptor) -> bool {
    bnp_match(a, b).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologyVerdict {
    /// Minimal graphs agree up to symmetry.
    OrientedHomeo,
    /// Minimal graphs agree only after reversing the orientation of one.
    UnorientedHomeoOnly,
    NotHomeomorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BilipschitzVerdict {
    BilipschitzEquivalent,
    BilipschitzDistinct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub topology: TopologyVerdict,
    pub bilipschitz: BilipschitzVerdict,
    /// Symmetry carrying the first descriptor onto the second when equal.
    pub witness: Option<Symmetry>,
}

/// Euler sequence in canonical orientation, for graph equality up to
/// symmetry of chains and cycles.
fn canonical_word(graph: &PlumbingGraph, class: &TautClass) -> Vec<i64> {
    let eulers: Vec<i64> = class.order().iter().map(|&id| graph.vertex(id).unwrap().euler).collect();
    if class.is_cycle() {
        cyclic_images(&eulers).map(|(_, w)| w).min().unwrap()
    } else {
        canonical_linear(&eulers).1
    }
}

/// Minimal graph of the orientation-reversed link, if representable.
fn reversed_graph(graph: &PlumbingGraph, class: &TautClass) -> Result<Option<PlumbingGraph>, BnpError> {
    if class.is_cycle() {
        let word = cusp_word_of_graph(graph)?;
        match cusp_reverse_orientation(&word) {
            Ok(dual) => Ok(Some(cusp_graph(&dual))),
            Err(CuspError::DualTooShort(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    } else {
        Ok(Some(lens_graph(lens_reverse_orientation(graph_to_lens(graph)?))))
    }
}

pub fn compare(g1: &PlumbingGraph, g2: &PlumbingGraph) -> Result<Comparison, BnpError> {
    let (c1, c2) = (taut(g1)?, taut(g2)?);
    let (d1, d2) = (bnp_descriptor(g1)?, bnp_descriptor(g2)?);
    let witness = bnp_match(&d1, &d2);
    let w2 = canonical_word(g2, &c2);
    let same_shape = c1.is_cycle() == c2.is_cycle();
    let topology = if same_shape && canonical_word(g1, &c1) == w2 {
        TopologyVerdict::OrientedHomeo
    } else if same_shape
        && reversed_graph(g1, &c1)?
            .and_then(|r| taut_class(&r).map(|rc| canonical_word(&r, &rc)))
            .is_some_and(|w| w == w2)
    {
        TopologyVerdict::UnorientedHomeoOnly
    } else {
        TopologyVerdict::NotHomeomorphic
    };
    if topology == TopologyVerdict::OrientedHomeo && witness.is_none() {
        return Err(BnpError::Inconsistent("equal minimal graphs with unequal descriptors".into()));
    }
    let bilipschitz = if witness.is_some() {
        BilipschitzVerdict::BilipschitzEquivalent
    } else {
        BilipschitzVerdict::BilipschitzDistinct
    };
    Ok(Comparison { topology, bilipschitz, witness })
}
