//! Negative continued fractions and the minimal plumbing chains of lens
//! spaces.
//!
//! `L(p, q)` is plumbed along the chain `-b_1, ..., -b_k` where
//! `p/q = b_1 - 1/(b_2 - 1/(... - 1/b_k))` with every `b_i >= 2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dihedral::linear_match;
use crate::graph::{shape_classify, GraphError, PlumbingGraph, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LensError {
    #[error("invalid lens parameters ({p}, {q}): {reason}")]
    InvalidParams { p: i64, q: i64, reason: &'static str },
    #[error("invalid continued fraction: {0}")]
    InvalidContFrac(&'static str),
    #[error("not a lens graph: {0}")]
    NotALensGraph(&'static str),
    #[error("continued fraction value exceeds 64-bit range")]
    Overflow,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Coprime `p > q >= 1`, `p >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensParams {
    p: i64,
    q: i64,
}

impl LensParams {
    pub fn new(p: i64, q: i64) -> Result<Self, LensError> {
        let invalid = |reason| Err(LensError::InvalidParams { p, q, reason });
        if p < 2 {
            return invalid("p must be at least 2");
        }
        if q < 1 || q >= p {
            return invalid("q must satisfy 1 <= q < p");
        }
        if p.gcd(&q) != 1 {
            return invalid("p and q must be coprime");
        }
        Ok(LensParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The inverse of `q` modulo `p`.
    pub fn q_inverse(&self) -> i64 {
        let e = i128::from(self.q).extended_gcd(&i128::from(self.p));
        e.x.rem_euclid(i128::from(self.p)) as i64
    }
}

impl fmt::Display for LensParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct NegContFrac {
    terms: Vec<i64>,
}

impl NegContFrac {
    pub fn new(terms: Vec<i64>) -> Result<Self, LensError> {
        if terms.is_empty() {
            return Err(LensError::InvalidContFrac("empty sequence"));
        }
        if terms.iter().any(|&b| b < 2) {
            return Err(LensError::InvalidContFrac("every term must be at least 2"));
        }
        Ok(NegContFrac { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn reversed(&self) -> NegContFrac {
        NegContFrac { terms: self.terms.iter().rev().copied().collect() }
    }
}

impl TryFrom<Vec<i64>> for NegContFrac {
    type Error = LensError;
    fn try_from(terms: Vec<i64>) -> Result<Self, LensError> {
        NegContFrac::new(terms)
    }
}

impl From<NegContFrac> for Vec<i64> {
    fn from(cf: NegContFrac) -> Vec<i64> {
        cf.terms
    }
}

impl fmt::Display for NegContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Expands `p/q` by repeated ceilings: `b = ceil(p/q)`, then continue with
/// `q / (b q - p)` until the remainder vanishes.
pub fn neg_cont_frac(params: LensParams) -> NegContFrac {
    let (mut num, mut den) = (i128::from(params.p), i128::from(params.q));
    let mut terms = Vec::new();
    while den != 0 {
        let b = Integer::div_ceil(&num, &den);
        terms.push(b as i64);
        (num, den) = (den, b * den - num);
    }
    NegContFrac { terms }
}

/// Evaluates the tower from the right in exact arithmetic.
pub fn eval_cont_frac(cf: &NegContFrac) -> Result<LensParams, LensError> {
    let (last, rest) = cf.terms.split_last().expect("nonempty by construction");
    let mut num = BigInt::from(*last);
    let mut den = BigInt::one();
    for &b in rest.iter().rev() {
        let next = BigInt::from(b) * &num - &den;
        den = num;
        num = next;
    }
    let p = num.to_i64().ok_or(LensError::Overflow)?;
    let q = den.to_i64().ok_or(LensError::Overflow)?;
    LensParams::new(p, q)
}

pub fn lens_graph(params: LensParams) -> PlumbingGraph {
    let eulers: Vec<i64> = neg_cont_frac(params).terms.iter().map(|b| -b).collect();
    PlumbingGraph::chain(&eulers).expect("continued fraction chains are valid graphs")
}

/// Both readings of a lens chain: along the canonical orientation and
/// against it. The second has `q` replaced by its inverse modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensReading {
    pub forward: LensParams,
    pub reversed: LensParams,
}

/// The continued fraction read off a genus-0 chain with all Euler numbers
/// at most -2, in canonical chain orientation.
pub fn lens_cont_frac(graph: &PlumbingGraph) -> Result<NegContFrac, LensError> {
    let order = match shape_classify(graph) {
        Shape::Chain(order) => order,
        _ => return Err(LensError::NotALensGraph("graph is not a chain")),
    };
    let mut terms = Vec::with_capacity(order.len());
    for id in order {
        let v = graph.vertex(id).unwrap();
        if v.genus != 0 {
            return Err(LensError::NotALensGraph("vertex of positive genus"));
        }
        if v.euler > -2 {
            return Err(LensError::NotALensGraph("self-intersection above -2"));
        }
        terms.push(-v.euler);
    }
    NegContFrac::new(terms)
}

pub fn is_lens_graph(graph: &PlumbingGraph) -> bool {
    lens_cont_frac(graph).is_ok()
}

pub fn graph_to_lens_both(graph: &PlumbingGraph) -> Result<LensReading, LensError> {
    let cf = lens_cont_frac(graph)?;
    let forward = eval_cont_frac(&cf)?;
    let reversed = eval_cont_frac(&cf.reversed())?;
    debug_assert_eq!(forward.p, reversed.p);
    debug_assert_eq!(
        (i128::from(forward.q) * i128::from(reversed.q)).rem_euclid(i128::from(forward.p)),
        1 % i128::from(forward.p)
    );
    Ok(LensReading { forward, reversed })
}

pub fn graph_to_lens(graph: &PlumbingGraph) -> Result<LensParams, LensError> {
    graph_to_lens_both(graph).map(|r| r.forward)
}

pub fn lens_reverse_orientation(params: LensParams) -> LensParams {
    LensParams { p: params.p, q: params.p - params.q }
}

/// Equal minimal chains up to reversal.
pub fn lens_oriented_homeo(a: LensParams, b: LensParams) -> bool {
    let same = a.p == b.p
        && linear_match(neg_cont_frac(a).terms(), neg_cont_frac(b).terms()).is_some();
    debug_assert_eq!(same, lens_oriented_homeo_arith(a, b));
    same
}

/// Number-theoretic form of the oriented classification:
/// `p_a = p_b` and `q_b = q_a^{+1 or -1} mod p`.
pub fn lens_oriented_homeo_arith(a: LensParams, b: LensParams) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = i128::from(a.p);
    a.q == b.q || (i128::from(a.q) * i128::from(b.q)).rem_euclid(p) == 1
}

pub fn lens_unoriented_homeo(a: LensParams, b: LensParams) -> bool {
    lens_oriented_homeo(a, b) || lens_oriented_homeo(a, lens_reverse_orientation(b))
}
