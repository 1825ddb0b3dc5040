//! Cusp cycles, torus-bundle monodromy and the orientation-reversing
//! duality between cusp words.
//!
//! The monodromy of the cycle `(-b_1, ..., -b_k)` is taken as the ordered
//! product of `M(b) = [[b, -1], [1, 0]]`. Only conjugation-invariant data
//! (trace and determinant) is meaningful.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dihedral::{canonical_cyclic, cyclic_match};
use crate::graph::{intersection_matrix, is_negative_definite, shape_classify, GraphError, PlumbingGraph, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("cusp words need at least two terms, got {0}")]
    TooShort(usize),
    #[error("cusp word term {0} is below 2")]
    TermBelowTwo(i64),
    #[error("every term is 2; no entry of at least 3")]
    AllTwos,
    #[error("orientation-reversed word {0:?} has a single vertex and needs a loop edge")]
    DualTooShort(Vec<i64>),
    #[error("not a cusp graph")]
    NotACuspGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cyclic sequence `(b_1, ..., b_k)`, `k >= 2`, all `b_i >= 2`, some `b_i >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct CuspWord {
    terms: Vec<i64>,
}

impl CuspWord {
    pub fn new(terms: Vec<i64>) -> Result<Self, CuspError> {
        if terms.len() < 2 {
            return Err(CuspError::TooShort(terms.len()));
        }
        if let Some(&b) = terms.iter().find(|&&b| b < 2) {
            return Err(CuspError::TermBelowTwo(b));
        }
        if terms.iter().all(|&b| b == 2) {
            return Err(CuspError::AllTwos);
        }
        Ok(CuspWord { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically least rotation/reflection.
    pub fn canonical(&self) -> CuspWord {
        CuspWord { terms: canonical_cyclic(&self.terms).1 }
    }
}

impl TryFrom<Vec<i64>> for CuspWord {
    type Error = CuspError;
    fn try_from(terms: Vec<i64>) -> Result<Self, CuspError> {
        CuspWord::new(terms)
    }
}

impl From<CuspWord> for Vec<i64> {
    fn from(w: CuspWord) -> Vec<i64> {
        w.terms
    }
}

impl fmt::Display for CuspWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// 2x2 integer matrix of determinant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyMatrix {
    entries: [[BigInt; 2]; 2],
}

impl MonodromyMatrix {
    /// `None` unless `ad - bc = 1`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Option<Self> {
        (&a * &d - &b * &c == BigInt::one()).then(|| MonodromyMatrix { entries: [[a, b], [c, d]] })
    }

    pub fn identity() -> Self {
        MonodromyMatrix {
            entries: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]],
        }
    }

    /// `[[b, -1], [1, 0]]`.
    pub fn factor(b: i64) -> Self {
        MonodromyMatrix {
            entries: [[BigInt::from(b), -BigInt::one()], [BigInt::one(), BigInt::zero()]],
        }
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn determinant(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }
}

impl Mul for &MonodromyMatrix {
    type Output = MonodromyMatrix;
    fn mul(self, rhs: &MonodromyMatrix) -> MonodromyMatrix {
        let (x, y) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        MonodromyMatrix { entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }
}

impl fmt::Display for MonodromyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "(({a},{b}),({c},{d}))")
    }
}

/// Ordered product `M(b_1) ... M(b_k)` for an arbitrary term sequence,
/// including the all-2 and single-term sequences that are not cusp words.
pub fn monodromy_of_terms(terms: &[i64]) -> MonodromyMatrix {
    terms
        .iter()
        .fold(MonodromyMatrix::identity(), |acc, &b| &acc * &MonodromyMatrix::factor(b))
}

pub fn monodromy(word: &CuspWord) -> MonodromyMatrix {
    monodromy_of_terms(&word.terms)
}

/// Trace of the monodromy is at least 3.
pub fn trace_condition(terms: &[i64]) -> bool {
    monodromy_of_terms(terms).trace() >= BigInt::from(3)
}

/// Cycle, genus 0 throughout, every self-intersection at most -2 and at
/// least one at most -3.
pub fn is_cusp_graph(graph: &PlumbingGraph) -> bool {
    if !matches!(shape_classify(graph), Shape::Cycle(_)) {
        return false;
    }
    let vs = graph.vertices();
    if vs.iter().any(|v| v.genus != 0 || v.euler > -2) {
        return false;
    }
    let cusp = vs.iter().any(|v| v.euler <= -3);
    debug_assert_eq!(cusp, is_negative_definite(&intersection_matrix(graph)));
    cusp
}

/// Terms read around the canonical cycle order.
pub fn cusp_word_of_graph(graph: &PlumbingGraph) -> Result<CuspWord, CuspError> {
    if !is_cusp_graph(graph) {
        return Err(CuspError::NotACuspGraph);
    }
    let order = match shape_classify(graph) {
        Shape::Cycle(order) => order,
        _ => unreachable!("cusp graphs are cycles"),
    };
    CuspWord::new(order.iter().map(|&id| -graph.vertex(id).unwrap().euler).collect())
}

pub fn cusp_graph(word: &CuspWord) -> PlumbingGraph {
    let eulers: Vec<i64> = word.terms.iter().map(|b| -b).collect();
    PlumbingGraph::cycle(&eulers).expect("cusp words have at least two terms")
}

/// Run-swap duality on a cyclic term sequence. Writing the word as
/// entries `m + 3` separated by (possibly empty) runs of `r` twos, each entry
/// becomes a run of `m` twos and each run becomes the entry `r + 3`.
pub fn cusp_dual_terms(terms: &[i64]) -> Result<Vec<i64>, CuspError> {
    let start = terms.iter().position(|&b| b >= 3).ok_or(CuspError::AllTwos)?;
    let mut rotated = terms.to_vec();
    rotated.rotate_left(start);
    let mut out = Vec::new();
    let mut i = 0;
    while i < rotated.len() {
        let entry = rotated[i];
        i += 1;
        let mut run = 0;
        while i < rotated.len() && rotated[i] == 2 {
            run += 1;
            i += 1;
        }
        out.extend(std::iter::repeat_n(2, (entry - 3) as usize));
        out.push(run + 3);
    }
    Ok(out)
}

/// The cusp word of the same torus bundle with reversed orientation, in
/// canonical (least dihedral) form.
pub fn cusp_reverse_orientation(word: &CuspWord) -> Result<CuspWord, CuspError> {
    let dual = cusp_dual_terms(&word.terms)?;
    if dual.len() < 2 {
        return Err(CuspError::DualTooShort(dual));
    }
    Ok(CuspWord::new(dual)?.canonical())
}

/// Equal cyclic words up to rotation and reflection.
pub fn cusp_oriented_homeo(a: &CuspWord, b: &CuspWord) -> bool {
    cyclic_match(&a.terms, &b.terms).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(t: &[i64]) -> CuspWord {
        CuspWord::new(t.to_vec()).unwrap()
    }

    fn mat(a: i64, b: i64, c: i64, d: i64) -> MonodromyMatrix {
        MonodromyMatrix::new(a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    #[test]
    fn word_validation() {
        assert_eq!(CuspWord::new(vec![3]), Err(CuspError::TooShort(1)));
        assert_eq!(CuspWord::new(vec![3, 1]), Err(CuspError::TermBelowTwo(1)));
        assert_eq!(CuspWord::new(vec![2, 2, 2]), Err(CuspError::AllTwos));
        assert!(MonodromyMatrix::new(2.into(), 0.into(), 0.into(), 1.into()).is_none());
    }

    #[test]
    fn recognizer() {
        assert!(is_cusp_graph(&PlumbingGraph::cycle(&[-4, -2, -5, -2, -2, -3]).unwrap()));
        let flat = PlumbingGraph::cycle(&[-2, -2, -2, -2]).unwrap();
        assert!(!is_cusp_graph(&flat));
        assert!(!is_negative_definite(&intersection_matrix(&flat)));
        assert!(!is_cusp_graph(&PlumbingGraph::chain(&[-4, -2, -3, -2]).unwrap()));
    }

    #[test]
    fn monodromy_products() {
        assert_eq!(monodromy_of_terms(&[3]), mat(3, -1, 1, 0));
        assert_eq!(monodromy_of_terms(&[3]).trace(), BigInt::from(3));
        assert_eq!(monodromy(&w(&[3, 2])), mat(5, -3, 2, -1));
        assert!(trace_condition(&[3, 2]));
        for k in 1..10 {
            let twos = vec![2; k];
            // M(2)^k = [[k+1, -k], [k, 1-k]]
            let direct = mat(k as i64 + 1, -(k as i64), k as i64, 1 - k as i64);
            assert_eq!(monodromy_of_terms(&twos), direct);
            assert!(!trace_condition(&twos));
        }
    }

    #[test]
    fn six_term_word_duality() {
        let left = w(&[4, 2, 5, 2, 2, 3]);
        let right = cusp_reverse_orientation(&left).unwrap();
        assert!(cusp_oriented_homeo(&right, &w(&[3, 2, 4, 2, 2, 5])));
        assert!(!cusp_oriented_homeo(&left, &right));
        assert_eq!(cusp_dual_terms(left.terms()).unwrap(), vec![2, 4, 2, 2, 5, 3]);
    }

    #[test]
    fn small_duals() {
        assert_eq!(cusp_reverse_orientation(&w(&[3, 3])).unwrap(), w(&[3, 3]));
        assert_eq!(
            cusp_reverse_orientation(&w(&[3, 2, 2])),
            Err(CuspError::DualTooShort(vec![5]))
        );
        assert_eq!(cusp_dual_terms(&[2, 2]), Err(CuspError::AllTwos));
        let dual = cusp_reverse_orientation(&w(&[4, 2])).unwrap();
        assert!(cusp_oriented_homeo(&dual, &w(&[4, 2])));
    }

    #[test]
    fn oriented_homeo() {
        let a = w(&[4, 2, 5, 2, 2, 3]);
        assert!(cusp_oriented_homeo(&a, &w(&[3, 4, 2, 5, 2, 2])));
        assert!(!cusp_oriented_homeo(&a, &w(&[3, 2, 4, 2, 2, 5])));
        assert!(cusp_oriented_homeo(&a, &w(&[3, 2, 2, 5, 2, 4])));
    }

    #[test]
    fn graph_roundtrip() {
        let g = PlumbingGraph::cycle(&[-4, -2, -5, -2, -2, -3]).unwrap();
        let word = cusp_word_of_graph(&g).unwrap();
        assert!(cusp_oriented_homeo(&word, &w(&[4, 2, 5, 2, 2, 3])));
        assert_eq!(cusp_word_of_graph(&PlumbingGraph::chain(&[-3, -2]).unwrap()), Err(CuspError::NotACuspGraph));
    }
}
