//! Exhaustive checks that the descriptor separates exactly the pairs whose
//! minimal graphs differ, over lens spaces and cusp words.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bnp::{bnp_descriptor, bnp_equal, BnpDescriptor};
use crate::cusp::{cusp_graph, cusp_oriented_homeo, cusp_reverse_orientation, CuspError, CuspWord};
use crate::lens::{lens_graph, lens_oriented_homeo, lens_reverse_orientation, LensParams};

/// How many rate-twin examples a report lists verbatim.
const MAX_EXAMPLES: usize = 25;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub survey: String,
    pub parameters: Vec<(String, i64)>,
    /// Pairs (X, orientation-reversed X) examined.
    pub pairs: usize,
    pub oriented_homeo: usize,
    pub unoriented_only: usize,
    pub bilipschitz_distinct: usize,
    /// Distinct descriptors with the same multiset of inner rates.
    pub rate_twins: usize,
    pub rate_twin_examples: Vec<String>,
    /// Words whose reversal would need a single-vertex cycle.
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn absorb(&mut self, outcome: PairOutcome) {
        match outcome {
            PairOutcome::Skipped => self.skipped += 1,
            PairOutcome::Checked { label, graphs_equal, descriptors_equal, rates_equal, problem } => {
                self.pairs += 1;
                if graphs_equal {
                    self.oriented_homeo += 1;
                } else {
                    self.unoriented_only += 1;
                }
                if !descriptors_equal {
                    self.bilipschitz_distinct += 1;
                    if rates_equal {
                        self.rate_twins += 1;
                        if self.rate_twin_examples.len() < MAX_EXAMPLES {
                            self.rate_twin_examples.push(label.clone());
                        }
                    }
                }
                if let Some(p) = problem {
                    self.counterexamples.push(format!("{label}: {p}"));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Checked {
        label: String,
        graphs_equal: bool,
        descriptors_equal: bool,
        rates_equal: bool,
        problem: Option<String>,
    },
    Skipped,
}

fn descriptor(g: &crate::graph::PlumbingGraph) -> Result<BnpDescriptor, String> {
    bnp_descriptor(g).map_err(|e| e.to_string())
}

/// `L(p,q)` against `L(p,p-q)`: descriptor equality, chain equality up to
/// reversal and `q^2 = -1 (mod p)` must all agree.
pub fn lens_pair(params: LensParams) -> PairOutcome {
    let dual = lens_reverse_orientation(params);
    let label = format!("{params} vs {dual}");
    let (da, db) = match (descriptor(&lens_graph(params)), descriptor(&lens_graph(dual))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return PairOutcome::Checked {
                label,
                graphs_equal: false,
                descriptors_equal: false,
                rates_equal: false,
                problem: Some(e),
            }
        }
    };
    let graphs_equal = lens_oriented_homeo(params, dual);
    let descriptors_equal = bnp_equal(&da, &db);
    let (p, q) = (i128::from(params.p()), i128::from(params.q()));
    let square_minus_one = (q * q + 1) % p == 0;
    let problem = if descriptors_equal != graphs_equal {
        Some(format!("descriptor equality {descriptors_equal} but graph equality {graphs_equal}"))
    } else if graphs_equal != square_minus_one {
        Some(format!("graph equality {graphs_equal} but q^2 = -1 mod p is {square_minus_one}"))
    } else {
        None
    };
    PairOutcome::Checked {
        label,
        graphs_equal,
        descriptors_equal,
        rates_equal: da.rate_multiset() == db.rate_multiset(),
        problem,
    }
}

/// Lens spaces `L(p,q)` with `2 <= p <= pmax`, one pair per `{q, p-q}`.
pub fn survey_lens(pmax: i64) -> SurveyReport {
    let params: Vec<LensParams> = (2..=pmax)
        .flat_map(|p| (1..p).filter(move |&q| q <= p - q).filter_map(move |q| LensParams::new(p, q).ok()))
        .collect();
    let outcomes: Vec<PairOutcome> = params.into_par_iter().map(lens_pair).collect();
    let mut report = SurveyReport {
        survey: "lens".into(),
        parameters: vec![("pmax".into(), pmax)],
        ..Default::default()
    };
    outcomes.into_iter().for_each(|o| report.absorb(o));
    report
}

/// A cusp word against its orientation reversal.
pub fn cusp_pair(word: &CuspWord) -> PairOutcome {
    let dual = match cusp_reverse_orientation(word) {
        Ok(d) => d,
        Err(CuspError::DualTooShort(_)) => return PairOutcome::Skipped,
        Err(e) => {
            return PairOutcome::Checked {
                label: word.to_string(),
                graphs_equal: false,
                descriptors_equal: false,
                rates_equal: false,
                problem: Some(e.to_string()),
            }
        }
    };
    let label = format!("{word} vs {dual}");
    let (da, db) = match (descriptor(&cusp_graph(word)), descriptor(&cusp_graph(&dual))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return PairOutcome::Checked {
                label,
                graphs_equal: false,
                descriptors_equal: false,
                rates_equal: false,
                problem: Some(e),
            }
        }
    };
    let graphs_equal = cusp_oriented_homeo(word, &dual);
    let descriptors_equal = bnp_equal(&da, &db);
    let problem = (graphs_equal != descriptors_equal)
        .then(|| format!("descriptor equality {descriptors_equal} but graph equality {graphs_equal}"));
    PairOutcome::Checked {
        label,
        graphs_equal,
        descriptors_equal,
        rates_equal: da.rate_multiset() == db.rate_multiset(),
        problem,
    }
}

/// All cusp words with `2 <= k <= kmax` terms in `2..=bmax`, one
/// representative (the least dihedral image) per class, in increasing order.
pub fn cusp_words(kmax: usize, bmax: i64) -> Vec<CuspWord> {
    let base = (bmax - 1).max(1) as u64;
    let mut out = Vec::new();
    for k in 2..=kmax {
        for code in 0..base.pow(k as u32) {
            let mut terms = vec![0i64; k];
            let mut c = code;
            for t in terms.iter_mut().rev() {
                *t = 2 + (c % base) as i64;
                c /= base;
            }
            if let Ok(w) = CuspWord::new(terms) {
                if w.canonical() == w {
                    out.push(w);
                }
            }
        }
    }
    out
}

pub fn survey_cusp(kmax: usize, bmax: i64) -> SurveyReport {
    let outcomes: Vec<PairOutcome> = cusp_words(kmax, bmax).par_iter().map(cusp_pair).collect();
    let mut report = SurveyReport {
        survey: "cusp".into(),
        parameters: vec![("kmax".into(), kmax as i64), ("bmax".into(), bmax)],
        ..Default::default()
    };
    outcomes.into_iter().for_each(|o| report.absorb(o));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lens_surveys() {
        let r = survey_lens(2);
        assert_eq!(r.pairs, 1);
        assert_eq!(r.oriented_homeo, 1);
        assert!(r.passed());

        let r = survey_lens(5);
        assert!(r.passed());
        match lens_pair(LensParams::new(5, 2).unwrap()) {
            PairOutcome::Checked { graphs_equal, descriptors_equal, .. } => {
                assert!(graphs_equal && descriptors_equal);
            }
            PairOutcome::Skipped => panic!("lens pairs are never skipped"),
        }

        let r = survey_lens(30);
        assert!(r.passed());
        match lens_pair(LensParams::new(27, 8).unwrap()) {
            PairOutcome::Checked { graphs_equal, descriptors_equal, rates_equal, .. } => {
                assert!(!graphs_equal && !descriptors_equal && rates_equal);
            }
            PairOutcome::Skipped => unreachable!(),
        }
        assert!(r.rate_twin_examples.iter().any(|s| s.starts_with("L(27,8)")));
    }

    #[test]
    fn word_enumeration_is_up_to_symmetry() {
        let words = cusp_words(3, 3);
        let as_vecs: Vec<Vec<i64>> = words.iter().map(|w| w.terms().to_vec()).collect();
        assert_eq!(
            as_vecs,
            vec![vec![2, 3], vec![3, 3], vec![2, 2, 3], vec![2, 3, 3], vec![3, 3, 3]]
        );
    }

    #[test]
    fn cusp_dual_pair_is_a_rate_twin() {
        let w = CuspWord::new(vec![4, 2, 5, 2, 2, 3]).unwrap();
        match cusp_pair(&w) {
            PairOutcome::Checked { graphs_equal, descriptors_equal, rates_equal, problem, .. } => {
                assert!(!graphs_equal && !descriptors_equal && rates_equal);
                assert!(problem.is_none());
            }
            PairOutcome::Skipped => panic!(),
        }
        assert_eq!(cusp_pair(&CuspWord::new(vec![3, 2]).unwrap()), PairOutcome::Skipped);
        let self_dual = CuspWord::new(vec![4, 2]).unwrap();
        assert!(matches!(cusp_pair(&self_dual), PairOutcome::Checked { descriptors_equal: true, .. }));
    }
}
