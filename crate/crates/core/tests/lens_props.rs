mod common;

use common::*;
use plumbcalc::lens::{
    eval_cont_frac, lens_graph, lens_oriented_homeo, lens_oriented_homeo_arith, lens_reverse_orientation,
    lens_unoriented_homeo, neg_cont_frac, LensError, LensParams, NegContFrac,
};

fn params(p: i64, q: i64) -> LensParams {
    LensParams::new(p, q).unwrap()
}

#[test]
fn expansion_round_trips_up_to_500() {
    for (p, q) in coprime_pairs(500) {
        let cf = neg_cont_frac(params(p, q));
        assert!(cf.terms().iter().all(|&b| b >= 2), "{p}/{q}");
        assert_eq!(eval_cont_frac(&cf).unwrap(), params(p, q));
        let f = eval_fraction(cf.terms());
        assert_eq!((*f.numer(), *f.denom()), (i128::from(p), i128::from(q)));
    }
}

#[test]
fn reversed_terms_expand_the_inverse() {
    for (p, q) in coprime_pairs(200) {
        let rev = neg_cont_frac(params(p, q)).reversed();
        let other = eval_cont_frac(&rev).unwrap();
        assert_eq!(other.p(), p);
        assert_eq!((i128::from(q) * i128::from(other.q())) % i128::from(p), 1 % i128::from(p), "{p}/{q}");
    }
}

#[test]
fn reversal_is_an_involution() {
    for (p, q) in coprime_pairs(200) {
        let x = params(p, q);
        assert_eq!(lens_reverse_orientation(lens_reverse_orientation(x)), x);
        assert_eq!(lens_reverse_orientation(x).q(), p - q);
    }
}

#[test]
fn self_mirror_chains_are_exactly_square_roots_of_minus_one() {
    let mut count = 0;
    for (p, q) in coprime_pairs(200) {
        let a = lens_graph(params(p, q)).eulers();
        let b = lens_graph(params(p, p - q)).eulers();
        let mut b_rev = b.clone();
        b_rev.reverse();
        let graphs_equal = a == b || a == b_rev;
        let criterion = (q * q + 1) % p == 0;
        assert_eq!(graphs_equal, criterion, "L({p},{q})");
        assert_eq!(lens_oriented_homeo(params(p, q), params(p, p - q)), criterion);
        count += usize::from(criterion);
    }
    assert!(count > 0);
}

#[test]
fn homeomorphism_predicates_agree_with_arithmetic() {
    for p in 2..=40 {
        for (a, b) in (1..p).filter(|&a| gcd(p, a) == 1).flat_map(|a| (1..p).filter(move |&b| gcd(p, b) == 1).map(move |b| (a, b))) {
            let (x, y) = (params(p, a), params(p, b));
            let oriented = (a - b) % p == 0 || (a * b - 1) % p == 0;
            let unoriented = oriented || (a + b) % p == 0 || (a * b + 1) % p == 0;
            assert_eq!(lens_oriented_homeo(x, y), oriented, "({p},{a}) ({p},{b})");
            assert_eq!(lens_oriented_homeo_arith(x, y), oriented);
            assert_eq!(lens_unoriented_homeo(x, y), unoriented);
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(neg_cont_frac(params(27, 8)).terms(), &[4, 2, 3, 2]);
    assert_eq!(neg_cont_frac(params(27, 19)).terms(), &[2, 2, 4, 3]);
    assert_eq!(neg_cont_frac(params(7, 3)).terms(), &[3, 2, 2]);
    assert_eq!(neg_cont_frac(params(5, 2)).terms(), &[3, 2]);
    assert_eq!(neg_cont_frac(params(5, 3)).terms(), &[2, 3]);
    assert_eq!(eval_cont_frac(&NegContFrac::new(vec![3, 2, 2]).unwrap()).unwrap(), params(7, 3));
    assert_eq!(eval_cont_frac(&NegContFrac::new(vec![2, 2, 3]).unwrap()).unwrap(), params(7, 5));
    assert!(lens_oriented_homeo(params(7, 3), params(7, 5)));
    assert!(lens_oriented_homeo(params(5, 2), params(5, 3)));
    assert!(!lens_oriented_homeo(params(27, 8), params(27, 19)));
    assert!(lens_unoriented_homeo(params(27, 8), params(27, 19)));
}

#[test]
fn invalid_parameters() {
    for (p, q) in [(4, 2), (5, 0), (5, 5), (5, 7), (1, 1), (-5, 2)] {
        assert!(matches!(LensParams::new(p, q), Err(LensError::InvalidParams { .. })), "({p},{q})");
    }
    assert!(NegContFrac::new(vec![3, 1]).is_err());
    assert!(NegContFrac::new(vec![]).is_err());
}
