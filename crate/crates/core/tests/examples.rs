use std::cmp::Ordering;

use mcurve_core::arith_forms::*;
use mcurve_core::gen_forms::*;
use mcurve_core::grobner::*;
use mcurve_core::koszul::*;
use mcurve_core::monideal::*;
use mcurve_core::poly::{bidegree, is_member_binomial, BiDegree};
use mcurve_core::seq::*;
use mcurve_core::{Binomial, CurveSequence, Error, Monomial, TermOrder};

fn seq(v: &[u64]) -> CurveSequence {
    CurveSequence::new(v.to_vec()).unwrap()
}

fn mono(text: &str, nvars: usize) -> Monomial {
    Monomial::parse(text, nvars).unwrap()
}

fn ideal(nvars: usize, gens: &[&str]) -> MonomialIdeal {
    MonomialIdeal::new(nvars, gens.iter().map(|g| mono(g, nvars)).collect())
}

fn strings(v: &[Binomial]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(Binomial::to_string).collect();
    s.sort();
    s
}

#[test]
fn parsing_and_classification() {
    assert_eq!(parse_sequence("10,13,16,19,22").unwrap().len(), 5);
    assert_eq!(parse_sequence("1,2").unwrap().len(), 2);
    assert!(matches!(
        parse_sequence("5,3"),
        Err(Error::NonIncreasing { .. })
    ));
    assert_eq!(
        classify(&seq(&[10, 13, 16, 19, 22])).kind,
        ClassKind::Arithmetic { d: 3 }
    );
    assert_eq!(
        classify(&seq(&[7, 30, 39, 48, 57, 66])).kind,
        ClassKind::GeneralizedArithmetic { h: 3, d: 9 }
    );
    assert_eq!(classify(&seq(&[1, 2, 5])).kind, ClassKind::General);
}

#[test]
fn profiles() {
    let p = arithmetic_profile(&seq(&[3, 5, 7])).unwrap();
    assert_eq!((p.q, p.r, p.alpha, p.k, p.tau), (1, 1, 3, 2, 2));
    let g = generalized_profile(&seq(&[7, 30, 39, 48, 57, 66])).unwrap();
    assert_eq!(g.delta, 15);
    assert_eq!(g.beta, vec![6, 5, 3, 2, 1, 0]);
    assert_eq!(g.sigma, vec![4, 3, 6, 5, 4, 3]);
    assert_eq!(g.lambda, vec![2, 2, 1, 1, 1, 1]);
    assert_eq!(min_multiple(&seq(&[10, 13, 16, 19, 22]), None).unwrap(), 6);
    assert_eq!(
        min_multiple(&seq(&[7, 30, 39, 48, 57, 66]), None).unwrap(),
        15
    );
    assert_eq!(min_multiple(&seq(&[1, 2]), None).unwrap(), 2);
}

#[test]
fn term_order_examples() {
    let order = TermOrder::DegRevLex;
    assert_eq!(
        order.compare(&mono("x1*x2", 4), &mono("x3*x4", 4)).unwrap(),
        Ordering::Greater
    );
    let lead = mono("x1^5*x2", 6);
    let trail = mono("x4*x5^2*x6^3", 6);
    assert_eq!(order.compare(&lead, &trail).unwrap(), Ordering::Greater);
    let y = TermOrder::YWeighted { y: 4 };
    assert_eq!(
        y.compare(&mono("x5^2", 5), &mono("x1*x2", 5)).unwrap(),
        Ordering::Greater
    );
    assert!(matches!(
        order.compare(&mono("x1", 2), &mono("x1", 3)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn bidegrees_and_membership() {
    let s = seq(&[1, 2, 3]);
    assert_eq!(
        bidegree(&s, &mono("x1^2", 4)).unwrap(),
        BiDegree { s_deg: 2, t_deg: 4 }
    );
    assert_eq!(
        bidegree(&s, &mono("x2*x4", 4)).unwrap(),
        BiDegree { s_deg: 2, t_deg: 4 }
    );
    let big = seq(&[10, 13, 16, 19, 22]);
    assert_eq!(
        bidegree(&big, &mono("x1^6", 6)).unwrap(),
        BiDegree {
            s_deg: 60,
            t_deg: 72
        }
    );
    let order = TermOrder::DegRevLex;
    let member = |s: &CurveSequence, text: &str| {
        is_member_binomial(s, &Binomial::parse(text, s.num_vars(), &order).unwrap())
    };
    assert!(member(&s, "x2^2 - x1*x3"));
    assert!(member(&seq(&[3, 5, 7]), "x1^3*x2 - x3^2*x4^2"));
    assert!(!member(&s, "x1*x2 - x2*x4"));
}

#[test]
fn buchberger_examples() {
    let order = TermOrder::DegRevLex;
    let gens: Vec<Binomial> = ["x2^2 - x1*x3", "x1^2 - x2*x4", "x1*x2 - x3*x4"]
        .iter()
        .map(|t| Binomial::parse(t, 4, &order).unwrap())
        .collect();
    let gb = buchberger(&gens, order, BuchbergerConfig::default()).unwrap();
    assert_eq!(strings(&gb.elements), strings(&gens));
    assert!(buchberger(&[], order, BuchbergerConfig::default())
        .unwrap()
        .is_empty());
    let closed = gb_arithmetic(&seq(&[10, 13, 16, 19, 22])).unwrap();
    let gb = buchberger(&closed, order, BuchbergerConfig::default()).unwrap();
    assert_eq!(
        gb.elements,
        toric_ideal(&seq(&[10, 13, 16, 19, 22])).unwrap().elements
    );
}

#[test]
fn toric_and_initial_ideals() {
    let gb = toric_ideal(&seq(&[1, 2, 3])).unwrap();
    assert_eq!(gb.initial_ideal().to_string(), "<x2^2, x1*x2, x1^2>");
    let big = toric_ideal(&seq(&[10, 13, 16, 19, 22])).unwrap();
    assert_eq!(big.len(), 9);
    let expected = ideal(
        6,
        &[
            "x2^2", "x2*x3", "x2*x4", "x3^2", "x3*x4", "x4^2", "x1^5*x1", "x1^5*x2", "x1^5*x3",
        ],
    );
    assert_eq!(big.initial_ideal(), expected);
    let empty = GroebnerBasis {
        nvars: 3,
        order: TermOrder::DegRevLex,
        elements: Vec::new(),
        reduced: true,
    };
    assert!(initial_ideal(&empty).is_zero());
}

#[test]
fn elimination_examples() {
    let s = seq(&[7, 30, 39, 48, 57, 66]);
    let elim = eliminate(&s, 1).unwrap();
    let tail = toric_ideal(&seq(&[30, 39, 48, 57, 66])).unwrap();
    let shifted: Vec<Monomial> = tail
        .leads()
        .map(|m| {
            let mut e = vec![0];
            e.extend_from_slice(m.exps());
            Monomial::new(e).unwrap()
        })
        .collect();
    assert_eq!(elim.initial_ideal(), MonomialIdeal::new(7, shifted));
    assert_eq!(
        eliminate(&s, 0).unwrap().elements,
        toric_ideal(&s).unwrap().elements
    );
}

#[test]
fn quadric_examples() {
    assert_eq!(
        strings(&quadrics_in_ideal(&seq(&[1, 2, 3]))),
        vec!["x1*x2 - x3*x4", "x1^2 - x2*x4", "x2^2 - x1*x3"]
    );
    assert_eq!(
        strings(&quadrics_in_ideal(&seq(&[3, 5, 7]))),
        vec!["x2^2 - x1*x3"]
    );
    let geometric = strings(&quadrics_in_ideal(&seq(&[1, 2, 4, 8])));
    for q in ["x1^2 - x2*x5", "x2^2 - x3*x5", "x3^2 - x4*x5"] {
        assert!(geometric.contains(&q.to_string()), "{q}");
    }
    assert!(is_generated_by_quadrics(&seq(&[1, 2, 3])).unwrap());
    assert!(!is_generated_by_quadrics(&seq(&[3, 5, 7])).unwrap());
    assert!(is_generated_by_quadrics(&seq(&[1, 2, 3, 5])).unwrap());
    assert!(has_quadratic_gb(&seq(&[1, 2, 3]), TermOrder::DegRevLex).unwrap());
    assert!(!has_quadratic_gb(&seq(&[10, 13, 16, 19, 22]), TermOrder::DegRevLex).unwrap());
    assert!(has_quadratic_gb(&seq(&[1, 2, 4, 8]), TermOrder::DegRevLex).unwrap());
}

#[test]
fn decomposition_examples() {
    let s = seq(&[10, 13, 16, 19, 22]);
    let init = toric_ideal(&s).unwrap().initial_ideal();
    let dec = irreducible_decomposition(&init);
    let x1: Vec<u32> = dec
        .components
        .iter()
        .map(|c| c.exponent(0).unwrap())
        .collect();
    let mut sorted = x1.clone();
    sorted.sort();
    assert_eq!(sorted, vec![5, 5, 6]);
    assert!(is_nested_type(&init));
    assert_eq!(reg_nested_type(&init).unwrap(), 6);
    let p = arithmetic_profile(&s).unwrap();
    assert_eq!(irred_dec_arithmetic(&p), dec);

    let g = seq(&[7, 30, 39, 48, 57, 66]);
    let ginit = toric_ideal(&g).unwrap().initial_ideal();
    assert!(is_nested_type(&ginit));
    assert_eq!(reg_nested_type(&ginit).unwrap(), 14);
    assert_eq!(
        irred_dec_generalized(&g).unwrap(),
        irreducible_decomposition(&ginit)
    );
    let small = toric_ideal(&seq(&[4, 5, 6, 7, 8])).unwrap().initial_ideal();
    assert_eq!(reg_nested_type(&small).unwrap(), 2);
}

#[test]
fn hilbert_counting_examples() {
    assert_eq!(hf_quotient(&MonomialIdeal::zero(3), 3, 2), 6);
    let small = toric_ideal(&seq(&[4, 5, 6, 7, 8])).unwrap().initial_ideal();
    assert_eq!(hf_quotient(&small, 6, 3), 22);
    assert_eq!(hf_quotient_brute(&small, 6, 3), 22);
    let big = toric_ideal(&seq(&[10, 13, 16, 19, 22]))
        .unwrap()
        .initial_ideal();
    assert_eq!(hf_quotient(&big, 6, 7), 110);
    assert_eq!(hs_numerator(&big, 6).unwrap(), vec![1, 4, 4, 4, 4, 4, 1]);
    assert_eq!(hs_numerator(&small, 6).unwrap(), vec![1, 4, 3]);
    let (first, correction) = hs_general_split(&big, &seq(&[10, 13, 16, 19, 22])).unwrap();
    assert_eq!(first, vec![1, 4, 4, 4, 4, 4, 1]);
    assert!(correction.is_empty());
    let g = seq(&[7, 30, 39, 48, 57, 66]);
    let ginit = toric_ideal(&g).unwrap().initial_ideal();
    let (_, correction) = hs_general_split(&ginit, &g).unwrap();
    assert!(!correction.is_empty());
}

#[test]
fn cohen_macaulay_examples() {
    let big = seq(&[10, 13, 16, 19, 22]);
    let init = toric_ideal(&big).unwrap().initial_ideal();
    assert!(cm_via_initial(&init, 5));
    assert_eq!(cm_type_oracle(&big, &init).unwrap(), 1);
    let g = seq(&[7, 30, 39, 48, 57, 66]);
    let ginit = toric_ideal(&g).unwrap().initial_ideal();
    assert!(!cm_via_initial(&ginit, 6));
    assert!(last_step_check(&g, &ginit, 14).unwrap());
    assert!(cm_via_initial(&MonomialIdeal::zero(4), 3));
    for (v, t) in [(&[4u64, 5, 6, 7, 8][..], 3), (&[3, 5, 7][..], 2)] {
        let s = seq(v);
        let init = toric_ideal(&s).unwrap().initial_ideal();
        assert_eq!(cm_type_oracle(&s, &init).unwrap(), t);
        assert_eq!(cm_type_arithmetic(&s).unwrap(), t);
    }
}

#[test]
fn arithmetic_closed_forms() {
    assert_eq!(reg_arithmetic(&seq(&[3, 5, 7])).unwrap(), 3);
    let h = hilbert_arithmetic(&seq(&[10, 13, 16, 19, 22])).unwrap();
    assert_eq!(h.hf_reg, 5);
    assert!((5..20).all(|s| h.hf_at(s) == 22 * s - 44));
    let h = hilbert_arithmetic(&seq(&[4, 5, 6, 7, 8])).unwrap();
    assert_eq!(h.hf_at(0), 1);
    assert!((1..20).all(|s| h.hf_at(s) == 8 * s - 2));
    assert!(is_gorenstein(&seq(&[10, 13, 16, 19, 22])).unwrap());
    assert!(!is_gorenstein(&seq(&[4, 5, 6, 7, 8])).unwrap());
    assert!(is_gorenstein(&seq(&[3, 8])).unwrap());
    assert_eq!(
        betti1_arithmetic(&arithmetic_profile(&seq(&[1, 2])).unwrap()),
        1
    );
    assert_eq!(
        betti1_arithmetic(&arithmetic_profile(&seq(&[3, 5, 7])).unwrap()),
        3
    );
}

#[test]
fn generalized_closed_forms() {
    assert!(!is_cm_generalized(&seq(&[7, 30, 39, 48, 57, 66])).unwrap());
    assert!(is_cm_generalized(&seq(&[10, 13, 16, 19, 22])).unwrap());
    assert!(is_cm_generalized(&seq(&[3, 5, 7])).unwrap());
    assert!(is_complete_intersection(&seq(&[1, 2])).unwrap());
    assert!(is_complete_intersection(&seq(&[4, 7, 10])).unwrap());
    assert!(!is_complete_intersection(&seq(&[3, 5, 7])).unwrap());
    assert_eq!(reg_generalized(&seq(&[5, 24, 28, 32, 36])).unwrap(), 11);
    let s = seq(&[5, 24, 28, 32, 36]);
    let init = toric_ideal(&s).unwrap().initial_ideal();
    assert_eq!(reg_nested_type(&init).unwrap(), 11);
    let g = seq(&[7, 30, 39, 48, 57, 66]);
    assert_eq!(
        gb_generalized_size(&g).unwrap() as usize,
        gb_generalized(&g).unwrap().len()
    );
    assert_eq!(not_cm_witness(&seq(&[10, 13, 16, 19, 22])), None);
}

#[test]
fn n3_series_cases() {
    for v in [[3u64, 10, 14], [5, 14, 18]] {
        let s = seq(&v);
        let init = toric_ideal(&s).unwrap().initial_ideal();
        let oracle = hs_numerator(&init, 4).unwrap();
        assert_eq!(hs_n3(&s).unwrap(), oracle);
        assert_eq!(hilbert_generalized(&s).unwrap().hs_numerator, oracle);
    }
}

#[test]
fn koszul_examples() {
    assert!(koszul_generalized(&seq(&[1, 2, 3])).unwrap());
    assert!(koszul_n3(&seq(&[1, 2, 4])).unwrap());
    assert!(!koszul_n4(&seq(&[1, 2, 3, 7])).unwrap());
    let s = koszul_status(&seq(&[1, 2, 5]));
    assert!(s.is_consistent());
    assert_eq!(koszul_status(&seq(&[1, 2, 4, 8])).reason, Reason::Geometric);
}
