//! Strategies and property bodies shared by the property suite and the acceptance target.

#![allow(dead_code)]

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use mcurve_core::grobner::{buchberger, kernel_basis, toric_ideal, BuchbergerConfig};
use mcurve_core::monideal::{irreducible_decomposition, MonomialIdeal};
use mcurve_core::poly::{bidegree, is_member_binomial};
use mcurve_core::seq::{arithmetic_profile, generalized_profile, min_multiple};
use mcurve_core::{CurveSequence, Monomial, TermOrder};

pub const CASES: u32 = 256;

pub type Outcome = Result<(), TestCaseError>;

pub fn monomial(nvars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, nvars).prop_map(|e| Monomial::new(e).unwrap())
}

pub fn order(nvars: usize) -> impl Strategy<Value = TermOrder> {
    prop_oneof![
        Just(TermOrder::DegRevLex),
        (0..=nvars).prop_map(|eliminated| TermOrder::Block { eliminated }),
        (0..nvars).prop_map(|y| TermOrder::YWeighted { y }),
    ]
}

/// Increasing sequences with `n` in `2..=max_n` and `m_n <= max_mn`.
pub fn sequence(max_n: usize, max_mn: u64) -> impl Strategy<Value = CurveSequence> {
    prop::collection::btree_set(1..=max_mn, 2..=max_n)
        .prop_map(|s| CurveSequence::new(s.into_iter().collect()).unwrap())
}

pub fn arithmetic_sequence() -> impl Strategy<Value = CurveSequence> {
    (2usize..=6, 1u64..=6, 1u64..=30)
        .prop_filter("gcd(m1, d) = 1", |&(_, d, m1)| num_integer::gcd(m1, d) == 1)
        .prop_map(|(n, d, m1)| CurveSequence::arithmetic(m1, d, n).unwrap())
}

pub fn generalized_sequence() -> impl Strategy<Value = CurveSequence> {
    (3usize..=6, 2u64..=4, 1u64..=3, 1u64..=20)
        .prop_filter("gcd(m1, d) = 1", |&(_, h, e, m1)| {
            num_integer::gcd(m1, h * e) == 1
        })
        .prop_map(|(n, h, e, m1)| CurveSequence::generalized(m1, h, h * e, n).unwrap())
}

pub fn order_triples() -> impl Strategy<Value = (TermOrder, Monomial, Monomial, Monomial)> {
    (2usize..=6).prop_flat_map(|n| (order(n), monomial(n, 4), monomial(n, 4), monomial(n, 4)))
}

pub fn term_order_axioms((ord, a, b, c): (TermOrder, Monomial, Monomial, Monomial)) -> Outcome {
    let ab = ord.cmp(&a, &b);
    prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
    prop_assert_eq!(ab == Ordering::Equal, a == b);
    if ab == Ordering::Less && ord.cmp(&b, &c) == Ordering::Less {
        prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
    }
    let ac = a.checked_mul(&c).unwrap();
    let bc = b.checked_mul(&c).unwrap();
    prop_assert_eq!(ord.cmp(&ac, &bc), ab);
    prop_assert_ne!(ord.cmp(&Monomial::one(a.nvars()), &a), Ordering::Greater);
    Ok(())
}

pub fn sequence_with_pair() -> impl Strategy<Value = (CurveSequence, Monomial, Monomial)> {
    sequence(6, 40).prop_flat_map(|s| {
        let n = s.num_vars();
        (Just(s), monomial(n, 6), monomial(n, 6))
    })
}

pub fn bidegree_additivity((s, a, b): (CurveSequence, Monomial, Monomial)) -> Outcome {
    let product = a.checked_mul(&b).unwrap();
    prop_assert_eq!(
        bidegree(&s, &product).unwrap(),
        bidegree(&s, &a).unwrap() + bidegree(&s, &b).unwrap()
    );
    let total = bidegree(&s, &a).unwrap();
    prop_assert_eq!(total.s_deg + total.t_deg, a.degree() as u64 * s.last());
    Ok(())
}

/// A small sequence with a permutation of its lattice binomials followed by its toric basis.
pub fn sequence_with_permutation() -> impl Strategy<Value = (CurveSequence, Vec<usize>)> {
    sequence(5, 18).prop_flat_map(|s| {
        let k = kernel_basis(&s).unwrap().rank() + toric_ideal(&s).unwrap().len();
        (Just(s), Just((0..k).collect::<Vec<usize>>()).prop_shuffle())
    })
}

pub fn gb_permutation_invariance((s, perm): (CurveSequence, Vec<usize>)) -> Outcome {
    let order = TermOrder::DegRevLex;
    let mut gens = kernel_basis(&s).unwrap().binomials(&order).unwrap();
    gens.extend(toric_ideal(&s).unwrap().elements);
    let shuffled: Vec<_> = perm.iter().map(|&i| gens[i].clone()).collect();
    let base = buchberger(&gens, order, BuchbergerConfig::default()).unwrap();
    let other = buchberger(&shuffled, order, BuchbergerConfig::default()).unwrap();
    prop_assert_eq!(base.elements, other.elements);
    Ok(())
}

pub fn toric_sequence() -> impl Strategy<Value = CurveSequence> {
    sequence(6, 30)
}

pub fn no_monomial_in_toric_basis(s: CurveSequence) -> Outcome {
    let gb = toric_ideal(&s).unwrap();
    for b in &gb.elements {
        prop_assert!(b.lead.is_coprime(&b.trail), "{}", b);
        prop_assert!(!b.trail.is_one() && !b.lead.is_one());
        prop_assert!(is_member_binomial(&s, b));
    }
    Ok(())
}

pub fn ideal_with_probes() -> impl Strategy<Value = (MonomialIdeal, Vec<Monomial>)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(monomial(n, 3), 1..6).prop_map(move |g| MonomialIdeal::new(n, g)),
            prop::collection::vec(monomial(n, 5), 20),
        )
    })
}

/// Membership in the ideal equals membership in every component; no component contains another.
pub fn decomposition_membership((ideal, probes): (MonomialIdeal, Vec<Monomial>)) -> Outcome {
    if ideal.is_unit() {
        return Ok(());
    }
    let dec = irreducible_decomposition(&ideal);
    for m in &probes {
        prop_assert_eq!(ideal.contains(m), dec.contains(m), "{} in {}", m, ideal);
    }
    for (i, c) in dec.components.iter().enumerate() {
        for (j, other) in dec.components.iter().enumerate() {
            prop_assert!(i == j || !other.is_contained_in(c));
        }
    }
    Ok(())
}

pub fn min_multiple_arithmetic(s: CurveSequence) -> Outcome {
    let p = arithmetic_profile(&s).unwrap();
    prop_assert_eq!(min_multiple(&s, None).unwrap(), p.alpha + 1);
    Ok(())
}

pub fn min_multiple_generalized(s: CurveSequence) -> Outcome {
    let p = generalized_profile(&s).unwrap();
    prop_assert_eq!(min_multiple(&s, None).unwrap(), p.delta);
    Ok(())
}
