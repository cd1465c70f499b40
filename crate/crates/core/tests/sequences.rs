mod common;

use common::*;
use frobtest_core::duality::cohomology_profile;
use frobtest_core::harness::verify_bound;
use frobtest_core::sequences::{
    filter_regular, is_system_of_parameters, is_weak_sequence, limit_closure_chain, limit_closure_standard,
    min_order, random_filter_regular_sequence, sequence_report, StandardCertificate, DEFAULT_CHAIN_MAX_N,
    DEFAULT_SAMPLER_BUDGET,
};
use frobtest_core::{AlgebraError, Polynomial, QuotientRing};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sampled(s: &QuotientRing, degree: u32, seed: u64) -> Vec<Polynomial> {
    random_filter_regular_sequence(s, 2, degree, seed, DEFAULT_SAMPLER_BUDGET).unwrap()
}

fn bound_sum(s: &QuotientRing) -> u64 {
    let profile = cohomology_profile(s).unwrap();
    (0..profile.fin_dim)
        .map(|i| binomial(profile.dim as u64, i as u64) * profile.low_lengths[i])
        .sum()
}

#[test]
fn zero_divisors_are_not_filter_regular() {
    let s = two_planes(2);
    let r = s.ring().clone();
    assert!(!filter_regular(&polys(&r, &["x1", "x2"]), &s).unwrap());
    assert!(filter_regular(&polys(&r, &["x1+x3", "x2+x4"]), &s).unwrap());
    let report = sequence_report(&polys(&r, &["x1+x3", "x2+x4"]), &s, 1).unwrap();
    assert!(report.is_sop);
    assert_eq!(report.in_m_power, 1);
}

#[test]
fn linear_sop_limit_closure() {
    let s = two_planes(2);
    let r = s.ring().clone();
    let q = polys(&r, &["x1+x3", "x2+x4"]);
    let chain = limit_closure_chain(&q, &s, DEFAULT_CHAIN_MAX_N).unwrap();
    assert!(chain.stabilized);
    assert!(chain.quotient_length.unwrap() <= 2);
    assert_eq!(
        limit_closure_standard(&q, &s, StandardCertificate::FilterRegularIn { n0: 1 }).unwrap_err(),
        AlgebraError::NoStandardCertificate
    );
    let asserted = limit_closure_standard(&q, &s, StandardCertificate::UserAsserted).unwrap();
    assert!(asserted.user_asserted);
}

#[test]
fn regular_sequences_have_trivial_limit_closure() {
    let s = QuotientRing::polynomial_ring(&ring(5, &["x", "y", "z"]));
    let r = s.ring().clone();
    let q = polys(&r, &["x^2", "y^2", "z^2"]);
    let chain = limit_closure_chain(&q, &s, DEFAULT_CHAIN_MAX_N).unwrap();
    assert!(chain.ideal.equals(&s.ideal(&q).unwrap()).unwrap());
    assert_eq!(chain.quotient_length, Some(0));
}

#[test]
fn sampler_is_seeded() {
    let s = two_planes(3);
    assert_eq!(sampled(&s, 2, 9), sampled(&s, 2, 9));
    assert!(min_order(&sampled(&s, 3, 1)) >= 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn permutation_and_power_stability(seed in any::<u64>(), a in 1u64..=3, b in 1u64..=3, p in prop::sample::select(vec![2u64, 3])) {
        let s = two_planes(p);
        let q = sampled(&s, 1, seed);
        prop_assert!(filter_regular(&[q[1].clone(), q[0].clone()], &s).unwrap());
        prop_assert!(filter_regular(&[q[0].pow(a), q[1].pow(b)], &s).unwrap());
    }

    #[test]
    fn fermat_permutation_stability(seed in any::<u64>()) {
        let s = fermat();
        let q = sampled(&s, 1, seed);
        prop_assert!(filter_regular(&[q[1].clone(), q[0].clone()], &s).unwrap());
        prop_assert!(filter_regular(&[q[0].pow(2), q[1].pow(3)], &s).unwrap());
    }

    #[test]
    fn standard_sequences(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let s = two_planes(p);
        let profile = cohomology_profile(&s).unwrap();
        let q = sampled(&s, 2 * profile.n0, seed);
        let chain = limit_closure_chain(&q, &s, DEFAULT_CHAIN_MAX_N).unwrap();
        let formula = limit_closure_standard(&q, &s, StandardCertificate::FilterRegularIn { n0: profile.n0 }).unwrap();
        prop_assert!(chain.ideal.equals(&formula.ideal).unwrap());
        prop_assert_eq!(chain.quotient_length, Some(bound_sum(&s)));
        let colon = s.ideal(&q).unwrap().colon_maximal_power(profile.n0).unwrap();
        prop_assert!(colon.contains_ideal(&chain.ideal).unwrap());
        prop_assert!(is_weak_sequence(&q, profile.n0, &s).unwrap());
    }

    #[test]
    fn limit_length_is_bounded_for_every_sop(seed in any::<u64>()) {
        let s = two_planes(2);
        let q = sampled(&s, 1, seed);
        prop_assume!(is_system_of_parameters(&q, &s).unwrap());
        let chain = limit_closure_chain(&q, &s, DEFAULT_CHAIN_MAX_N).unwrap();
        prop_assert!(chain.quotient_length.unwrap() <= bound_sum(&s));
    }

    #[test]
    fn hsl_low_is_sequence_independent(a in any::<u64>(), b in any::<u64>()) {
        let s = fermat();
        let profile = cohomology_profile(&s).unwrap();
        let degree = 2 * profile.n0;
        let x = verify_bound("fermat", &s, &sampled(&s, degree, a), &profile, Some(1), 12).unwrap();
        let y = verify_bound("fermat", &s, &sampled(&s, degree, b), &profile, Some(1), 12).unwrap();
        prop_assert_eq!(x.hsl_low, y.hsl_low);
        let s = two_planes(3);
        let profile = cohomology_profile(&s).unwrap();
        let x = verify_bound("planes", &s, &sampled(&s, 2, a), &profile, None, 12).unwrap();
        let y = verify_bound("planes", &s, &sampled(&s, 2, b), &profile, None, 12).unwrap();
        prop_assert_eq!(x.hsl_low, y.hsl_low);
    }
}
