mod common;

use common::*;
use frobtest_core::duality::{
    cohomology_profile, ext_module, free_resolution, module_annihilator, module_length, ModulePresentation,
};
use frobtest_core::groebner::combine;
use frobtest_core::{Ideal, Monomial, Polynomial, QuotientRing};
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Hilbert function read off the graded shifts of a free resolution.
fn hilbert_from_shifts(shifts: &[Vec<i64>], n: usize, d: i64) -> i64 {
    shifts
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * fi.iter().map(|&a| binomial(d - a + n as i64 - 1, n as i64 - 1)).sum::<i64>()
        })
        .sum()
}

fn check_resolution(s: &QuotientRing) -> Result<(), TestCaseError> {
    let r = s.ring().clone();
    let n = r.nvars();
    let res = free_resolution(s, n + 1).unwrap();
    prop_assert!(res.length() <= n);
    for i in 1..res.maps().len() {
        let rank = res.shifts()[i - 1].len();
        for col in &res.maps()[i] {
            prop_assert!(combine(&res.maps()[i - 1], col.components(), &r, rank).unwrap().is_zero());
        }
    }
    let gens = s.defining().reduced_gens();
    for d in 0..=6 {
        prop_assert_eq!(
            hilbert_from_shifts(res.shifts(), n, d),
            hilbert_function(&gens, n, r.characteristic() as u64, d as u64) as i64
        );
    }
    if !s.defining().is_zero() {
        let alternating: i64 = res
            .ranks()
            .iter()
            .enumerate()
            .map(|(i, &k)| if i % 2 == 0 { k as i64 } else { -(k as i64) })
            .sum();
        prop_assert_eq!(alternating, 0);
    }
    Ok(())
}

fn annihilator_kills(m: &ModulePresentation) -> Result<(), TestCaseError> {
    let ann = module_annihilator(m).unwrap();
    for a in ann.gens() {
        for c in 0..m.rank() {
            prop_assert!(m.kills(a, c).unwrap());
        }
    }
    Ok(())
}

#[test]
fn koszul_ranks() {
    let r = ring(5, &["x", "y", "z"]);
    let s = QuotientRing::new(Ideal::maximal(&r));
    let res = free_resolution(&s, 4).unwrap();
    assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
    assert_eq!(res.shifts()[3], vec![3]);
    assert!(res.is_complex().unwrap());
}

#[test]
fn twisted_cubic_resolution() {
    let r = ring(7, &["a", "b", "c", "d"]);
    let s = QuotientRing::from_strings(&r, &["a*c - b^2", "a*d - b*c", "b*d - c^2"]).unwrap();
    let res = free_resolution(&s, 5).unwrap();
    assert_eq!(res.ranks(), vec![1, 3, 2]);
    assert_eq!(res.shifts()[2], vec![3, 3]);
    let profile = cohomology_profile(&s).unwrap();
    assert_eq!((profile.dim, profile.fin_dim), (2, 2));
    assert_eq!(profile.low_lengths, vec![0, 0]);
}

#[test]
fn rational_quartic_is_not_cohen_macaulay() {
    // k[s^4, s^3 t, s t^3, t^4]: depth 1, H^1 = k
    let r = ring(3, &["a", "b", "c", "d"]);
    let s = QuotientRing::from_strings(&r, &["b*c - a*d", "c^3 - b*d^2", "a*c^2 - b^2*d", "b^3 - a^2*c"]).unwrap();
    let profile = cohomology_profile(&s).unwrap();
    assert_eq!(profile.dim, 2);
    assert_eq!(profile.low_lengths, vec![0, 1]);
    assert_eq!(profile.n0, 1);
}

#[test]
fn polynomial_ring_profile() {
    let s = QuotientRing::polynomial_ring(&ring(2, &["x", "y"]));
    let profile = cohomology_profile(&s).unwrap();
    assert_eq!((profile.dim, profile.fin_dim), (2, 2));
    assert_eq!(profile.low_lengths, vec![0, 0]);
    assert_eq!(profile.socle_lengths[2][1], 1);
}

#[test]
fn artinian_rings_are_refused() {
    let r = ring(2, &["x", "y"]);
    let s = QuotientRing::from_strings(&r, &["x^2", "y^2"]).unwrap();
    assert!(cohomology_profile(&s).is_err());
    let bent = QuotientRing::from_strings(&r, &["x^2 - y"]).unwrap();
    assert!(free_resolution(&bent, 3).is_err());
}

#[test]
fn ext_of_the_residue_field() {
    let r = ring(3, &["x", "y", "z"]);
    let s = QuotientRing::new(Ideal::maximal(&r));
    let res = free_resolution(&s, 4).unwrap();
    assert_eq!(module_length(&ext_module(&res, 3).unwrap()), Some(1));
    for j in 0..3 {
        assert_eq!(module_length(&ext_module(&res, j).unwrap()), Some(0));
    }
}

fn monomial_ring() -> impl Strategy<Value = QuotientRing> {
    prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..=3).prop_map(|exps| {
        let r = ring(3, &["x", "y", "z"]);
        let gens: Vec<Polynomial> = exps
            .iter()
            .filter(|e| e.iter().any(|&a| a > 0))
            .map(|e| r.term(Monomial::from_exponents(e), 1))
            .collect();
        QuotientRing::new(Ideal::new(&r, gens).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn resolutions_of_monomial_rings(s in monomial_ring()) {
        check_resolution(&s)?;
    }

    #[test]
    fn resolutions_of_random_forms(gens in prop::collection::vec(arb_form(ring(2, &["x", "y", "z"]), 2, 3), 1..=2)) {
        let r = gens[0].ring().clone();
        check_resolution(&QuotientRing::new(Ideal::new(&r, gens).unwrap()))?;
    }

    #[test]
    fn hypersurfaces_are_cohen_macaulay(f in arb_form(ring(3, &["x", "y", "z"]), 3, 5)) {
        let s = QuotientRing::new(Ideal::new(f.ring(), vec![f.clone()]).unwrap());
        let profile = cohomology_profile(&s).unwrap();
        prop_assert_eq!(profile.fin_dim, profile.dim);
        prop_assert!(profile.low_lengths.iter().all(|&l| l == 0));
    }

    #[test]
    fn annihilators_kill_ext(s in monomial_ring()) {
        let n = s.ring().nvars();
        let res = free_resolution(&s, n + 1).unwrap();
        for j in 0..=n {
            annihilator_kills(&ext_module(&res, j).unwrap())?;
        }
    }
}
