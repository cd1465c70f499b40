//! Filter-regular and weak sequences, systems of parameters, limit closures
//! and the Frobenius nilpotency read off limit closures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::CohomologyProfile;
use crate::error::{AlgebraError, Result};
use crate::frobenius::{frobenius_power, FrobeniusClosureResult};
use crate::ideal::{Dimension, Ideal, QuotientRing};
use crate::poly::{Degree, Polynomial};

pub const DEFAULT_CHAIN_MAX_N: u32 = 10;
pub const DEFAULT_SAMPLER_BUDGET: usize = 200;
const RESTART_AFTER: usize = 16;

#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub elements: Vec<Polynomial>,
    pub is_filter_regular: bool,
    pub is_sop: bool,
    /// Least order (lowest term degree) over the elements.
    pub in_m_power: u64,
    /// Least n for which the sequence is m^n-weak, searched up to a cap.
    pub weak_n: Option<u32>,
}

fn order_of(f: &Polynomial) -> u64 {
    match f.order() {
        Degree::Finite(d) => d,
        Degree::MinusInfinity => u64::MAX,
    }
}

/// Largest k with every element in m^k.
pub fn min_order(seq: &[Polynomial]) -> u64 {
    seq.iter().map(order_of).min().unwrap_or(u64::MAX)
}

fn prefix_ideal(seq: &[Polynomial], i: usize, s: &QuotientRing) -> Result<Ideal> {
    s.ideal(&seq[..i])
}

fn check_ring(seq: &[Polynomial], s: &QuotientRing) -> Result<()> {
    for f in seq {
        if !crate::poly::PolyRing::same(f.ring(), s.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    Ok(())
}

/// A : x, where x may vanish (then the colon is the unit ideal).
fn colon_or_unit(a: &Ideal, x: &Polynomial) -> Result<Ideal> {
    if x.is_zero() {
        Ok(Ideal::unit(a.ring()))
    } else {
        a.colon_element(x)
    }
}

/// ((x_1..x_(i-1)) + J) : x_i ⊆ sat((x_1..x_(i-1)) + J, m) for every i.
pub fn filter_regular(seq: &[Polynomial], s: &QuotientRing) -> Result<bool> {
    check_ring(seq, s)?;
    let m = s.maximal_ideal();
    for i in 0..seq.len() {
        let a = prefix_ideal(seq, i, s)?;
        let colon = colon_or_unit(&a, &seq[i])?;
        if colon.equals(&a)? {
            continue;
        }
        let (sat, _) = a.saturate(&m)?;
        if !sat.contains_ideal(&colon)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Filter regularity together with the other cheap sequence data.
pub fn is_filter_regular(seq: &[Polynomial], s: &QuotientRing) -> Result<SequenceReport> {
    Ok(SequenceReport {
        elements: seq.to_vec(),
        is_filter_regular: filter_regular(seq, s)?,
        is_sop: is_system_of_parameters(seq, s)?,
        in_m_power: min_order(seq),
        weak_n: None,
    })
}

/// As [`is_filter_regular`], also searching weak_n in 1..=2·n0+2.
pub fn sequence_report(seq: &[Polynomial], s: &QuotientRing, n0: u32) -> Result<SequenceReport> {
    let mut report = is_filter_regular(seq, s)?;
    for n in 1..=2 * n0 + 2 {
        if is_weak_sequence(seq, n, s)? {
            report.weak_n = Some(n);
            break;
        }
    }
    Ok(report)
}

/// ((x_<i) + J) : x_i ⊆ ((x_<i) + J) : m^n for every i.
pub fn is_weak_sequence(seq: &[Polynomial], n: u32, s: &QuotientRing) -> Result<bool> {
    check_ring(seq, s)?;
    for i in 0..seq.len() {
        let a = prefix_ideal(seq, i, s)?;
        let colon = colon_or_unit(&a, &seq[i])?;
        if colon.equals(&a)? {
            continue;
        }
        let big = a.colon_maximal_power(n)?;
        if !big.contains_ideal(&colon)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Length equals dim S and S/(seq) has dimension 0.
pub fn is_system_of_parameters(seq: &[Polynomial], s: &QuotientRing) -> Result<bool> {
    check_ring(seq, s)?;
    match s.dim() {
        Dimension::Finite(d) if d == seq.len() => Ok(s.ideal(seq)?.krull_dim() == Dimension::Finite(0)),
        _ => Ok(false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitMethod {
    Chain,
    StandardFormula,
}

#[derive(Clone, Debug)]
pub struct LimitClosureResult {
    /// Contains the sequence ideal and J.
    pub ideal: Ideal,
    pub method: LimitMethod,
    pub chain_n: Option<u32>,
    /// False when the chain budget ran out before two equal steps.
    pub stabilized: bool,
    /// Whether standardness was asserted by the caller rather than certified.
    pub user_asserted: bool,
    /// ℓ(lim / ((seq) + J)) when finite.
    pub quotient_length: Option<u64>,
}

fn relative_length(outer: &Ideal, inner: &Ideal) -> Option<u64> {
    outer.quotient_length(inner).ok()
}

/// L_n = ((x_1^(n+1), .., x_s^(n+1)) + J) : (x_1⋯x_s)^n, stopped at the first
/// n with L_n = L_(n+1) = L_(n+2).
pub fn limit_closure_chain(seq: &[Polynomial], s: &QuotientRing, max_n: u32) -> Result<LimitClosureResult> {
    check_ring(seq, s)?;
    let ring = s.ring();
    let product = seq.iter().fold(ring.one(), |acc, x| &acc * x);
    let stage = |n: u32| -> Result<Ideal> {
        let powers: Vec<Polynomial> = seq.iter().map(|x| x.pow(n as u64 + 1)).collect();
        let base = s.ideal(&powers)?;
        if product.is_zero() {
            return Ok(Ideal::unit(ring));
        }
        Ok(colon_or_unit(&base, &product.pow(n as u64))?.minimized())
    };
    let base = s.ideal(seq)?;
    let mut chain = vec![stage(1)?];
    let mut found = None;
    let mut n = 1u32;
    while n + 2 <= max_n.max(3) {
        while chain.len() < (n as usize) + 2 {
            chain.push(stage(chain.len() as u32 + 1)?);
        }
        let k = (n - 1) as usize;
        if chain[k].equals(&chain[k + 1])? && chain[k + 1].equals(&chain[k + 2])? {
            found = Some(n);
            break;
        }
        n += 1;
    }
    let ideal = match found {
        Some(n) => chain[(n - 1) as usize].clone(),
        None => chain.last().expect("nonempty").clone(),
    };
    let quotient_length = relative_length(&ideal, &base);
    Ok(LimitClosureResult {
        ideal,
        method: LimitMethod::Chain,
        chain_n: found,
        stabilized: found.is_some(),
        user_asserted: false,
        quotient_length,
    })
}

/// Why a sequence may be treated as standard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardCertificate {
    /// Filter regular and inside m^(2·n0); checked before use.
    FilterRegularIn { n0: u32 },
    /// Taken on the caller's word; recorded in the result.
    UserAsserted,
}

/// (x_1..x_s) + J + Σ_i ((x_j : j ≠ i) + J) : x_i, valid for standard sequences.
pub fn limit_closure_standard(
    seq: &[Polynomial],
    s: &QuotientRing,
    certificate: StandardCertificate,
) -> Result<LimitClosureResult> {
    check_ring(seq, s)?;
    if let StandardCertificate::FilterRegularIn { n0 } = certificate {
        if min_order(seq) < 2 * n0 as u64 || !filter_regular(seq, s)? {
            return Err(AlgebraError::NoStandardCertificate);
        }
    }
    let base = s.ideal(seq)?;
    let mut acc = base.clone();
    for i in 0..seq.len() {
        let others: Vec<Polynomial> = seq
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.clone())
            .collect();
        let c = colon_or_unit(&s.ideal(&others)?, &seq[i])?;
        acc = acc.sum(&c)?;
    }
    let ideal = acc.minimized();
    let quotient_length = relative_length(&ideal, &base);
    Ok(LimitClosureResult {
        ideal,
        method: LimitMethod::StandardFormula,
        chain_n: None,
        stabilized: true,
        user_asserted: certificate == StandardCertificate::UserAsserted,
        quotient_length,
    })
}

/// Least e ≥ 0 with z^(p^e) ∈ (seq)^[p^e] + J for every generator z of
/// lim ∩ (seq)^F, where `closure` is the Frobenius closure of (seq).
///
/// Requires a filter-regular sequence of length t; it must lie in m^(2·n0)
/// unless all low cohomology vanishes.
pub fn hsl_low(
    seq: &[Polynomial],
    s: &QuotientRing,
    closure: &FrobeniusClosureResult,
    profile: &CohomologyProfile,
) -> Result<u32> {
    check_ring(seq, s)?;
    if seq.len() != profile.fin_dim {
        return Err(AlgebraError::Precondition(format!(
            "sequence length {} differs from finiteness dimension {}",
            seq.len(),
            profile.fin_dim
        )));
    }
    let vanishing = profile.low_lengths.iter().all(|&l| l == 0);
    if !vanishing && min_order(seq) < 2 * profile.n0 as u64 {
        return Err(AlgebraError::Precondition("sequence not contained in m^(2·n0)".into()));
    }
    if !filter_regular(seq, s)? {
        return Err(AlgebraError::Precondition("sequence is not filter regular".into()));
    }
    let lim = limit_closure_chain(seq, s, DEFAULT_CHAIN_MAX_N)?;
    if !lim.stabilized {
        return Err(AlgebraError::ChainNotStabilized(DEFAULT_CHAIN_MAX_N));
    }
    let z = lim.ideal.intersect(&closure.closure)?.minimized();
    let seq_ideal = crate::ideal::Ideal::new(s.ring(), seq.to_vec())?;
    let limit = closure.certificate_e_star.unwrap_or(0).max(closure.reached_e);
    let gens = z.reduced_gens();
    for e in 0..=limit {
        let target = frobenius_power(&seq_ideal, e)?.sum(s.defining())?;
        let mut ok = true;
        for g in &gens {
            if !target.contains(&g.frob_pow(e))? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(e);
        }
    }
    Err(AlgebraError::Precondition(
        "limit closure meets the Frobenius closure outside its own stabilization".into(),
    ))
}

/// Seeded rejection sampling of homogeneous forms of `degree`, built one
/// element at a time so that every prefix is filter regular.
pub fn random_filter_regular_sequence(
    s: &QuotientRing,
    t: usize,
    degree: u32,
    seed: u64,
    budget: usize,
) -> Result<Vec<Polynomial>> {
    if degree == 0 {
        return Err(AlgebraError::Precondition("sampling degree must be positive".into()));
    }
    let ring = s.ring();
    let p = ring.characteristic();
    let monos = ring.monomials_of_degree(degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq: Vec<Polynomial> = Vec::with_capacity(t);
    let mut attempts = 0usize;
    let mut stuck = 0usize;
    while seq.len() < t {
        if attempts >= budget {
            return Err(AlgebraError::BudgetExhausted { attempts });
        }
        attempts += 1;
        let form = Polynomial::from_terms(ring, monos.iter().map(|m| (m.clone(), rng.gen_range(0..p))));
        if form.is_zero() {
            continue;
        }
        seq.push(form);
        if filter_regular_last(&seq, s)? {
            stuck = 0;
        } else {
            seq.pop();
            stuck += 1;
            // a prefix can admit no extension of this degree over a small field
            if stuck >= RESTART_AFTER && !seq.is_empty() {
                seq.clear();
                stuck = 0;
            }
        }
    }
    Ok(seq)
}

/// Filter-regularity condition for the last element only.
fn filter_regular_last(seq: &[Polynomial], s: &QuotientRing) -> Result<bool> {
    let i = seq.len() - 1;
    let a = prefix_ideal(seq, i, s)?;
    let colon = colon_or_unit(&a, &seq[i])?;
    if colon.equals(&a)? {
        return Ok(true);
    }
    let (sat, _) = a.saturate(&s.maximal_ideal())?;
    sat.contains_ideal(&colon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_all;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn two_planes(p: u64) -> QuotientRing {
        let r = ring(p, &["x1", "x2", "x3", "x4"]);
        QuotientRing::from_strings(&r, &["x1*x3", "x1*x4", "x2*x3", "x2*x4"]).unwrap()
    }

    fn seq(s: &QuotientRing, xs: &[&str]) -> Vec<Polynomial> {
        parse_all(xs, s.ring()).unwrap()
    }

    #[test]
    fn filter_regular_examples() {
        let s = QuotientRing::polynomial_ring(&ring(3, &["x", "y"]));
        assert!(filter_regular(&seq(&s, &["x"]), &s).unwrap());
        let tp = two_planes(2);
        assert!(!filter_regular(&seq(&tp, &["x1"]), &tp).unwrap());
        let sop = seq(&tp, &["x1+x3", "x2+x4"]);
        let rep = is_filter_regular(&sop, &tp).unwrap();
        assert!(rep.is_filter_regular && rep.is_sop);
        assert_eq!(rep.in_m_power, 1);
    }

    #[test]
    fn weak_sequence_examples() {
        let s = QuotientRing::polynomial_ring(&ring(5, &["x", "y"]));
        assert!(is_weak_sequence(&seq(&s, &["x", "y"]), 3, &s).unwrap());
        let tp = two_planes(2);
        assert!(is_weak_sequence(&seq(&tp, &["x1^2+x3^2", "x2^2+x4^2"]), 1, &tp).unwrap());
        assert!(!is_weak_sequence(&seq(&tp, &["x1"]), 1, &tp).unwrap());
        let rep = sequence_report(&seq(&tp, &["x1^2+x3^2", "x2^2+x4^2"]), &tp, 1).unwrap();
        assert_eq!(rep.weak_n, Some(1));
    }

    #[test]
    fn sop_examples() {
        let s = QuotientRing::polynomial_ring(&ring(5, &["x", "y"]));
        assert!(is_system_of_parameters(&seq(&s, &["x", "y"]), &s).unwrap());
        let tp = two_planes(3);
        assert!(is_system_of_parameters(&seq(&tp, &["x1+x3", "x2+x4"]), &tp).unwrap());
        assert!(!is_system_of_parameters(&seq(&tp, &["x1", "x2"]), &tp).unwrap());
    }

    #[test]
    fn limit_closure_examples() {
        let s = QuotientRing::polynomial_ring(&ring(3, &["x", "y"]));
        let xs = seq(&s, &["x", "y"]);
        let lim = limit_closure_chain(&xs, &s, 10).unwrap();
        assert_eq!(lim.chain_n, Some(1));
        assert!(lim.ideal.equals(&s.ideal(&xs).unwrap()).unwrap());
        assert_eq!(lim.quotient_length, Some(0));

        let tp = two_planes(2);
        let single = seq(&tp, &["x1+x3"]);
        let lim = limit_closure_chain(&single, &tp, 10).unwrap();
        assert!(lim.ideal.equals(&tp.ideal(&single).unwrap()).unwrap());

        let sop = seq(&tp, &["x1+x3", "x2+x4"]);
        let chain = limit_closure_chain(&sop, &tp, 10).unwrap();
        assert_eq!(chain.quotient_length, Some(2));
        let formula = limit_closure_standard(&sop, &tp, StandardCertificate::UserAsserted).unwrap();
        assert!(formula.user_asserted);
        assert_eq!(formula.quotient_length, Some(2));
        assert!(formula.ideal.equals(&chain.ideal).unwrap());

        let squares = seq(&tp, &["x1^2+x3^2", "x2^2+x4^2"]);
        let f = limit_closure_standard(&squares, &tp, StandardCertificate::FilterRegularIn { n0: 1 }).unwrap();
        assert_eq!(f.quotient_length, Some(2));
        assert_eq!(
            limit_closure_standard(&sop, &tp, StandardCertificate::FilterRegularIn { n0: 1 }).unwrap_err(),
            AlgebraError::NoStandardCertificate
        );
    }

    #[test]
    fn sampler_is_deterministic() {
        let s = QuotientRing::polynomial_ring(&ring(5, &["x", "y"]));
        let a = random_filter_regular_sequence(&s, 2, 1, 0, 50).unwrap();
        let b = random_filter_regular_sequence(&s, 2, 1, 0, 50).unwrap();
        assert_eq!(a, b);
        assert!(filter_regular(&a, &s).unwrap());
        assert!(random_filter_regular_sequence(&s, 0, 1, 0, 50).unwrap().is_empty());
        let tp = two_planes(2);
        let q = random_filter_regular_sequence(&tp, 2, 2, 7, 100).unwrap();
        assert!(filter_regular(&q, &tp).unwrap());
        assert!(q.iter().all(|f| f.is_homogeneous() && f.degree() == Degree::Finite(2)));
        assert_eq!(
            random_filter_regular_sequence(&s, 1, 1, 0, 0).unwrap_err(),
            AlgebraError::BudgetExhausted { attempts: 0 }
        );
    }
}
