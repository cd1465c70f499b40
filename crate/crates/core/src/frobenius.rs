//! Frobenius powers, Frobenius closure, test exponents and Fedder's criterion.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::ideal::{preimage, Ideal, QuotientRing};
use crate::poly::Polynomial;

pub const DEFAULT_MAX_E: u32 = 12;

/// p^e, refusing values that do not fit an exponent.
pub fn frobenius_q(p: u32, e: u32) -> Result<u32> {
    (p as u64)
        .checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or_else(|| AlgebraError::Unsupported(format!("{p}^{e} exceeds the exponent range")))
}

/// I^[p^e], generated by the p^e-th powers of the generators.
pub fn frobenius_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    frobenius_q(ideal.ring().characteristic(), e)?;
    let gens = ideal.gens().iter().map(|g| g.frob_pow(e)).collect();
    Ideal::new(ideal.ring(), gens)
}

/// {f : f^(p^e) ∈ C}, the preimage of C under x_i -> x_i^(p^e).
pub fn frobenius_preimage(c: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(c.clone());
    }
    let ring = c.ring();
    frobenius_q(ring.characteristic(), e)?;
    let targets: Vec<Polynomial> = ring.vars().iter().map(|v| v.frob_pow(e)).collect();
    preimage(&targets, c, ring)
}

/// Stage e of the closure chain: {f : f^(p^e) ∈ I^[p^e] + J}.
pub fn closure_stage(ideal: &Ideal, s: &QuotientRing, e: u32) -> Result<Ideal> {
    let target = frobenius_power(ideal, e)?.sum(s.defining())?;
    Ok(frobenius_preimage(&target, e)?.minimized())
}

#[derive(Clone, Debug)]
pub struct FrobeniusClosureResult {
    /// Representatives in P; contains I + J.
    pub closure: Ideal,
    /// First e at which the chain reached the returned value.
    pub reached_e: u32,
    /// True when the stop came from an a-priori exponent rather than two
    /// equal consecutive chain values.
    pub certified: bool,
    pub certificate_e_star: Option<u32>,
    /// J_0, J_1, ... as computed.
    pub chain: Vec<Ideal>,
}

/// I^F in S = P/J with the default exponent budget.
pub fn frobenius_closure(ideal: &Ideal, s: &QuotientRing, e_star: Option<u32>) -> Result<FrobeniusClosureResult> {
    frobenius_closure_with_budget(ideal, s, e_star, DEFAULT_MAX_E)
}

/// Ascending chain J_e = {f : f^(p^e) ∈ I^[p^e] + J}.
///
/// With `e_star`, returns J_{e_star} as certified. Without it, stops at the
/// first e with J_e = J_{e+1} and reports the result as uncertified.
pub fn frobenius_closure_with_budget(
    ideal: &Ideal,
    s: &QuotientRing,
    e_star: Option<u32>,
    max_e: u32,
) -> Result<FrobeniusClosureResult> {
    let base = ideal.sum(s.defining())?.minimized();
    let mut chain = vec![base];
    match e_star {
        Some(es) => {
            if es > max_e {
                return Err(AlgebraError::ChainNotStabilized(max_e));
            }
            for e in 1..=es {
                chain.push(closure_stage(ideal, s, e)?);
            }
            let top = chain.last().expect("nonempty").clone();
            let mut reached = es;
            for (e, j) in chain.iter().enumerate() {
                if j.equals(&top)? {
                    reached = e as u32;
                    break;
                }
            }
            Ok(FrobeniusClosureResult {
                closure: top,
                reached_e: reached,
                certified: true,
                certificate_e_star: Some(es),
                chain,
            })
        }
        None => {
            if chain[0].is_unit() {
                return Ok(FrobeniusClosureResult {
                    closure: chain[0].clone(),
                    reached_e: 0,
                    certified: false,
                    certificate_e_star: None,
                    chain,
                });
            }
            for e in 1..=max_e {
                let next = closure_stage(ideal, s, e)?;
                let prev = chain.last().expect("nonempty");
                let stable = next.equals(prev)?;
                chain.push(next);
                if stable {
                    return Ok(FrobeniusClosureResult {
                        closure: chain[e as usize].clone(),
                        reached_e: e - 1,
                        certified: false,
                        certificate_e_star: None,
                        chain,
                    });
                }
            }
            Err(AlgebraError::ChainNotStabilized(max_e))
        }
    }
}

#[derive(Clone, Debug)]
pub struct FteResult {
    pub fte: u32,
    /// A closure generator whose p^(fte-1) power escapes I^[p^(fte-1)] + J.
    pub witness: Option<Polynomial>,
    /// Inherited from the closure.
    pub certified: bool,
}

/// Least e with z^(p^e) ∈ I^[p^e] + J for every closure generator z.
pub fn fte(ideal: &Ideal, s: &QuotientRing, closure: &FrobeniusClosureResult) -> Result<FteResult> {
    let gens = closure.closure.reduced_gens();
    let limit = closure.certificate_e_star.unwrap_or(closure.reached_e).max(closure.reached_e);
    let mut failing_prev: Vec<Polynomial> = Vec::new();
    for e in 0..=limit {
        let target = frobenius_power(ideal, e)?.sum(s.defining())?;
        let mut failing = Vec::new();
        for z in &gens {
            if !target.contains(&z.frob_pow(e))? {
                failing.push(z.clone());
            }
        }
        if failing.is_empty() {
            let witness = failing_prev.into_iter().min_by(lex_cmp);
            return Ok(FteResult {
                fte: e,
                witness,
                certified: closure.certified,
            });
        }
        failing_prev = failing;
    }
    Err(AlgebraError::Precondition(format!(
        "closure generators not contained in the Frobenius power at e = {limit}"
    )))
}

/// Lexicographic comparison of term lists (exponent vectors, then coefficients).
fn lex_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let key = |f: &Polynomial| -> Vec<(Vec<u32>, u32)> {
        let mut t: Vec<(Vec<u32>, u32)> = f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), *c)).collect();
        t.sort();
        t
    };
    key(a).cmp(&key(b))
}

/// Fedder: P/J is F-pure iff (J^[p] : J) ⊄ m^[p].
pub fn fedder_is_f_pure(s: &QuotientRing) -> Result<bool> {
    let j = s.defining();
    if j.is_zero() {
        return Ok(true);
    }
    if j.is_unit() {
        return Ok(false);
    }
    let p = s.characteristic();
    let colon = frobenius_power(j, 1)?.colon(j)?;
    // m^[p] is monomial: f lies in it iff every term has some exponent >= p
    Ok(colon
        .reduced_gens()
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| m.exponents().iter().all(|&e| e < p))))
}
