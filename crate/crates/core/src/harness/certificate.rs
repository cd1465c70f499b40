//! Checks of the Frobenius test exponent bound and of the length identities
//! for one (ring, sequence) pair.

use std::time::Instant;

use serde::Serialize;

use crate::duality::CohomologyProfile;
use crate::error::{AlgebraError, Result};
use crate::frobenius::{fedder_is_f_pure, frobenius_closure_with_budget, fte, FrobeniusClosureResult};
use crate::ideal::{Ideal, QuotientRing};
use crate::poly::Polynomial;
use crate::sequences::{
    filter_regular, hsl_low, is_weak_sequence, limit_closure_chain, limit_closure_standard, min_order,
    StandardCertificate, DEFAULT_CHAIN_MAX_N,
};

/// Least e with p^e >= 2·n0, in integer arithmetic.
pub fn log_exponent(p: u32, n0: u32) -> u32 {
    let target = 2 * n0 as u64;
    let mut q = 1u64;
    let mut e = 0;
    while q < target {
        q *= p as u64;
        e += 1;
    }
    e
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub hsl_low_ms: u128,
    pub closure_ms: u128,
    pub fte_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub ring: String,
    pub sequence: Vec<String>,
    pub fte: u32,
    pub n0: u32,
    pub e0: u32,
    pub hsl_low: u32,
    pub hsl_top: u32,
    pub hsl_used: u32,
    pub bound: u32,
    pub e_star: u32,
    pub holds: bool,
    /// The closure at e* did not grow at e* + 1.
    pub stop_consistent: bool,
    pub certified_stops: bool,
    /// Exponent at which two consecutive chain values first agreed.
    pub heuristic_e: u32,
    /// The heuristic stop and the certified stop give the same ideal.
    pub heuristic_agrees: bool,
    pub witness: Option<String>,
    pub closure: Vec<String>,
    pub timings_ms: Timings,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// The top HSL to use: 0 for F-pure rings, else the declared value.
pub fn effective_hsl_top(s: &QuotientRing, declared: Option<u32>) -> Result<(u32, bool)> {
    if fedder_is_f_pure(s)? {
        return Ok((0, true));
    }
    match declared {
        Some(h) => Ok((h, false)),
        None => Err(AlgebraError::Precondition(
            "ring is not F-pure and no hsl_top was declared".into(),
        )),
    }
}

/// Checks Fte((seq)) <= ⌈log_p(2·n0)⌉ + max(hsl_low, hsl_top).
///
/// The closure is computed to e* + 1 so that the certified stop at e* can be
/// checked against one more chain step.
pub fn verify_bound(
    ring_id: &str,
    s: &QuotientRing,
    seq: &[Polynomial],
    profile: &CohomologyProfile,
    hsl_top: Option<u32>,
    max_e: u32,
) -> Result<BoundCertificate> {
    let (hsl_top, _) = effective_hsl_top(s, hsl_top)?;
    if seq.len() != profile.fin_dim {
        return Err(AlgebraError::Precondition(format!(
            "sequence has length {}, finiteness dimension is {}",
            seq.len(),
            profile.fin_dim
        )));
    }
    if !filter_regular(seq, s)? {
        return Err(AlgebraError::Precondition("sequence is not filter regular".into()));
    }
    let p = s.characteristic();
    let n0 = profile.n0;
    let e0 = log_exponent(p, n0);
    let mut timings = Timings::default();

    let clock = Instant::now();
    let vanishing = profile.low_lengths.iter().all(|&l| l == 0);
    // Frobenius powers of a filter-regular sequence stay filter regular and
    // land in m^(2·n0) once p^e0 >= 2·n0.
    let low_seq: Vec<Polynomial> = if vanishing || min_order(seq) >= 2 * n0 as u64 {
        seq.to_vec()
    } else {
        seq.iter().map(|x| x.frob_pow(e0)).collect()
    };
    // a nilpotent Frobenius on a module of length l dies after l steps
    let a_priori = profile.low_lengths.iter().copied().max().unwrap_or(0) as u32;
    let low_ideal = Ideal::new(s.ring(), low_seq.clone())?;
    let low_closure = frobenius_closure_with_budget(&low_ideal, s, Some(a_priori), max_e)?;
    let hsl_low = hsl_low(&low_seq, s, &low_closure, profile)?;
    timings.hsl_low_ms = clock.elapsed().as_millis();

    let hsl_used = hsl_low.max(hsl_top);
    let e_star = e0 + hsl_used;
    let bound = e_star;

    let clock = Instant::now();
    let ideal = Ideal::new(s.ring(), seq.to_vec())?;
    let extended = frobenius_closure_with_budget(&ideal, s, Some(e_star + 1), max_e.max(e_star + 1))?;
    let at_star = extended.chain[e_star as usize].clone();
    let stop_consistent = at_star.equals(&extended.chain[e_star as usize + 1])?;
    let mut reached = e_star;
    for (e, j) in extended.chain.iter().enumerate().take(e_star as usize + 1) {
        if j.equals(&at_star)? {
            reached = e as u32;
            break;
        }
    }
    let closure = FrobeniusClosureResult {
        closure: at_star.clone(),
        reached_e: reached,
        certified: true,
        certificate_e_star: Some(e_star),
        chain: extended.chain[..=e_star as usize].to_vec(),
    };
    let mut heuristic = None;
    for e in 0..extended.chain.len() - 1 {
        if extended.chain[e].equals(&extended.chain[e + 1])? {
            heuristic = Some((e as u32, extended.chain[e].clone()));
            break;
        }
    }
    let (heuristic_e, heuristic_ideal) = match heuristic {
        Some(h) => h,
        None => {
            let h = frobenius_closure_with_budget(&ideal, s, None, max_e)?;
            (h.reached_e, h.closure)
        }
    };
    let heuristic_agrees = heuristic_ideal.equals(&at_star)?;
    timings.closure_ms = clock.elapsed().as_millis();

    let clock = Instant::now();
    let f = fte(&ideal, s, &closure)?;
    timings.fte_ms = clock.elapsed().as_millis();

    Ok(BoundCertificate {
        ring: ring_id.into(),
        sequence: strings(seq),
        fte: f.fte,
        n0,
        e0,
        hsl_low,
        hsl_top,
        hsl_used,
        bound,
        e_star,
        holds: f.fte <= bound,
        stop_consistent,
        certified_stops: stop_consistent,
        heuristic_e,
        heuristic_agrees,
        witness: f.witness.map(|w| w.to_string()),
        closure: strings(&at_star.reduced_gens()),
        timings_ms: timings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub j: Option<usize>,
    pub k: Option<u32>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    /// Why the checks were not run, when they were not.
    pub skipped: Option<String>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, j: Option<usize>, k: Option<u32>, lhs: impl ToString, rhs: impl ToString, pass: bool) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        j,
        k,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        pass,
    }
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "infinite".into(), |x| x.to_string())
}

/// Length identities and inclusions for a filter-regular sequence of length t
/// in m^(2·n0). Each side is computed along an independent path.
pub fn verify_identities(s: &QuotientRing, seq: &[Polynomial], profile: &CohomologyProfile) -> Result<IdentityReport> {
    let t = profile.fin_dim;
    let n0 = profile.n0;
    if seq.len() != t {
        return Ok(IdentityReport {
            checks: Vec::new(),
            skipped: Some(format!("sequence length {} differs from t = {t}", seq.len())),
        });
    }
    if min_order(seq) < 2 * n0 as u64 {
        return Ok(IdentityReport {
            checks: Vec::new(),
            skipped: Some(format!("sequence not contained in m^{}", 2 * n0)),
        });
    }
    if !filter_regular(seq, s)? {
        return Ok(IdentityReport {
            checks: Vec::new(),
            skipped: Some("sequence is not filter regular".into()),
        });
    }
    let mut checks = Vec::new();
    let base = s.ideal(seq)?;

    let chain = limit_closure_chain(seq, s, DEFAULT_CHAIN_MAX_N)?;
    let formula = limit_closure_standard(seq, s, StandardCertificate::FilterRegularIn { n0 })?;
    let expected: u64 = (0..t)
        .map(|i| binomial(t as u64, i as u64) * profile.low_lengths[i])
        .sum();
    checks.push(check(
        "limit-length",
        None,
        None,
        show(chain.quotient_length),
        expected,
        chain.stabilized && chain.quotient_length == Some(expected),
    ));
    checks.push(check(
        "limit-chain-equals-formula",
        None,
        None,
        show(chain.quotient_length),
        show(formula.quotient_length),
        chain.ideal.equals(&formula.ideal)?,
    ));

    checks.push(check(
        "weak-sequence",
        None,
        Some(n0),
        is_weak_sequence(seq, n0, s)?,
        true,
        is_weak_sequence(seq, n0, s)?,
    ));

    let bounded = base.colon_maximal_power(n0)?;
    checks.push(check(
        "limit-in-colon",
        None,
        Some(n0),
        "lim",
        format!("(x) : m^{n0}"),
        bounded.contains_ideal(&chain.ideal)?,
    ));

    for j in 1..=t {
        let prefix = s.ideal(&seq[..j])?;
        for k in 1..=n0 {
            let colon = prefix.colon_maximal_power(k)?;
            let lhs = colon.quotient_length(&prefix).ok();
            let rhs: u64 = (0..=j)
                .map(|i| binomial(j as u64, i as u64) * profile.socle_lengths[i][k as usize])
                .sum();
            checks.push(check("socle-splitting", Some(j), Some(k), show(lhs), rhs, lhs == Some(rhs)));
        }
    }
    Ok(IdentityReport { checks, skipped: None })
}
