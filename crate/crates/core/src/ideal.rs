//! Ideals of P = F_p[x_1..x_n] and quotient rings S = P/J.
//!
//! Every operation works on generators in P; ideals of S are represented by
//! ideals of P containing J.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::groebner::GroebnerBasis;
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::poly::{Degree, PolyRing, Polynomial};

/// Krull dimension; the zero ring has dimension `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    MinusInfinity,
    Finite(usize),
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::MinusInfinity => None,
            Dimension::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::MinusInfinity => f.write_str("-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An ideal given by generators, with a lazily computed reduced Gröbner basis
/// under the ring's order.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !PolyRing::same(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            gb: OnceLock::new(),
        })
    }

    fn from_basis(gb: GroebnerBasis) -> Self {
        let gens = gb.polynomials();
        let cell = OnceLock::new();
        let ring = gb.ring().clone();
        let _ = cell.set(gb);
        Ideal { ring, gens, gb: cell }
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new()).expect("same ring")
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![ring.one()]).expect("same ring")
    }

    /// The ideal m generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, ring.vars()).expect("same ring")
    }

    /// m^k, generated by the monomials of degree k.
    pub fn maximal_power(ring: &Arc<PolyRing>, k: u32) -> Self {
        let gens = ring
            .monomials_of_degree(k)
            .into_iter()
            .map(|m| ring.term(m, 1))
            .collect();
        Ideal::new(ring, gens).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            GroebnerBasis::for_ideal(&self.ring, &self.gens).expect("generators share the ring")
        })
    }

    /// Generators of the reduced Gröbner basis.
    pub fn reduced_gens(&self) -> Vec<Polynomial> {
        self.groebner().polynomials()
    }

    /// The ideal with its generators replaced by its reduced basis.
    pub fn minimized(&self) -> Ideal {
        Ideal::from_basis(self.groebner().clone())
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        self.groebner().contains(f)
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.groebner().reduce(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.groebner().polynomials() == other.groebner().polynomials())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring").minimized();
        }
        acc
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// I ∩ J, by eliminating t from t·I + (1 − t)·J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ring = &self.ring;
        let n = ring.nvars();
        let mut vars = vec!["_t".to_string()];
        vars.extend(ring.var_names().iter().cloned());
        let mut weights = vec![1];
        weights.extend(ring.weights());
        // t is invisible to the grading so homogeneous input stays homogeneous
        let mut grading = vec![0];
        grading.extend(ring.grading());
        let aux = PolyRing::auxiliary(ring.field(), vars, MonomialOrder::Elimination(1), weights, grading);
        let shift: Vec<usize> = (1..=n).collect();
        let t = aux.var(0);
        let one_minus_t = &aux.one() - &t;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(&f.map_vars(&aux, &shift) * &t);
        }
        for g in &other.gens {
            gens.push(&g.map_vars(&aux, &shift) * &one_minus_t);
        }
        let gb = GroebnerBasis::for_ideal(&aux, &gens)?;
        let keep: Vec<Polynomial> = gb
            .polynomials()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|p| drop_prefix(&p, ring, 1))
            .collect();
        Ideal::new(ring, keep)
    }

    /// I : g = {f : f·g ∈ I}, via (I ∩ (g)) / g.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        if !PolyRing::same(g.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if g.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let inter = self.intersect(&principal)?;
        let gens = inter
            .gens
            .iter()
            .map(|h| exact_div(h, g).ok_or_else(|| AlgebraError::Precondition("inexact division in colon".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens)?.minimized())
    }

    /// I : G = ∩ over generators g of G of (I : g); I : (0) = (1).
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon_element(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?.minimized(),
            });
            if acc.as_ref().is_some_and(|a| a.equals(self).unwrap_or(false)) {
                // cannot shrink below I
                break;
            }
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// I : J^∞ by iterated colon. Returns the saturation and the first n ≥ 1
    /// with I : J^n = I : J^(n-1); the stable value is re-checked at n + 1.
    pub fn saturate(&self, other: &Ideal) -> Result<(Ideal, usize)> {
        self.check(other)?;
        let mut prev = self.clone();
        let mut n = 0usize;
        loop {
            n += 1;
            let next = prev.colon(other)?;
            if next.equals(&prev)? {
                let again = next.colon(other)?;
                debug_assert!(again.equals(&next)?, "colon chain failed to stay constant");
                if !again.equals(&next)? {
                    return Err(AlgebraError::Precondition("colon chain not constant after stabilizing".into()));
                }
                return Ok((next, n));
            }
            prev = next;
        }
    }

    /// I : m^k by k successive colons with m.
    pub fn colon_maximal_power(&self, k: u32) -> Result<Ideal> {
        let m = Ideal::maximal(&self.ring);
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.colon(&m)?;
        }
        Ok(acc)
    }

    /// I ∩ F_p[keep], re-expressed in the ambient ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let ring = &self.ring;
        let n = ring.nvars();
        if keep.iter().any(|&k| k >= n) {
            return Err(AlgebraError::Precondition("variable index out of range".into()));
        }
        let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if elim.is_empty() {
            return Ok(self.clone());
        }
        let mut keep_sorted: Vec<usize> = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let perm: Vec<usize> = elim.iter().chain(&keep_sorted).copied().collect();
        // position of original variable i inside the auxiliary ring
        let mut to_aux = vec![0usize; n];
        for (pos, &i) in perm.iter().enumerate() {
            to_aux[i] = pos;
        }
        let aux = PolyRing::auxiliary(
            ring.field(),
            perm.iter().map(|&i| ring.var_names()[i].clone()).collect(),
            MonomialOrder::Elimination(elim.len()),
            perm.iter().map(|&i| ring.weights()[i]).collect(),
            perm.iter().map(|&i| ring.grading()[i]).collect(),
        );
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_vars(&aux, &to_aux)).collect();
        let gb = GroebnerBasis::for_ideal(&aux, &gens)?;
        let back: Vec<usize> = perm.clone();
        let k = elim.len();
        let keep_polys = gb
            .polynomials()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|p| p.map_vars(ring, &back))
            .collect();
        Ideal::new(ring, keep_polys)
    }

    pub fn eliminate_names(&self, keep: &[&str]) -> Result<Ideal> {
        let idx = keep
            .iter()
            .map(|name| {
                self.ring.var_index(name).ok_or_else(|| AlgebraError::UnknownVariable {
                    name: name.to_string(),
                    pos: 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// dim P/I: largest set of variables independent modulo the leading ideal.
    pub fn krull_dim(&self) -> Dimension {
        let gb = self.groebner();
        if gb.is_unit() {
            return Dimension::MinusInfinity;
        }
        let masks: Vec<u64> = gb.leading_terms().iter().map(|(m, _)| m.support_mask()).collect();
        Dimension::Finite(max_independent(&masks, self.ring.nvars()))
    }

    /// dim_{F_p} P/I, the number of standard monomials.
    pub fn vs_length(&self) -> Result<u64> {
        let gb = self.groebner();
        let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(m, _)| m).collect();
        count_standard_monomials(&leads, self.ring.nvars(), None).ok_or(AlgebraError::NotFiniteLength)
    }

    /// ℓ(self / inner) for homogeneous `inner ⊆ self` with finite-length quotient.
    ///
    /// When P/inner has finite length this is a difference of vector-space
    /// dimensions; otherwise both sides are truncated at a degree N beyond
    /// which self and inner agree, certified by m^c·self ⊆ inner.
    pub fn quotient_length(&self, inner: &Ideal) -> Result<u64> {
        self.check(inner)?;
        if !self.contains_ideal(inner)? {
            return Err(AlgebraError::Precondition("quotient_length needs inner ⊆ self".into()));
        }
        if let Ok(a) = inner.vs_length() {
            return Ok(a - self.vs_length()?);
        }
        if !self.is_homogeneous() || !inner.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous("truncated length needs homogeneous ideals".into()));
        }
        let m = Ideal::maximal(&self.ring);
        let mut colon = inner.clone();
        let mut c = 0u64;
        while !colon.contains_ideal(self)? {
            let next = colon.colon(&m)?;
            if next.equals(&colon)? {
                return Err(AlgebraError::NotFiniteLength);
            }
            colon = next;
            c += 1;
        }
        let max_deg = self
            .gens
            .iter()
            .filter_map(|g| g.degree().finite())
            .max()
            .unwrap_or(0);
        let cut = max_deg + c + 1;
        let graded = self.ring.with_order(MonomialOrder::Grevlex);
        let leads_of = |ideal: &Ideal| -> Result<Vec<Monomial>> {
            let gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.reorder(&graded)).collect();
            Ok(GroebnerBasis::for_ideal(&graded, &gens)?
                .leading_terms()
                .into_iter()
                .map(|(m, _)| m)
                .collect())
        };
        let a = count_standard_monomials(&leads_of(inner)?, self.ring.nvars(), Some(cut)).expect("bounded count");
        let b = count_standard_monomials(&leads_of(self)?, self.ring.nvars(), Some(cut)).expect("bounded count");
        Ok(a - b)
    }
}

/// Exact division h / g, `None` when g does not divide h.
pub fn exact_div(h: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let ring = h.ring();
    let f = ring.field();
    let (lm, lc) = (g.leading_monomial()?.clone(), g.leading_coefficient()?);
    let inv = f.inv(lc);
    let mut rem = h.clone();
    let mut quot = Vec::new();
    while let Some(m) = rem.leading_monomial() {
        if !lm.divides(m) {
            return None;
        }
        let q = lm.quotient_of(m);
        let c = f.mul(rem.leading_coefficient().expect("nonzero"), inv);
        rem = &rem - &g.mul_term(&q, c);
        quot.push((q, c));
    }
    Some(Polynomial::from_terms(ring, quot))
}

fn drop_prefix(p: &Polynomial, target: &Arc<PolyRing>, k: usize) -> Polynomial {
    Polynomial::from_terms(
        target,
        p.terms()
            .iter()
            .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[k..]), *c)),
    )
}

fn max_independent(lead_masks: &[u64], n: usize) -> usize {
    fn rec(i: usize, n: usize, cur: u64, size: usize, best: &mut usize, masks: &[u64]) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = cur | (1 << i);
        if masks.iter().all(|&m| m & !with != 0) {
            rec(i + 1, n, with, size + 1, best, masks);
        }
        rec(i + 1, n, cur, size, best, masks);
    }
    let mut best = 0;
    rec(0, n, 0, 0, &mut best, lead_masks);
    best
}

/// Counts monomials not divisible by any of `leads`; with `below`, only
/// those of total degree < below. Returns `None` for an infinite count.
pub(crate) fn count_standard_monomials(leads: &[Monomial], n: usize, below: Option<u64>) -> Option<u64> {
    if leads.iter().any(Monomial::is_one) {
        return Some(0);
    }
    if below.is_none() {
        for i in 0..n {
            let pure = leads.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| (j == i) == (e > 0))
            });
            if !pure {
                return None;
            }
        }
    }
    if below == Some(0) {
        return Some(0);
    }
    let divisible = |m: &Monomial| leads.iter().any(|l| l.divides(m));
    let mut count = 1u64;
    // each monomial is generated once: only multiply by variables >= the last one raised
    let mut stack: Vec<(Monomial, usize, u64)> = vec![(Monomial::one(n), 0, 0)];
    while let Some((m, last, deg)) = stack.pop() {
        if below.is_some_and(|b| deg + 1 >= b) {
            continue;
        }
        for i in last..n {
            let mut next = m.clone();
            next.exponents_mut()[i] += 1;
            if !divisible(&next) {
                count += 1;
                stack.push((next, i, deg + 1));
            }
        }
    }
    Some(count)
}

/// Membership `f ∈ I`.
pub fn membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

/// The image of `C` under the preimage of the ring map t_i -> targets[i].
///
/// Eliminates the variables of C's ring from C + (t_i − targets[i]) in an
/// auxiliary ring and reads the result back in `source`, whose i-th variable
/// plays the role of t_i.
pub fn preimage(targets: &[Polynomial], c: &Ideal, source: &Arc<PolyRing>) -> Result<Ideal> {
    if targets.len() != source.nvars() {
        return Err(AlgebraError::ArityMismatch {
            expected: source.nvars(),
            found: targets.len(),
        });
    }
    if source.characteristic() != c.ring().characteristic() {
        return Err(AlgebraError::RingMismatch);
    }
    let ring = c.ring();
    for t in targets {
        if !PolyRing::same(t.ring(), ring) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    let n = ring.nvars();
    let m = targets.len();
    let mut vars: Vec<String> = ring.var_names().to_vec();
    vars.extend((0..m).map(|i| format!("_t{i}")));
    let mut weights = ring.weights().to_vec();
    let mut grading = ring.grading().to_vec();
    for t in targets {
        let w = t
            .terms()
            .iter()
            .map(|(mono, _)| mono.weighted_degree(ring.weights()))
            .max()
            .unwrap_or(1)
            .max(1);
        let g = match t.graded_degree() {
            Degree::Finite(d) => d,
            Degree::MinusInfinity => 0,
        };
        weights.push(u32::try_from(w).map_err(|_| AlgebraError::Unsupported("target degree too large".into()))?);
        grading.push(u32::try_from(g).map_err(|_| AlgebraError::Unsupported("target degree too large".into()))?);
    }
    let aux = PolyRing::auxiliary(ring.field(), vars, MonomialOrder::Elimination(n), weights, grading);
    let embed: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = c.gens().iter().map(|g| g.map_vars(&aux, &embed)).collect();
    for (i, t) in targets.iter().enumerate() {
        gens.push(&aux.var(n + i) - &t.map_vars(&aux, &embed));
    }
    let gb = GroebnerBasis::for_ideal(&aux, &gens)?;
    let out = gb
        .polynomials()
        .into_iter()
        .filter(|p| p.terms().iter().all(|(mono, _)| mono.exponents()[..n].iter().all(|&e| e == 0)))
        .map(|p| drop_prefix(&p, source, n))
        .collect();
    Ideal::new(source, out)
}

/// A quotient ring S = P/J.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: Arc<PolyRing>,
    defining: Ideal,
}

impl QuotientRing {
    pub fn new(defining: Ideal) -> Self {
        QuotientRing {
            ring: defining.ring().clone(),
            defining: defining.minimized(),
        }
    }

    pub fn polynomial_ring(ring: &Arc<PolyRing>) -> Self {
        Self::new(Ideal::zero(ring))
    }

    pub fn from_strings<S: AsRef<str>>(ring: &Arc<PolyRing>, relations: &[S]) -> Result<Self> {
        Ok(Self::new(Ideal::parse(ring, relations)?))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    /// The ideal of S generated by `gens`, lifted to P (so it contains J).
    pub fn ideal(&self, gens: &[Polynomial]) -> Result<Ideal> {
        self.defining.add_generators(gens)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.ring)
    }

    pub fn parse_ideal<S: AsRef<str>>(&self, gens: &[S]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|g| self.parse(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.ideal(&polys)
    }

    /// Canonical representative of a residue class.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.defining.reduce(f)
    }

    pub fn maximal_ideal(&self) -> Ideal {
        self.ideal(&self.ring.vars()).expect("same ring")
    }

    pub fn dim(&self) -> Dimension {
        self.defining.krull_dim()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.defining.is_homogeneous()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_zero()
    }
}
