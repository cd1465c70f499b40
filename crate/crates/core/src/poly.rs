//! Sparse polynomials over F_p.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// The ambient ring F_p[x_1, ..., x_n] together with its monomial order.
///
/// `weights` are the (positive) variable weights used by the order and
/// `grading` the weights used for homogeneity and pair selection. Both are
/// all ones for user-facing rings; auxiliary elimination rings change them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
    grading: Vec<u32>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(AlgebraError::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > 64 {
            return Err(AlgebraError::InvalidRing("at most 64 variables".into()));
        }
        let n = vars.len();
        Ok(Arc::new(PolyRing {
            field,
            vars,
            order,
            weights: vec![1; n],
            grading: vec![1; n],
        }))
    }

    pub(crate) fn auxiliary(
        field: PrimeField,
        vars: Vec<String>,
        order: MonomialOrder,
        weights: Vec<u32>,
        grading: Vec<u32>,
    ) -> Arc<Self> {
        debug_assert!(weights.iter().all(|&w| w > 0));
        Arc::new(PolyRing {
            field,
            vars,
            order,
            weights,
            grading,
        })
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn grading(&self) -> &[u32] {
        &self.grading
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp_weighted(a, b, &self.weights)
    }

    pub fn graded_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.grading)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> Polynomial {
        let c = self.field.reduce_i64(c);
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), i), 1)
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: u32) -> Polynomial {
        assert_eq!(m.arity(), self.nvars());
        let c = c % self.characteristic();
        Polynomial {
            ring: self.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// All monomials of total degree `d`, in no particular order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let n = self.nvars();
        if n == 0 {
            return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; n], &mut out);
        out
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// A polynomial in canonical form: terms sorted by decreasing monomial,
/// no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    /// Builds a polynomial from arbitrary terms, combining and sorting them.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity");
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` are sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Total degree.
    pub fn degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Least total degree of a term (the m-adic order for the graded maximal ideal).
    pub fn order(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .min()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Homogeneous with respect to the ring grading. Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| self.ring.graded_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn graded_degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| self.ring.graded_degree(m))
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, self.ring.field().neg(1)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other`, both sorted.
    fn merge(&self, other: &Polynomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), f.mul(c, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(c, b[j].1));
                    if s != 0 {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, v)| (m.clone(), f.mul(c, *v))));
        out.retain(|t| t.1 != 0);
        Polynomial::from_sorted(ring, out)
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), f.mul(*v, c))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, v)| (t.mul(m), f.mul(*v, c)))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Leading coefficient normalised to one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self^(p^e)`. Over F_p the Frobenius fixes coefficients, so this is
    /// the term-wise exponent scaling.
    pub fn frob_pow(&self, e: u32) -> Polynomial {
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .and_then(|q| u32::try_from(q).ok())
            .expect("Frobenius exponent p^e overflows u32");
        let terms = self.terms.iter().map(|(m, c)| (m.scale(q), *c)).collect();
        // scaling exponents by a positive constant preserves every supported order
        Polynomial::from_terms_presorted_or_sort(&self.ring, terms)
    }

    fn from_terms_presorted_or_sort(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, u32)>) -> Polynomial {
        if !terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater) {
            terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        }
        Polynomial::from_sorted(ring, terms)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` of the target ring.
    pub fn map_vars(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(n);
            let e = out.exponents_mut();
            for (i, &x) in m.exponents().iter().enumerate() {
                e[var_map[i]] += x;
            }
            (out, *c)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms_presorted_or_sort(target, self.terms.clone())
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(g) => g.ring.clone(),
            None => self.ring.clone(),
        };
        for g in images {
            if !PolyRing::same(&g.ring, &target) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let mut acc = target.zero();
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = target.constant(*c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let pw = cache
                        .entry((i, e))
                        .or_insert_with(|| images[i].pow(e as u64))
                        .clone();
                    t = t.mul_unchecked(&pw);
                }
            }
            acc = acc.merge(&t, 1);
        }
        Ok(acc)
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            let mut first = true;
            if *c != 1 || m.is_one() {
                write!(f, "{c}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.ring.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn freshman_dream_char_two() {
        let r = ring(2, &["x", "y"]);
        let s = &r.var(0) + &r.var(1);
        assert_eq!((&s * &s).to_string(), "x^2+y^2");
    }

    #[test]
    fn difference_of_squares_f5() {
        let r = ring(5, &["x", "y"]);
        let f = &(&r.var(0) + &r.var(1)) * &(&r.var(0) - &r.var(1));
        assert_eq!(f.to_string(), "x^2+4*y^2");
    }

    #[test]
    fn add_zero_and_self_sub() {
        let r = ring(7, &["x", "y"]);
        let f = parse_polynomial("3*x^2*y+x+5", &r).unwrap();
        assert_eq!(&f + &r.zero(), f);
        assert!((&f - &f).is_zero());
        assert_eq!(&f * &r.one(), f);
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(3, &["x", "y"]);
        let f = &r.var(0) + &r.var(1);
        assert_eq!(f.frob_pow(1).to_string(), "x^3+y^3");
        assert!(r.zero().frob_pow(3).is_zero());
        let r5 = ring(5, &["x", "z"]);
        let g = parse_polynomial("2*x+z", &r5).unwrap();
        assert_eq!(g.frob_pow(2).to_string(), "2*x^25+z^25");
    }

    #[test]
    fn degree_sentinel() {
        let r = ring(2, &["x"]);
        assert_eq!(r.zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(r.one().degree(), Degree::Finite(0));
    }

    #[test]
    fn ring_mismatch_is_error() {
        let a = ring(2, &["x"]);
        let b = ring(3, &["x"]);
        assert_eq!(a.var(0).checked_add(&b.var(0)), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn duplicate_vars_rejected() {
        assert!(PolyRing::new(2, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(2, &["1x"], MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn substitute_frobenius_map() {
        let r = ring(2, &["x", "y"]);
        let f = parse_polynomial("x*y+y", &r).unwrap();
        let imgs = vec![r.var(0).frob_pow(1), r.var(1).frob_pow(1)];
        assert_eq!(f.substitute(&imgs).unwrap(), f.frob_pow(1));
    }
}
