//! Oracles that avoid the Gröbner engine: degree-by-degree linear algebra
//! over F_p and brute-force monomial counting.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use frobtest_core::{Monomial, MonomialOrder, PolyRing, Polynomial, QuotientRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
}

pub fn fermat() -> QuotientRing {
    QuotientRing::from_strings(&ring(2, &["x", "y", "z"]), &["x^3+y^3+z^3"]).unwrap()
}

pub fn two_planes(p: u64) -> QuotientRing {
    QuotientRing::from_strings(&ring(p, &["x1", "x2", "x3", "x4"]), &["x1*x3", "x1*x4", "x2*x3", "x2*x4"]).unwrap()
}

pub fn poly(r: &Arc<PolyRing>, s: &str) -> Polynomial {
    frobtest_core::parse_polynomial(s, r).unwrap()
}

pub fn polys(r: &Arc<PolyRing>, xs: &[&str]) -> Vec<Polynomial> {
    xs.iter().map(|s| poly(r, s)).collect()
}

fn exps_of_degree(n: usize, d: u64) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exps_of_degree(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Row-reduced span of the degree-d part of a homogeneous ideal.
pub struct DegreeSpan {
    p: u64,
    index: HashMap<Vec<u32>, usize>,
    /// (pivot column, row) with pivot entry 1.
    rows: Vec<(usize, Vec<u64>)>,
}

impl DegreeSpan {
    pub fn new(gens: &[Polynomial], n: usize, p: u64, d: u64) -> Self {
        let index: HashMap<Vec<u32>, usize> =
            exps_of_degree(n, d).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut span = DegreeSpan { p, index, rows: Vec::new() };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = total_degree(g);
            if dg > d {
                continue;
            }
            for e in exps_of_degree(n, d - dg) {
                let row = span.dense(&g.mul_term(&Monomial::from_exponents(&e), 1));
                span.insert(row);
            }
        }
        span
    }

    fn dense(&self, f: &Polynomial) -> Vec<u64> {
        let mut v = vec![0; self.index.len()];
        for (m, c) in f.terms() {
            v[self.index[m.exponents()]] = *c as u64;
        }
        v
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u64>) {
        let v = self.reduce(v);
        if let Some(pivot) = v.iter().position(|&c| c != 0) {
            let inv = pow_mod(v[pivot], self.p - 2, self.p);
            let v: Vec<u64> = v.into_iter().map(|c| c * inv % self.p).collect();
            self.rows.push((pivot, v));
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// `f` must be homogeneous of this span's degree (or zero).
    pub fn contains(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.reduce(self.dense(f)).iter().all(|&c| c == 0)
    }
}

fn total_degree(f: &Polynomial) -> u64 {
    f.terms().first().map_or(0, |(m, _)| m.degree())
}

/// Membership of a homogeneous `target` in the ideal generated by the
/// homogeneous `gens`, decided in the single degree of `target`.
pub fn in_homogeneous_ideal(target: &Polynomial, gens: &[Polynomial]) -> bool {
    if target.is_zero() {
        return true;
    }
    let r = target.ring();
    DegreeSpan::new(gens, r.nvars(), r.characteristic() as u64, total_degree(target)).contains(target)
}

/// Dimension of the degree-d part of P/(gens) for homogeneous gens.
pub fn hilbert_function(gens: &[Polynomial], n: usize, p: u64, d: u64) -> u64 {
    (exps_of_degree(n, d).len() - DegreeSpan::new(gens, n, p, d).dimension()) as u64
}

/// Every homogeneous polynomial of degree d over F_p, for tiny cases.
pub fn all_forms(r: &Arc<PolyRing>, d: u64) -> Vec<Polynomial> {
    let monos = exps_of_degree(r.nvars(), d);
    let p = r.characteristic() as u64;
    let total = p.pow(monos.len() as u32);
    (0..total)
        .map(|mut k| {
            let terms: Vec<(Monomial, u32)> = monos
                .iter()
                .map(|e| {
                    let c = (k % p) as u32;
                    k /= p;
                    (Monomial::from_exponents(e), c)
                })
                .collect();
            Polynomial::from_terms(r, terms)
        })
        .collect()
}

/// Number of degree-d monomials outside the monomial ideal spanned by `gens`.
pub fn monomial_hilbert(n: usize, gens: &[Vec<u32>], d: u64) -> u64 {
    exps_of_degree(n, d)
        .into_iter()
        .filter(|e| !gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b)))
        .count() as u64
}

/// Random polynomial with every monomial of degree <= d and random coefficients.
pub fn random_poly(r: &Arc<PolyRing>, d: u64, rng: &mut ChaCha8Rng, density: f64) -> Polynomial {
    let p = r.characteristic();
    let mut terms = Vec::new();
    for k in 0..=d {
        for e in exps_of_degree(r.nvars(), k) {
            if rng.gen_bool(density) {
                terms.push((Monomial::from_exponents(&e), rng.gen_range(1..p)));
            }
        }
    }
    Polynomial::from_terms(r, terms)
}

/// Random homogeneous form of degree d.
pub fn random_form(r: &Arc<PolyRing>, d: u64, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = r.characteristic();
    let terms = exps_of_degree(r.nvars(), d)
        .into_iter()
        .map(|e| (Monomial::from_exponents(&e), rng.gen_range(0..p)));
    Polynomial::from_terms(r, terms)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomials in `r` with at most `terms` terms and exponents at most `max_exp`.
pub fn arb_poly(r: Arc<PolyRing>, terms: usize, max_exp: u32) -> impl proptest::strategy::Strategy<Value = Polynomial> {
    use proptest::prelude::*;
    let n = r.nvars();
    let p = r.characteristic();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), 1..p), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

/// Homogeneous forms of degree `d` in `r` with at most `terms` terms.
pub fn arb_form(r: Arc<PolyRing>, d: u64, terms: usize) -> impl proptest::strategy::Strategy<Value = Polynomial> {
    use proptest::prelude::*;
    let monos = exps_of_degree(r.nvars(), d);
    let p = r.characteristic();
    prop::collection::vec((0..monos.len(), 1..p), 1..=terms).prop_map(move |ts| {
        Polynomial::from_terms(&r, ts.into_iter().map(|(i, c)| (Monomial::from_exponents(&monos[i]), c)))
    })
}

/// S-polynomial of two nonzero polynomials under the ring order.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), field.inv(f.leading_coefficient().unwrap()));
    let b = g.mul_term(&mg.quotient_of(&l), field.inv(g.leading_coefficient().unwrap()));
    &a - &b
}
