//! Buchberger's algorithm for ideals of P and submodules of P^r.
//!
//! Everything runs on one engine over sorted term vectors; an ideal is a
//! submodule of P^1. Pairs are pruned with the Gebauer–Möller criteria (the
//! coprime-leading-term criterion only in rank one, where it is valid) and
//! selected by graded degree of the lcm, then by the lcm itself, then by
//! insertion index, so output is reproducible. Under lex the degree key is
//! dropped and pairs go smallest lcm first.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

/// How positions and terms interact in a module order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionRule {
    /// Compare positions first (lower index is larger), then monomials.
    PositionOverTerm,
    /// Compare (shifted) terms first, positions break ties.
    TermOverPosition,
}

/// A module order on P^r.
///
/// With `shifts` present, term-over-position compares `deg(m) + shift[i]`
/// first; this is the graded (Schreyer-style) refinement used for
/// homogeneous syzygy chains. Components below `split` dominate every
/// component at or above it, which makes the order eliminate them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub rule: PositionRule,
    pub shifts: Option<Vec<i64>>,
    pub split: usize,
}

impl ModuleOrder {
    pub fn term_over_position() -> Self {
        ModuleOrder {
            rule: PositionRule::TermOverPosition,
            shifts: None,
            split: 0,
        }
    }

    pub fn position_over_term() -> Self {
        ModuleOrder {
            rule: PositionRule::PositionOverTerm,
            shifts: None,
            split: 0,
        }
    }

    pub fn graded(shifts: Vec<i64>) -> Self {
        ModuleOrder {
            rule: PositionRule::TermOverPosition,
            shifts: Some(shifts),
            split: 0,
        }
    }
}

/// An element of the free module P^r.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector {
    components: Vec<Polynomial>,
}

impl FreeVector {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        if let Some(first) = components.first() {
            if components.iter().any(|c| !PolyRing::same(c.ring(), first.ring())) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(FreeVector { components })
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeVector {
            components: vec![ring.zero(); rank],
        }
    }

    /// The i-th standard basis vector.
    pub fn basis(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.components[i] = ring.one();
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn checked_add(&self, other: &FreeVector) -> Result<FreeVector> {
        if self.rank() != other.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeVector { components: comps })
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<FreeVector> {
        let comps = self
            .components
            .iter()
            .map(|a| a.checked_mul(f))
            .collect::<Result<_>>()?;
        Ok(FreeVector { components: comps })
    }

    /// Largest `graded degree + shift` over the nonzero components.
    pub fn shifted_degree(&self, shifts: &[i64]) -> Option<i64> {
        self.components
            .iter()
            .zip(shifts)
            .filter_map(|(c, s)| c.graded_degree().finite().map(|d| d as i64 + s))
            .max()
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        let mut degs = self.components.iter().zip(shifts).flat_map(|(c, s)| {
            c.terms()
                .iter()
                .map(move |(m, _)| c.ring().graded_degree(m) as i64 + s)
        });
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

/// Σ columns[j] * coeffs[j].
pub fn combine(columns: &[FreeVector], coeffs: &[Polynomial], ring: &Arc<PolyRing>, rank: usize) -> Result<FreeVector> {
    let mut acc = FreeVector::zero(ring, rank);
    for (c, f) in columns.iter().zip(coeffs) {
        acc = acc.checked_add(&c.mul_poly(f)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: u32,
}

pub(crate) type Vector = Vec<Term>;

struct Lead {
    mono: Monomial,
    comp: u32,
    mask: u64,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i64,
}

pub(crate) struct Engine<'a> {
    ring: &'a PolyRing,
    order: &'a ModuleOrder,
    field: PrimeField,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(ring: &'a PolyRing, order: &'a ModuleOrder) -> Self {
        Engine {
            ring,
            order,
            field: ring.field(),
        }
    }

    fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let (ca, cb) = (ac as usize, bc as usize);
        let split = self.order.split;
        if split > 0 {
            let (ha, hb) = (ca < split, cb < split);
            if ha != hb {
                return if ha { Ordering::Greater } else { Ordering::Less };
            }
        }
        match self.order.rule {
            PositionRule::PositionOverTerm => cb.cmp(&ca).then_with(|| self.ring.cmp(am, bm)),
            PositionRule::TermOverPosition => {
                let degs = self.order.shifts.as_ref().map(|s| {
                    (
                        am.weighted_degree(self.ring.weights()) as i64 + s[ca],
                        bm.weighted_degree(self.ring.weights()) as i64 + s[cb],
                    )
                });
                let by_deg = degs.map_or(Ordering::Equal, |(da, db)| da.cmp(&db));
                by_deg
                    .then_with(|| self.ring.cmp(am, bm))
                    .then_with(|| cb.cmp(&ca))
            }
        }
    }

    /// Pair selection key ahead of the lcm itself: graded degree, except under
    /// lex where the plain normal strategy (smallest lcm first) is used.
    fn selection_degree(&self, m: &Monomial, comp: u32) -> i64 {
        if self.ring.order() == MonomialOrder::Lex && self.order.shifts.is_none() {
            return 0;
        }
        let shift = self.order.shifts.as_ref().map_or(0, |s| s[comp as usize]);
        self.ring.graded_degree(m) as i64 + shift
    }

    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mono, a.comp, &b.mono, b.comp)
    }

    pub(crate) fn sort(&self, v: &mut Vector) {
        v.sort_by(|a, b| self.cmp_terms(b, a));
    }


    /// `a - c * m * b`.
    fn sub_mul(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vector {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bm: Option<Monomial> = b.first().map(|t| t.mono.mul(m));
        while i < a.len() && j < b.len() {
            let cur = bm.as_ref().expect("pending term");
            match self.cmp(&a[i].mono, a[i].comp, cur, b[j].comp) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: bm.take().expect("pending term"),
                        comp: b[j].comp,
                        coeff: f.neg(f.mul(c, b[j].coeff)),
                    });
                    j += 1;
                    bm = b.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let v = f.sub(a[i].coeff, f.mul(c, b[j].coeff));
                    if v != 0 {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            comp: a[i].comp,
                            coeff: v,
                        });
                    }
                    i += 1;
                    j += 1;
                    bm = b.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push(Term {
                mono: b[j].mono.mul(m),
                comp: b[j].comp,
                coeff: f.neg(f.mul(c, b[j].coeff)),
            });
            j += 1;
        }
        out
    }

    fn lead_of(v: &Vector) -> Lead {
        let t = &v[0];
        Lead {
            mono: t.mono.clone(),
            comp: t.comp,
            mask: t.mono.support_mask(),
        }
    }

    fn find_reducer(t: &Term, leads: &[Lead]) -> Option<usize> {
        let mask = t.mono.support_mask();
        leads.iter().position(|l| {
            l.comp == t.comp && l.mask & !mask == 0 && l.mono.divides(&t.mono)
        })
    }

    /// Full reduction of `f` by `basis`; `leads[k]` describes `basis[idx[k]]`.
    fn reduce_with(&self, mut f: Vector, basis: &[Vector], idx: &[usize], leads: &[Lead]) -> Vector {
        let mut pos = 0;
        while pos < f.len() {
            match Self::find_reducer(&f[pos], leads) {
                None => pos += 1,
                Some(k) => {
                    let g = &basis[idx[k]];
                    let m = g[0].mono.quotient_of(&f[pos].mono);
                    let c = self.field.mul(f[pos].coeff, self.field.inv(g[0].coeff));
                    let tail = self.sub_mul(&f[pos..], c, &m, g);
                    f.truncate(pos);
                    f.extend(tail);
                }
            }
        }
        f
    }

    pub(crate) fn normal_form(&self, f: Vector, basis: &[Vector]) -> Vector {
        let leads: Vec<Lead> = basis.iter().map(Self::lead_of).collect();
        let idx: Vec<usize> = (0..basis.len()).collect();
        self.reduce_with(f, basis, &idx, &leads)
    }

    fn make_monic(&self, mut v: Vector) -> Vector {
        if let Some(t) = v.first() {
            if t.coeff != 1 {
                let inv = self.field.inv(t.coeff);
                for t in v.iter_mut() {
                    t.coeff = self.field.mul(t.coeff, inv);
                }
            }
        }
        v
    }

    fn spoly(&self, g: &Vector, h: &Vector, lcm: &Monomial) -> Vector {
        let mg = g[0].mono.quotient_of(lcm);
        let mh = h[0].mono.quotient_of(lcm);
        let scaled: Vector = g
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(&mg),
                comp: t.comp,
                coeff: t.coeff,
            })
            .collect();
        let mut s = self.sub_mul(&scaled, 1, &mh, h);
        // leading terms cancel exactly (both monic)
        debug_assert!(s.first().is_none_or(|t| t.mono != *lcm || t.comp != g[0].comp));
        s.retain(|t| t.coeff != 0);
        s
    }

    /// Reduced Gröbner basis of the module generated by `gens`, sorted by
    /// increasing leading term.
    pub(crate) fn buchberger(&self, gens: Vec<Vector>) -> Vec<Vector> {
        let allow_product = self.order.split == 0
            && gens.iter().flatten().all(|t| t.comp == 0);
        let mut gens: Vec<Vector> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| self.cmp_terms(&a[0], &b[0]).then_with(|| a.len().cmp(&b.len())));

        let mut basis: Vec<Vector> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut idx: Vec<usize> = Vec::new();
        let mut leads: Vec<Lead> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let insert = |h: Vector,
                          basis: &mut Vec<Vector>,
                          active: &mut Vec<bool>,
                          idx: &mut Vec<usize>,
                          leads: &mut Vec<Lead>,
                          pairs: &mut Vec<Pair>| {
            let k = basis.len();
            let hl = Self::lead_of(&h);
            basis.push(h);
            active.push(true);
            self.update(k, basis, active, pairs, allow_product);
            // drop reducers whose leading term is now redundant
            let mut keep_idx = Vec::with_capacity(idx.len() + 1);
            let mut keep_leads = Vec::with_capacity(idx.len() + 1);
            for (pos, &i) in idx.iter().enumerate() {
                let l = &leads[pos];
                if l.comp == hl.comp && hl.mono.divides(&l.mono) {
                    active[i] = false;
                } else {
                    keep_idx.push(i);
                    keep_leads.push(Lead {
                        mono: l.mono.clone(),
                        comp: l.comp,
                        mask: l.mask,
                    });
                }
            }
            keep_idx.push(k);
            keep_leads.push(hl);
            *idx = keep_idx;
            *leads = keep_leads;
        };

        for g in gens {
            let h = self.reduce_with(g, &basis, &idx, &leads);
            if !h.is_empty() {
                let h = self.make_monic(h);
                insert(h, &mut basis, &mut active, &mut idx, &mut leads, &mut pairs);
            }
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.deg
                        .cmp(&pb.deg)
                        .then_with(|| self.cmp(&pa.lcm, pa.comp, &pb.lcm, pb.comp))
                        .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            let s = self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
            let h = self.reduce_with(s, &basis, &idx, &leads);
            if !h.is_empty() {
                let h = self.make_monic(h);
                insert(h, &mut basis, &mut active, &mut idx, &mut leads, &mut pairs);
            }
        }

        // interreduce the minimal basis
        let minimal: Vec<Vector> = idx.iter().map(|&i| basis[i].clone()).collect();
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others_idx: Vec<usize> = (0..minimal.len()).filter(|&o| o != k).collect();
            let others_leads: Vec<Lead> = others_idx.iter().map(|&o| Self::lead_of(&minimal[o])).collect();
            let g = &minimal[k];
            let tail = self.reduce_with(g[1..].to_vec(), &minimal, &others_idx, &others_leads);
            let mut v = Vec::with_capacity(tail.len() + 1);
            v.push(g[0].clone());
            v.extend(tail);
            reduced.push(v);
        }
        reduced.sort_by(|a, b| self.cmp_terms(&a[0], &b[0]));
        reduced
    }

    /// Gebauer–Möller update for the new element `k` with leading data `hl`.
    fn update(
        &self,
        k: usize,
        basis: &[Vector],
        active: &[bool],
        pairs: &mut Vec<Pair>,
        allow_product: bool,
    ) {
        let hl = &Self::lead_of(&basis[k]);
        struct Cand {
            i: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = (0..k)
            .filter(|&i| active[i] && basis[i][0].comp == hl.comp)
            .map(|i| {
                let lm = &basis[i][0].mono;
                Cand {
                    i,
                    lcm: lm.lcm(&hl.mono),
                    coprime: allow_product && lm.is_coprime(&hl.mono),
                }
            })
            .collect();

        // criterion M / F: keep a candidate only if no other remaining one has an lcm dividing it
        let mut kept: Vec<Cand> = Vec::new();
        while let Some(c) = cands.pop() {
            let dominated = cands
                .iter()
                .chain(kept.iter())
                .any(|o| o.lcm.divides(&c.lcm));
            if c.coprime || !dominated {
                kept.push(c);
            }
        }

        // criterion B_k on old pairs
        pairs.retain(|p| {
            if p.comp != hl.comp || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mono.lcm(&hl.mono);
            let lj = basis[p.j][0].mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });

        for c in kept {
            if c.coprime {
                continue;
            }
            let deg = self.selection_degree(&c.lcm, hl.comp);
            pairs.push(Pair {
                i: c.i,
                j: k,
                lcm: c.lcm,
                comp: hl.comp,
                deg,
            });
        }
    }
}

fn poly_to_vector(f: &Polynomial, comp: u32) -> Vector {
    f.terms()
        .iter()
        .map(|(m, c)| Term {
            mono: m.clone(),
            comp,
            coeff: *c,
        })
        .collect()
}

fn free_to_vector(engine: &Engine<'_>, v: &FreeVector) -> Vector {
    let mut out: Vector = v
        .components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| poly_to_vector(c, i as u32))
        .collect();
    engine.sort(&mut out);
    out
}

fn vector_to_free(ring: &Arc<PolyRing>, rank: usize, v: &Vector, offset: usize) -> FreeVector {
    let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for t in v {
        let c = t.comp as usize;
        if c >= offset && c - offset < rank {
            parts[c - offset].push((t.mono.clone(), t.coeff));
        }
    }
    FreeVector {
        components: parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect(),
    }
}

fn vector_to_poly(ring: &Arc<PolyRing>, v: &Vector) -> Polynomial {
    // rank-one term order coincides with the ring order
    Polynomial::from_sorted(ring, v.iter().map(|t| (t.mono.clone(), t.coeff)).collect())
}

/// A Gröbner basis of an ideal (rank 1) or of a submodule of P^r.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    order: ModuleOrder,
    elems: Vec<Vector>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Reduced basis of the ideal generated by `gens` under the ring's order.
    pub fn for_ideal(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            if !PolyRing::same(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let order = ModuleOrder::term_over_position();
        let engine = Engine::new(ring, &order);
        let elems = engine.buchberger(gens.iter().map(|g| poly_to_vector(g, 0)).collect());
        Ok(GroebnerBasis {
            ring: ring.clone(),
            rank: 1,
            order,
            elems,
            reduced: true,
        })
    }

    /// Reduced basis of the submodule of P^rank generated by `gens`.
    pub fn for_module(ring: &Arc<PolyRing>, rank: usize, order: ModuleOrder, gens: &[FreeVector]) -> Result<Self> {
        if let Some(s) = &order.shifts {
            if s.len() != rank {
                return Err(AlgebraError::RankMismatch {
                    expected: rank,
                    found: s.len(),
                });
            }
        }
        for g in gens {
            if g.rank() != rank {
                return Err(AlgebraError::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
            if g.components.iter().any(|c| !PolyRing::same(c.ring(), ring)) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let engine = Engine::new(ring, &order);
        let vecs = gens.iter().map(|g| free_to_vector(&engine, g)).collect();
        let elems = engine.buchberger(vecs);
        Ok(GroebnerBasis {
            ring: ring.clone(),
            rank,
            order,
            elems,
            reduced: true,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `true` when the basis generates the whole module (contains a unit vector
    /// for every component); for ideals, when it contains 1.
    pub fn is_unit(&self) -> bool {
        (0..self.rank).all(|c| {
            self.elems
                .iter()
                .any(|v| v[0].comp as usize == c && v[0].mono.is_one())
        })
    }

    /// Elements as polynomials; only meaningful in rank one.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1, "polynomials() on a module basis");
        self.elems.iter().map(|v| vector_to_poly(&self.ring, v)).collect()
    }

    pub fn vectors(&self) -> Vec<FreeVector> {
        self.elems
            .iter()
            .map(|v| vector_to_free(&self.ring, self.rank, v, 0))
            .collect()
    }

    /// Leading monomials with their positions.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elems
            .iter()
            .map(|v| (v[0].mono.clone(), v[0].comp as usize))
            .collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.rank != 1 {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank,
                found: 1,
            });
        }
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let engine = Engine::new(&self.ring, &self.order);
        let r = engine.normal_form(poly_to_vector(f, 0), &self.elems);
        Ok(vector_to_poly(&self.ring, &r))
    }

    pub fn reduce_vector(&self, v: &FreeVector) -> Result<FreeVector> {
        if v.rank() != self.rank {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        if v.components.iter().any(|c| !PolyRing::same(c.ring(), &self.ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        let engine = Engine::new(&self.ring, &self.order);
        let r = engine.normal_form(free_to_vector(&engine, v), &self.elems);
        Ok(vector_to_free(&self.ring, self.rank, &r, 0))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_vector(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.reduce_vector(v)?.is_zero())
    }

    /// Checks Buchberger's criterion exhaustively: every S-polynomial of two
    /// elements with the same leading position reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let engine = Engine::new(&self.ring, &self.order);
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (a, b) = (&self.elems[i], &self.elems[j]);
                if a[0].comp != b[0].comp {
                    continue;
                }
                let lcm = a[0].mono.lcm(&b[0].mono);
                let s = engine.spoly(a, b, &lcm);
                if !engine.normal_form(s, &self.elems).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the defining properties of a reduced basis.
    pub fn is_reduced_form(&self) -> bool {
        let leads: Vec<(Monomial, u32)> = self.elems.iter().map(|v| (v[0].mono.clone(), v[0].comp)).collect();
        self.elems.iter().enumerate().all(|(i, v)| {
            v[0].coeff == 1
                && v.iter().all(|t| {
                    leads
                        .iter()
                        .enumerate()
                        .all(|(j, (m, c))| j == i || *c != t.comp || !m.divides(&t.mono))
                })
        })
    }
}

/// Normal form of `f` with respect to `basis`.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.reduce(f)
}

/// Reduced Gröbner basis of `(gens)` under the order of `ring`.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    GroebnerBasis::for_ideal(ring, gens)
}

/// Generators of the kernel of P^s -> P^r, e_j -> columns[j].
///
/// Computed by a Gröbner basis of the graph module {(columns[j], e_j)} in
/// P^(r+s) under an order eliminating the first r positions.
pub fn syzygies(ring: &Arc<PolyRing>, rank: usize, columns: &[FreeVector]) -> Result<Vec<FreeVector>> {
    Ok(syzygies_graded(ring, rank, columns, None)?.0)
}

/// Like [`syzygies`], with degree shifts on P^r. Returns the syzygies and the
/// induced shifts on P^s (the shifted degrees of the columns), so that
/// homogeneous input gives homogeneous output.
pub fn syzygies_graded(
    ring: &Arc<PolyRing>,
    rank: usize,
    columns: &[FreeVector],
    shifts: Option<&[i64]>,
) -> Result<(Vec<FreeVector>, Vec<i64>)> {
    let s = columns.len();
    for c in columns {
        if c.rank() != rank {
            return Err(AlgebraError::RankMismatch {
                expected: rank,
                found: c.rank(),
            });
        }
    }
    let base_shifts: Vec<i64> = match shifts {
        Some(sh) => sh.to_vec(),
        None => vec![0; rank],
    };
    let col_shifts: Vec<i64> = columns
        .iter()
        .map(|c| c.shifted_degree(&base_shifts).unwrap_or(0))
        .collect();
    if s == 0 {
        return Ok((Vec::new(), col_shifts));
    }
    let mut all_shifts = base_shifts.clone();
    all_shifts.extend(&col_shifts);
    let order = ModuleOrder {
        rule: PositionRule::TermOverPosition,
        shifts: shifts.map(|_| all_shifts),
        split: rank,
    };
    let engine = Engine::new(ring, &order);
    let n = ring.nvars();
    let gens: Vec<Vector> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v: Vector = c
                .components
                .iter()
                .enumerate()
                .flat_map(|(i, p)| poly_to_vector(p, i as u32))
                .collect();
            v.push(Term {
                mono: Monomial::one(n),
                comp: (rank + j) as u32,
                coeff: 1,
            });
            engine.sort(&mut v);
            v
        })
        .collect();
    let gb = engine.buchberger(gens);
    let syz = gb
        .iter()
        .filter(|v| v[0].comp as usize >= rank)
        .map(|v| vector_to_free(ring, s, v, rank))
        .collect();
    Ok((syz, col_shifts))
}
