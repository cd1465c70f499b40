//! Graded free resolutions over P, Ext^j_P(S, P), and the local-cohomology
//! invariants read off them by graded local duality.
//!
//! For homogeneous J, H^i_m(S) is dual to Ext^(n-i)_P(S, P) up to a twist,
//! so lengths and annihilators transfer directly.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{combine, syzygies_graded, FreeVector, GroebnerBasis, ModuleOrder};
use crate::ideal::{count_standard_monomials, Dimension, Ideal, QuotientRing};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// coker(P^s -> P^rank) given by relation columns.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<PolyRing>,
    rank: usize,
    relations: Vec<FreeVector>,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, relations: Vec<FreeVector>) -> Result<Self> {
        for r in &relations {
            if r.rank() != rank {
                return Err(AlgebraError::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(ModulePresentation {
            ring: ring.clone(),
            rank,
            relations,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            rank: 0,
            relations: Vec::new(),
        }
    }

    /// P/I as a cyclic module.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let rels = ideal
            .gens()
            .iter()
            .map(|g| FreeVector::new(vec![g.clone()]).expect("single component"))
            .collect();
        ModulePresentation {
            ring: ring.clone(),
            rank: 1,
            relations: rels,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.relations
    }

    /// M / m^k M.
    pub fn truncate(&self, k: u32) -> ModulePresentation {
        let mut rels = self.relations.clone();
        for c in 0..self.rank {
            for m in self.ring.monomials_of_degree(k) {
                let mut comps = vec![self.ring.zero(); self.rank];
                comps[c] = self.ring.term(m, 1);
                rels.push(FreeVector::new(comps).expect("same ring"));
            }
        }
        ModulePresentation {
            ring: self.ring.clone(),
            rank: self.rank,
            relations: rels,
        }
    }

    fn basis(&self) -> GroebnerBasis {
        GroebnerBasis::for_module(&self.ring, self.rank, ModuleOrder::term_over_position(), &self.relations)
            .expect("relations checked at construction")
    }

    /// `f · e_c` lies in the relation module.
    pub fn kills(&self, f: &Polynomial, c: usize) -> Result<bool> {
        let mut comps = vec![self.ring.zero(); self.rank];
        comps[c] = f.clone();
        self.basis().contains_vector(&FreeVector::new(comps)?)
    }
}

/// Free resolution F_0 <- F_1 <- ... of P/J with F_0 = P.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Arc<PolyRing>,
    /// maps[i] holds the columns of d_(i+1): F_(i+1) -> F_i.
    maps: Vec<Vec<FreeVector>>,
    /// Degree shifts of the basis of each F_i.
    shifts: Vec<Vec<i64>>,
}

impl Resolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(Vec::len).collect()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Vec<FreeVector>] {
        &self.maps
    }

    pub fn shifts(&self) -> &[Vec<i64>] {
        &self.shifts
    }

    /// d_i ∘ d_(i+1) = 0 for every i, checked exactly.
    pub fn is_complex(&self) -> Result<bool> {
        for i in 1..self.maps.len() {
            let rank = self.shifts[i - 1].len();
            for col in &self.maps[i] {
                let img = combine(&self.maps[i - 1], col.components(), &self.ring, rank)?;
                if !img.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Greedy minimal generating set of a graded submodule: scan by ascending
/// shifted degree, keep an element only if the kept ones do not generate it.
fn minimalize(ring: &Arc<PolyRing>, rank: usize, shifts: &[i64], gens: Vec<FreeVector>) -> Result<Vec<FreeVector>> {
    minimalize_over(ring, rank, shifts, &[], gens)
}

/// As [`minimalize`], modulo the submodule generated by `base`.
fn minimalize_over(
    ring: &Arc<PolyRing>,
    rank: usize,
    shifts: &[i64],
    base: &[FreeVector],
    gens: Vec<FreeVector>,
) -> Result<Vec<FreeVector>> {
    let mut cands: Vec<(i64, FreeVector)> = gens
        .into_iter()
        .filter_map(|g| g.shifted_degree(shifts).map(|d| (d, g)))
        .collect();
    cands.sort_by_key(|(d, _)| *d);
    let mut span: Vec<FreeVector> = base.to_vec();
    let mut kept: Vec<FreeVector> = Vec::new();
    for (_, g) in cands {
        let redundant = !span.is_empty()
            && GroebnerBasis::for_module(ring, rank, ModuleOrder::term_over_position(), &span)?.contains_vector(&g)?;
        if !redundant {
            span.push(g.clone());
            kept.push(g);
        }
    }
    Ok(kept)
}

/// Minimal graded free resolution of S = P/J, at most `max_len` steps.
pub fn free_resolution(s: &QuotientRing, max_len: usize) -> Result<Resolution> {
    let ring = s.ring();
    let j = s.defining();
    if !j.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous("defining ideal".into()));
    }
    let mut shifts = vec![vec![0i64]];
    let mut maps = Vec::new();
    let gens: Vec<FreeVector> = j
        .reduced_gens()
        .into_iter()
        .map(|g| FreeVector::new(vec![g]).expect("single component"))
        .collect();
    let mut current = minimalize(ring, 1, &[0], gens)?;
    while !current.is_empty() && maps.len() < max_len {
        let base = shifts.last().expect("nonempty").clone();
        let rank = base.len();
        let next_shifts: Vec<i64> = current
            .iter()
            .map(|c| c.shifted_degree(&base).expect("nonzero column"))
            .collect();
        let (syz, _) = syzygies_graded(ring, rank, &current, Some(&base))?;
        let syz = minimalize(ring, current.len(), &next_shifts, syz)?;
        maps.push(current);
        shifts.push(next_shifts);
        current = syz;
    }
    Ok(Resolution {
        ring: ring.clone(),
        maps,
        shifts,
    })
}

/// Columns of the transpose of d_i (one per basis vector of F_(i-1)).
fn transpose(res: &Resolution, i: usize) -> Vec<FreeVector> {
    let cols = &res.maps[i - 1];
    let src = res.shifts[i - 1].len();
    (0..src)
        .map(|k| FreeVector::new(cols.iter().map(|c| c.components()[k].clone()).collect()).expect("same ring"))
        .collect()
}

/// Ext^j_P(S, P) as ker(d_(j+1)^T) / im(d_j^T).
pub fn ext_module(res: &Resolution, j: usize) -> Result<ModulePresentation> {
    let ring = &res.ring;
    if j >= res.shifts.len() || j > ring.nvars() {
        return Ok(ModulePresentation::zero(ring));
    }
    let rank = res.shifts[j].len();
    let dual: Vec<i64> = res.shifts[j].iter().map(|a| -a).collect();
    let image: Vec<FreeVector> = if j == 0 { Vec::new() } else { transpose(res, j) };
    let kernel_gens: Vec<FreeVector> = if j < res.maps.len() {
        let next_dual: Vec<i64> = res.shifts[j + 1].iter().map(|a| -a).collect();
        let cols = transpose(res, j + 1);
        syzygies_graded(ring, next_dual.len(), &cols, Some(&next_dual))?.0
    } else {
        (0..rank).map(|k| FreeVector::basis(ring, rank, k)).collect()
    };
    // generators of ker modulo im
    let kernel = minimalize_over(ring, rank, &dual, &image, kernel_gens)?;
    if kernel.is_empty() {
        return Ok(ModulePresentation::zero(ring));
    }
    let m = kernel.len();
    let kernel_shifts: Vec<i64> = kernel.iter().map(|v| v.shifted_degree(&dual).unwrap_or(0)).collect();
    let mut cols = kernel;
    cols.extend(image);
    let mut all = kernel_shifts;
    let image_shifts: Vec<i64> = cols[m..].iter().map(|v| v.shifted_degree(&dual).unwrap_or(0)).collect();
    all.extend(image_shifts);
    let (syz, _) = syzygies_graded(ring, rank, &cols, Some(&dual))?;
    let rels: Vec<FreeVector> = syz
        .into_iter()
        .map(|v| FreeVector::new(v.into_components().into_iter().take(m).collect()).expect("same ring"))
        .filter(|v| !v.is_zero())
        .collect();
    let rels = minimalize(ring, m, &all[..m], rels)?;
    ModulePresentation::new(ring, m, rels)
}

/// ann(M) = ∩_c (N : e_c), with N the relation module.
pub fn module_annihilator(module: &ModulePresentation) -> Result<Ideal> {
    let ring = &module.ring;
    let mut acc = Ideal::unit(ring);
    for c in 0..module.rank {
        let mut cols = vec![FreeVector::basis(ring, module.rank, c)];
        cols.extend(module.relations.iter().cloned());
        let (syz, _) = syzygies_graded(ring, module.rank, &cols, None)?;
        let gens: Vec<Polynomial> = syz.into_iter().map(|v| v.components()[0].clone()).collect();
        let colon = Ideal::new(ring, gens)?;
        acc = acc.intersect(&colon)?.minimized();
    }
    Ok(acc)
}

/// Length of M, `None` when infinite.
pub fn module_length(module: &ModulePresentation) -> Option<u64> {
    if module.rank == 0 {
        return Some(0);
    }
    let gb = module.basis();
    let leads = gb.leading_terms();
    let n = module.ring.nvars();
    let mut total = 0u64;
    for c in 0..module.rank {
        let in_c: Vec<Monomial> = leads.iter().filter(|(_, k)| *k == c).map(|(m, _)| m.clone()).collect();
        total += count_standard_monomials(&in_c, n, None)?;
    }
    Some(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    pub dim: usize,
    pub fin_dim: usize,
    pub n0: u32,
    /// ℓ(H^i_m(S)) for i < fin_dim.
    pub low_lengths: Vec<u64>,
    /// socle_lengths[i][k] = ℓ(0 :_{H^i_m(S)} m^k) for i <= fin_dim, k <= n0.
    pub socle_lengths: Vec<Vec<u64>>,
}

const N0_SEARCH_CAP: u32 = 64;

/// d, the finiteness dimension t, n0, and the lengths above, all via Ext.
pub fn cohomology_profile(s: &QuotientRing) -> Result<CohomologyProfile> {
    let ring = s.ring();
    if !s.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous("defining ideal".into()));
    }
    let d = match s.dim() {
        Dimension::Finite(d) if d > 0 => d,
        other => return Err(AlgebraError::Precondition(format!("ring dimension {other} is not positive"))),
    };
    let n = ring.nvars();
    let res = free_resolution(s, n + 1)?;
    let exts: Vec<ModulePresentation> = (0..=d).map(|i| ext_module(&res, n - i)).collect::<Result<_>>()?;
    let mut t = d;
    let mut low_lengths = Vec::new();
    for (i, ext) in exts.iter().enumerate().take(d) {
        match module_length(ext) {
            Some(l) => low_lengths.push(l),
            None => {
                t = i;
                break;
            }
        }
    }
    low_lengths.truncate(t);
    let anns: Vec<Ideal> = exts[..t].iter().map(module_annihilator).collect::<Result<_>>()?;
    let mut n0 = 1u32;
    'search: loop {
        if n0 > N0_SEARCH_CAP {
            return Err(AlgebraError::Precondition("no m-power annihilates the low cohomology".into()));
        }
        let monos = ring.monomials_of_degree(n0);
        for ann in &anns {
            for m in &monos {
                if !ann.contains(&ring.term(m.clone(), 1))? {
                    n0 += 1;
                    continue 'search;
                }
            }
        }
        break;
    }
    let mut socle_lengths = Vec::with_capacity(t + 1);
    for ext in &exts[..=t] {
        let mut row = vec![0u64];
        for k in 1..=n0 {
            let l = module_length(&ext.truncate(k))
                .ok_or_else(|| AlgebraError::Precondition("truncated Ext of infinite length".into()))?;
            row.push(l);
        }
        socle_lengths.push(row);
    }
    Ok(CohomologyProfile {
        dim: d,
        fin_dim: t,
        n0,
        low_lengths,
        socle_lengths,
    })
}
