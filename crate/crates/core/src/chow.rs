//! Sparse exact arithmetic in the Schubert basis of the Chow ring of `G/B`.
//!
//! A class `[Z_w]` has codimension `l(w)`; `[Z_e]` is the fundamental class and `[Z_{w0}]` the
//! class of a point. Divisors multiply by the Chevalley rule
//! `[D_i] [Z_w] = sum <omega_i, alpha^vee> [Z_{w s_alpha}]` over positive roots `alpha` with
//! `l(w s_alpha) = l(w) + 1`.

use std::fmt;
use std::sync::Arc;

use quick_cache::sync::Cache;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coefficient;
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

/// Default number of elements whose cover lists are cached.
pub const DEFAULT_COVER_CACHE: usize = 1 << 22;

/// Supports at least this large are multiplied in parallel chunks.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("coefficient overflow in the fixed-width backend; use arbitrary precision")]
    CoefficientOverflow,
    #[error("expected a class of codimension {expected}, got {grade}")]
    WrongGrade { grade: usize, expected: usize },
    #[error("support of {terms} terms exceeds the budget of {budget}")]
    BudgetExceeded { terms: usize, budget: usize },
    #[error("multidegree has {got} entries but the rank is {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("divisor index {0} out of range")]
    BadDivisor(usize),
    #[error("indexing {elements} Weyl group elements would exceed the limit of {limit}")]
    IndexLimit { elements: usize, limit: usize },
}

/// The operations the search needs from a representation of divisor products.
pub trait DivisorProducts<C: Coefficient>: Sync {
    type Vector: Send + Sync;

    fn unit(&self) -> Self::Vector;
    fn times_divisor(&self, v: &Self::Vector, i: usize) -> Result<Self::Vector, ChowError>;
    fn min_nonzero(v: &Self::Vector) -> Option<C>;
    fn multiplicity_free(v: &Self::Vector) -> bool;
}

/// Exponents `(n_1, ..., n_r)` of a divisor monomial `[D_1]^{n_1} ... [D_r]^{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(rank: usize) -> Self {
        MultiDegree(vec![0; rank])
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Every multidegree of the given rank with total at most `max_total`, in lexicographic
    /// order.
    pub fn all_up_to(rank: usize, max_total: usize) -> Vec<MultiDegree> {
        fn rec(prefix: &mut Vec<u32>, rank: usize, left: usize, out: &mut Vec<MultiDegree>) {
            if prefix.len() == rank {
                out.push(MultiDegree(prefix.clone()));
                return;
            }
            for n in 0..=left {
                prefix.push(n as u32);
                rec(prefix, rank, left - n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(rank), rank, max_total, &mut out);
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for MultiDegree {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(MultiDegree)
    }
}

/// A homogeneous element of the Chow ring with nonnegative coefficients, sorted by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowVector<C> {
    grade: usize,
    terms: Vec<(WeylElement, C)>,
}

impl<C: Coefficient> ChowVector<C> {
    pub fn zero(grade: usize) -> Self {
        ChowVector {
            grade,
            terms: Vec::new(),
        }
    }

    /// Builds a vector from arbitrary terms; zero coefficients are dropped and duplicates summed.
    pub fn from_terms(grade: usize, terms: impl IntoIterator<Item = (WeylElement, C)>) -> Self {
        let mut acc: FxHashMap<WeylElement, C> = FxHashMap::default();
        for (w, c) in terms {
            let slot = acc.entry(w).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        Self::from_map(grade, acc)
    }

    fn from_map(grade: usize, acc: FxHashMap<WeylElement, C>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        ChowVector { grade, terms }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> &[(WeylElement, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &WeylElement) -> C {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(w))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// The first element (in element order) whose coefficient is exactly one.
    pub fn multiplicity_free_witness(&self) -> Option<&WeylElement> {
        self.terms
            .iter()
            .find(|(_, c)| c.is_exactly_one())
            .map(|(w, _)| w)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicity_free_witness().is_some()
    }

    pub fn min_nonzero_coefficient(&self) -> Option<&C> {
        self.terms.iter().map(|(_, c)| c).min()
    }

    pub fn max_coefficient(&self) -> Option<&C> {
        self.terms.iter().map(|(_, c)| c).max()
    }
}

/// Multiplication engine for one root system, with a bounded cache of Bruhat covers.
pub struct SchubertRing {
    rs: Arc<RootSystem>,
    w0: WeylElement,
    covers: Cache<WeylElement, Arc<[u8]>>,
    /// Per divisor, the Chevalley coefficient of every positive root.
    chevalley: Vec<Vec<u8>>,
    support_budget: Option<usize>,
}

impl fmt::Debug for SchubertRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchubertRing")
            .field("label", &self.rs.datum().name())
            .field("cached_covers", &self.covers.len())
            .finish()
    }
}

impl SchubertRing {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Self::with_cache_capacity(rs, DEFAULT_COVER_CACHE)
    }

    pub fn with_cache_capacity(rs: Arc<RootSystem>, capacity: usize) -> Self {
        let chevalley = (0..rs.rank())
            .map(|i| {
                (0..rs.num_positive())
                    .map(|a| rs.chevalley_coefficient_at(i, a) as u8)
                    .collect()
            })
            .collect();
        SchubertRing {
            w0: WeylElement::longest_element(&rs),
            covers: Cache::new(capacity.max(1)),
            chevalley,
            rs,
            support_budget: None,
        }
    }

    /// Fail multiplications whose result would exceed `budget` terms.
    pub fn with_support_budget(mut self, budget: Option<usize>) -> Self {
        self.support_budget = budget;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim_flag(&self) -> usize {
        self.rs.dim_flag()
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.w0
    }

    /// `[Z_e]`, the unit of the ring.
    pub fn unit<C: Coefficient>(&self) -> ChowVector<C> {
        self.schubert_class(WeylElement::identity(self.rank()))
    }

    /// The basis class `[Z_w]`.
    pub fn schubert_class<C: Coefficient>(&self, w: WeylElement) -> ChowVector<C> {
        ChowVector {
            grade: w.length(&self.rs),
            terms: vec![(w, C::one())],
        }
    }

    /// Cover roots of `w`, memoized.
    pub fn cover_roots(&self, w: &WeylElement) -> Arc<[u8]> {
        if let Some(c) = self.covers.get(w) {
            return c;
        }
        let c: Arc<[u8]> = w.cover_roots(&self.rs).into();
        self.covers.insert(*w, c.clone());
        c
    }

    pub fn multiply_by_divisor<C: Coefficient>(
        &self,
        v: &ChowVector<C>,
        i: usize,
    ) -> Result<ChowVector<C>, ChowError> {
        if i >= self.rank() {
            return Err(ChowError::BadDivisor(i));
        }
        let grade = v.grade + 1;
        if v.is_zero() || grade > self.dim_flag() {
            return Ok(ChowVector::zero(grade));
        }
        let acc = if v.terms.len() >= PARALLEL_THRESHOLD {
            let chunk = v.terms.len().div_ceil(rayon::current_num_threads() * 4).max(1024);
            v.terms
                .par_chunks(chunk)
                .map(|part| self.accumulate(part, i))
                .try_reduce(FxHashMap::default, |a, b| merge(a, b))?
        } else {
            self.accumulate(&v.terms, i)?
        };
        if let Some(budget) = self.support_budget {
            if acc.len() > budget {
                return Err(ChowError::BudgetExceeded {
                    terms: acc.len(),
                    budget,
                });
            }
        }
        Ok(ChowVector::from_map(grade, acc))
    }

    fn accumulate<C: Coefficient>(
        &self,
        terms: &[(WeylElement, C)],
        i: usize,
    ) -> Result<FxHashMap<WeylElement, C>, ChowError> {
        let coeffs = &self.chevalley[i];
        let mut acc: FxHashMap<WeylElement, C> =
            FxHashMap::with_capacity_and_hasher(terms.len() * 2, Default::default());
        for (w, c) in terms {
            for &a in self.cover_roots(w).iter() {
                let k = coeffs[a as usize];
                if k == 0 {
                    continue;
                }
                let target = w.mul_reflection(&self.rs, a as usize);
                acc.entry(target)
                    .or_insert_with(C::zero)
                    .add_scaled(c, k as u32)
                    .ok_or(ChowError::CoefficientOverflow)?;
            }
        }
        Ok(acc)
    }

    /// Expansion of `[D_1]^{n_1} ... [D_r]^{n_r}`, multiplying in ascending divisor order.
    pub fn product_of_divisors<C: Coefficient>(
        &self,
        deg: &MultiDegree,
    ) -> Result<ChowVector<C>, ChowError> {
        self.multiply_monomial(self.unit(), deg)
    }

    /// `v * [D_1]^{n_1} ... [D_r]^{n_r}`.
    pub fn multiply_monomial<C: Coefficient>(
        &self,
        mut v: ChowVector<C>,
        deg: &MultiDegree,
    ) -> Result<ChowVector<C>, ChowError> {
        if deg.rank() != self.rank() {
            return Err(ChowError::RankMismatch {
                got: deg.rank(),
                rank: self.rank(),
            });
        }
        if v.grade + deg.total() > self.dim_flag() {
            return Ok(ChowVector::zero(v.grade + deg.total()));
        }
        for (i, &n) in deg.0.iter().enumerate() {
            for _ in 0..n {
                v = self.multiply_by_divisor(&v, i)?;
            }
        }
        Ok(v)
    }

    /// Degree of a zero-cycle class: its coefficient at `[Z_{w0}]`.
    pub fn point_degree<C: Coefficient>(&self, v: &ChowVector<C>) -> Result<C, ChowError> {
        if v.is_zero() {
            return Ok(C::zero());
        }
        if v.grade != self.dim_flag() {
            return Err(ChowError::WrongGrade {
                grade: v.grade,
                expected: self.dim_flag(),
            });
        }
        Ok(v.coefficient(&self.w0))
    }
}

fn merge<C: Coefficient>(
    mut a: FxHashMap<WeylElement, C>,
    mut b: FxHashMap<WeylElement, C>,
) -> Result<FxHashMap<WeylElement, C>, ChowError> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (w, c) in b {
        let slot = a.entry(w).or_insert_with(C::zero);
        *slot = slot.checked_add(&c).ok_or(ChowError::CoefficientOverflow)?;
    }
    Ok(a)
}


impl<C: Coefficient> DivisorProducts<C> for SchubertRing {
    type Vector = ChowVector<C>;

    fn unit(&self) -> ChowVector<C> {
        SchubertRing::unit(self)
    }

    fn times_divisor(&self, v: &ChowVector<C>, i: usize) -> Result<ChowVector<C>, ChowError> {
        self.multiply_by_divisor(v, i)
    }

    fn min_nonzero(v: &ChowVector<C>) -> Option<C> {
        v.min_nonzero_coefficient().cloned()
    }

    fn multiplicity_free(v: &ChowVector<C>) -> bool {
        v.is_multiplicity_free()
    }
}
