//! Divisor products on dense coefficient arrays over Weyl group elements numbered by length.
//!
//! Level `k` holds the elements of length `k` in element order, together with every Chevalley
//! cover arriving from level `k - 1` (source index and root). Levels are built on first use, so
//! memory tracks the deepest grade actually reached. Multiplying by a divisor pulls each target
//! coefficient from its incoming covers, which needs no hashing and parallelizes without merges.

use std::sync::{Arc, Mutex, RwLock};

use rayon::prelude::*;

use crate::chow::{ChowError, ChowVector, DivisorProducts};
use crate::coeff::Coefficient;
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

/// Default cap on the number of indexed elements (all levels together).
pub const DEFAULT_ELEMENT_LIMIT: usize = 4_000_000;

const PARALLEL_THRESHOLD: usize = 2048;

struct Level {
    elements: Vec<WeylElement>,
    /// Incoming covers of element `t` are `in_start[t]..in_start[t + 1]`.
    in_start: Vec<u32>,
    in_src: Vec<u32>,
    in_root: Vec<u8>,
}

impl Level {
    fn identity(rank: usize) -> Self {
        Level {
            elements: vec![WeylElement::identity(rank)],
            in_start: vec![0, 0],
            in_src: Vec::new(),
            in_root: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.elements.len()
    }
}

/// Dense vector of one grade; entry `k` is the coefficient of the `k`-th element of that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseVector<C> {
    grade: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient> DenseVector<C> {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn min_nonzero_coefficient(&self) -> Option<&C> {
        self.coeffs.iter().filter(|c| !c.is_zero()).min()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_exactly_one())
    }
}

pub struct IndexedRing {
    rs: Arc<RootSystem>,
    /// `chevalley[i][a]`: coefficient of divisor `i` on the cover through positive root `a`.
    chevalley: Vec<Vec<u32>>,
    levels: RwLock<Vec<Arc<Level>>>,
    build: Mutex<()>,
    element_limit: usize,
    support_budget: Option<usize>,
}

impl IndexedRing {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Self::with_element_limit(rs, DEFAULT_ELEMENT_LIMIT)
    }

    pub fn with_element_limit(rs: Arc<RootSystem>, element_limit: usize) -> Self {
        let chevalley = (0..rs.rank())
            .map(|i| {
                (0..rs.num_positive())
                    .map(|a| rs.chevalley_coefficient_at(i, a))
                    .collect()
            })
            .collect();
        let identity = Arc::new(Level::identity(rs.rank()));
        IndexedRing {
            rs,
            chevalley,
            levels: RwLock::new(vec![identity]),
            build: Mutex::new(()),
            element_limit,
            support_budget: None,
        }
    }

    pub fn with_support_budget(mut self, budget: Option<usize>) -> Self {
        self.support_budget = budget;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim_flag(&self) -> usize {
        self.rs.dim_flag()
    }

    /// Number of elements of length at most `grade`, from the Poincare polynomial.
    pub fn elements_up_to(rs: &RootSystem, grade: usize) -> u64 {
        rs.poincare_polynomial().iter().take(grade + 1).sum()
    }

    /// Elements indexed so far.
    pub fn indexed_elements(&self) -> usize {
        self.levels.read().unwrap().iter().map(|l| l.len()).sum()
    }

    fn level(&self, grade: usize) -> Result<Arc<Level>, ChowError> {
        if let Some(level) = self.levels.read().unwrap().get(grade) {
            return Ok(level.clone());
        }
        let _guard = self.build.lock().unwrap();
        loop {
            let (built, top) = {
                let levels = self.levels.read().unwrap();
                (levels.len(), levels.last().expect("level 0 exists").clone())
            };
            if built > grade {
                return Ok(self.levels.read().unwrap()[grade].clone());
            }
            let total = self.indexed_elements();
            if total > self.element_limit {
                return Err(ChowError::IndexLimit {
                    elements: total,
                    limit: self.element_limit,
                });
            }
            let next = Arc::new(self.next_level(&top));
            log::debug!("indexed {} elements of length {}", next.len(), built);
            self.levels.write().unwrap().push(next);
        }
    }

    fn next_level(&self, below: &Level) -> Level {
        let rs = &*self.rs;
        let mut arrows: Vec<(WeylElement, u32, u8)> = below
            .elements
            .par_iter()
            .enumerate()
            .flat_map_iter(|(s, w)| {
                w.cover_roots(rs)
                    .into_iter()
                    .map(move |a| (w.mul_reflection(rs, a as usize), s as u32, a))
            })
            .collect();
        arrows.par_sort_unstable();
        let mut level = Level {
            elements: Vec::new(),
            in_start: vec![0],
            in_src: Vec::with_capacity(arrows.len()),
            in_root: Vec::with_capacity(arrows.len()),
        };
        for (w, s, a) in arrows {
            if level.elements.last() != Some(&w) {
                if !level.elements.is_empty() {
                    level.in_start.push(level.in_src.len() as u32);
                }
                level.elements.push(w);
            }
            level.in_src.push(s);
            level.in_root.push(a);
        }
        level.in_start.push(level.in_src.len() as u32);
        level
    }

    pub fn unit<C: Coefficient>(&self) -> DenseVector<C> {
        DenseVector {
            grade: 0,
            coeffs: vec![C::one()],
        }
    }

    pub fn multiply_by_divisor<C: Coefficient>(
        &self,
        v: &DenseVector<C>,
        i: usize,
    ) -> Result<DenseVector<C>, ChowError> {
        if i >= self.rank() {
            return Err(ChowError::BadDivisor(i));
        }
        let grade = v.grade + 1;
        if grade > self.dim_flag() || v.is_zero() {
            return Ok(DenseVector {
                grade,
                coeffs: Vec::new(),
            });
        }
        let level = self.level(grade)?;
        let coef = &self.chevalley[i];
        let pull = |t: usize| -> Option<C> {
            let mut acc = C::zero();
            for e in level.in_start[t] as usize..level.in_start[t + 1] as usize {
                let k = coef[level.in_root[e] as usize];
                let c = &v.coeffs[level.in_src[e] as usize];
                if k != 0 && !c.is_zero() {
                    acc.add_scaled(c, k)?;
                }
            }
            Some(acc)
        };
        let coeffs: Option<Vec<C>> = if level.len() >= PARALLEL_THRESHOLD {
            (0..level.len()).into_par_iter().with_min_len(512).map(pull).collect()
        } else {
            (0..level.len()).map(pull).collect()
        };
        let out = DenseVector {
            grade,
            coeffs: coeffs.ok_or(ChowError::CoefficientOverflow)?,
        };
        if let Some(budget) = self.support_budget {
            let terms = out.support_len();
            if terms > budget {
                return Err(ChowError::BudgetExceeded { terms, budget });
            }
        }
        Ok(out)
    }

    /// The same class as a sparse vector.
    pub fn to_sparse<C: Coefficient>(&self, v: &DenseVector<C>) -> Result<ChowVector<C>, ChowError> {
        if v.coeffs.is_empty() {
            return Ok(ChowVector::zero(v.grade));
        }
        let level = self.level(v.grade)?;
        Ok(ChowVector::from_terms(
            v.grade,
            level
                .elements
                .iter()
                .zip(&v.coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (*w, c.clone())),
        ))
    }
}

impl<C: Coefficient> DivisorProducts<C> for IndexedRing {
    type Vector = DenseVector<C>;

    fn unit(&self) -> DenseVector<C> {
        IndexedRing::unit(self)
    }

    fn times_divisor(&self, v: &DenseVector<C>, i: usize) -> Result<DenseVector<C>, ChowError> {
        self.multiply_by_divisor(v, i)
    }

    fn min_nonzero(v: &DenseVector<C>) -> Option<C> {
        v.min_nonzero_coefficient().cloned()
    }

    fn multiplicity_free(v: &DenseVector<C>) -> bool {
        v.is_multiplicity_free()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{MultiDegree, SchubertRing};
    use crate::rootsys::CartanType;
    use num_bigint::BigUint;

    fn rings(t: CartanType) -> (SchubertRing, IndexedRing) {
        let rs = Arc::new(RootSystem::from_type(t).unwrap());
        (SchubertRing::new(rs.clone()), IndexedRing::new(rs))
    }

    fn dense_product(ring: &IndexedRing, deg: &MultiDegree) -> DenseVector<BigUint> {
        let mut v = ring.unit();
        for (i, &n) in deg.0.iter().enumerate() {
            for _ in 0..n {
                v = ring.multiply_by_divisor(&v, i).unwrap();
            }
        }
        v
    }

    #[test]
    fn levels_match_poincare_counts() {
        let (_, ring) = rings(CartanType::B(3));
        let rs = ring.root_system();
        for (k, &count) in rs.poincare_polynomial().iter().enumerate() {
            assert_eq!(ring.level(k).unwrap().len() as u64, count);
        }
        assert_eq!(ring.indexed_elements() as u64, rs.weyl_group_order());
    }

    #[test]
    fn agrees_with_sparse_engine() {
        for t in [CartanType::A(3), CartanType::G2, CartanType::C(3), CartanType::D(4)] {
            let (sparse, dense) = rings(t);
            for deg in MultiDegree::all_up_to(sparse.rank(), sparse.dim_flag().min(9)) {
                let expected: ChowVector<BigUint> = sparse.product_of_divisors(&deg).unwrap();
                let got = dense.to_sparse(&dense_product(&dense, &deg)).unwrap();
                assert_eq!(got, expected, "{t} {deg}");
            }
        }
    }

    #[test]
    fn e6_spot_checks() {
        let (sparse, dense) = rings(CartanType::E6);
        for deg in [vec![5, 4, 4, 3, 2, 1], vec![3, 0, 2, 2, 1, 4], vec![0, 0, 0, 7, 0, 0]] {
            let deg = MultiDegree(deg);
            let expected: ChowVector<BigUint> = sparse.product_of_divisors(&deg).unwrap();
            let v = dense_product(&dense, &deg);
            assert_eq!(v.is_multiplicity_free(), expected.is_multiplicity_free());
            assert_eq!(dense.to_sparse(&v).unwrap(), expected);
        }
    }

    #[test]
    fn beyond_top_grade_is_zero() {
        let (_, ring) = rings(CartanType::A(2));
        let v = dense_product(&ring, &MultiDegree(vec![2, 1]));
        assert_eq!(v.coefficients(), &[BigUint::from(1u32)]);
        let w = ring.multiply_by_divisor(&v, 0).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.grade(), 4);
    }

    #[test]
    fn element_limit_is_enforced() {
        let rs = Arc::new(RootSystem::from_type(CartanType::A(3)).unwrap());
        let ring = IndexedRing::with_element_limit(rs, 5);
        let mut v: DenseVector<u64> = ring.unit();
        let mut err = None;
        for _ in 0..6 {
            match ring.multiply_by_divisor(&v, 1) {
                Ok(next) => v = next,
                Err(e) => {
                    err = Some(e);
                    break;
                }
            }
        }
        assert!(matches!(err, Some(ChowError::IndexLimit { limit: 5, .. })));
    }

    #[test]
    fn overflow_and_budget() {
        let (_, ring) = rings(CartanType::A(2));
        let half = u64::MAX / 2 + 1;
        let v = DenseVector {
            grade: 1,
            coeffs: vec![half, half],
        };
        // D_1 [Z_s1] and D_1 [Z_s2] both contain [Z_{s2 s1}] with coefficient one.
        assert_eq!(ring.multiply_by_divisor(&v, 0), Err(ChowError::CoefficientOverflow));
        let budgeted = IndexedRing::new(Arc::new(RootSystem::from_type(CartanType::A(3)).unwrap()))
            .with_support_budget(Some(2));
        let mut w: DenseVector<u64> = budgeted.unit();
        w = budgeted.multiply_by_divisor(&w, 0).unwrap();
        w = budgeted.multiply_by_divisor(&w, 1).unwrap();
        assert!(matches!(
            budgeted.multiply_by_divisor(&w, 2),
            Err(ChowError::BudgetExceeded { budget: 2, .. })
        ));
    }
}
