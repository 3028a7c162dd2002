//! Brute-force verifier for small ranks.
//!
//! Shares only the root list and Cartan matrix with the engine. Weyl elements are permutations
//! of the full root set, lengths are breadth-first distances in the Cayley graph, reflections
//! in non-simple roots come from conjugating simple reflections, coroots from the dual action
//! on the coroot lattice, and all products use dense coefficient arrays.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chow::{ChowError, ChowVector, MultiDegree, SchubertRing};
use crate::rootsys::{CartanType, Coords, RootSystem, MAX_RANK};
use crate::weyl::{format_word, WeylElement};

/// Largest rank the oracle accepts.
pub const ORACLE_MAX_RANK: usize = 4;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle supports rank at most {ORACLE_MAX_RANK}, got {0}")]
    RankTooLarge(usize),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

type Perm = Vec<u16>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

/// Entire Weyl group with a dense Chevalley multiplication table.
pub struct DenseChowTable {
    rank: usize,
    num_positive: usize,
    /// Positive roots first (engine order), then their negatives.
    roots: Vec<Vec<i32>>,
    root_index: HashMap<Vec<i32>, u16>,
    elements: Vec<Perm>,
    element_index: HashMap<Perm, u32>,
    depth: Vec<usize>,
    /// BFS parent and the generator that reached each element.
    parent: Vec<Option<(u32, usize)>>,
    /// `table[w][i]`: `(target, coefficient)` pairs of `[D_i] [Z_w]`.
    table: Vec<Vec<Vec<(u32, u32)>>>,
    longest: u32,
}

impl DenseChowTable {
    pub fn new(rs: &RootSystem) -> Result<Self, OracleError> {
        let r = rs.rank();
        if r > ORACLE_MAX_RANK {
            return Err(OracleError::RankTooLarge(r));
        }
        let c = |i: usize, j: usize| rs.datum().entry(i, j);
        let positive: Vec<Vec<i32>> = rs
            .positive_roots()
            .iter()
            .map(|a| a.coords().iter().map(|&x| x as i32).collect())
            .collect();
        let n = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|a| a.iter().map(|x| -x).collect::<Vec<_>>()));
        let root_index: HashMap<Vec<i32>, u16> =
            roots.iter().enumerate().map(|(k, a)| (a.clone(), k as u16)).collect();

        let simple: Vec<Perm> = (0..r)
            .map(|i| {
                roots
                    .iter()
                    .map(|beta| {
                        let p: i32 = (0..r).map(|j| c(i, j) * beta[j]).sum();
                        let mut img = beta.clone();
                        img[i] -= p;
                        root_index[&img]
                    })
                    .collect()
            })
            .collect();

        // Breadth-first enumeration in the right Cayley graph.
        let identity: Perm = (0..roots.len() as u16).collect();
        let mut elements = vec![identity.clone()];
        let mut element_index = HashMap::from([(identity, 0u32)]);
        let mut depth = vec![0usize];
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0u32]);
        while let Some(k) = queue.pop_front() {
            for (i, s) in simple.iter().enumerate() {
                let next = compose(&elements[k as usize], s);
                if !element_index.contains_key(&next) {
                    let id = elements.len() as u32;
                    element_index.insert(next.clone(), id);
                    elements.push(next);
                    depth.push(depth[k as usize] + 1);
                    parent.push(Some((k, i)));
                    queue.push_back(id);
                }
            }
        }

        // Reflections and coroots by walking up from the simple roots: if beta = u(alpha_i) then
        // s_beta = u s_i u^{-1} and beta^vee = u(alpha_i^vee).
        let mut reflection: Vec<Option<Perm>> = vec![None; n];
        let mut coroot: Vec<Vec<i32>> = vec![Vec::new(); n];
        let mut walk = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            reflection[i] = Some(simple[i].clone());
            coroot[i] = e.clone();
            walk.push_back((i, (0..roots.len() as u16).collect::<Perm>(), e, i));
        }
        while let Some((beta, u, x, i)) = walk.pop_front() {
            for j in 0..r {
                let img = simple[j][beta] as usize;
                if img >= n || reflection[img].is_some() {
                    continue;
                }
                let u2 = compose(&simple[j], &u);
                let mut x2 = x.clone();
                x2[j] -= (0..r).map(|k| c(k, j) * x[k]).sum::<i32>();
                reflection[img] = Some(compose(&compose(&u2, &simple[i]), &invert(&u2)));
                coroot[img] = x2.clone();
                walk.push_back((img, u2, x2, i));
            }
        }
        let reflection: Vec<Perm> = reflection
            .into_iter()
            .map(|p| p.expect("every positive root is reached from a simple root"))
            .collect();

        let table = (0..elements.len())
            .map(|w| {
                let mut per_divisor = vec![Vec::new(); r];
                for (a, s) in reflection.iter().enumerate() {
                    let t = element_index[&compose(&elements[w], s)];
                    if depth[t as usize] != depth[w] + 1 {
                        continue;
                    }
                    for (i, slot) in per_divisor.iter_mut().enumerate() {
                        if coroot[a][i] > 0 {
                            slot.push((t, coroot[a][i] as u32));
                        }
                    }
                }
                per_divisor
            })
            .collect();
        let longest = (0..elements.len())
            .max_by_key(|&k| depth[k])
            .expect("group is nonempty") as u32;

        Ok(DenseChowTable {
            rank: r,
            num_positive: n,
            roots,
            root_index,
            elements,
            element_index,
            depth,
            parent,
            table,
            longest,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn length(&self, k: usize) -> usize {
        self.depth[k]
    }

    pub fn longest(&self) -> usize {
        self.longest as usize
    }

    /// Element counts by length, from the Cayley-graph distances.
    pub fn poincare_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.num_positive + 1];
        for &d in &self.depth {
            counts[d] += 1;
        }
        counts
    }

    /// A word for element `k` read off the breadth-first tree (0-based letters).
    pub fn word(&self, k: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = k;
        while let Some((p, i)) = self.parent[cur] {
            word.push(i);
            cur = p as usize;
        }
        word.reverse();
        word
    }

    /// Index of an engine element, found through its action on the roots.
    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        let perm: Option<Perm> = self
            .roots
            .iter()
            .map(|beta| {
                let mut c: Coords = [0; MAX_RANK];
                for (dst, &x) in c.iter_mut().zip(beta) {
                    *dst = x as i8;
                }
                let img = w.apply(&c);
                let img: Vec<i32> = img[..self.rank].iter().map(|&x| x as i32).collect();
                self.root_index.get(&img).copied()
            })
            .collect();
        self.element_index.get(&perm?).map(|&k| k as usize)
    }

    pub fn basis(&self, k: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.order()];
        v[k] = BigUint::one();
        v
    }

    pub fn multiply_by_divisor(&self, v: &[BigUint], i: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.order()];
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(t, k) in &self.table[w][i] {
                out[t as usize] += c * k;
            }
        }
        out
    }

    pub fn multiply_monomial(&self, mut v: Vec<BigUint>, deg: &MultiDegree) -> Vec<BigUint> {
        for (i, &n) in deg.0.iter().enumerate() {
            for _ in 0..n {
                v = self.multiply_by_divisor(&v, i);
            }
        }
        v
    }

    /// Dense expansion of a divisor monomial.
    pub fn oracle_product(&self, deg: &MultiDegree) -> Vec<BigUint> {
        self.multiply_monomial(self.basis(0), deg)
    }

    /// Dense form of an engine vector.
    pub fn densify<C: crate::coeff::Coefficient>(&self, v: &ChowVector<C>) -> Option<Vec<BigUint>> {
        let mut out = vec![BigUint::zero(); self.order()];
        for (w, c) in v.terms() {
            out[self.index_of(w)?] = c.clone().into();
        }
        Some(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub degrees: Vec<u32>,
    pub word: String,
    pub engine: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub label: String,
    pub multidegrees: usize,
    pub mismatches: Vec<Mismatch>,
}

fn compare_one(
    ring: &SchubertRing,
    table: &DenseChowTable,
    deg: &MultiDegree,
) -> Result<Vec<Mismatch>, OracleError> {
    let engine: ChowVector<BigUint> = ring.product_of_divisors(deg)?;
    let expected = table.oracle_product(deg);
    let mut got = vec![BigUint::zero(); table.order()];
    let mut mismatches = Vec::new();
    for (w, c) in engine.terms() {
        match table.index_of(w) {
            Some(k) => got[k] = c.clone(),
            None => mismatches.push(Mismatch {
                degrees: deg.0.clone(),
                word: format!("{w:?}"),
                engine: c.to_string(),
                oracle: "not a group element".into(),
            }),
        }
    }
    if !mismatches.is_empty() {
        return Ok(mismatches);
    }
    for k in 0..table.order() {
        if got[k] != expected[k] {
            mismatches.push(Mismatch {
                degrees: deg.0.clone(),
                word: format_word(&table.word(k)),
                engine: got[k].to_string(),
                oracle: expected[k].to_string(),
            });
        }
    }
    Ok(mismatches)
}

/// Compares engine and oracle on every monomial of total degree at most `dim(G/B)`.
pub fn compare_all(rs: &Arc<RootSystem>) -> Result<CompareReport, OracleError> {
    let table = DenseChowTable::new(rs)?;
    let ring = SchubertRing::new(rs.clone());
    let degrees = MultiDegree::all_up_to(rs.rank(), rs.dim_flag());
    let per_degree = degrees
        .par_iter()
        .map(|deg| compare_one(&ring, &table, deg))
        .collect::<Result<Vec<_>, _>>()?;
    let mismatches = per_degree.into_iter().flatten().collect();
    Ok(CompareReport {
        label: rs.datum().name(),
        multidegrees: degrees.len(),
        mismatches,
    })
}

/// Inversion-count length (engine) against breadth-first distance (oracle) on all of `W`.
pub fn lengths_agree(rs: &RootSystem, table: &DenseChowTable) -> bool {
    (0..table.order()).all(|k| {
        let w = WeylElement::from_word(rs, &table.word(k));
        w.length(rs) == table.length(k) && table.index_of(&w) == Some(k)
    })
}

/// The support of `(D_1 + ... + D_r)^k` is every element of length `k`, for all `k`.
pub fn saturation_holds(ring: &SchubertRing, table: &DenseChowTable) -> Result<bool, OracleError> {
    let counts = table.poincare_counts();
    let mut v: ChowVector<BigUint> = ring.unit();
    for k in 1..=ring.dim_flag() {
        let parts = (0..ring.rank())
            .map(|i| ring.multiply_by_divisor(&v, i))
            .collect::<Result<Vec<_>, _>>()?;
        v = ChowVector::from_terms(k, parts.into_iter().flat_map(|p| p.terms().to_vec()));
        let all_length_k = v.terms().iter().all(|(w, _)| {
            table
                .index_of(w)
                .is_some_and(|idx| table.length(idx) == k)
        });
        if !all_length_k || v.len() as u64 != counts[k] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every monomial `P` and every `v` of length `deg P`: the coefficient of `[Z_v]` in `P`
/// equals `deg(P [Z_{w0 v}])`, with the product on the right computed densely.
///
/// With the rule `[D_i][Z_w] = sum [Z_{w s_alpha}]` the Poincare dual of `[Z_v]` is
/// `[Z_{w0 v}]`.
pub fn duality_holds(ring: &SchubertRing, table: &DenseChowTable) -> Result<bool, OracleError> {
    let rs = ring.root_system();
    let w0 = WeylElement::longest_element(rs);
    for deg in MultiDegree::all_up_to(rs.rank(), rs.dim_flag()) {
        let p: ChowVector<BigUint> = ring.product_of_divisors(&deg)?;
        for k in 0..table.order() {
            if table.length(k) != deg.total() {
                continue;
            }
            let v = WeylElement::from_word(rs, &table.word(k));
            let dual = table
                .index_of(&w0.compose(&v))
                .expect("group elements map into the oracle");
            let paired = table.multiply_monomial(table.basis(dual), &deg);
            if paired[table.longest()] != p.coefficient(&v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeReport {
    pub label: String,
    pub group_order: usize,
    pub multidegrees: usize,
    pub mismatches: Vec<Mismatch>,
    pub lengths_agree: bool,
    pub poincare_agrees: bool,
    pub saturation: bool,
    /// Checked at rank at most 3 only.
    pub duality: Option<bool>,
}

impl TypeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.lengths_agree
            && self.poincare_agrees
            && self.saturation
            && self.duality != Some(false)
    }
}

/// Labeled types exercised by the self-test.
pub fn selftest_types() -> Vec<CartanType> {
    vec![
        CartanType::A(1),
        CartanType::A(2),
        CartanType::A(3),
        CartanType::B(2),
        CartanType::B(3),
        CartanType::C(3),
        CartanType::G2,
        CartanType::A(4),
        CartanType::D(4),
        CartanType::B(4),
        CartanType::C(4),
        CartanType::F4,
    ]
}

pub fn check_type(t: CartanType) -> Result<TypeReport, OracleError> {
    let rs = Arc::new(RootSystem::from_type(t).map_err(|_| OracleError::RankTooLarge(t.rank()))?);
    let table = DenseChowTable::new(&rs)?;
    let ring = SchubertRing::new(rs.clone());
    let compare = compare_all(&rs)?;
    let duality = if rs.rank() <= 3 {
        Some(duality_holds(&ring, &table)?)
    } else {
        None
    };
    Ok(TypeReport {
        label: t.to_string(),
        group_order: table.order(),
        multidegrees: compare.multidegrees,
        mismatches: compare.mismatches,
        lengths_agree: lengths_agree(&rs, &table),
        poincare_agrees: table.poincare_counts() == rs.poincare_polynomial(),
        saturation: saturation_holds(&ring, &table)?,
        duality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: CartanType) -> (Arc<RootSystem>, DenseChowTable) {
        let rs = Arc::new(RootSystem::from_type(t).unwrap());
        let table = DenseChowTable::new(&rs).unwrap();
        (rs, table)
    }

    #[test]
    fn group_orders() {
        for (t, order) in [
            (CartanType::A(2), 6),
            (CartanType::A(3), 24),
            (CartanType::B(2), 8),
            (CartanType::B(3), 48),
            (CartanType::G2, 12),
            (CartanType::D(4), 192),
        ] {
            let (_, tb) = table(t);
            assert_eq!(tb.order(), order, "{t}");
            assert_eq!(tb.length(tb.longest()), t.positive_root_count());
        }
    }

    #[test]
    fn a2_dense_products() {
        let (rs, tb) = table(CartanType::A(2));
        let p = tb.oracle_product(&MultiDegree(vec![1, 1]));
        let nonzero: Vec<(String, String)> = p
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let w = WeylElement::from_word(&rs, &tb.word(k));
                (w.word_string(&rs), c.to_string())
            })
            .collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.contains(&("1 2".into(), "1".into())));
        assert!(nonzero.contains(&("2 1".into(), "1".into())));
        let unit = tb.oracle_product(&MultiDegree(vec![0, 0]));
        assert_eq!(unit, tb.basis(0));
    }

    #[test]
    fn compare_small_types() {
        for t in [CartanType::A(2), CartanType::G2, CartanType::B(2)] {
            let rs = Arc::new(RootSystem::from_type(t).unwrap());
            let report = compare_all(&rs).unwrap();
            assert!(report.mismatches.is_empty(), "{t}: {:?}", report.mismatches);
        }
        let a2 = Arc::new(RootSystem::from_type(CartanType::A(2)).unwrap());
        assert_eq!(compare_all(&a2).unwrap().multidegrees, 10);
    }

    #[test]
    fn a3_point_degree_matches_oracle() {
        let (rs, tb) = table(CartanType::A(3));
        let ring = SchubertRing::new(rs.clone());
        let deg = MultiDegree(vec![1, 2, 3]);
        let p: ChowVector<BigUint> = ring.product_of_divisors(&deg).unwrap();
        let expected = &tb.oracle_product(&deg)[tb.longest()];
        assert_eq!(&ring.point_degree(&p).unwrap(), expected);
    }

    #[test]
    fn dual_class_is_left_multiplied_by_w0() {
        // [D_1] = [Z_{s1}] pairs to a point with [Z_{w0 s1}] = [Z_{s1 s2}] but not with
        // [Z_{s1 w0}] = [Z_{s2 s1}].
        let (rs, tb) = table(CartanType::A(2));
        let w0 = WeylElement::longest_element(&rs);
        let s1 = WeylElement::simple(&rs, 0);
        let deg = MultiDegree(vec![1, 0]);
        let left = tb.multiply_monomial(tb.basis(tb.index_of(&w0.compose(&s1)).unwrap()), &deg);
        let right = tb.multiply_monomial(tb.basis(tb.index_of(&s1.compose(&w0)).unwrap()), &deg);
        assert_eq!(left[tb.longest()], BigUint::one());
        assert!(right[tb.longest()].is_zero());
    }

    #[test]
    fn rejects_large_rank() {
        let e6 = RootSystem::from_type(CartanType::E6).unwrap();
        assert!(matches!(DenseChowTable::new(&e6), Err(OracleError::RankTooLarge(6))));
    }
}
