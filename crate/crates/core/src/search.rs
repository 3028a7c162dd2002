//! Depth-first search for the largest multiplicity-free divisor monomial.
//!
//! Monomials are explored as nondecreasing sequences of divisor indices, so every multidegree
//! has exactly one node and each child is its parent times one divisor. A node whose product
//! has no coefficient equal to one is not expanded: every structure constant is a positive
//! integer, so the minimum coefficient never decreases along a branch and such a subtree holds
//! no solutions.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Num;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::{ChowError, ChowVector, DivisorProducts, MultiDegree, SchubertRing};
use crate::coeff::{Backend, Coefficient};
use crate::indexed::{IndexedRing, DEFAULT_ELEMENT_LIMIT};
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search interrupted after {visited} products")]
    Interrupted {
        visited: u64,
        checkpoint: Option<PathBuf>,
    },
    #[error("memory budget exceeded: {0}")]
    MemoryBudgetExceeded(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("checkpoint I/O error on {path}: {source}")]
    CheckpointIo {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid checkpoint {path}: {reason}")]
    CheckpointFormat { path: PathBuf, reason: String },
    #[error("checkpoint {path} belongs to a different run: {reason}")]
    CheckpointMismatch { path: PathBuf, reason: String },
    #[error("best multidegree {0} failed re-verification")]
    Unverified(MultiDegree),
    #[error("invalid search configuration: {0}")]
    Config(String),
}

/// How divisor products are represented during the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Indexed when the levels the search can reach fit under the element limit, else sparse.
    #[default]
    Auto,
    /// Hash maps keyed by Weyl group elements; no up-front cost, any rank.
    Sparse,
    /// Dense vectors over lazily enumerated length levels.
    Indexed,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Engine::Auto),
            "sparse" => Ok(Engine::Sparse),
            "indexed" => Ok(Engine::Indexed),
            other => Err(format!("unknown engine {other:?} (expected auto, sparse or indexed)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Do not expand monomials beyond this total degree.
    pub target: Option<usize>,
    pub thread_count: usize,
    /// Maximum number of settled multidegrees kept for checkpointing.
    pub memo_capacity: usize,
    pub cover_cache_capacity: usize,
    pub coefficient_backend: Backend,
    pub engine: Engine,
    /// Largest number of Weyl group elements the indexed engine may enumerate.
    pub element_limit: usize,
    pub checkpoint_path: Option<PathBuf>,
    pub resume_path: Option<PathBuf>,
    pub checkpoint_interval: Duration,
    pub symmetry_reduction: bool,
    /// Abandon (and mark non-exhaustive) any branch whose product has more terms than this.
    pub support_budget: Option<usize>,
    /// Stop as if interrupted once this many products have been computed.
    pub product_limit: Option<u64>,
    pub cancel: Option<Arc<AtomicBool>>,
    /// Keep every multiplicity-free multidegree found (whole orbits) in the outcome.
    pub collect_solutions: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            target: None,
            thread_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memo_capacity: 1 << 24,
            cover_cache_capacity: crate::chow::DEFAULT_COVER_CACHE,
            coefficient_backend: Backend::ArbitraryPrecision,
            engine: Engine::Auto,
            element_limit: DEFAULT_ELEMENT_LIMIT,
            checkpoint_path: None,
            resume_path: None,
            checkpoint_interval: Duration::from_secs(60),
            symmetry_reduction: true,
            support_budget: None,
            product_limit: None,
            cancel: None,
            collect_solutions: false,
        }
    }
}

/// A multiplicity-free multidegree together with an element whose coefficient is exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub degrees: MultiDegree,
    pub element: WeylElement,
    pub total: usize,
}

impl Witness {
    pub fn word(&self, rs: &RootSystem) -> String {
        self.element.word_string(rs)
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub max_degree: usize,
    pub witness: Witness,
    pub exhaustive: bool,
    /// Products computed in this run (replayed checkpoint entries are not counted).
    pub products_computed: u64,
    pub solutions: Option<Vec<MultiDegree>>,
}

/// Recomputes the monomial from scratch and returns a witness if it is multiplicity-free.
pub fn verify_multidegree<C: Coefficient>(
    ring: &SchubertRing,
    deg: &MultiDegree,
) -> Result<Option<Witness>, ChowError> {
    let v: ChowVector<C> = ring.product_of_divisors(deg)?;
    Ok(v.multiplicity_free_witness().map(|w| Witness {
        degrees: deg.clone(),
        element: *w,
        total: deg.total(),
    }))
}

/// `verify_multidegree` with the coefficient type chosen at run time.
pub fn verify_with_backend(
    ring: &SchubertRing,
    deg: &MultiDegree,
    backend: Backend,
) -> Result<Option<Witness>, ChowError> {
    match backend {
        Backend::ArbitraryPrecision => verify_multidegree::<BigUint>(ring, deg),
        Backend::Checked64 => verify_multidegree::<u64>(ring, deg),
        Backend::Checked128 => verify_multidegree::<u128>(ring, deg),
    }
}

/// Runs the search with the configured coefficient backend.
pub fn max_multiplicity_free_degree(
    rs: Arc<RootSystem>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    match cfg.coefficient_backend {
        Backend::ArbitraryPrecision => search::<BigUint>(rs, cfg),
        Backend::Checked64 => search::<u64>(rs, cfg),
        Backend::Checked128 => search::<u128>(rs, cfg),
    }
}

/// Settled status of one multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settled {
    pub min: Option<BigUint>,
    pub mf: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct CheckpointHeader {
    version: u32,
    label: String,
    rank: usize,
    order: String,
    cartan: Vec<Vec<i32>>,
}

#[derive(Serialize, Deserialize)]
struct CheckpointEntry {
    n: Vec<u32>,
    min: Option<serde_json::Number>,
    mf: bool,
}

/// Diagram automorphisms acting on multidegrees: `(pi n)[pi[i]] = n[i]`.
#[derive(Debug, Clone)]
pub struct Symmetry {
    perms: Vec<Vec<usize>>,
}

impl Symmetry {
    pub fn of(rs: &RootSystem) -> Self {
        Symmetry {
            perms: rs.datum().diagram_automorphisms(),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        Symmetry {
            perms: vec![(0..rank).collect()],
        }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn orbit(&self, deg: &MultiDegree) -> Vec<MultiDegree> {
        let mut out: Vec<MultiDegree> = self
            .perms
            .iter()
            .map(|p| {
                let mut n = vec![0; deg.rank()];
                for (i, &x) in deg.0.iter().enumerate() {
                    n[p[i]] = x;
                }
                MultiDegree(n)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The lexicographically largest orbit member is the one that gets expanded. Prefixes of a
    /// canonical node (dropping its largest divisor indices first) are canonical too, so
    /// skipping non-canonical nodes loses no orbit. The same member wins the witness tie-break,
    /// so reduced and unreduced searches report the same witness.
    pub fn is_canonical(&self, deg: &MultiDegree) -> bool {
        self.orbit(deg).last() == Some(deg)
    }

}

/// Best candidate so far: higher total wins; ties go to the lexicographically smallest
/// nondecreasing divisor word, i.e. the lexicographically largest exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Best {
    total: usize,
    deg: MultiDegree,
}

impl Best {
    fn better(a: Best, b: Best) -> Best {
        match a.total.cmp(&b.total) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => {
                if a.deg >= b.deg {
                    a
                } else {
                    b
                }
            }
        }
    }
}

struct Stop;

struct Node<'p, V> {
    deg: MultiDegree,
    last: usize,
    parent: Option<(&'p Node<'p, V>, usize)>,
    vector: OnceLock<Arc<V>>,
}

impl<'p, V> Node<'p, V> {
    fn vector<C, A>(&self, engine: &A) -> Result<Arc<V>, ChowError>
    where
        C: Coefficient,
        A: DivisorProducts<C, Vector = V>,
    {
        if let Some(v) = self.vector.get() {
            return Ok(v.clone());
        }
        let v = match self.parent {
            Some((parent, i)) => Arc::new(engine.times_divisor(&*parent.vector(engine)?, i)?),
            None => Arc::new(engine.unit()),
        };
        Ok(self.vector.get_or_init(|| v).clone())
    }
}

type Child<'p, V> = (Node<'p, V>, Settled);

struct Search<'a, A> {
    engine: &'a A,
    rs: &'a RootSystem,
    cfg: &'a SearchConfig,
    symmetry: Symmetry,
    memo: Mutex<FxHashMap<MultiDegree, Settled>>,
    exhaustive: AtomicBool,
    stopped: AtomicBool,
    computed: AtomicU64,
    solutions: Mutex<Vec<MultiDegree>>,
    last_checkpoint: Mutex<Instant>,
    last_progress: Mutex<Instant>,
    error: Mutex<Option<SearchError>>,
}

fn search<C: Coefficient>(
    rs: Arc<RootSystem>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    if cfg.thread_count == 0 {
        return Err(SearchError::Config("thread_count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.thread_count)
        .build()
        .map_err(|e| SearchError::Config(e.to_string()))?;
    let ring = SchubertRing::with_cache_capacity(rs.clone(), cfg.cover_cache_capacity)
        .with_support_budget(cfg.support_budget);
    if resolve_engine(&rs, cfg) == Engine::Indexed {
        let indexed = IndexedRing::with_element_limit(rs.clone(), cfg.element_limit)
            .with_support_budget(cfg.support_budget);
        log::info!("using the indexed engine");
        pool.install(|| run::<C, _>(&indexed, &ring, cfg))
    } else {
        log::info!("using the sparse engine");
        pool.install(|| run::<C, _>(&ring, &ring, cfg))
    }
}

/// The engine `Auto` settles on for this run.
pub fn resolve_engine(rs: &RootSystem, cfg: &SearchConfig) -> Engine {
    match cfg.engine {
        Engine::Auto => {
            let top = cfg.target.map_or(rs.dim_flag(), |t| {
                (t + 1).min(rs.dim_flag())
            });
            if IndexedRing::elements_up_to(rs, top) <= cfg.element_limit as u64 {
                Engine::Indexed
            } else {
                Engine::Sparse
            }
        }
        e => e,
    }
}

/// `engine` computes the products; `ring` re-verifies the winner independently.
fn run<C, A>(engine: &A, ring: &SchubertRing, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError>
where
    C: Coefficient,
    A: DivisorProducts<C>,
{
    let rs = ring.root_system();
    let symmetry = if cfg.symmetry_reduction {
        Symmetry::of(rs)
    } else {
        Symmetry::trivial(rs.rank())
    };
    let mut memo = FxHashMap::default();
    if let Some(path) = &cfg.resume_path {
        memo = read_checkpoint(path, rs)?;
        log::info!("resumed {} settled multidegrees from {}", memo.len(), path.display());
    }
    let state = Search {
        engine,
        rs,
        cfg,
        symmetry,
        memo: Mutex::new(memo),
        exhaustive: AtomicBool::new(true),
        stopped: AtomicBool::new(false),
        computed: AtomicU64::new(0),
        solutions: Mutex::new(Vec::new()),
        last_checkpoint: Mutex::new(Instant::now()),
        last_progress: Mutex::new(Instant::now()),
        error: Mutex::new(None),
    };
    let root: Node<A::Vector> = Node {
        deg: MultiDegree::zero(rs.rank()),
        last: 0,
        parent: None,
        vector: OnceLock::new(),
    };
    state.settle_root();
    if cfg.collect_solutions {
        state.solutions.lock().unwrap().push(root.deg.clone());
    }
    let result = state.explore::<C>(&root);
    if let Some(err) = state.error.lock().unwrap().take() {
        return Err(err);
    }
    let visited = state.computed.load(Ordering::Relaxed);
    let checkpoint = cfg.checkpoint_path.clone().or_else(|| cfg.resume_path.clone());
    match result {
        Err(Stop) => {
            if let Some(path) = &checkpoint {
                state.write_checkpoint(path)?;
            }
            Err(SearchError::Interrupted {
                visited,
                checkpoint,
            })
        }
        Ok(best) => {
            if let Some(path) = &checkpoint {
                state.write_checkpoint(path)?;
            }
            let best = best.unwrap_or(Best {
                total: 0,
                deg: root.deg.clone(),
            });
            let witness = match verify_multidegree::<C>(ring, &best.deg) {
                Ok(Some(w)) => w,
                Ok(None) => return Err(SearchError::Unverified(best.deg)),
                Err(ChowError::BudgetExceeded { terms, budget }) => {
                    return Err(SearchError::MemoryBudgetExceeded(format!(
                        "re-verifying the witness needs {terms} terms (budget {budget})"
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            let solutions = cfg.collect_solutions.then(|| {
                let mut all: Vec<MultiDegree> = state
                    .solutions
                    .lock()
                    .unwrap()
                    .iter()
                    .flat_map(|d| state.symmetry.orbit(d))
                    .collect();
                all.sort();
                all.dedup();
                all
            });
            Ok(SearchOutcome {
                max_degree: best.total,
                witness,
                exhaustive: state.exhaustive.load(Ordering::SeqCst),
                products_computed: visited,
                solutions,
            })
        }
    }
}

impl<'a, A> Search<'a, A> {
    fn settle_root(&self) {
        let mut memo = self.memo.lock().unwrap();
        memo.entry(MultiDegree::zero(self.rs.rank()))
            .or_insert(Settled {
                min: Some(BigUint::from(1u32)),
                mf: true,
            });
    }

    fn should_stop(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return true;
        }
        let cancelled = self
            .cfg
            .cancel
            .as_ref()
            .is_some_and(|c| c.load(Ordering::Relaxed));
        let over_limit = self
            .cfg
            .product_limit
            .is_some_and(|limit| self.computed.load(Ordering::Relaxed) >= limit);
        if cancelled || over_limit {
            self.stopped.store(true, Ordering::SeqCst);
            return true;
        }
        false
    }

    fn fail(&self, err: SearchError) -> Stop {
        self.error.lock().unwrap().get_or_insert(err);
        self.stopped.store(true, Ordering::SeqCst);
        Stop
    }

    /// Settles one child of `node`, computing its product unless the memo already knows it.
    fn evaluate<'p, C>(
        &self,
        node: &'p Node<'p, A::Vector>,
        j: usize,
    ) -> Result<Option<Child<'p, A::Vector>>, Stop>
    where
        C: Coefficient,
        A: DivisorProducts<C>,
    {
        let mut deg = node.deg.clone();
        deg.0[j] += 1;
        if !self.symmetry.is_canonical(&deg) {
            return Ok(None);
        }
        let child = Node {
            deg,
            last: j,
            parent: Some((node, j)),
            vector: OnceLock::new(),
        };
        let known = self.memo.lock().unwrap().get(&child.deg).cloned();
        if let Some(settled) = known {
            return Ok(Some((child, settled)));
        }
        if self.should_stop() {
            return Err(Stop);
        }
        let parent = match node.vector(self.engine) {
            Ok(v) => v,
            Err(e) => return Err(self.fail(e.into())),
        };
        let product = match self.engine.times_divisor(&parent, j) {
            Ok(v) => v,
            Err(ChowError::BudgetExceeded { terms, budget }) => {
                log::warn!("abandoning {} ({terms} terms > budget {budget})", child.deg);
                self.exhaustive.store(false, Ordering::SeqCst);
                return Ok(None);
            }
            Err(e) => return Err(self.fail(e.into())),
        };
        self.computed.fetch_add(1, Ordering::Relaxed);
        let settled = Settled {
            min: A::min_nonzero(&product).map(Into::into),
            mf: A::multiplicity_free(&product),
        };
        {
            let mut memo = self.memo.lock().unwrap();
            if memo.len() < self.cfg.memo_capacity {
                memo.insert(child.deg.clone(), settled.clone());
            }
        }
        let _ = child.vector.set(Arc::new(product));
        self.housekeeping();
        Ok(Some((child, settled)))
    }

    fn housekeeping(&self) {
        if let Ok(mut last) = self.last_progress.try_lock() {
            if last.elapsed() >= Duration::from_secs(5) {
                *last = Instant::now();
                log::info!(
                    "{} products computed, {} settled",
                    self.computed.load(Ordering::Relaxed),
                    self.memo.lock().unwrap().len()
                );
            }
        }
        let Some(path) = self.cfg.checkpoint_path.as_ref().or(self.cfg.resume_path.as_ref()) else {
            return;
        };
        if let Ok(mut last) = self.last_checkpoint.try_lock() {
            if last.elapsed() >= self.cfg.checkpoint_interval {
                *last = Instant::now();
                if let Err(e) = self.write_checkpoint(path) {
                    log::warn!("{e}");
                }
            }
        }
    }

    fn explore<'p, C>(&self, node: &'p Node<'p, A::Vector>) -> Result<Option<Best>, Stop>
    where
        C: Coefficient,
        A: DivisorProducts<C>,
    {
        let rank = self.rs.rank();
        let dim = self.rs.dim_flag();
        if node.deg.total() >= dim {
            return Ok(None);
        }
        let children: Vec<Child<'p, A::Vector>> = (node.last..rank)
            .into_par_iter()
            .map(|j| self.evaluate::<C>(node, j))
            .collect::<Result<Vec<_>, Stop>>()?
            .into_iter()
            .flatten()
            .filter(|(_, s)| s.mf)
            .collect();
        let mut children = children;
        // Deepen first where the minimum coefficient stays smallest.
        children.sort_by(|a, b| a.1.min.cmp(&b.1.min).then(a.0.last.cmp(&b.0.last)));

        let results = children
            .par_iter()
            .map(|(child, _)| {
                if self.cfg.collect_solutions {
                    self.solutions.lock().unwrap().push(child.deg.clone());
                }
                let here = Best {
                    total: child.deg.total(),
                    deg: child.deg.clone(),
                };
                if self.cfg.target.is_some_and(|t| child.deg.total() >= t) {
                    if child.deg.total() < dim {
                        self.exhaustive.store(false, Ordering::SeqCst);
                    }
                    return Ok(Some(here));
                }
                let below = self.explore::<C>(child)?;
                Ok(Some(match below {
                    Some(b) => Best::better(here, b),
                    None => here,
                }))
            })
            .collect::<Result<Vec<Option<Best>>, Stop>>()?;
        Ok(results.into_iter().flatten().reduce(Best::better))
    }

    fn write_checkpoint(&self, path: &Path) -> Result<(), SearchError> {
        let rs = self.rs;
        let io = |source| SearchError::CheckpointIo {
            path: path.to_path_buf(),
            source,
        };
        let mut entries: Vec<(MultiDegree, Settled)> = self
            .memo
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let tmp = path.with_extension("tmp");
        {
            let mut out = BufWriter::new(fs::File::create(&tmp).map_err(io)?);
            let header = checkpoint_header(rs);
            writeln!(out, "{}", serde_json::to_string(&header).expect("header serializes")).map_err(io)?;
            for (deg, s) in entries {
                let entry = CheckpointEntry {
                    n: deg.0,
                    min: s
                        .min
                        .map(|m| serde_json::Number::from_string_unchecked(m.to_string())),
                    mf: s.mf,
                };
                writeln!(out, "{}", serde_json::to_string(&entry).expect("entry serializes")).map_err(io)?;
            }
            out.flush().map_err(io)?;
        }
        fs::rename(&tmp, path).map_err(io)?;
        Ok(())
    }
}

fn checkpoint_header(rs: &RootSystem) -> CheckpointHeader {
    CheckpointHeader {
        version: CHECKPOINT_VERSION,
        label: rs.datum().name(),
        rank: rs.rank(),
        order: "bourbaki".into(),
        cartan: rs.datum().matrix().to_vec(),
    }
}

/// Reads a checkpoint and checks that it belongs to this root system.
pub fn read_checkpoint(
    path: &Path,
    rs: &RootSystem,
) -> Result<FxHashMap<MultiDegree, Settled>, SearchError> {
    let format = |reason: String| SearchError::CheckpointFormat {
        path: path.to_path_buf(),
        reason,
    };
    let file = fs::File::open(path).map_err(|source| SearchError::CheckpointIo {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = BufReader::new(file).lines();
    let header_line = lines
        .next()
        .ok_or_else(|| format("empty file".into()))?
        .map_err(|e| format(e.to_string()))?;
    let header: CheckpointHeader =
        serde_json::from_str(&header_line).map_err(|e| format(format!("header: {e}")))?;
    let expected = checkpoint_header(rs);
    if header != expected {
        return Err(SearchError::CheckpointMismatch {
            path: path.to_path_buf(),
            reason: format!(
                "checkpoint is for {} (rank {}, version {}), run is {} (rank {})",
                header.label, header.rank, header.version, expected.label, expected.rank
            ),
        });
    }
    let mut memo = FxHashMap::default();
    for (k, line) in lines.enumerate() {
        let line = line.map_err(|e| format(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: CheckpointEntry =
            serde_json::from_str(&line).map_err(|e| format(format!("line {}: {e}", k + 2)))?;
        if entry.n.len() != rs.rank() {
            return Err(format(format!("line {}: wrong number of exponents", k + 2)));
        }
        let min = match entry.min {
            None => None,
            Some(n) => Some(
                BigUint::from_str_radix(&n.to_string(), 10)
                    .map_err(|e| format(format!("line {}: {e}", k + 2)))?,
            ),
        };
        memo.insert(MultiDegree(entry.n), Settled { min, mf: entry.mf });
    }
    Ok(memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn rs(t: CartanType) -> Arc<RootSystem> {
        Arc::new(RootSystem::from_type(t).unwrap())
    }

    fn cfg() -> SearchConfig {
        SearchConfig {
            thread_count: 2,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn a2_search() {
        let out = max_multiplicity_free_degree(rs(CartanType::A(2)), &cfg()).unwrap();
        assert_eq!(out.max_degree, 3);
        assert!(out.exhaustive);
        assert_eq!(out.witness.degrees, MultiDegree(vec![2, 1]));
        let a2 = RootSystem::from_type(CartanType::A(2)).unwrap();
        assert_eq!(out.witness.element, WeylElement::longest_element(&a2));
    }

    #[test]
    fn g2_search() {
        let out = max_multiplicity_free_degree(rs(CartanType::G2), &cfg()).unwrap();
        assert_eq!(out.max_degree, 3);
        assert!(out.exhaustive);
    }

    #[test]
    fn verify_examples() {
        let ring = SchubertRing::new(rs(CartanType::A(2)));
        let w = verify_multidegree::<BigUint>(&ring, &MultiDegree(vec![2, 1])).unwrap().unwrap();
        assert_eq!(w.element, *ring.longest_element());
        assert_eq!(w.total, 3);
        assert!(verify_multidegree::<BigUint>(&ring, &MultiDegree(vec![3, 0])).unwrap().is_none());
        let w = verify_multidegree::<u64>(&ring, &MultiDegree(vec![0, 0])).unwrap().unwrap();
        assert!(w.element.is_identity());
    }

    #[test]
    fn target_caps_depth() {
        let c = SearchConfig {
            target: Some(2),
            ..cfg()
        };
        let out = max_multiplicity_free_degree(rs(CartanType::A(3)), &c).unwrap();
        assert_eq!(out.max_degree, 2);
        assert!(!out.exhaustive);
        assert_eq!(out.witness.total, 2);
        assert_eq!(out.witness.degrees, MultiDegree(vec![2, 0, 0]));
    }

    #[test]
    fn symmetry_orbits() {
        let e6 = RootSystem::from_type(CartanType::E6).unwrap();
        let sym = Symmetry::of(&e6);
        let d = MultiDegree(vec![1, 0, 2, 0, 0, 0]);
        assert_eq!(sym.orbit(&d), vec![MultiDegree(vec![0, 0, 0, 0, 2, 1]), d.clone()]);
        assert!(sym.is_canonical(&d));
        assert!(!sym.is_canonical(&MultiDegree(vec![0, 0, 0, 0, 2, 1])));
    }

    #[test]
    fn zero_threads_rejected() {
        let c = SearchConfig {
            thread_count: 0,
            ..cfg()
        };
        assert!(matches!(
            max_multiplicity_free_degree(rs(CartanType::A(2)), &c),
            Err(SearchError::Config(_))
        ));
    }
}
