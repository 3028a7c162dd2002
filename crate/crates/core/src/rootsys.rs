//! Finite-type root systems built from Cartan data.
//!
//! Conventions: `C[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i, alpha_j) / (alpha_i, alpha_i)` and
//! `s_i(alpha_j) = alpha_j - C[i][j] alpha_i`. Roots live in simple-root coordinates and
//! coroots in simple-coroot coordinates, always as exact integers.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Largest rank supported by the fixed-size element representation.
pub const MAX_RANK: usize = 8;

/// No finite root system of rank at most [`MAX_RANK`] has more positive roots than E8.
const MAX_POSITIVE_ROOTS: usize = 120;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("not of finite type: {0}")]
    NotFiniteType(String),
    #[error("coroot of root {0:?} has a non-integral coordinate")]
    NonIntegralCoroot(Vec<i32>),
    #[error("{0:?} is not a positive root")]
    UnknownRoot(Vec<i32>),
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("unknown Cartan type label {0:?}")]
    UnknownLabel(String),
    #[error("cannot parse Cartan file: {0}")]
    Parse(String),
}

pub type Result<T, E = RootSystemError> = std::result::Result<T, E>;

/// A Cartan type label with Bourbaki node numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(r) | CartanType::B(r) | CartanType::C(r) | CartanType::D(r) => r,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Number of positive roots, from the classification.
    pub fn positive_root_count(self) -> usize {
        match self {
            CartanType::A(r) => r * (r + 1) / 2,
            CartanType::B(r) | CartanType::C(r) => r * r,
            CartanType::D(r) => r * (r - 1),
            CartanType::E6 => 36,
            CartanType::E7 => 63,
            CartanType::E8 => 120,
            CartanType::F4 => 24,
            CartanType::G2 => 6,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            CartanType::A(r) => r >= 1,
            CartanType::B(r) | CartanType::C(r) => r >= 2,
            CartanType::D(r) => r >= 4,
            _ => true,
        };
        if !ok {
            return Err(RootSystemError::UnknownLabel(self.to_string()));
        }
        if self.rank() > MAX_RANK {
            return Err(RootSystemError::RankTooLarge(self.rank()));
        }
        Ok(self)
    }

    /// Cartan matrix in Bourbaki numbering (row-major, 0-based nodes).
    pub fn cartan_matrix(self) -> Vec<Vec<i32>> {
        let r = self.rank();
        let mut c = vec![vec![0; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, cij: i32, cji: i32| {
            c[i][j] = cij;
            c[j][i] = cji;
        };
        match self {
            CartanType::A(r) => (1..r).for_each(|i| bond(i - 1, i, -1, -1)),
            CartanType::B(r) => {
                (1..r - 1).for_each(|i| bond(i - 1, i, -1, -1));
                // alpha_r is short
                bond(r - 2, r - 1, -1, -2);
            }
            CartanType::C(r) => {
                (1..r - 1).for_each(|i| bond(i - 1, i, -1, -1));
                // alpha_r is long
                bond(r - 2, r - 1, -2, -1);
            }
            CartanType::D(r) => {
                (1..r - 1).for_each(|i| bond(i - 1, i, -1, -1));
                bond(r - 3, r - 1, -1, -1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                // 1-3-4-5-...-r with 2 attached to 4
                bond(0, 2, -1, -1);
                bond(1, 3, -1, -1);
                (3..self.rank()).for_each(|i| bond(i - 1, i, -1, -1));
            }
            CartanType::F4 => {
                bond(0, 1, -1, -1);
                bond(1, 2, -1, -2);
                bond(2, 3, -1, -1);
            }
            CartanType::G2 => bond(0, 1, -3, -1),
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(r) => write!(f, "A{r}"),
            CartanType::B(r) => write!(f, "B{r}"),
            CartanType::C(r) => write!(f, "C{r}"),
            CartanType::D(r) => write!(f, "D{r}"),
            CartanType::E6 => f.write_str("E6"),
            CartanType::E7 => f.write_str("E7"),
            CartanType::E8 => f.write_str("E8"),
            CartanType::F4 => f.write_str("F4"),
            CartanType::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || RootSystemError::UnknownLabel(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (family, rank) {
            ('A', r) => CartanType::A(r),
            ('B', r) => CartanType::B(r),
            ('C', r) => CartanType::C(r),
            ('D', r) => CartanType::D(r),
            ('E', 6) => CartanType::E6,
            ('E', 7) => CartanType::E7,
            ('E', 8) => CartanType::E8,
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        t.validate().map_err(|e| match e {
            RootSystemError::RankTooLarge(_) => e,
            _ => bad(),
        })
    }
}

/// Cartan matrix together with its minimal symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    rank: usize,
    matrix: Vec<Vec<i32>>,
    symmetrizer: Vec<i64>,
    label: Option<CartanType>,
}

impl CartanDatum {
    /// Validates a user-supplied matrix. A supplied symmetrizer is checked, then replaced by the
    /// minimal one.
    pub fn new(matrix: Vec<Vec<i32>>, symmetrizer: Option<Vec<i64>>) -> Result<Self> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(RootSystemError::InvalidCartan("empty matrix".into()));
        }
        if rank > MAX_RANK {
            return Err(RootSystemError::RankTooLarge(rank));
        }
        if matrix.iter().any(|row| row.len() != rank) {
            return Err(RootSystemError::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..rank {
            if matrix[i][i] != 2 {
                return Err(RootSystemError::InvalidCartan(format!(
                    "diagonal entry ({}, {}) is {}, expected 2",
                    i + 1,
                    i + 1,
                    matrix[i][i]
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "off-diagonal entry ({}, {}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) are not simultaneously zero",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let minimal = minimal_symmetrizer(&matrix)?;
        if let Some(d) = symmetrizer {
            if d.len() != rank || d.iter().any(|&x| x <= 0) {
                return Err(RootSystemError::InvalidCartan(
                    "symmetrizer must have one positive entry per node".into(),
                ));
            }
            if !is_symmetrizer(&matrix, &d) {
                return Err(RootSystemError::InvalidCartan(
                    "supplied symmetrizer does not symmetrize the matrix".into(),
                ));
            }
        }
        let datum = CartanDatum {
            rank,
            matrix,
            symmetrizer: minimal,
            label: None,
        };
        datum.check_positive_definite()?;
        Ok(datum)
    }

    pub fn from_type(t: CartanType) -> Result<Self> {
        let t = t.validate()?;
        let mut datum = Self::new(t.cartan_matrix(), None)?;
        datum.label = Some(t);
        Ok(datum)
    }

    /// Parses the plain-text format: a line with `r`, then `r` rows of `r` integers, then an
    /// optional `d: d1 ... dr` line. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let parse_err = |msg: String| RootSystemError::Parse(msg);
        let rank: usize = lines
            .next()
            .ok_or_else(|| parse_err("missing rank line".into()))?
            .parse()
            .map_err(|e| parse_err(format!("rank: {e}")))?;
        if rank > MAX_RANK {
            return Err(RootSystemError::RankTooLarge(rank));
        }
        let mut matrix = Vec::with_capacity(rank);
        for row in 0..rank {
            let line = lines
                .next()
                .ok_or_else(|| parse_err(format!("missing matrix row {}", row + 1)))?;
            let entries = line
                .split_whitespace()
                .map(|x| x.parse::<i32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(format!("row {}: {e}", row + 1)))?;
            if entries.len() != rank {
                return Err(parse_err(format!(
                    "row {} has {} entries, expected {rank}",
                    row + 1,
                    entries.len()
                )));
            }
            matrix.push(entries);
        }
        let symmetrizer = match lines.next() {
            None => None,
            Some(line) => {
                let rest = line
                    .strip_prefix("d:")
                    .ok_or_else(|| parse_err(format!("unexpected line {line:?}")))?;
                let d = rest
                    .split_whitespace()
                    .map(|x| x.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| parse_err(format!("symmetrizer: {e}")))?;
                Some(d)
            }
        };
        if let Some(extra) = lines.next() {
            return Err(parse_err(format!("trailing content {extra:?}")));
        }
        let mut datum = Self::new(matrix, symmetrizer)?;
        datum.label = datum.detect_label();
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn label(&self) -> Option<CartanType> {
        self.label
    }

    /// Label if one is known, otherwise `"custom"`.
    pub fn name(&self) -> String {
        self.label
            .map(|t| t.to_string())
            .unwrap_or_else(|| "custom".to_string())
    }

    fn detect_label(&self) -> Option<CartanType> {
        let r = self.rank;
        let mut candidates = vec![
            CartanType::A(r),
            CartanType::B(r),
            CartanType::C(r),
            CartanType::D(r),
        ];
        candidates.extend([CartanType::E6, CartanType::E7, CartanType::E8, CartanType::F4, CartanType::G2]);
        candidates
            .into_iter()
            .filter(|t| t.validate().is_ok() && t.rank() == r)
            .find(|t| t.cartan_matrix() == self.matrix)
    }

    /// Symmetrized bilinear form `d_i C[i][j]` on simple roots; `(alpha_i, alpha_i) = 2 d_i`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.matrix[i][j] as i64
    }

    fn check_positive_definite(&self) -> Result<()> {
        let r = self.rank;
        let mut m: Vec<Vec<i128>> = (0..r)
            .map(|i| (0..r).map(|j| self.form(i, j) as i128).collect())
            .collect();
        // Fraction-free elimination: after step k, m[k][k] is the (k+1)-th leading minor.
        let mut prev = 1i128;
        for k in 0..r {
            if m[k][k] <= 0 {
                return Err(RootSystemError::NotFiniteType(format!(
                    "leading principal minor of order {} is not positive",
                    k + 1
                )));
            }
            for i in k + 1..r {
                for j in k + 1..r {
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        Ok(())
    }

    /// Permutations of the nodes preserving the Cartan matrix, identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let r = self.rank;
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        self.extend_automorphism(&mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == self.rank {
            out.push(perm.clone());
            return;
        }
        for image in 0..self.rank {
            if used[image] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                self.matrix[i][j] == self.matrix[image][perm[j]]
                    && self.matrix[j][i] == self.matrix[perm[j]][image]
            });
            if consistent {
                used[image] = true;
                perm.push(image);
                self.extend_automorphism(perm, used, out);
                perm.pop();
                used[image] = false;
            }
        }
    }
}

fn is_symmetrizer(matrix: &[Vec<i32>], d: &[i64]) -> bool {
    let r = matrix.len();
    (0..r).all(|i| (0..r).all(|j| d[i] * matrix[i][j] as i64 == d[j] * matrix[j][i] as i64))
}

fn minimal_symmetrizer(matrix: &[Vec<i32>]) -> Result<Vec<i64>> {
    let r = matrix.len();
    // d_j / d_i = C[i][j] / C[j][i], propagated over each connected component as fractions.
    let mut frac: Vec<Option<(i64, i64)>> = vec![None; r];
    let mut d = vec![0i64; r];
    for start in 0..r {
        if frac[start].is_some() {
            continue;
        }
        frac[start] = Some((1, 1));
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (num, den) = frac[i].unwrap();
            for j in 0..r {
                if j == i || matrix[i][j] == 0 || frac[j].is_some() {
                    continue;
                }
                let n = num * matrix[i][j] as i64;
                let m = den * matrix[j][i] as i64;
                let g = n.gcd(&m);
                let (n, m) = (n / g, m / g);
                let (n, m) = if m < 0 { (-n, -m) } else { (n, m) };
                frac[j] = Some((n, m));
                component.push(j);
                queue.push_back(j);
            }
        }
        let lcm = component
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(&frac[i].unwrap().1));
        let scaled: Vec<i64> = component
            .iter()
            .map(|&i| {
                let (n, m) = frac[i].unwrap();
                n * (lcm / m)
            })
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &x) in component.iter().zip(&scaled) {
            d[i] = x / g;
        }
    }
    if d.iter().any(|&x| x <= 0) || !is_symmetrizer(matrix, &d) {
        return Err(RootSystemError::NotFiniteType(
            "matrix is not symmetrizable".into(),
        ));
    }
    Ok(d)
}

/// Coordinates in the simple-root basis.
pub type Coords = [i8; MAX_RANK];

/// A root in simple-root coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    rank: u8,
    coords: Coords,
}

impl Root {
    pub fn new(coords: &[i32]) -> Result<Self> {
        if coords.len() > MAX_RANK {
            return Err(RootSystemError::RankTooLarge(coords.len()));
        }
        let mut c = [0i8; MAX_RANK];
        for (dst, &x) in c.iter_mut().zip(coords) {
            *dst = i8::try_from(x).map_err(|_| RootSystemError::UnknownRoot(coords.to_vec()))?;
        }
        Ok(Root {
            rank: coords.len() as u8,
            coords: c,
        })
    }

    pub(crate) fn from_raw(rank: usize, coords: Coords) -> Self {
        Root {
            rank: rank as u8,
            coords,
        }
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords[..self.rank as usize]
    }

    pub(crate) fn raw(&self) -> &Coords {
        &self.coords
    }

    pub fn height(&self) -> i32 {
        self.coords().iter().map(|&x| x as i32).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0) && self.coords().iter().any(|&x| x > 0)
    }

    fn to_vec(self) -> Vec<i32> {
        self.coords().iter().map(|&x| x as i32).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Image of a positive root under a reflection: a positive root index and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedRoot {
    pub index: u16,
    pub negative: bool,
}

/// Positive roots, coroots and reflection data of a finite root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: CartanDatum,
    positive: Vec<Root>,
    index: HashMap<Coords, usize>,
    /// `coroots[a][j]`: coefficient of `alpha_j^vee` in `alpha^vee`.
    coroots: Vec<[i32; MAX_RANK]>,
    /// `pairings[a][j] = <alpha_j, alpha^vee>`.
    pairings: Vec<[i32; MAX_RANK]>,
    /// `reflections[a * n + b]` is `s_alpha(beta)` for positive roots `alpha = a`, `beta = b`.
    reflections: Vec<SignedRoot>,
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let r = datum.rank();
        let mut found: HashMap<Coords, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut roots = Vec::new();
        for i in 0..r {
            let mut c = [0i8; MAX_RANK];
            c[i] = 1;
            found.insert(c, ());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            roots.push(Root::from_raw(r, c));
            if roots.len() > MAX_POSITIVE_ROOTS {
                return Err(RootSystemError::NotFiniteType(format!(
                    "root closure exceeds {MAX_POSITIVE_ROOTS} positive roots"
                )));
            }
            for i in 0..r {
                let pairing: i32 = (0..r).map(|j| datum.entry(i, j) * c[j] as i32).sum();
                let new_coord = c[i] as i32 - pairing;
                if new_coord <= c[i] as i32 {
                    continue;
                }
                let mut next = c;
                next[i] = i8::try_from(new_coord).map_err(|_| {
                    RootSystemError::NotFiniteType("root coordinates diverge".into())
                })?;
                if found.insert(next, ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        // Height first, then descending coordinates so that alpha_1, ..., alpha_r come first.
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
        let index: HashMap<Coords, usize> = roots.iter().enumerate().map(|(k, a)| (a.coords, k)).collect();

        let mut coroots = Vec::with_capacity(roots.len());
        let mut pairings = Vec::with_capacity(roots.len());
        for a in &roots {
            let m = a.to_vec();
            let norm: i64 = (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .map(|(i, j)| m[i] as i64 * m[j] as i64 * datum.form(i, j))
                .sum();
            let mut k = [0i32; MAX_RANK];
            for j in 0..r {
                let num = m[j] as i64 * 2 * datum.symmetrizer()[j];
                if norm == 0 || num % norm != 0 {
                    return Err(RootSystemError::NonIntegralCoroot(m));
                }
                k[j] = (num / norm) as i32;
            }
            let mut p = [0i32; MAX_RANK];
            for (j, pj) in p.iter_mut().enumerate().take(r) {
                *pj = (0..r).map(|i| k[i] * datum.entry(i, j)).sum();
            }
            coroots.push(k);
            pairings.push(p);
        }

        let n = roots.len();
        let mut reflections = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let beta = &roots[b];
                let c: i32 = (0..r).map(|j| beta.coords[j] as i32 * pairings[a][j]).sum();
                let mut img = [0i8; MAX_RANK];
                for j in 0..r {
                    img[j] = (beta.coords[j] as i32 - c * roots[a].coords[j] as i32) as i8;
                }
                let signed = lookup_signed(&index, &img).ok_or_else(|| {
                    RootSystemError::NotFiniteType("reflection leaves the root set".into())
                })?;
                reflections.push(signed);
            }
        }

        let rs = RootSystem {
            datum,
            positive: roots,
            index,
            coroots,
            pairings,
            reflections,
        };
        if let Some(t) = rs.datum.label() {
            debug_assert_eq!(rs.positive.len(), t.positive_root_count());
        }
        Ok(rs)
    }

    pub fn from_type(t: CartanType) -> Result<Self> {
        Self::new(CartanDatum::from_type(t)?)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Dimension of the full flag variety, the number of positive roots.
    pub fn dim_flag(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive[index]
    }

    pub fn root_index(&self, root: &Root) -> Result<usize> {
        if root.rank as usize != self.rank() {
            return Err(RootSystemError::UnknownRoot(root.to_vec()));
        }
        self.index
            .get(&root.coords)
            .copied()
            .ok_or_else(|| RootSystemError::UnknownRoot(root.to_vec()))
    }

    /// Coefficients `k` with `alpha^vee = sum_j k_j alpha_j^vee`.
    pub fn coroot_expansion(&self, root: &Root) -> Result<Vec<i32>> {
        let a = self.root_index(root)?;
        Ok(self.coroot(a).to_vec())
    }

    pub fn coroot(&self, index: usize) -> &[i32] {
        &self.coroots[index][..self.rank()]
    }

    /// `<omega_i, alpha^vee>`, the Chevalley structure constant for divisor `i` (0-based).
    pub fn chevalley_coefficient(&self, i: usize, root: &Root) -> Result<u32> {
        let a = self.root_index(root)?;
        Ok(self.chevalley_coefficient_at(i, a))
    }

    #[inline]
    pub fn chevalley_coefficient_at(&self, i: usize, index: usize) -> u32 {
        self.coroots[index][i] as u32
    }

    /// `<alpha_j, alpha^vee>` for all `j`.
    #[inline]
    pub fn pairing_row(&self, index: usize) -> &[i32; MAX_RANK] {
        &self.pairings[index]
    }

    /// `s_alpha(beta)` for positive roots given by index.
    #[inline]
    pub fn reflect(&self, alpha: usize, beta: usize) -> SignedRoot {
        self.reflections[alpha * self.positive.len() + beta]
    }

    /// The simple reflection `S_i` as an integer matrix acting on root coordinates.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i32>> {
        let r = self.rank();
        (0..r)
            .map(|row| {
                (0..r)
                    .map(|col| {
                        let id = (row == col) as i32;
                        if row == i {
                            id - self.datum.entry(i, col)
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("root systems have at least one root")
    }

    /// Exponents read off the height distribution of the positive roots.
    pub fn exponents(&self) -> Vec<usize> {
        let max_height = self.highest_root().height() as usize;
        let mut count = vec![0usize; max_height + 2];
        for a in &self.positive {
            count[a.height() as usize] += 1;
        }
        let mut exps = Vec::new();
        for m in 1..=max_height {
            exps.extend(std::iter::repeat_n(m, count[m] - count[m + 1]));
        }
        exps
    }

    /// Coefficients of the Poincare polynomial of the Weyl group, `prod (1 + q + ... + q^e)`
    /// over the exponents `e`; entry `k` counts elements of length `k`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut poly = vec![1u64];
        for e in self.exponents() {
            let mut next = vec![0u64; poly.len() + e];
            for (k, &c) in poly.iter().enumerate() {
                for slot in &mut next[k..=k + e] {
                    *slot += c;
                }
            }
            poly = next;
        }
        poly
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.poincare_polynomial().iter().sum()
    }

    /// Dynkin edges `(i, j, bond)` with `i < j`; `bond` is `C[i][j] * C[j][i]`. For multiple
    /// bonds the arrow points from the longer to the shorter root.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize, i32)> {
        let r = self.rank();
        let mut edges = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let c = self.datum.entry(i, j) * self.datum.entry(j, i);
                if c != 0 {
                    edges.push((i, j, c));
                }
            }
        }
        edges
    }
}

fn lookup_signed(index: &HashMap<Coords, usize>, coords: &Coords) -> Option<SignedRoot> {
    if let Some(&k) = index.get(coords) {
        return Some(SignedRoot {
            index: k as u16,
            negative: false,
        });
    }
    let neg = coords.map(|x| -x);
    index.get(&neg).map(|&k| SignedRoot {
        index: k as u16,
        negative: true,
    })
}
