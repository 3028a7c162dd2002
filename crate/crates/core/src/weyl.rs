//! Weyl group elements as integer matrices acting on the root lattice.

use std::fmt;

use thiserror::Error;

use crate::rootsys::{Coords, Root, RootSystem, RootSystemError, MAX_RANK};

const STRIDE: usize = MAX_RANK;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator {0:?} is not an index between 1 and {1}")]
    BadGenerator(String, usize),
}

/// An element `w` of the Weyl group, stored as the matrix whose column `j` is `w(alpha_j)` in
/// simple-root coordinates. The matrix is a canonical key: equality, hashing and ordering are
/// entrywise (row-major).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    rank: u8,
    entries: [i8; MAX_RANK * MAX_RANK],
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        let mut entries = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..rank {
            entries[i * STRIDE + i] = 1;
        }
        WeylElement {
            rank: rank as u8,
            entries,
        }
    }

    /// The simple reflection `s_i` (0-based `i`).
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        let r = rs.rank();
        let mut w = Self::identity(r);
        for j in 0..r {
            w.entries[i * STRIDE + j] -= rs.datum().entry(i, j) as i8;
        }
        w
    }

    /// Product of simple reflections `s_{word[0]} s_{word[1]} ...` (0-based letters).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(rs.rank()), |w, &i| w.mul_simple(rs, i))
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * STRIDE + col]
    }

    /// Raw row-major matrix bytes (stride [`MAX_RANK`]).
    pub fn key_bytes(&self) -> &[i8] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank, other.rank, "elements of different root systems");
        let r = self.rank();
        let mut entries = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..r {
            for j in 0..r {
                let v: i32 = (0..r)
                    .map(|k| self.entry(i, k) as i32 * other.entry(k, j) as i32)
                    .sum();
                // Columns are roots, so entries never exceed the highest-root coefficients.
                entries[i * STRIDE + j] = i8::try_from(v).expect("Weyl matrix entry out of range");
            }
        }
        WeylElement {
            rank: self.rank,
            entries,
        }
    }

    /// Image of a vector in simple-root coordinates.
    #[inline]
    pub fn apply(&self, v: &Coords) -> Coords {
        let r = self.rank();
        let mut out = [0i8; MAX_RANK];
        for j in 0..r {
            let c = v[j];
            if c == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate().take(r) {
                *o += c * self.entries[i * STRIDE + j];
            }
        }
        out
    }

    pub fn apply_root(&self, root: &Root) -> Root {
        Root::from_raw(self.rank(), self.apply(root.raw()))
    }

    /// For every positive root `beta`, whether `w(beta)` is negative.
    pub fn negated_roots(&self, rs: &RootSystem) -> Vec<bool> {
        rs.positive_roots()
            .iter()
            .map(|beta| is_negative(&self.apply(beta.raw())))
            .collect()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|beta| is_negative(&self.apply(beta.raw())))
            .count()
    }

    /// `w s_i`, computed columnwise: `(w s_i)(alpha_j) = w(alpha_j) - C[i][j] w(alpha_i)`.
    pub fn mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let r = self.rank();
        let mut out = *self;
        for j in 0..r {
            let c = rs.datum().entry(i, j) as i8;
            if c == 0 {
                continue;
            }
            for row in 0..r {
                out.entries[row * STRIDE + j] -= c * self.entries[row * STRIDE + i];
            }
        }
        out
    }

    /// `w s_alpha` for the positive root with the given index.
    pub fn mul_reflection(&self, rs: &RootSystem, alpha: usize) -> WeylElement {
        let r = self.rank();
        let w_alpha = self.apply(rs.root(alpha).raw());
        let pairing = rs.pairing_row(alpha);
        let mut out = *self;
        for (j, &c) in pairing.iter().enumerate().take(r) {
            if c == 0 {
                continue;
            }
            let c = c as i8;
            for (row, &wa) in w_alpha.iter().enumerate().take(r) {
                let e = &mut out.entries[row * STRIDE + j];
                *e -= c * wa;
                debug_assert!(e.unsigned_abs() <= 6);
            }
        }
        out
    }

    /// Indices of the positive roots `alpha` with `l(w s_alpha) = l(w) + 1`, in root order.
    pub fn cover_roots(&self, rs: &RootSystem) -> Vec<u8> {
        let neg = self.negated_roots(rs);
        cover_roots_from_signs(rs, &neg)
    }

    /// Every `(alpha, w s_alpha)` with `l(w s_alpha) = l(w) + 1`, in root order.
    pub fn chevalley_covers(&self, rs: &RootSystem) -> Vec<(Root, WeylElement)> {
        self.cover_roots(rs)
            .into_iter()
            .map(|a| (*rs.root(a as usize), self.mul_reflection(rs, a as usize)))
            .collect()
    }

    /// Greedy reduced word (0-based letters): repeatedly strip the smallest right descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let r = self.rank();
        let mut w = *self;
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..r {
                if (0..r).any(|row| w.entry(row, i) < 0) {
                    word.push(i);
                    w = w.mul_simple(rs, i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// Space-separated 1-based generator indices; the identity is the empty string.
    pub fn word_string(&self, rs: &RootSystem) -> String {
        format_word(&self.reduced_word(rs))
    }

    pub fn parse_word(rs: &RootSystem, text: &str) -> Result<WeylElement, WordError> {
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            let i: usize = tok
                .parse()
                .ok()
                .filter(|&i| i >= 1 && i <= rs.rank())
                .ok_or_else(|| WordError::BadGenerator(tok.to_string(), rs.rank()))?;
            word.push(i - 1);
        }
        Ok(Self::from_word(rs, &word))
    }

    /// The reflection `s_alpha` for a positive root.
    pub fn reflection(rs: &RootSystem, root: &Root) -> Result<WeylElement, RootSystemError> {
        let a = rs.root_index(root)?;
        Ok(Self::identity(rs.rank()).mul_reflection(rs, a))
    }

    /// The longest element, built by multiplying on the right by length-increasing generators.
    pub fn longest_element(rs: &RootSystem) -> WeylElement {
        let r = rs.rank();
        let mut w = Self::identity(r);
        'outer: loop {
            for i in 0..r {
                // l(w s_i) > l(w) iff w(alpha_i) > 0
                if (0..r).all(|row| w.entry(row, i) >= 0) {
                    w = w.mul_simple(rs, i);
                    continue 'outer;
                }
            }
            return w;
        }
    }
}

pub fn format_word(word: &[usize]) -> String {
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[inline]
fn is_negative(v: &Coords) -> bool {
    v.iter().any(|&x| x < 0)
}

pub(crate) fn cover_roots_from_signs(rs: &RootSystem, neg: &[bool]) -> Vec<u8> {
    let len = neg.iter().filter(|&&x| x).count();
    let n = rs.num_positive();
    let mut covers = Vec::new();
    for a in 0..n {
        if neg[a] {
            continue;
        }
        let mut new_len = 0;
        for b in 0..n {
            let img = rs.reflect(a, b);
            if neg[img.index as usize] != img.negative {
                new_len += 1;
                if new_len > len + 1 {
                    break;
                }
            }
        }
        if new_len == len + 1 {
            covers.push(a as u8);
        }
    }
    covers
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank();
        let rows: Vec<Vec<i8>> = (0..r).map(|i| (0..r).map(|j| self.entry(i, j)).collect()).collect();
        f.debug_tuple("WeylElement").field(&rows).finish()
    }
}
