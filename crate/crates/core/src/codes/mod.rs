//! Explicit codes over `{0..q-1}^n`: distance distributions, energies,
//! the puncture/shorten/extend/complement transforms, distance regularity,
//! and canonical forms under Hamming-space isometries.

pub mod families;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{PotentialFunction, Rat};
use crate::isometry;
use crate::quasicode::Quasicode;

/// An explicit code: a set of distinct words over `{0..q-1}` of length `n`.
/// Words are kept sorted, so equal codes compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    pub q: u32,
    pub n: usize,
    words: Vec<Vec<u8>>,
}

impl Code {
    pub fn new(q: u32, n: usize, mut words: Vec<Vec<u8>>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter("alphabet size must be at least 2".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        if words.is_empty() {
            return Err(Error::InvalidParameter("a code must contain at least one word".into()));
        }
        for w in &words {
            if w.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "word length {} != block length {n}",
                    w.len()
                )));
            }
            if w.iter().any(|&s| s as u32 >= q) {
                return Err(Error::InvalidParameter("symbol out of alphabet".into()));
            }
        }
        words.sort();
        words.dedup();
        Ok(Self { q, n, words })
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `q^n` when it fits a u64.
    pub fn space_size(&self) -> Option<u64> {
        let mut s: u64 = 1;
        for _ in 0..self.n {
            s = s.checked_mul(self.q as u64)?;
        }
        Some(s)
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        hamming(&self.words[a], &self.words[b])
    }

    /// Ordered pair counts by distance, with `counts[0] = N` so that the
    /// normalized vector starts at `A_0 = 1`.
    pub(crate) fn pair_counts(&self) -> Vec<u64> {
        let n = self.n;
        let mut counts = vec![0u64; n + 1];
        counts[0] = self.len() as u64;
        if self.q == 2 && n <= 64 {
            let packed: Vec<u64> = self
                .words
                .iter()
                .map(|w| w.iter().enumerate().fold(0u64, |m, (i, &s)| m | ((s as u64) << i)))
                .collect();
            for i in 0..packed.len() {
                for j in i + 1..packed.len() {
                    let d = (packed[i] ^ packed[j]).count_ones() as usize;
                    counts[d] += 2;
                }
            }
        } else {
            for i in 0..self.len() {
                for j in i + 1..self.len() {
                    counts[self.distance(i, j)] += 2;
                }
            }
        }
        counts
    }

    /// Distance profile of one word against the whole code (index = distance).
    pub(crate) fn profile(&self, idx: usize) -> Vec<u64> {
        let mut profile = vec![0u64; self.n + 1];
        for j in 0..self.len() {
            if j != idx {
                profile[self.distance(idx, j)] += 1;
            }
        }
        profile
    }
}

/// Hamming distance between two words.
pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// The distance distribution `(A_0, ..., A_n)`, `A_i = #{(x,y) : |x-y| = i}/N`.
/// The result is validated against the Delsarte constraints, which every
/// distribution of an actual code satisfies.
pub fn distance_distribution(code: &Code) -> Result<Quasicode> {
    let size = Rat::from_integer(BigInt::from(code.len()));
    let a: Vec<Rat> = code
        .pair_counts()
        .iter()
        .map(|&c| Rat::from_integer(BigInt::from(c)) / &size)
        .collect();
    Quasicode::new(code.q, code.n, a)
}

/// Potential energy `E_f(C) = (1/N) sum_{x != y} f(|x-y|)` for `f` covering
/// `{1..n}`.
pub fn energy(code: &Code, f: &PotentialFunction) -> Result<Rat> {
    if !f.covers(1, code.n as i64) {
        return Err(Error::InvalidParameter("potential must cover {1..n}".into()));
    }
    let counts = code.pair_counts();
    let mut acc = Rat::zero();
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            acc += Rat::from_integer(BigInt::from(c)) * f.value(d as i64)?;
        }
    }
    Ok(acc / Rat::from_integer(BigInt::from(code.len())))
}

/// Deletes one coordinate; errors if two words collide.
pub fn puncture(code: &Code, coordinate: usize) -> Result<Code> {
    if coordinate >= code.n {
        return Err(Error::InvalidParameter(format!("coordinate {coordinate} out of range")));
    }
    if code.n == 1 {
        return Err(Error::InvalidParameter("cannot puncture a length-1 code".into()));
    }
    let words: Vec<Vec<u8>> = code
        .words
        .iter()
        .map(|w| {
            let mut v = w.clone();
            v.remove(coordinate);
            v
        })
        .collect();
    let mut sorted = words.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != words.len() {
        return Err(Error::PunctureCollision(coordinate));
    }
    Code::new(code.q, code.n - 1, words)
}

/// Keeps the words carrying `symbol` at `coordinate`, then deletes the
/// coordinate.
pub fn shorten(code: &Code, coordinate: usize, symbol: u8) -> Result<Code> {
    if coordinate >= code.n {
        return Err(Error::InvalidParameter(format!("coordinate {coordinate} out of range")));
    }
    let words: Vec<Vec<u8>> = code
        .words
        .iter()
        .filter(|w| w[coordinate] == symbol)
        .map(|w| {
            let mut v = w.clone();
            v.remove(coordinate);
            v
        })
        .collect();
    if words.is_empty() {
        return Err(Error::EmptyShorten { coordinate, symbol });
    }
    Code::new(code.q, code.n - 1, words)
}

/// Appends the check symbol making each word's coordinate sum vanish mod `q`.
pub fn extend(code: &Code) -> Result<Code> {
    if !families::is_prime(code.q) {
        return Err(Error::InvalidParameter("extension is defined for prime q".into()));
    }
    let q = code.q as u32;
    let words: Vec<Vec<u8>> = code
        .words
        .iter()
        .map(|w| {
            let sum: u32 = w.iter().map(|&s| s as u32).sum();
            let check = (q - sum % q) % q;
            let mut v = w.clone();
            v.push(check as u8);
            v
        })
        .collect();
    Code::new(code.q, code.n + 1, words)
}

/// The complement `F_q^n \ C`. Requires `|C| < q^n` and a space small enough
/// to enumerate.
pub fn complement(code: &Code) -> Result<Code> {
    let space = code
        .space_size()
        .filter(|&s| s <= 1 << 22)
        .ok_or_else(|| Error::InvalidParameter("space too large to complement".into()))?;
    if code.len() as u64 >= space {
        return Err(Error::InvalidParameter("complement of the full space is empty".into()));
    }
    let q = code.q as u64;
    let mut in_code = vec![false; space as usize];
    for w in &code.words {
        in_code[point_index(w, code.q)] = true;
    }
    let mut words = Vec::with_capacity((space - code.len() as u64) as usize);
    for p in 0..space {
        if !in_code[p as usize] {
            let mut w = Vec::with_capacity(code.n);
            let mut rest = p;
            for _ in 0..code.n {
                w.push((rest % q) as u8);
                rest /= q;
            }
            words.push(w);
        }
    }
    Code::new(code.q, code.n, words)
}

/// Base-`q` integer encoding of a word (coordinate 0 least significant).
pub(crate) fn point_index(word: &[u8], q: u32) -> usize {
    word.iter()
        .rev()
        .fold(0usize, |acc, &s| acc * q as usize + s as usize)
}

/// Decodes a base-`q` point index back into a word.
pub fn word_of_point_public(p: usize, q: u32, n: usize) -> Vec<u8> {
    word_of_point(p, q, n)
}

pub(crate) fn word_of_point(p: usize, q: u32, n: usize) -> Vec<u8> {
    let mut w = Vec::with_capacity(n);
    let mut rest = p;
    for _ in 0..n {
        w.push((rest % q as usize) as u8);
        rest /= q as usize;
    }
    w
}

/// True iff every codeword has the same distance profile.
pub fn is_distance_regular(code: &Code) -> bool {
    if code.len() <= 1 {
        return true;
    }
    let first = code.profile(0);
    (1..code.len()).all(|i| code.profile(i) == first)
}

/// Canonical representative of the code under coordinate permutations and
/// independent symbol permutations per coordinate. Two codes are isometric
/// iff their canonical forms are equal. Only available at small scales.
pub fn canonical_form(code: &Code) -> Result<Code> {
    let points: Vec<usize> = code.words.iter().map(|w| point_index(w, code.q)).collect();
    let canon = isometry::canonical_points(code.q, code.n, &points)?;
    let words = canon
        .into_iter()
        .map(|p| word_of_point(p, code.q, code.n))
        .collect();
    Code::new(code.q, code.n, words)
}
