//! Exhaustive classification of codes at small `(q, n)` up to isometry,
//! used as the ground-truth oracle for everything else.
//!
//! Codes are subsets of the point space encoded as `u32` bitmasks (the
//! supported scales have at most 32 points). Isometry classes of each size
//! are enumerated level by level: every class of size `k+1` contains an
//! extension of a canonical representative of size `k`, so extending all
//! representatives by all points and canonicalizing yields every class
//! exactly once after deduplication. Sizes above half the space go through
//! the complement, which commutes with the isometry action.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::codes::{word_of_point, Code};
use crate::error::{Error, Result};
use crate::exact::{rat_serde, PotentialFunction, Rat};
use crate::isometry::MaskCanonicalizer;

fn check_scale(q: u32, n: usize) -> Result<()> {
    let ok = (q == 2 && (1..=5).contains(&n)) || ((2..=3).contains(&q) && (1..=3).contains(&n));
    if ok {
        Ok(())
    } else {
        Err(Error::ScaleCap { q, n })
    }
}

/// Enumerated isometry classes for one `(q, n)`, kept for the lifetime of
/// the process and optionally mirrored on disk under `UO_CACHE_DIR`.
pub struct SearchSpace {
    pub q: u32,
    pub n: usize,
    pub space: usize,
    canon: MaskCanonicalizer,
    dist: Vec<Vec<u8>>,
    /// `levels[k]`: sorted canonical masks of the size-`k` classes, for
    /// `k <= space/2`.
    levels: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct DiskMemo {
    q: u32,
    n: usize,
    levels: Vec<Vec<u32>>,
}

static SPACES: Lazy<Mutex<HashMap<(u32, usize), Arc<SearchSpace>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl SearchSpace {
    pub fn get(q: u32, n: usize) -> Result<Arc<SearchSpace>> {
        check_scale(q, n)?;
        if let Some(s) = SPACES.lock().unwrap().get(&(q, n)) {
            return Ok(Arc::clone(s));
        }
        let built = Arc::new(Self::build(q, n)?);
        SPACES.lock().unwrap().insert((q, n), Arc::clone(&built));
        Ok(built)
    }

    fn build(q: u32, n: usize) -> Result<SearchSpace> {
        let canon = MaskCanonicalizer::new(q, n)?;
        let space = canon.space;
        let dist: Vec<Vec<u8>> = (0..space)
            .map(|a| {
                let wa = word_of_point(a, q, n);
                (0..space)
                    .map(|b| {
                        let wb = word_of_point(b, q, n);
                        crate::codes::hamming(&wa, &wb) as u8
                    })
                    .collect()
            })
            .collect();

        let levels = match Self::load_memo(q, n, space, &canon) {
            Some(levels) => levels,
            None => {
                let levels = Self::enumerate_levels(space, &canon);
                Self::store_memo(q, n, &levels);
                levels
            }
        };
        Ok(SearchSpace { q, n, space, canon, dist, levels })
    }

    fn enumerate_levels(space: usize, canon: &MaskCanonicalizer) -> Vec<Vec<u32>> {
        let half = space / 2;
        let mut levels: Vec<Vec<u32>> = vec![vec![0u32]];
        for k in 0..half {
            let current = &levels[k];
            let mut children = Vec::with_capacity(current.len() * (space - k));
            for &m in current {
                for p in 0..space {
                    if m & (1u32 << p) == 0 {
                        children.push(m | (1u32 << p));
                    }
                }
            }
            let mut canonical = canon.canon_batch(&children);
            canonical.sort_unstable();
            canonical.dedup();
            levels.push(canonical);
        }
        levels
    }

    fn memo_path(q: u32, n: usize) -> Option<std::path::PathBuf> {
        let dir = std::env::var_os("UO_CACHE_DIR")?;
        Some(std::path::PathBuf::from(dir).join(format!("classes_q{q}_n{n}.json")))
    }

    fn load_memo(q: u32, n: usize, space: usize, canon: &MaskCanonicalizer) -> Option<Vec<Vec<u32>>> {
        let path = Self::memo_path(q, n)?;
        let text = std::fs::read_to_string(path).ok()?;
        let memo: DiskMemo = serde_json::from_str(&text).ok()?;
        if memo.q != q || memo.n != n || memo.levels.len() != space / 2 + 1 {
            return None;
        }
        // sanity: every mask canonical, of the right size, sorted
        for (k, level) in memo.levels.iter().enumerate() {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return None;
            }
            for &m in level.iter().take(3).chain(level.iter().rev().take(3)) {
                if m.count_ones() as usize != k || canon.canon(m) != m {
                    return None;
                }
            }
        }
        Some(memo.levels)
    }

    fn store_memo(q: u32, n: usize, levels: &[Vec<u32>]) {
        let Some(path) = Self::memo_path(q, n) else { return };
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let memo = DiskMemo { q, n, levels: levels.to_vec() };
        if let Ok(text) = serde_json::to_string(&memo) {
            let _ = std::fs::write(path, text);
        }
    }

    /// Canonical class representatives of size `N` (through the complement
    /// for sizes above half the space).
    pub fn classes(&self, size: usize) -> Result<Vec<u32>> {
        if size > self.space {
            return Err(Error::InvalidParameter(format!(
                "size {size} exceeds the space ({})",
                self.space
            )));
        }
        if size <= self.space / 2 {
            return Ok(self.levels[size].clone());
        }
        let full: u32 = if self.space == 32 { u32::MAX } else { (1u32 << self.space) - 1 };
        let mirrored: Vec<u32> =
            self.levels[self.space - size].iter().map(|&m| full & !m).collect();
        let mut canonical = self.canon.canon_batch(&mirrored);
        canonical.sort_unstable();
        canonical.dedup();
        if canonical.len() != self.levels[self.space - size].len() {
            return Err(Error::Internal("complement bijection lost classes".into()));
        }
        Ok(canonical)
    }

    /// Unordered pair counts by distance for one mask.
    pub fn distance_counts(&self, mask: u32) -> Vec<u64> {
        let points: Vec<usize> = (0..self.space).filter(|&p| mask & (1 << p) != 0).collect();
        let mut counts = vec![0u64; self.n + 1];
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                counts[self.dist[a][b] as usize] += 1;
            }
        }
        counts
    }

    pub fn mask_to_code(&self, mask: u32) -> Result<Code> {
        let words: Vec<Vec<u8>> = (0..self.space)
            .filter(|&p| mask & (1 << p) != 0)
            .map(|p| word_of_point(p, self.q, self.n))
            .collect();
        Code::new(self.q, self.n, words)
    }
}

/// Canonical representatives of every isometry class of `(q, n)` codes of
/// the given size.
pub fn enumerate_codes(q: u32, n: usize, size: usize) -> Result<Vec<Code>> {
    let space = SearchSpace::get(q, n)?;
    space.classes(size)?.iter().map(|&m| space.mask_to_code(m)).collect()
}

/// Exact minimum of `E_f` over all codes of the given size, with every
/// minimizing class.
pub fn min_energy_exhaustive(
    q: u32,
    n: usize,
    size: usize,
    f: &PotentialFunction,
) -> Result<(Rat, Vec<Code>)> {
    if size == 0 {
        return Err(Error::InvalidParameter("size must be positive".into()));
    }
    if !f.covers(1, n as i64) {
        return Err(Error::InvalidParameter("potential must cover {1..n}".into()));
    }
    let space = SearchSpace::get(q, n)?;
    let masks = space.classes(size)?;
    let mut best: Option<(Rat, Vec<u32>)> = None;
    for &m in &masks {
        let counts = space.distance_counts(m);
        let mut acc = Rat::zero();
        for (d, &c) in counts.iter().enumerate().skip(1) {
            if c > 0 {
                acc += Rat::from_integer(BigInt::from(2 * c)) * f.value(d as i64)?;
            }
        }
        let e = acc / Rat::from_integer(BigInt::from(size as u64));
        match &mut best {
            None => best = Some((e, vec![m])),
            Some((be, bm)) => {
                if e < *be {
                    *be = e;
                    bm.clear();
                    bm.push(m);
                } else if e == *be {
                    bm.push(m);
                }
            }
        }
    }
    let (value, masks) = best.expect("at least one class");
    let codes = masks.iter().map(|&m| space.mask_to_code(m)).collect::<Result<_>>()?;
    Ok((value, codes))
}

/// Result of a universal-optimality classification at one `(q, n, N)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub q: u32,
    pub n: usize,
    pub size: usize,
    /// Exact minimum energy for each fundamental potential `f_1..f_n`.
    #[serde(with = "rat_serde::vec")]
    pub min_energy: Vec<Rat>,
    /// Number of classes attaining each fundamental minimum.
    pub optimizer_counts: Vec<usize>,
    /// Classes minimizing every fundamental potential simultaneously
    /// (universal optima; sufficient by the basis decomposition of the
    /// completely monotonic cone).
    pub universal_optima: Vec<Code>,
}

/// Classifies the universal optima among all codes of one size: the
/// classes minimizing every fundamental potential simultaneously.
pub fn classify_universal_optima(q: u32, n: usize, size: usize) -> Result<SearchResult> {
    if size == 0 {
        return Err(Error::InvalidParameter("size must be positive".into()));
    }
    let space = SearchSpace::get(q, n)?;
    let masks = space.classes(size)?;

    // integer energy numerators: N * E_{f_j} = 2 sum_d counts_d C(n-d, j)
    let fvals: Vec<Vec<i64>> = (1..=n)
        .map(|j| {
            (0..=n as i64)
                .map(|d| {
                    let b = crate::exact::binomial(n as i64 - d, j as i64);
                    i64::try_from(&b).expect("small binomial")
                })
                .collect()
        })
        .collect();

    let numerators = |counts: &[u64], j: usize| -> u64 {
        counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(d, &c)| 2 * c * fvals[j][d] as u64)
            .sum()
    };

    // first pass: the per-potential minima
    let mut best: Vec<u64> = vec![u64::MAX; n];
    for &m in &masks {
        let counts = space.distance_counts(m);
        for (j, b) in best.iter_mut().enumerate() {
            let acc = numerators(&counts, j);
            if acc < *b {
                *b = acc;
            }
        }
    }
    // second pass: optimizer counts and the simultaneous minimizers
    let mut optimizer_counts = vec![0usize; n];
    let mut universal_masks = Vec::new();
    for &m in &masks {
        let counts = space.distance_counts(m);
        let mut all = true;
        for j in 0..n {
            if numerators(&counts, j) == best[j] {
                optimizer_counts[j] += 1;
            } else {
                all = false;
            }
        }
        if all {
            universal_masks.push(m);
        }
    }

    let min_energy: Vec<Rat> = best
        .iter()
        .map(|&v| Rat::new(BigInt::from(v), BigInt::from(size as u64)))
        .collect();
    let universal_optima = universal_masks
        .iter()
        .map(|&m| space.mask_to_code(m))
        .collect::<Result<_>>()?;
    Ok(SearchResult { q, n, size, min_energy, optimizer_counts, universal_optima })
}

/// Class counts per size from the cycle index of the isometry action,
/// computed independently of the enumeration (Burnside).
pub fn class_counts_by_orbit_counting(q: u32, n: usize) -> Result<Vec<BigInt>> {
    check_scale(q, n)?;
    let mut space_size = 1usize;
    for _ in 0..n {
        space_size *= q as usize;
    }
    let mut group = 0u64;
    let mut total = vec![BigInt::zero(); space_size + 1];
    crate::isometry::for_each_isometry(q, n, |map| {
        group += 1;
        // cycle lengths of the point permutation
        let mut seen = vec![false; space_size];
        let mut poly = vec![BigInt::zero(); space_size + 1];
        poly[0] = BigInt::from(1);
        for start in 0..space_size {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = map[p] as usize;
                len += 1;
            }
            // multiply poly by (1 + x^len)
            for d in (len..=space_size).rev() {
                let add = poly[d - len].clone();
                poly[d] += add;
            }
        }
        for (t, c) in total.iter_mut().zip(poly) {
            *t += c;
        }
    })?;
    let g = BigInt::from(group);
    for t in total.iter_mut() {
        let (quot, rem) = (t.clone() / &g, t.clone() % &g);
        if !rem.is_zero() {
            return Err(Error::Internal("orbit counting did not divide evenly".into()));
        }
        *t = quot;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::krawtchouk::fundamental_potential;

    #[test]
    fn tiny_class_counts() {
        assert_eq!(enumerate_codes(2, 1, 2).unwrap().len(), 1);
        assert_eq!(enumerate_codes(2, 2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_codes(2, 2, 3).unwrap().len(), 1);
        assert_eq!(enumerate_codes(2, 2, 4).unwrap().len(), 1);
    }

    #[test]
    fn burnside_cross_check() {
        for (q, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
            let expected = class_counts_by_orbit_counting(q, n).unwrap();
            let space = SearchSpace::get(q, n).unwrap();
            for size in 0..=space.space {
                let got = space.classes(size).unwrap().len();
                assert_eq!(
                    BigInt::from(got as u64),
                    expected[size],
                    "q={q} n={n} size={size}"
                );
            }
        }
    }

    #[test]
    fn complement_symmetry() {
        let space = SearchSpace::get(2, 3).unwrap();
        for size in 1..8 {
            assert_eq!(
                space.classes(size).unwrap().len(),
                space.classes(8 - size).unwrap().len()
            );
        }
    }

    #[test]
    fn min_energy_examples() {
        let f1 = fundamental_potential(1, 2).unwrap();
        let (v, optima) = min_energy_exhaustive(2, 2, 3, &f1).unwrap();
        assert_eq!(v, crate::exact::ratio(4, 3));
        assert_eq!(optima.len(), 1);

        let f2 = fundamental_potential(2, 2).unwrap();
        let (v, _) = min_energy_exhaustive(2, 2, 2, &f2).unwrap();
        assert_eq!(v, rat(0));

        let f1 = fundamental_potential(1, 3).unwrap();
        let (v, _) = min_energy_exhaustive(2, 3, 1, &f1).unwrap();
        assert_eq!(v, rat(0));
    }

    #[test]
    fn scale_caps_are_hard() {
        assert!(matches!(enumerate_codes(2, 6, 2), Err(Error::ScaleCap { .. })));
        assert!(matches!(enumerate_codes(3, 4, 2), Err(Error::ScaleCap { .. })));
        assert!(matches!(enumerate_codes(5, 2, 2), Err(Error::ScaleCap { .. })));
    }

    #[test]
    fn three_point_code_is_the_unique_optimum() {
        // {00, 01, 11} is universally optimal at size 3, while the
        // two-word path is not at size 2
        let r = classify_universal_optima(2, 2, 3).unwrap();
        assert_eq!(r.universal_optima.len(), 1);
        let canonical = crate::codes::canonical_form(
            &Code::new(2, 2, vec![vec![0, 0], vec![0, 1], vec![1, 1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(r.universal_optima[0], canonical);

        let r2 = classify_universal_optima(2, 2, 2).unwrap();
        assert_eq!(r2.universal_optima.len(), 1);
        let path = crate::codes::canonical_form(
            &Code::new(2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap(),
        )
        .unwrap();
        assert_ne!(r2.universal_optima[0], path);
    }

    #[test]
    fn disk_memo_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        std::env::set_var("UO_CACHE_DIR", dir.path());
        let levels = SearchSpace::build(2, 2).unwrap().levels.clone();
        assert!(dir.path().join("classes_q2_n2.json").exists());
        // second build loads the memo
        let again = SearchSpace::build(2, 2).unwrap();
        assert_eq!(levels, again.levels);
        std::env::remove_var("UO_CACHE_DIR");
    }
}
