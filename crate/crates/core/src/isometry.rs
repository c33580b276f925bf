//! Isometries of the Hamming space `{0..q-1}^n`: coordinate permutations
//! composed with independent symbol permutations per coordinate.
//!
//! Codes are handled as subsets of the point space, with points encoded as
//! base-`q` integers (coordinate 0 least significant). Canonical forms are
//! orbit minima of the characteristic bitset, compared as a little-endian
//! integer, so two codes are isometric iff their canonical forms coincide.

use crate::error::{Error, Result};

/// Hard cap on the group sizes the generic path will enumerate.
const MAX_GROUP: u64 = 2_000_000;
/// Hard cap on the point-space size for set representations.
const MAX_SPACE: u64 = 256;

fn factorial(k: u64) -> u64 {
    (1..=k).product::<u64>().max(1)
}

/// Size of the isometry group `n! * (q!)^n`, capped.
fn group_size(q: u32, n: usize) -> Result<u64> {
    let fq = factorial(q as u64);
    let mut size = factorial(n as u64);
    for _ in 0..n {
        size = size
            .checked_mul(fq)
            .filter(|&s| s <= MAX_GROUP)
            .ok_or(Error::ScaleCap { q, n })?;
    }
    Ok(size)
}

fn space_size(q: u32, n: usize) -> Result<usize> {
    let mut s: u64 = 1;
    for _ in 0..n {
        s = s
            .checked_mul(q as u64)
            .filter(|&s| s <= MAX_SPACE)
            .ok_or(Error::ScaleCap { q, n })?;
    }
    Ok(s as usize)
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(k, &mut cur, &mut out);
    out
}

/// Calls `f` once per group element with the point map of that isometry
/// (`map[p]` = image of point `p`).
pub(crate) fn for_each_isometry(q: u32, n: usize, mut f: impl FnMut(&[u16])) -> Result<()> {
    group_size(q, n)?;
    let space = space_size(q, n)?;
    let coord_perms = permutations(n);
    let sym_perms = permutations(q as usize);
    let digits: Vec<Vec<u8>> = (0..space)
        .map(|p| {
            let mut d = Vec::with_capacity(n);
            let mut rest = p;
            for _ in 0..n {
                d.push((rest % q as usize) as u8);
                rest /= q as usize;
            }
            d
        })
        .collect();

    let mut map = vec![0u16; space];
    let mut choice = vec![0usize; n]; // symbol permutation index per coordinate
    for sigma in &coord_perms {
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            for (p, d) in digits.iter().enumerate() {
                // image word: w'_i = pi_i(w_{sigma(i)})
                let mut enc: usize = 0;
                for i in (0..n).rev() {
                    let sym = sym_perms[choice[i]][d[sigma[i] as usize] as usize];
                    enc = enc * q as usize + sym as usize;
                }
                map[p] = enc as u16;
            }
            f(&map);
            // next mixed-radix choice
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                choice[i] += 1;
                if choice[i] < sym_perms.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(())
}

/// 256-bit set over the point space, ordered as a little-endian integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub(crate) struct PointSet(pub [u64; 4]);

impl PointSet {
    pub fn empty() -> Self {
        PointSet([0; 4])
    }

    pub fn insert(&mut self, p: usize) {
        self.0[p / 64] |= 1u64 << (p % 64);
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0[p / 64] & (1u64 << (p % 64)) != 0
    }

    pub fn points(&self, space: usize) -> Vec<usize> {
        (0..space).filter(|&p| self.contains(p)).collect()
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        for i in (0..4).rev() {
            match self.0[i].cmp(&other.0[i]) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical representative (as point indices) of a set of points under the
/// full isometry group.
pub(crate) fn canonical_points(q: u32, n: usize, points: &[usize]) -> Result<Vec<usize>> {
    let space = space_size(q, n)?;
    let mut best: Option<PointSet> = None;
    for_each_isometry(q, n, |map| {
        let mut img = PointSet::empty();
        for &p in points {
            img.insert(map[p] as usize);
        }
        if best.as_ref().map_or(true, |b| img < *b) {
            best = Some(img);
        }
    })?;
    Ok(best.unwrap_or(PointSet::empty()).points(space))
}

/// Fast canonicalizer for point spaces of at most 32 points (`q^n <= 32`):
/// masks are `u32`, and every group element is compiled to four byte-indexed
/// lookup tables so one orbit image costs four loads and three ors.
pub(crate) struct MaskCanonicalizer {
    pub space: usize,
    tables: Vec<[[u32; 256]; 4]>,
}

impl MaskCanonicalizer {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        let space = space_size(q, n)?;
        if space > 32 {
            return Err(Error::ScaleCap { q, n });
        }
        let mut tables = Vec::new();
        for_each_isometry(q, n, |map| {
            let mut t = [[0u32; 256]; 4];
            for (byte, tb) in t.iter_mut().enumerate() {
                for v in 0..256usize {
                    let mut img = 0u32;
                    for bit in 0..8 {
                        let p = byte * 8 + bit;
                        if p < space && v & (1 << bit) != 0 {
                            img |= 1u32 << map[p];
                        }
                    }
                    tb[v] = img;
                }
            }
            tables.push(t);
        })?;
        Ok(Self { space, tables })
    }

    #[cfg(test)]
    pub fn group_order(&self) -> usize {
        self.tables.len()
    }

    #[inline]
    pub fn canon(&self, mask: u32) -> u32 {
        let b0 = (mask & 0xff) as usize;
        let b1 = ((mask >> 8) & 0xff) as usize;
        let b2 = ((mask >> 16) & 0xff) as usize;
        let b3 = (mask >> 24) as usize;
        let mut best = u32::MAX;
        for t in &self.tables {
            let img = t[0][b0] | t[1][b1] | t[2][b2] | t[3][b3];
            if img < best {
                best = img;
            }
        }
        best
    }

    /// Canonicalizes many masks with one sweep over the group tables, so
    /// each element's 4 KiB block stays cache-hot while a whole level of
    /// the enumeration is processed against it.
    pub fn canon_batch(&self, masks: &[u32]) -> Vec<u32> {
        let parts: Vec<[u8; 4]> = masks.iter().map(|m| m.to_le_bytes()).collect();
        let mut best = vec![u32::MAX; masks.len()];
        for t in &self.tables {
            for (b, p) in best.iter_mut().zip(&parts) {
                let img = t[0][p[0] as usize]
                    | t[1][p[1] as usize]
                    | t[2][p[2] as usize]
                    | t[3][p[3] as usize];
                if img < *b {
                    *b = img;
                }
            }
        }
        best
    }
}
