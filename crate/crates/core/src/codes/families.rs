//! Standard code constructions: Hamming and simplex codes over prime
//! fields, Reed-Solomon codes, the binary and ternary Golay codes, Hadamard
//! codes from Sylvester and Paley matrices, Paley conference matrices, and
//! the Nordstrom-Robinson code via its Z4 lift.
//!
//! Field arithmetic is limited to integers mod a prime; rows that would
//! need prime-power fields are handled at quasicode level by the catalog.

use super::Code;
use crate::error::{Error, Result};

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(q: u32) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("q = {q} must be prime")));
    }
    Ok(())
}

/// All `q^k` words spanned by the rows of a generator matrix over `F_q`.
fn span(q: u32, generators: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
    let k = generators.len();
    let n = generators[0].len();
    let count = (q as u64).checked_pow(k as u32).filter(|&c| c <= 1 << 20).ok_or_else(|| {
        Error::InvalidParameter("generator span too large to enumerate".into())
    })?;
    let mut words = Vec::with_capacity(count as usize);
    let mut message = vec![0u8; k];
    loop {
        let mut w = vec![0u32; n];
        for (mi, g) in message.iter().zip(generators) {
            if *mi != 0 {
                for (wj, gj) in w.iter_mut().zip(g) {
                    *wj += *mi as u32 * *gj as u32;
                }
            }
        }
        words.push(w.into_iter().map(|v| (v % q) as u8).collect());
        let mut i = 0;
        while i < k {
            message[i] += 1;
            if (message[i] as u32) < q {
                break;
            }
            message[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(words)
}

/// Parity-check columns of the Hamming code: one representative per 1-D
/// subspace of `F_q^r`, normalized so the first nonzero entry is 1.
fn hamming_columns(q: u32, r: usize) -> Vec<Vec<u8>> {
    let mut cols = Vec::new();
    let total = (q as u64).pow(r as u32);
    for idx in 1..total {
        let mut col = Vec::with_capacity(r);
        let mut rest = idx;
        for _ in 0..r {
            col.push((rest % q as u64) as u8);
            rest /= q as u64;
        }
        if col.iter().find(|&&s| s != 0) == Some(&1) {
            cols.push(col);
        }
    }
    cols
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat; p is a small prime
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Nullspace basis of a matrix over `F_p` via row reduction.
fn nullspace(p: u32, rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let ncols = rows[0].len();
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = mod_inverse(m[rank][col], p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..ncols {
                    m[r][c] = (m[r][c] + (p - factor % p) % p * m[rank][c]) % p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![0u8; ncols];
        v[fc] = 1;
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            // pivot value + m[pi][fc] * 1 = 0
            v[pc] = ((p - m[pi][fc] % p) % p) as u8;
        }
        basis.push(v);
    }
    basis
}

/// Hamming code over a prime field: length `(q^r - 1)/(q - 1)`,
/// size `q^{n-r}`.
pub fn hamming(q: u32, r: usize) -> Result<Code> {
    require_prime(q)?;
    if r < 2 {
        return Err(Error::InvalidParameter("hamming code needs r >= 2".into()));
    }
    let cols = hamming_columns(q, r);
    let n = cols.len();
    // parity-check matrix H: r x n with the normalized columns
    let h: Vec<Vec<u8>> = (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let basis = nullspace(q, &h);
    Code::new(q, n, span(q, &basis)?)
}

/// Simplex code: the span of the Hamming parity-check rows; all nonzero
/// words have weight `q^{r-1}`.
pub fn simplex(q: u32, r: usize) -> Result<Code> {
    require_prime(q)?;
    if r < 2 {
        return Err(Error::InvalidParameter("simplex code needs r >= 2".into()));
    }
    let cols = hamming_columns(q, r);
    let n = cols.len();
    let h: Vec<Vec<u8>> = (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Code::new(q, n, span(q, &h)?)
}

/// Reed-Solomon code over `F_q` (q prime): evaluations of polynomials of
/// degree `< n - d + 1` at `n <= q` distinct points; an MDS code with
/// minimum distance `d`.
pub fn reed_solomon(q: u32, n: usize, d: usize) -> Result<Code> {
    require_prime(q)?;
    if n < 2 || n > q as usize {
        return Err(Error::InvalidParameter("reed-solomon needs 2 <= n <= q".into()));
    }
    if d < 1 || d > n {
        return Err(Error::InvalidParameter("reed-solomon needs 1 <= d <= n".into()));
    }
    let k = n - d + 1;
    // generator rows: (x^j evaluated at points 0..n-1) for j < k
    let mut generators = Vec::with_capacity(k);
    for j in 0..k {
        let row: Vec<u8> = (0..n as u64)
            .map(|x| {
                let mut acc = 1u64;
                for _ in 0..j {
                    acc = acc * x % q as u64;
                }
                acc as u8
            })
            .collect();
        generators.push(row);
    }
    Code::new(q, n, span(q, &generators)?)
}

fn cyclic_code(q: u32, n: usize, generator_poly: &[u8]) -> Result<Code> {
    let k = n - (generator_poly.len() - 1);
    let mut generators = Vec::with_capacity(k);
    for shift in 0..k {
        let mut row = vec![0u8; n];
        for (i, &c) in generator_poly.iter().enumerate() {
            row[shift + i] = c;
        }
        generators.push(row);
    }
    Code::new(q, n, span(q, &generators)?)
}

/// Perfect binary Golay code of length 23 (cyclic construction).
pub fn golay_binary23() -> Result<Code> {
    // 1 + x + x^5 + x^6 + x^7 + x^9 + x^11, a degree-11 factor of x^23 - 1
    cyclic_code(2, 23, &[1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1])
}

/// Extended binary Golay code of length 24.
pub fn golay_binary24() -> Result<Code> {
    super::extend(&golay_binary23()?)
}

/// Perfect ternary Golay code of length 11 (cyclic construction).
pub fn golay_ternary11() -> Result<Code> {
    // 2 + x^2 + 2x^3 + x^4 + x^5, a degree-5 factor of x^11 - 1 over F_3
    cyclic_code(3, 11, &[2, 0, 1, 2, 1, 1])
}

/// Extended ternary Golay code of length 12.
pub fn golay_ternary12() -> Result<Code> {
    super::extend(&golay_ternary11()?)
}

/// Quadratic character of `F_p` (p an odd prime): 1 on nonzero squares,
/// -1 on nonsquares, 0 at 0.
fn legendre(x: u32, p: u32) -> i8 {
    let x = x % p;
    if x == 0 {
        return 0;
    }
    for y in 1..p {
        if y * y % p == x {
            return 1;
        }
    }
    -1
}

/// Quadratic character of `F_9 = F_3[i]`, elements encoded as `a + 3b`
/// for `a + b i`.
fn chi9(idx: usize) -> i8 {
    const SQUARES: [i8; 9] = [0, 1, 1, 1, -1, -1, 1, -1, -1];
    SQUARES[idx]
}

fn f9_sub(x: usize, y: usize) -> usize {
    let (a1, b1) = (x % 3, x / 3);
    let (a2, b2) = (y % 3, y / 3);
    (a1 + 3 - a2) % 3 + 3 * ((b1 + 3 - b2) % 3)
}

/// Symmetric Paley conference matrix of order `m` for `m - 1` an odd prime
/// power that is 1 mod 4 (orders 6, 10, 14 here). Verified to satisfy
/// `C C^t = (m-1) I` before returning.
pub fn conference_matrix(order: usize) -> Result<Vec<Vec<i8>>> {
    let p = order - 1;
    let chi: Box<dyn Fn(usize, usize) -> i8> = match order {
        6 | 14 => {
            let p = p as u32;
            Box::new(move |a, b| legendre(((b + p as usize) - a) as u32 % p, p))
        }
        10 => Box::new(move |a, b| chi9(f9_sub(b, a))),
        _ => {
            return Err(Error::Unsupported(format!(
                "conference matrix of order {order} (supported: 6, 10, 14)"
            )))
        }
    };
    let m = order;
    let mut c = vec![vec![0i8; m]; m];
    for j in 1..m {
        c[0][j] = 1;
        c[j][0] = 1;
    }
    for a in 0..p {
        for b in 0..p {
            if a != b {
                c[a + 1][b + 1] = chi(a, b);
            }
        }
    }
    // C C^t = (m-1) I
    for i in 0..m {
        for j in 0..m {
            let dot: i32 = (0..m).map(|k| c[i][k] as i32 * c[j][k] as i32).sum();
            let expect = if i == j { (m - 1) as i32 } else { 0 };
            if dot != expect {
                return Err(Error::Internal(format!(
                    "conference matrix order {order} failed C C^t = (m-1) I at ({i},{j})"
                )));
            }
        }
    }
    Ok(c)
}

/// Hadamard matrix of order 4, 8, or 16 (Sylvester) or 12 (Paley).
/// Verified to satisfy `H H^t = m I` before returning.
pub fn hadamard_matrix(order: usize) -> Result<Vec<Vec<i8>>> {
    let h = match order {
        4 | 8 | 16 => {
            let mut h = vec![vec![1i8]];
            while h.len() < order {
                let m = h.len();
                let mut next = vec![vec![0i8; 2 * m]; 2 * m];
                for i in 0..m {
                    for j in 0..m {
                        next[i][j] = h[i][j];
                        next[i][j + m] = h[i][j];
                        next[i + m][j] = h[i][j];
                        next[i + m][j + m] = -h[i][j];
                    }
                }
                h = next;
            }
            h
        }
        12 => {
            // Paley construction from p = 11: H = I + S with S skew
            let p = 11u32;
            let m = 12;
            let mut s = vec![vec![0i8; m]; m];
            for j in 1..m {
                s[0][j] = 1;
                s[j][0] = -1;
            }
            for a in 0..p as usize {
                for b in 0..p as usize {
                    if a != b {
                        s[a + 1][b + 1] = legendre(((b + p as usize) - a) as u32 % p, p);
                    }
                }
            }
            let mut h = s;
            for (i, row) in h.iter_mut().enumerate() {
                row[i] += 1;
            }
            h
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "hadamard matrix of order {order} (supported: 4, 8, 12, 16)"
            )))
        }
    };
    for i in 0..order {
        for j in 0..order {
            let dot: i32 = (0..order).map(|k| h[i][k] as i32 * h[j][k] as i32).sum();
            let expect = if i == j { order as i32 } else { 0 };
            if dot != expect {
                return Err(Error::Internal(format!(
                    "hadamard matrix order {order} failed H H^t = m I at ({i},{j})"
                )));
            }
        }
    }
    Ok(h)
}

/// Hadamard code: the rows of a Hadamard matrix and their complements,
/// mapped `+1 -> 0`, `-1 -> 1`. Length `n`, size `2n`, distances
/// `{n/2, n}`.
pub fn hadamard_code(order: usize) -> Result<Code> {
    let h = hadamard_matrix(order)?;
    let mut words = Vec::with_capacity(2 * order);
    for row in &h {
        let w: Vec<u8> = row.iter().map(|&v| if v > 0 { 0 } else { 1 }).collect();
        let wc: Vec<u8> = w.iter().map(|&b| 1 - b).collect();
        words.push(w);
        words.push(wc);
    }
    Code::new(2, order, words)
}

/// Nordstrom-Robinson code: Gray image of the octacode, the unique
/// self-dual Z4 code of length 8 built by extending the cyclic code
/// generated by a Hensel lift of x^3 + x + 1.
pub fn nordstrom_robinson16() -> Result<Code> {
    // x^3 + 2x^2 + x + 3 over Z4, cyclic length 7, then a check symbol
    let g = [3u8, 1, 2, 1];
    let mut words = Vec::with_capacity(256);
    for msg in 0..256u32 {
        let m: Vec<u8> = (0..4).map(|i| ((msg >> (2 * i)) & 3) as u8).collect();
        // m(x) g(x) mod x^7 - 1 over Z4
        let mut c = [0u8; 7];
        for (i, &mi) in m.iter().enumerate() {
            for (j, &gj) in g.iter().enumerate() {
                let pos = (i + j) % 7;
                c[pos] = (c[pos] + mi * gj) % 4;
            }
        }
        let sum: u32 = c.iter().map(|&v| v as u32).sum();
        let check = ((4 - sum % 4) % 4) as u8;
        // Gray map: 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10
        let gray = |s: u8| -> [u8; 2] {
            match s {
                0 => [0, 0],
                1 => [0, 1],
                2 => [1, 1],
                _ => [1, 0],
            }
        };
        let mut w = Vec::with_capacity(16);
        for &s in c.iter().chain(std::iter::once(&check)) {
            w.extend_from_slice(&gray(s));
        }
        words.push(w);
    }
    let code = Code::new(2, 16, words)?;
    if code.len() != 256 {
        return Err(Error::Internal("octacode span collapsed".into()));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::distance_distribution;
    use crate::exact::rat;

    fn counts(code: &Code) -> Vec<u64> {
        code.pair_counts()
    }

    #[test]
    fn hamming_families() {
        let h = hamming(2, 3).unwrap();
        assert_eq!((h.n, h.len()), (7, 16));
        assert_eq!(counts(&h), vec![16, 0, 0, 112, 112, 0, 0, 16]);

        let h3 = hamming(3, 2).unwrap();
        assert_eq!((h3.n, h3.len()), (4, 9));

        let h15 = hamming(2, 4).unwrap();
        assert_eq!((h15.n, h15.len()), (15, 2048));
    }

    #[test]
    fn simplex_constant_weight() {
        for (q, r) in [(2u32, 3usize), (3, 2), (5, 2)] {
            let s = simplex(q, r).unwrap();
            let w = (q as u64).pow(r as u32 - 1);
            let c = counts(&s);
            for (d, &cnt) in c.iter().enumerate().skip(1) {
                if cnt != 0 {
                    assert_eq!(d as u64, w, "q={q} r={r}");
                }
            }
            assert_eq!(s.len() as u64, (q as u64).pow(r as u32));
        }
    }

    #[test]
    fn hamming_simplex_duality() {
        // MacWilliams: the dual distribution of the Hamming code is the
        // simplex distribution
        let h = distance_distribution(&hamming(2, 3).unwrap()).unwrap();
        let s = distance_distribution(&simplex(2, 3).unwrap()).unwrap();
        assert_eq!(h.dual().unwrap(), s);
        assert_eq!(s.dual().unwrap(), h);
    }

    #[test]
    fn reed_solomon_is_mds() {
        for (q, n, d) in [(5u32, 4usize, 3usize), (5, 5, 4), (3, 3, 2), (7, 5, 4)] {
            let c = reed_solomon(q, n, d).unwrap();
            assert_eq!(c.len() as u64, (q as u64).pow((n - d + 1) as u32));
            let cnt = counts(&c);
            for (dist, &v) in cnt.iter().enumerate().skip(1) {
                assert!(v == 0 || dist >= d, "q={q} n={n} d={d}: weight {dist} present");
            }
            // MDS support is exactly {d..n}
            assert!(cnt[d] > 0);
        }
    }

    #[test]
    fn golay_binary() {
        let g = golay_binary23().unwrap();
        assert_eq!((g.n, g.len()), (23, 4096));
        let c = counts(&g);
        let mut expect = vec![0u64; 24];
        expect[0] = 4096;
        for (d, v) in [(7, 253), (8, 506), (11, 1288), (12, 1288), (15, 506), (16, 253), (23, 1)] {
            expect[d] = v * 4096;
        }
        assert_eq!(c, expect);

        let g24 = golay_binary24().unwrap();
        let c = counts(&g24);
        let mut expect = vec![0u64; 25];
        expect[0] = 4096;
        for (d, v) in [(8, 759), (12, 2576), (16, 759), (24, 1)] {
            expect[d] = v * 4096;
        }
        assert_eq!(c, expect);
    }

    #[test]
    fn golay_ternary() {
        let g = golay_ternary11().unwrap();
        assert_eq!((g.n, g.len()), (11, 729));
        let c = counts(&g);
        let mut expect = vec![0u64; 12];
        expect[0] = 729;
        for (d, v) in [(5, 132), (6, 132), (8, 330), (9, 110), (11, 24)] {
            expect[d] = v * 729;
        }
        assert_eq!(c, expect);

        let g12 = golay_ternary12().unwrap();
        let c = counts(&g12);
        let mut expect = vec![0u64; 13];
        expect[0] = 729;
        for (d, v) in [(6, 264), (9, 440), (12, 24)] {
            expect[d] = v * 729;
        }
        assert_eq!(c, expect);
    }

    #[test]
    fn hadamard_codes() {
        for order in [4usize, 8, 12, 16] {
            let c = hadamard_code(order).unwrap();
            assert_eq!((c.n, c.len()), (order, 2 * order));
            let cnt = counts(&c);
            for (d, &v) in cnt.iter().enumerate().skip(1) {
                if v != 0 {
                    assert!(d == order / 2 || d == order, "order {order}: distance {d}");
                }
            }
            assert_eq!(cnt[order], 2 * order as u64); // complement pairs
        }
    }

    #[test]
    fn conference_matrices() {
        for order in [6usize, 10, 14] {
            let c = conference_matrix(order).unwrap();
            // symmetric with zero diagonal
            for i in 0..order {
                assert_eq!(c[i][i], 0);
                for j in 0..order {
                    assert_eq!(c[i][j], c[j][i]);
                }
            }
        }
        assert!(conference_matrix(8).is_err());
    }

    #[test]
    fn nordstrom_robinson() {
        let nr = nordstrom_robinson16().unwrap();
        assert_eq!((nr.n, nr.len()), (16, 256));
        let d = distance_distribution(&nr).unwrap();
        let mut expect = vec![rat(0); 17];
        expect[0] = rat(1);
        expect[6] = rat(112);
        expect[8] = rat(30);
        expect[10] = rat(112);
        expect[16] = rat(1);
        assert_eq!(d.entries(), expect.as_slice());
    }
}
