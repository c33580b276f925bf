//! Krawtchouk polynomials, the transform matrix of the Hamming scheme, and
//! positive definiteness.
//!
//! `K_k(x; n, q) = sum_{j=0}^k (-1)^j (q-1)^{k-j} C(x,j) C(n-x,k-j)` with
//! polynomial binomials, so evaluation makes sense at any integer `x`. The
//! transform matrix `K` has rows indexed by the polynomial degree and
//! satisfies `K^2 = q^n I`, which is Fourier inversion for the scheme.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::exact::{binomial, make_potential, PotentialFunction, PotentialKind, Rat};

/// Evaluates `K_k(x; n, q)` from the defining sum.
pub fn krawtchouk_eval(k: usize, x: i64, n: usize, q: u32) -> Result<BigInt> {
    if k > n {
        return Err(Error::InvalidParameter(format!("degree {k} out of 0..={n}")));
    }
    if q < 2 {
        return Err(Error::InvalidParameter("alphabet size must be at least 2".into()));
    }
    Ok(krawtchouk_sum(k, x, n, q))
}

fn krawtchouk_sum(k: usize, x: i64, n: usize, q: u32) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for j in 0..=k as i64 {
        let mut term = qm1.pow((k as i64 - j) as u32);
        term *= binomial(x, j);
        term *= binomial(n as i64 - x, k as i64 - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The `(n+1) x (n+1)` Krawtchouk transform matrix for a given `(n, q)`;
/// `entry(j, i) = K_j(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukTable {
    pub q: u32,
    pub n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn entry(&self, j: usize, i: usize) -> &BigInt {
        &self.rows[j][i]
    }

    pub fn row(&self, j: usize) -> &[BigInt] {
        &self.rows[j]
    }

    /// `q^n` as a big integer.
    pub fn space_size(&self) -> BigInt {
        BigInt::from(self.q).pow(self.n as u32)
    }

    /// `K a` for a rational vector of length `n+1`.
    pub fn apply(&self, a: &[Rat]) -> Vec<Rat> {
        assert_eq!(a.len(), self.n + 1, "vector length must be n+1");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (kji, ai) in row.iter().zip(a) {
                    if !ai.is_zero() {
                        acc += Rat::from_integer(kji.clone()) * ai;
                    }
                }
                acc
            })
            .collect()
    }

    /// `K^t f` for a rational vector of length `n+1`.
    pub fn apply_transpose(&self, f: &[Rat]) -> Vec<Rat> {
        assert_eq!(f.len(), self.n + 1, "vector length must be n+1");
        (0..=self.n)
            .map(|i| {
                let mut acc = Rat::zero();
                for (k, fk) in f.iter().enumerate() {
                    if !fk.is_zero() {
                        acc += Rat::from_integer(self.rows[k][i].clone()) * fk;
                    }
                }
                acc
            })
            .collect()
    }
}

/// Builds (or fetches from the per-process cache) the transform matrix,
/// verifying its structural identities first.
///
/// Rows are filled by the three-term recurrence and then cross-checked
/// entry-by-entry against the defining sum, followed by `K^2 = q^n I`.
pub fn transform_matrix(n: usize, q: u32) -> Result<Arc<KrawtchoukTable>> {
    static CACHE: Lazy<Mutex<HashMap<(usize, u32), Arc<KrawtchoukTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));

    if n < 1 {
        return Err(Error::InvalidParameter("block length must be at least 1".into()));
    }
    if q < 2 {
        return Err(Error::InvalidParameter("alphabet size must be at least 2".into()));
    }
    if let Some(t) = CACHE.lock().unwrap().get(&(n, q)) {
        return Ok(Arc::clone(t));
    }

    let qm1 = BigInt::from(q - 1);
    let qi = BigInt::from(q);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::one(); n + 1]);
    if n >= 1 {
        let row1: Vec<BigInt> = (0..=n as i64)
            .map(|x| &qm1 * BigInt::from(n as i64) - &qi * BigInt::from(x))
            .collect();
        rows.push(row1);
    }
    for k in 1..n {
        // (k+1) K_{k+1}(x) = [k + (q-1)(n-k) - qx] K_k(x) - (q-1)(n-k+1) K_{k-1}(x)
        let kk = BigInt::from(k as i64);
        let tail = &qm1 * BigInt::from((n - k + 1) as i64);
        let mut next = Vec::with_capacity(n + 1);
        for x in 0..=n {
            let mid = &kk + &qm1 * BigInt::from((n - k) as i64) - &qi * BigInt::from(x as i64);
            let val = (mid * &rows[k][x] - &tail * &rows[k - 1][x]) / BigInt::from((k + 1) as i64);
            next.push(val);
        }
        rows.push(next);
    }

    // independent cross-check against the defining sum
    for (k, row) in rows.iter().enumerate() {
        for (x, val) in row.iter().enumerate() {
            let direct = krawtchouk_sum(k, x as i64, n, q);
            if &direct != val {
                return Err(Error::Internal(format!(
                    "recurrence disagrees with defining sum at K_{k}({x}; {n}, {q})"
                )));
            }
        }
    }

    let table = KrawtchoukTable { q, n, rows };
    verify_invariants(&table)?;
    let arc = Arc::new(table);
    CACHE.lock().unwrap().insert((n, q), Arc::clone(&arc));
    Ok(arc)
}

fn verify_invariants(t: &KrawtchoukTable) -> Result<()> {
    let n = t.n;
    let qn = t.space_size();
    // K^2 = q^n I
    for a in 0..=n {
        for b in 0..=n {
            let mut acc = BigInt::zero();
            for c in 0..=n {
                acc += t.entry(a, c) * t.entry(c, b);
            }
            let expect = if a == b { qn.clone() } else { BigInt::zero() };
            if acc != expect {
                return Err(Error::Internal(format!(
                    "K^2 != q^n I at ({a},{b}) for n={n}, q={}",
                    t.q
                )));
            }
        }
    }
    // row 0 all ones; column 0 is K_j(0) = (q-1)^j C(n,j)
    if t.row(0).iter().any(|v| !v.is_one()) {
        return Err(Error::Internal("row 0 of K is not all ones".into()));
    }
    let qm1 = BigInt::from(t.q - 1);
    for j in 0..=n {
        let expect = qm1.pow(j as u32) * binomial(n as i64, j as i64);
        if t.entry(j, 0) != &expect {
            return Err(Error::Internal(format!("K_{j}(0) != (q-1)^j C(n,j)")));
        }
    }
    // leading coefficient of K_s has sign (-1)^s:
    // delta^s K_s = s! * (leading coefficient) is a constant
    for s in 0..=n {
        let mut row: Vec<BigInt> = t.row(s).to_vec();
        for _ in 0..s {
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let lead = &row[0];
        let ok = if s % 2 == 0 { lead.is_positive() || s == 0 && lead.is_one() } else { lead.is_negative() };
        if !ok {
            return Err(Error::Internal(format!("leading coefficient of K_{s} has wrong sign")));
        }
        if row.iter().any(|v| v != lead) {
            return Err(Error::Internal(format!("K_{s} is not a degree-{s} polynomial")));
        }
    }
    Ok(())
}

/// Krawtchouk coefficients of `h` on `{0..n}`: the unique `c` with
/// `h(i) = sum_j c_j K_j(i)`, computed as `c = K^t h / q^n`.
pub fn krawtchouk_coefficients(h: &PotentialFunction, table: &KrawtchoukTable) -> Result<Vec<Rat>> {
    if h.domain_start != 0 || h.values.len() != table.n + 1 {
        return Err(Error::InvalidParameter(format!(
            "function must be tabulated on {{0..{}}}",
            table.n
        )));
    }
    let qn = Rat::from_integer(table.space_size());
    // q^n c_j = sum_i h(i) K_i(j)
    let c: Vec<Rat> = (0..=table.n)
        .map(|j| {
            let mut acc = Rat::zero();
            for (i, hi) in h.values.iter().enumerate() {
                if !hi.is_zero() {
                    acc += hi * Rat::from_integer(table.entry(i, j).clone());
                }
            }
            acc / &qn
        })
        .collect();
    Ok(c)
}

/// Reconstructs the tabulation `h(i) = sum_j c_j K_j(i)` from coefficients.
pub fn from_krawtchouk_coefficients(c: &[Rat], table: &KrawtchoukTable) -> PotentialFunction {
    assert_eq!(c.len(), table.n + 1);
    let values: Vec<Rat> = (0..=table.n)
        .map(|i| {
            let mut acc = Rat::zero();
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    acc += cj * Rat::from_integer(table.entry(j, i).clone());
                }
            }
            acc
        })
        .collect();
    PotentialFunction { domain_start: 0, values }
}

/// True iff all Krawtchouk coefficients of `h` are nonnegative.
pub fn is_positive_definite(h: &PotentialFunction, table: &KrawtchoukTable) -> Result<bool> {
    Ok(krawtchouk_coefficients(h, table)?
        .iter()
        .all(|c| !c.is_negative()))
}

/// The fundamental potential `f_j(x) = C(n-x, j)` on `{0..n}`.
pub fn fundamental_potential(j: usize, n: usize) -> Result<PotentialFunction> {
    make_potential(&PotentialKind::Fundamental { j }, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn eval_examples() {
        for x in [-3, 0, 2, 9] {
            assert_eq!(krawtchouk_eval(0, x, 5, 2).unwrap(), BigInt::one());
        }
        // K_1(x) = (q-1)n - qx
        assert_eq!(krawtchouk_eval(1, 3, 7, 2).unwrap(), BigInt::from(1));
        assert_eq!(krawtchouk_eval(2, 1, 4, 2).unwrap(), BigInt::zero());
        assert!(krawtchouk_eval(6, 0, 5, 2).is_err());
    }

    #[test]
    fn transform_small_cases() {
        let t = transform_matrix(1, 2).unwrap();
        assert_eq!(t.row(0), &[BigInt::one(), BigInt::one()]);
        assert_eq!(t.row(1), &[BigInt::one(), BigInt::from(-1)]);

        let t = transform_matrix(2, 2).unwrap();
        assert_eq!(
            t.row(2),
            &[BigInt::one(), BigInt::from(-1), BigInt::one()]
        );
    }

    #[test]
    fn orthogonality_relation() {
        for (n, q) in [(5usize, 2u32), (4, 3), (3, 5)] {
            let t = transform_matrix(n, q).unwrap();
            let qn = Rat::from_integer(t.space_size());
            for j in 0..=n {
                for k in 0..=n {
                    let mut acc = Rat::zero();
                    for i in 0..=n {
                        let w = Rat::from_integer(
                            binomial(n as i64, i as i64) * BigInt::from(q - 1).pow(i as u32),
                        );
                        acc += w * Rat::from_integer(t.entry(j, i) * t.entry(k, i));
                    }
                    acc /= &qn;
                    let expect = if j == k {
                        Rat::from_integer(
                            binomial(n as i64, j as i64) * BigInt::from(q - 1).pow(j as u32),
                        )
                    } else {
                        Rat::zero()
                    };
                    assert_eq!(acc, expect, "n={n} q={q} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn generating_function_identity() {
        // sum_k K_k(i) z^k = (1 + (q-1)z)^{n-i} (1-z)^i as polynomials in z
        for (n, q) in [(6usize, 2u32), (4, 3)] {
            let t = transform_matrix(n, q).unwrap();
            for i in 0..=n {
                // multiply out the right side
                let mut coeffs = vec![BigInt::zero(); n + 1];
                coeffs[0] = BigInt::one();
                let mul_linear = |coeffs: &mut Vec<BigInt>, c0: i64, c1: i64| {
                    // multiply by (c0 + c1 z)
                    let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                    for (d, v) in coeffs.iter().enumerate() {
                        next[d] += v * BigInt::from(c0);
                        next[d + 1] += v * BigInt::from(c1);
                    }
                    *coeffs = next;
                };
                for _ in 0..n - i {
                    mul_linear(&mut coeffs, 1, (q - 1) as i64);
                }
                for _ in 0..i {
                    mul_linear(&mut coeffs, 1, -1);
                }
                for k in 0..=n {
                    assert_eq!(&coeffs[k], t.entry(k, i), "n={n} q={q} i={i} k={k}");
                }
            }
        }
    }

    #[test]
    fn coefficients_examples() {
        let n = 5;
        let t = transform_matrix(n, 2).unwrap();
        let ones = PotentialFunction::new(0, vec![rat(1); n + 1]).unwrap();
        let c = krawtchouk_coefficients(&ones, &t).unwrap();
        assert_eq!(c[0], rat(1));
        assert!(c[1..].iter().all(|x| x.is_zero()));

        // h = K_2 row as a function
        let h = PotentialFunction::new(
            0,
            t.row(2).iter().map(|v| Rat::from_integer(v.clone())).collect(),
        )
        .unwrap();
        let c = krawtchouk_coefficients(&h, &t).unwrap();
        for (j, cj) in c.iter().enumerate() {
            assert_eq!(*cj, if j == 2 { rat(1) } else { rat(0) });
        }
    }

    #[test]
    fn fundamental_duality_identity() {
        // K^t f_j = q^{n-j} f_{n-j}, so the coefficients of f_j are
        // q^{-j} C(n-i, n-j)
        for (n, q) in [(6usize, 2u32), (5, 3)] {
            let t = transform_matrix(n, q).unwrap();
            for j in 0..=n {
                let fj = fundamental_potential(j, n).unwrap();
                let c = krawtchouk_coefficients(&fj, &t).unwrap();
                let qj = Rat::from_integer(BigInt::from(q).pow(j as u32));
                for i in 0..=n {
                    let expect =
                        Rat::from_integer(binomial(n as i64 - i as i64, (n - j) as i64)) / &qj;
                    assert_eq!(c[i], expect, "n={n} q={q} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn positive_definite_linear_threshold() {
        // a - x is positive definite iff a >= (q-1)n/q
        let n = 8;
        let t = transform_matrix(n, 2).unwrap();
        let linear = |a: Rat| {
            PotentialFunction::new(0, (0..=n as i64).map(|x| &a - rat(x)).collect()).unwrap()
        };
        assert!(is_positive_definite(&linear(rat(4)), &t).unwrap());
        assert!(!is_positive_definite(&linear(rat(3)), &t).unwrap());
        assert!(is_positive_definite(&linear(ratio(9, 2)), &t).unwrap());
    }

    #[test]
    fn coefficient_round_trip() {
        let n = 7;
        let t = transform_matrix(n, 3).unwrap();
        let h = PotentialFunction::new(
            0,
            (0..=n as i64).map(|x| ratio(3 * x * x - 5 * x + 2, 7)).collect(),
        )
        .unwrap();
        let c = krawtchouk_coefficients(&h, &t).unwrap();
        let back = from_krawtchouk_coefficients(&c, &t);
        assert_eq!(h, back);
    }
}
