//! Exact rational arithmetic, binomial coefficients, finite-difference
//! calculus, and the cone of completely monotonic potential functions.
//!
//! Everything here (and everywhere else in this crate) computes over
//! arbitrary-precision rationals. Optimality and complementary-slackness
//! checks are equality conditions, so no rounding is ever acceptable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number. Always reduced; denominator always positive.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form `p/q` (the denominator is printed even when 1, so
/// the representation is uniform across JSON reports).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Serde adapter: rationals in JSON are `"p/q"` strings.
pub mod rat_serde {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        rat_from_str(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &[Rat],
            ser: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            ser.collect_seq(v.iter().map(rat_to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            de: D,
        ) -> std::result::Result<Vec<Rat>, D::Error> {
            let strings = Vec::<String>::deserialize(de)?;
            strings
                .iter()
                .map(|s| rat_from_str(s).map_err(de::Error::custom))
                .collect()
        }
    }
}

/// Binomial coefficient as a polynomial in its first argument:
/// `binomial(m, k) = m(m-1)...(m-k+1) / k!` for `k >= 0`, and `0` for `k < 0`.
///
/// For `0 <= m` this agrees with the combinatorial count (in particular it
/// vanishes for `k > m`), and for negative `m` it is the falling-factorial
/// extension, which is what polynomial evaluation of Krawtchouk sums needs.
pub fn binomial(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(m - i);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i);
    }
    num / den
}

/// A potential function tabulated on a contiguous integer domain
/// `{domain_start, ..., domain_start + values.len() - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialFunction {
    pub domain_start: i64,
    #[serde(with = "rat_serde::vec")]
    pub values: Vec<Rat>,
}

/// Construction kinds accepted by [`make_potential`].
#[derive(Debug, Clone)]
pub enum PotentialKind {
    /// `f(r) = r^{-alpha}` on `{1..n}`; the exponent is a positive integer so
    /// values stay rational.
    InversePower { alpha: u32 },
    /// `f(r) = gamma^r` on `{1..n}` with `gamma` in `(0, 1]`.
    Geometric { gamma: Rat },
    /// `f_j(x) = C(n-x, j)` on `{0..n}`.
    Fundamental { j: usize },
}

impl PotentialFunction {
    pub fn new(domain_start: i64, values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DomainTooSmall("potential function needs at least one value".into()));
        }
        if domain_start < 0 {
            return Err(Error::InvalidParameter("domain must start at a nonnegative integer".into()));
        }
        Ok(Self { domain_start, values })
    }

    pub fn domain_end(&self) -> i64 {
        self.domain_start + self.values.len() as i64 - 1
    }

    /// Value at integer point `x`; errors if `x` is outside the domain.
    pub fn value(&self, x: i64) -> Result<&Rat> {
        if x < self.domain_start || x > self.domain_end() {
            return Err(Error::InvalidParameter(format!(
                "point {x} outside domain {{{}..{}}}",
                self.domain_start,
                self.domain_end()
            )));
        }
        Ok(&self.values[(x - self.domain_start) as usize])
    }

    /// True when the domain covers `{lo..hi}`.
    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        self.domain_start <= lo && self.domain_end() >= hi
    }

    /// The full table of iterated forward differences: row `k` holds
    /// `delta^k f` on `{a .. b-k}`.
    fn difference_table(&self) -> Vec<Vec<Rat>> {
        let mut rows = vec![self.values.clone()];
        while rows.last().unwrap().len() > 1 {
            let prev = rows.last().unwrap();
            let next: Vec<Rat> = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
            rows.push(next);
        }
        rows
    }

    /// Minimal `f(0)` such that prepending it keeps the function completely
    /// monotonic on `{0..b}`. The sign conditions at 0 are linear in the new
    /// value, so the minimum is the largest lower bound among them (and 0,
    /// since completely monotonic functions are nonnegative).
    pub fn extended_to_zero(&self) -> Result<PotentialFunction> {
        if self.domain_start == 0 {
            return Ok(self.clone());
        }
        if self.domain_start != 1 {
            return Err(Error::InvalidParameter(
                "extension to zero expects a domain starting at 1".into(),
            ));
        }
        // (-1)^k delta^k f(0) >= 0  <=>  f(0) >= sum_{j=1}^k (-1)^{j+1} C(k,j) f(j)
        let m = self.values.len() as i64; // f given on {1..m}
        let mut bound = Rat::zero();
        for k in 1..=m {
            let mut lower = Rat::zero();
            for j in 1..=k {
                let c = Rat::from_integer(binomial(k, j));
                let term = c * self.value(j)?;
                if j % 2 == 1 {
                    lower += term;
                } else {
                    lower -= term;
                }
            }
            if lower > bound {
                bound = lower;
            }
        }
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.push(bound);
        values.extend(self.values.iter().cloned());
        PotentialFunction::new(0, values)
    }
}

/// Forward difference `delta f(x) = f(x+1) - f(x)` on the shrunken domain.
pub fn finite_difference(f: &PotentialFunction) -> Result<PotentialFunction> {
    if f.values.len() < 2 {
        return Err(Error::DomainTooSmall("finite difference needs at least two values".into()));
    }
    let values = f.values.windows(2).map(|w| &w[1] - &w[0]).collect();
    PotentialFunction::new(f.domain_start, values)
}

/// True iff `(-1)^k delta^k f(i) >= 0` for every `k >= 0` and every `i` in range.
pub fn is_completely_monotonic(f: &PotentialFunction) -> bool {
    for (k, row) in f.difference_table().iter().enumerate() {
        let want_nonneg = k % 2 == 0;
        for v in row {
            if (want_nonneg && v.is_negative()) || (!want_nonneg && v.is_positive()) {
                return false;
            }
        }
    }
    true
}

/// True iff `delta^k f(i) >= 0` for every `k >= 0` and every `i` in range.
pub fn is_absolutely_monotonic(f: &PotentialFunction) -> bool {
    f.difference_table()
        .iter()
        .all(|row| row.iter().all(|v| !v.is_negative()))
}

/// Decomposes `f` on `{0..n}` over the fundamental potentials:
/// returns `(d_0, ..., d_n)` with `f(x) = sum_j d_j C(n-x, j)` exactly.
///
/// This is the discrete Taylor expansion applied to `g(x) = f(n-x)`:
/// `d_j = delta^j g(0)`. All coefficients are nonnegative exactly when `f`
/// is completely monotonic.
pub fn cm_decompose(f: &PotentialFunction) -> Result<Vec<Rat>> {
    if f.domain_start != 0 {
        return Err(Error::InvalidParameter("cm_decompose expects a {0..n} domain".into()));
    }
    let reversed = PotentialFunction::new(0, f.values.iter().rev().cloned().collect())?;
    let table = reversed.difference_table();
    Ok(table.into_iter().map(|row| row[0].clone()).collect())
}

/// Builds one of the standard potential families; see [`PotentialKind`].
pub fn make_potential(kind: &PotentialKind, n: usize) -> Result<PotentialFunction> {
    if n == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    match kind {
        PotentialKind::InversePower { alpha } => {
            if *alpha == 0 {
                return Err(Error::InvalidParameter("inverse-power exponent must be positive".into()));
            }
            let values = (1..=n as i64)
                .map(|r| {
                    let mut den = BigInt::one();
                    for _ in 0..*alpha {
                        den *= BigInt::from(r);
                    }
                    Rat::new(BigInt::one(), den)
                })
                .collect();
            PotentialFunction::new(1, values)
        }
        PotentialKind::Geometric { gamma } => {
            if !gamma.is_positive() || gamma > &Rat::one() {
                return Err(Error::InvalidParameter("geometric ratio must lie in (0, 1]".into()));
            }
            let mut values = Vec::with_capacity(n);
            let mut cur = gamma.clone();
            for _ in 0..n {
                values.push(cur.clone());
                cur *= gamma;
            }
            PotentialFunction::new(1, values)
        }
        PotentialKind::Fundamental { j } => {
            if *j > n {
                return Err(Error::InvalidParameter(format!("fundamental index {j} out of 0..={n}")));
            }
            let values = (0..=n as i64)
                .map(|x| Rat::from_integer(binomial(n as i64 - x, *j as i64)))
                .collect();
            PotentialFunction::new(0, values)
        }
    }
}

/// Parses the CLI/JSON potential notation: `fundamental:j`, `power:alpha`,
/// `geometric:p/q`.
pub fn parse_potential_spec(spec: &str) -> Result<PotentialKind> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("potential spec {spec:?} needs the form kind:arg")))?;
    match kind {
        "fundamental" => Ok(PotentialKind::Fundamental {
            j: arg.parse().map_err(|_| Error::Parse(format!("bad index {arg:?}")))?,
        }),
        "power" => Ok(PotentialKind::InversePower {
            alpha: arg.parse().map_err(|_| Error::Parse(format!("bad exponent {arg:?}")))?,
        }),
        "geometric" => Ok(PotentialKind::Geometric { gamma: rat_from_str(arg)? }),
        other => Err(Error::Parse(format!("unknown potential kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(start: i64, vals: &[i64]) -> PotentialFunction {
        PotentialFunction::new(start, vals.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(4, -1), BigInt::zero());
        // falling-factorial extension used by polynomial Krawtchouk evaluation
        assert_eq!(binomial(-1, 2), BigInt::one());
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
    }

    #[test]
    fn finite_difference_examples() {
        let c = pf(0, &[1, 1, 1]);
        assert_eq!(finite_difference(&c).unwrap(), pf(0, &[0, 0]));
        // f(x) = C(3-x, 2) on {0..3}
        let f = pf(0, &[3, 1, 0, 0]);
        assert_eq!(finite_difference(&f).unwrap(), pf(0, &[-2, -1, 0]));
        let g = pf(0, &[8, 4, 2, 1]);
        assert_eq!(finite_difference(&g).unwrap(), pf(0, &[-4, -2, -1]));
        assert!(finite_difference(&pf(0, &[1])).is_err());
    }

    #[test]
    fn complete_monotonicity_examples() {
        let inv = make_potential(&PotentialKind::InversePower { alpha: 1 }, 7).unwrap();
        assert!(is_completely_monotonic(&inv));
        // f_2 on {0..6}
        let f2 = make_potential(&PotentialKind::Fundamental { j: 2 }, 6).unwrap();
        assert!(is_completely_monotonic(&f2));
        assert!(!is_completely_monotonic(&pf(0, &[0, 1, 0])));
    }

    #[test]
    fn absolute_monotonicity_examples() {
        // g_2(x) = C(x,2) on {0..5}
        let g2 = PotentialFunction::new(
            0,
            (0..=5).map(|x| Rat::from_integer(binomial(x, 2))).collect(),
        )
        .unwrap();
        assert!(is_absolutely_monotonic(&g2));
        assert!(is_absolutely_monotonic(&pf(0, &[1, 1, 1])));
        assert!(!is_absolutely_monotonic(&pf(0, &[1, 0])));
    }

    #[test]
    fn cm_decompose_basis_elements() {
        let n = 6;
        let f3 = make_potential(&PotentialKind::Fundamental { j: 3 }, n).unwrap();
        let d = cm_decompose(&f3).unwrap();
        for (j, dj) in d.iter().enumerate() {
            assert_eq!(*dj, if j == 3 { rat(1) } else { rat(0) });
        }
        let ones = PotentialFunction::new(0, vec![rat(1); n + 1]).unwrap();
        let d = cm_decompose(&ones).unwrap();
        assert_eq!(d[0], rat(1));
        assert!(d[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn cm_decompose_geometric_nonnegative_and_reconstructs() {
        // f(r) = 2^{-r} on {1..3}, extended minimally to {0..3}
        let f = make_potential(&PotentialKind::Geometric { gamma: ratio(1, 2) }, 3).unwrap();
        let f0 = f.extended_to_zero().unwrap();
        assert!(is_completely_monotonic(&f0));
        let n = f0.values.len() - 1;
        let d = cm_decompose(&f0).unwrap();
        assert!(d.iter().all(|x| !x.is_negative()));
        // reconstruction sum_j d_j C(n-x, j) == f0(x)
        for x in 0..=n as i64 {
            let mut acc = Rat::zero();
            for (j, dj) in d.iter().enumerate() {
                acc += dj * Rat::from_integer(binomial(n as i64 - x, j as i64));
            }
            assert_eq!(&acc, f0.value(x).unwrap());
        }
    }

    #[test]
    fn minimal_zero_extension_is_minimal() {
        let f = make_potential(&PotentialKind::InversePower { alpha: 2 }, 4).unwrap();
        let ext = f.extended_to_zero().unwrap();
        assert!(is_completely_monotonic(&ext));
        // one notch below the chosen f(0) must break complete monotonicity
        let eps = ratio(1, 1_000_000);
        let mut smaller = ext.clone();
        smaller.values[0] -= eps;
        assert!(!is_completely_monotonic(&smaller));
    }

    #[test]
    fn make_potential_examples() {
        let f1 = make_potential(&PotentialKind::Fundamental { j: 1 }, 7).unwrap();
        assert_eq!(f1.domain_start, 0);
        assert_eq!(f1.values, (0..=7).rev().map(rat).collect::<Vec<_>>());

        let g = make_potential(&PotentialKind::Geometric { gamma: ratio(1, 2) }, 3).unwrap();
        assert_eq!(g.values, vec![ratio(1, 2), ratio(1, 4), ratio(1, 8)]);

        let p = make_potential(&PotentialKind::InversePower { alpha: 2 }, 4).unwrap();
        assert_eq!(p.values, vec![rat(1), ratio(1, 4), ratio(1, 9), ratio(1, 16)]);

        assert!(make_potential(&PotentialKind::Geometric { gamma: rat(2) }, 3).is_err());
        assert!(make_potential(&PotentialKind::InversePower { alpha: 0 }, 3).is_err());
        assert!(make_potential(&PotentialKind::Fundamental { j: 9 }, 3).is_err());
    }

    #[test]
    fn cm_iff_reversed_absolutely_monotonic() {
        let cases = [pf(0, &[9, 4, 2, 1, 1]), pf(0, &[1, 2, 3]), pf(0, &[5, 5, 5])];
        for f in cases {
            let rev = PotentialFunction::new(0, f.values.iter().rev().cloned().collect()).unwrap();
            assert_eq!(is_completely_monotonic(&f), is_absolutely_monotonic(&rev));
        }
    }

    #[test]
    fn cm_iff_nonnegative_decomposition() {
        // both directions of the basis characterization, on a sweep of
        // mixed-sign tables
        let n = 5i64;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 6
        };
        let mut saw_cm = 0;
        let mut saw_non_cm = 0;
        for _ in 0..300 {
            let f = PotentialFunction::new(0, (0..=n).map(|_| rat(next())).collect()).unwrap();
            let d = cm_decompose(&f).unwrap();
            let nonneg = d.iter().all(|x| !x.is_negative());
            assert_eq!(is_completely_monotonic(&f), nonneg);
            if nonneg {
                saw_cm += 1;
            } else {
                saw_non_cm += 1;
            }
        }
        assert!(saw_non_cm > 0);
        // explicit members of the cone round out the positive side
        for j in 0..=n as usize {
            let f = make_potential(&PotentialKind::Fundamental { j }, n as usize).unwrap();
            assert!(cm_decompose(&f).unwrap().iter().all(|x| !x.is_negative()));
            saw_cm += 1;
        }
        assert!(saw_cm > 0);
    }

    #[test]
    fn nonnegative_combinations_stay_monotonic() {
        let f = make_potential(&PotentialKind::InversePower { alpha: 1 }, 5)
            .unwrap()
            .extended_to_zero()
            .unwrap();
        let g = make_potential(&PotentialKind::Fundamental { j: 2 }, 5).unwrap();
        for (a, b) in [(1i64, 1i64), (3, 2), (0, 7), (5, 0)] {
            let combo = PotentialFunction::new(
                0,
                f.values
                    .iter()
                    .zip(&g.values)
                    .map(|(x, y)| rat(a) * x + rat(b) * y)
                    .collect(),
            )
            .unwrap();
            assert!(is_completely_monotonic(&combo), "{a} {b}");
        }
    }

    #[test]
    fn potential_spec_parsing() {
        assert!(matches!(
            parse_potential_spec("fundamental:3").unwrap(),
            PotentialKind::Fundamental { j: 3 }
        ));
        assert!(matches!(
            parse_potential_spec("power:2").unwrap(),
            PotentialKind::InversePower { alpha: 2 }
        ));
        match parse_potential_spec("geometric:1/3").unwrap() {
            PotentialKind::Geometric { gamma } => assert_eq!(gamma, ratio(1, 3)),
            _ => panic!(),
        }
        assert!(parse_potential_spec("power").is_err());
        assert!(parse_potential_spec("mystery:1").is_err());
    }

    #[test]
    fn rat_string_round_trip() {
        for s in ["3/4", "-7/2", "5", "0/9"] {
            let r = rat_from_str(s).unwrap();
            let back = rat_from_str(&rat_to_string(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("abc").is_err());
    }
}
