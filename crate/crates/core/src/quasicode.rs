//! Quasicodes: feasible points of the Delsarte linear program, with
//! MacWilliams duality, supports, design strength, and energies.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_serde, PotentialFunction, Rat};
use crate::krawtchouk::{transform_matrix, KrawtchoukTable};

/// A feasible point of the Delsarte constraints: `A_0 = 1`, `A >= 0`,
/// `K A >= 0`. The size `N = sum A_i` is always derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasicode {
    pub q: u32,
    pub n: usize,
    #[serde(rename = "A", with = "rat_serde::vec")]
    a: Vec<Rat>,
}

/// Checks the four Delsarte constraint families exactly; the report lists
/// each violated constraint.
pub fn is_feasible(q: u32, n: usize, a: &[Rat]) -> Result<(bool, Vec<String>)> {
    if a.len() != n + 1 {
        return Err(Error::InvalidParameter(format!(
            "expected {} entries, got {}",
            n + 1,
            a.len()
        )));
    }
    let mut violations = Vec::new();
    if !a[0].is_one() {
        violations.push(format!("A_0 = {} (must be 1)", a[0]));
    }
    for (i, ai) in a.iter().enumerate().skip(1) {
        if ai.is_negative() {
            violations.push(format!("A_{i} = {ai} < 0"));
        }
    }
    let table = transform_matrix(n, q)?;
    for (j, v) in table.apply(a).iter().enumerate() {
        if v.is_negative() {
            violations.push(format!("(K A)_{j} = {v} < 0"));
        }
    }
    Ok((violations.is_empty(), violations))
}

impl Quasicode {
    /// Validates feasibility and wraps the vector.
    pub fn new(q: u32, n: usize, a: Vec<Rat>) -> Result<Self> {
        let (ok, violations) = is_feasible(q, n, &a)?;
        if !ok {
            return Err(Error::InfeasibleQuasicode(violations.join("; ")));
        }
        Ok(Self { q, n, a })
    }

    pub fn entries(&self) -> &[Rat] {
        &self.a
    }

    pub fn entry(&self, i: usize) -> &Rat {
        &self.a[i]
    }

    /// The size `N = sum_i A_i`.
    pub fn size(&self) -> Rat {
        self.a.iter().sum()
    }

    /// Size as an integer, when it is one.
    pub fn integer_size(&self) -> Option<BigInt> {
        let n = self.size();
        n.is_integer().then(|| n.to_integer())
    }

    pub fn table(&self) -> Result<std::sync::Arc<KrawtchoukTable>> {
        transform_matrix(self.n, self.q)
    }

    /// MacWilliams dual `(1/N) K a`; an involution with
    /// `|a| |dual(a)| = q^n`.
    pub fn dual(&self) -> Result<Quasicode> {
        let table = self.table()?;
        let size = self.size();
        if !size.is_positive() {
            return Err(Error::InfeasibleQuasicode("size must be positive".into()));
        }
        let a: Vec<Rat> = table.apply(&self.a).into_iter().map(|v| v / &size).collect();
        // duality preserves feasibility; validate anyway since it is cheap
        Quasicode::new(self.q, self.n, a)
    }

    /// `{i > 0 : A_i != 0}`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Support of the dual distribution.
    pub fn dual_support(&self) -> Result<BTreeSet<usize>> {
        Ok(self.dual()?.support())
    }

    /// Largest `t` such that the dual vanishes at `1..=t`
    /// (`n` when the dual support is empty).
    pub fn design_strength(&self) -> Result<usize> {
        let ds = self.dual_support()?;
        Ok(match ds.iter().next() {
            None => self.n,
            Some(&first) => first - 1,
        })
    }

    /// Inner product `sum_{i=0}^n f(i) A_i` (includes the `i = 0` term).
    pub fn qc_energy(&self, f: &PotentialFunction) -> Result<Rat> {
        if !f.covers(0, self.n as i64) {
            return Err(Error::InvalidParameter("potential must cover {0..n}".into()));
        }
        let mut acc = Rat::zero();
        for (i, ai) in self.a.iter().enumerate() {
            if !ai.is_zero() {
                acc += ai * f.value(i as i64)?;
            }
        }
        Ok(acc)
    }

    /// Energy in the code normalization: `sum_{i>=1} A_i f(i)`; accepts any
    /// potential covering `{1..n}`. This is the objective of the Delsarte
    /// linear program.
    pub fn energy(&self, f: &PotentialFunction) -> Result<Rat> {
        if !f.covers(1, self.n as i64) {
            return Err(Error::InvalidParameter("potential must cover {1..n}".into()));
        }
        let mut acc = Rat::zero();
        for (i, ai) in self.a.iter().enumerate().skip(1) {
            if !ai.is_zero() {
                acc += ai * f.value(i as i64)?;
            }
        }
        Ok(acc)
    }
}

/// Degree of the polynomial interpolating the tabulated values, i.e. the
/// largest `k` with a nonzero `k`-th difference.
fn tabulated_degree(f: &PotentialFunction) -> usize {
    let mut row = f.values.clone();
    let mut degree = 0;
    let mut k = 0;
    while row.len() > 1 {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        k += 1;
        if row.iter().any(|v| !v.is_zero()) {
            degree = k;
        }
    }
    degree
}

/// Verifies the design averaging identity for a polynomial `f` of degree at
/// most the design strength: the mean of `f` over the quasicode equals its
/// mean over the whole space.
pub fn design_average_check(a: &Quasicode, f: &PotentialFunction) -> Result<bool> {
    if !f.covers(0, a.n as i64) {
        return Err(Error::InvalidParameter("potential must cover {0..n}".into()));
    }
    let degree = tabulated_degree(f);
    let strength = a.design_strength()?;
    if degree > strength {
        return Err(Error::InvalidParameter(format!(
            "degree {degree} exceeds design strength {strength}; identity not guaranteed"
        )));
    }
    let lhs = a.qc_energy(f)? / a.size();
    let mut rhs = Rat::zero();
    for i in 0..=a.n {
        let w = crate::exact::binomial(a.n as i64, i as i64)
            * BigInt::from(a.q - 1).pow(i as u32);
        rhs += Rat::from_integer(w) * f.value(i as i64)?;
    }
    rhs /= Rat::from_integer(BigInt::from(a.q).pow(a.n as u32));
    Ok(lhs == rhs)
}
