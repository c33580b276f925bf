//! The Delsarte linear program over exact rationals: minimum-energy bounds,
//! the Ashikhmin-Simonis strengthening, dual certificates, the LP universal
//! optimality decision, and universally optimal quasicodes.

pub mod simplex;

pub use simplex::{solve_lp, LinearProgramInstance, LpOutcome, LpSolution, PreparedLp};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_serde, PotentialFunction, Rat};
use crate::krawtchouk::{fundamental_potential, transform_matrix, KrawtchoukTable};
use crate::quasicode::Quasicode;

/// A verified witness that every quasicode of size `N` has `f`-energy at
/// least `bound = N c_0 - h(0)`: an auxiliary function `h <= f` on `{1..n}`
/// whose Krawtchouk coefficients `c_j` are nonnegative for `j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    /// Values of `h` on `{0..n}`.
    #[serde(with = "rat_serde::vec")]
    pub h: Vec<Rat>,
    /// Krawtchouk coefficients of `h`.
    #[serde(with = "rat_serde::vec")]
    pub c: Vec<Rat>,
    #[serde(with = "rat_serde")]
    pub bound: Rat,
    /// Points `i >= 1` where `h(i) = f(i)`.
    pub equality_support: Vec<usize>,
    /// Indices `j >= 1` with `c_j = 0`.
    #[serde(rename = "zero_dual")]
    pub zero_dual_indices: Vec<usize>,
}

impl DualCertificate {
    pub fn h_function(&self) -> PotentialFunction {
        PotentialFunction { domain_start: 0, values: self.h.clone() }
    }

    /// Assembles and fully cross-checks a certificate from coefficients.
    pub fn from_coefficients(
        c: Vec<Rat>,
        table: &KrawtchoukTable,
        f: &PotentialFunction,
        size: &Rat,
    ) -> Result<Self> {
        let n = table.n;
        if c.len() != n + 1 {
            return Err(Error::InvalidParameter("coefficient vector must have length n+1".into()));
        }
        if c.iter().skip(1).any(|v| v.is_negative()) {
            return Err(Error::InvalidParameter("c_j < 0 for some j >= 1".into()));
        }
        let h = crate::krawtchouk::from_krawtchouk_coefficients(&c, table);
        let mut equality_support = Vec::new();
        for i in 1..=n {
            let hi = h.value(i as i64)?;
            let fi = f.value(i as i64)?;
            if hi > fi {
                return Err(Error::InvalidParameter(format!("h({i}) > f({i})")));
            }
            if hi == fi {
                equality_support.push(i);
            }
        }
        let zero_dual_indices = (1..=n).filter(|&j| c[j].is_zero()).collect();
        let bound = size * &c[0] - &h.values[0];
        Ok(Self { h: h.values, c, bound, equality_support, zero_dual_indices })
    }
}

/// Checks every certificate invariant plus both complementary slackness
/// conditions against `a`; true iff the certificate proves that `a`
/// attains the bound.
pub fn verify_certificate(a: &Quasicode, f: &PotentialFunction, cert: &DualCertificate) -> Result<bool> {
    let n = a.n;
    if cert.h.len() != n + 1 || cert.c.len() != n + 1 {
        return Err(Error::InvalidParameter("certificate dimensions do not match the quasicode".into()));
    }
    if !f.covers(1, n as i64) {
        return Err(Error::InvalidParameter("potential must cover {1..n}".into()));
    }
    let table = a.table()?;
    // c_j >= 0 for j >= 1
    if cert.c.iter().skip(1).any(|v| v.is_negative()) {
        return Ok(false);
    }
    // h is exactly the Krawtchouk expansion of c
    let h = crate::krawtchouk::from_krawtchouk_coefficients(&cert.c, &table);
    if h.values != cert.h {
        return Ok(false);
    }
    // h <= f on {1..n}, with the recorded equality set
    let mut equality = Vec::new();
    for i in 1..=n {
        let hi = &cert.h[i];
        let fi = f.value(i as i64)?;
        if hi > fi {
            return Ok(false);
        }
        if hi == fi {
            equality.push(i);
        }
    }
    if equality != cert.equality_support {
        return Ok(false);
    }
    let zero_dual: Vec<usize> = (1..=n).filter(|&j| cert.c[j].is_zero()).collect();
    if zero_dual != cert.zero_dual_indices {
        return Ok(false);
    }
    if cert.bound != a.size() * &cert.c[0] - &cert.h[0] {
        return Ok(false);
    }
    // complementary slackness against the actual supports
    if !a.support().iter().all(|i| cert.equality_support.contains(i)) {
        return Ok(false);
    }
    if !a.dual_support()?.iter().all(|j| cert.zero_dual_indices.contains(j)) {
        return Ok(false);
    }
    // and the bound is attained
    Ok(a.energy(f)? == cert.bound)
}

/// A prepared Delsarte program for fixed `(q, n, N)`, reusable across
/// objectives: variables `A_1..A_n`, constraints `sum_i K_j(i) A_i >= 0`
/// (with `A_0 = 1` substituted) and `sum_{i>=1} A_i = N - 1`.
pub struct DelsarteLp {
    table: std::sync::Arc<KrawtchoukTable>,
    size: Rat,
    prepared: PreparedLp,
}

fn objective_from(f: &PotentialFunction, n: usize) -> Result<Vec<Rat>> {
    if !f.covers(1, n as i64) {
        return Err(Error::InvalidParameter("potential must cover {1..n}".into()));
    }
    (1..=n as i64).map(|i| f.value(i).cloned()).collect()
}

impl DelsarteLp {
    pub fn new(q: u32, n: usize, size: &Rat) -> Result<Self> {
        let table = transform_matrix(n, q)?;
        if size < &Rat::one() || size > &Rat::from_integer(table.space_size()) {
            return Err(Error::InvalidParameter(format!(
                "size must lie in [1, q^n], got {size}"
            )));
        }
        let mut ge_rows = Vec::with_capacity(n);
        for j in 1..=n {
            let row: Vec<Rat> =
                (1..=n).map(|i| Rat::from_integer(table.entry(j, i).clone())).collect();
            let rhs = -Rat::from_integer(table.entry(j, 0).clone());
            ge_rows.push((row, rhs));
        }
        let eq_rows = vec![(vec![Rat::one(); n], size - Rat::one())];
        let instance = LinearProgramInstance {
            num_vars: n,
            objective: vec![Rat::zero(); n],
            eq_rows,
            ge_rows,
        };
        let prepared = PreparedLp::new(instance)?.ok_or_else(|| {
            Error::Internal("Delsarte program must be feasible for sizes in [1, q^n]".into())
        })?;
        Ok(Self { table: table.clone(), size: size.clone(), prepared })
    }

    pub fn table(&self) -> &KrawtchoukTable {
        &self.table
    }

    /// Minimum `sum_{i>=1} A_i f(i)` over the feasible region, with an
    /// optimal quasicode and a verified dual certificate whose bound equals
    /// the optimum.
    pub fn min_energy(&mut self, f: &PotentialFunction) -> Result<(Rat, Quasicode, DualCertificate)> {
        let n = self.table.n;
        let objective = objective_from(f, n)?;
        let outcome = self.prepared.minimize(&objective)?;
        let sol = match outcome {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => {
                return Err(Error::Internal("prepared program became infeasible".into()))
            }
            LpOutcome::Unbounded => {
                return Err(Error::Internal("energy program cannot be unbounded".into()))
            }
        };
        let mut a = Vec::with_capacity(n + 1);
        a.push(Rat::one());
        a.extend(sol.primal.iter().cloned());
        let optimizer = Quasicode::new(self.table.q, n, a)?;

        // dual variables -> Krawtchouk coefficients of the auxiliary function
        let mut c = Vec::with_capacity(n + 1);
        c.push(sol.dual_eq[0].clone());
        c.extend(sol.dual_ge.iter().cloned());
        let cert = DualCertificate::from_coefficients(c, &self.table, &f.clone_onto_zero(n)?, &self.size)?;
        if cert.bound != sol.value {
            return Err(Error::Internal("certificate bound differs from the LP optimum".into()));
        }
        Ok((sol.value, optimizer, cert))
    }
}

impl PotentialFunction {
    /// View of `f` on `{0..n}` for certificate comparisons: values at
    /// `{1..n}` are preserved; a missing `f(0)` is irrelevant to
    /// certificates, which only compare `h <= f` at `i >= 1`, so any
    /// completely monotonic extension works. The minimal one is used.
    fn clone_onto_zero(&self, n: usize) -> Result<PotentialFunction> {
        if self.domain_start == 0 {
            return Ok(self.clone());
        }
        let restricted = PotentialFunction::new(
            1,
            (1..=n as i64).map(|i| self.value(i).cloned()).collect::<Result<_>>()?,
        )?;
        restricted.extended_to_zero()
    }
}

/// Delsarte minimum energy at rational size `N >= 1`; returns the exact
/// optimum, an optimal quasicode, and a verified dual certificate.
pub fn delsarte_min_energy(
    q: u32,
    n: usize,
    size: &Rat,
    f: &PotentialFunction,
) -> Result<(Rat, Quasicode, DualCertificate)> {
    DelsarteLp::new(q, n, size)?.min_energy(f)
}

/// The Ashikhmin-Simonis strengthened program, valid for integer sizes not
/// divisible by `q`: adds `N sum_i A_i K_j(i) >= (q-1)^j C(n,j)` for all j.
pub struct AshikhminSimonisLp {
    table: std::sync::Arc<KrawtchoukTable>,
    prepared: PreparedLp,
}

impl AshikhminSimonisLp {
    pub fn new(q: u32, n: usize, size: &BigInt) -> Result<Self> {
        let table = transform_matrix(n, q)?;
        if size.mod_floor(&BigInt::from(q)).is_zero() {
            return Err(Error::InvalidParameter(format!(
                "the strengthened constraints require q to not divide N (q={q}, N={size})"
            )));
        }
        if size < &BigInt::one() || size > &table.space_size() {
            return Err(Error::InvalidParameter("size must lie in [1, q^n]".into()));
        }
        let rsize = Rat::from_integer(size.clone());
        let mut ge_rows = Vec::with_capacity(2 * n + 1);
        for j in 1..=n {
            let row: Vec<Rat> =
                (1..=n).map(|i| Rat::from_integer(table.entry(j, i).clone())).collect();
            let rhs = -Rat::from_integer(table.entry(j, 0).clone());
            ge_rows.push((row, rhs));
        }
        // with A_0 = 1: sum_{i>=1} K_j(i) A_i >= K_j(0) (1 - N) / N
        for j in 0..=n {
            let row: Vec<Rat> =
                (1..=n).map(|i| Rat::from_integer(table.entry(j, i).clone())).collect();
            let rhs = Rat::from_integer(table.entry(j, 0).clone()) * (Rat::one() - &rsize) / &rsize;
            ge_rows.push((row, rhs));
        }
        let eq_rows = vec![(vec![Rat::one(); n], &rsize - Rat::one())];
        let instance = LinearProgramInstance {
            num_vars: n,
            objective: vec![Rat::zero(); n],
            eq_rows,
            ge_rows,
        };
        let prepared = PreparedLp::new(instance)?.ok_or_else(|| {
            Error::Internal("strengthened program infeasible; the single-point convex path should exist".into())
        })?;
        Ok(Self { table: table.clone(), prepared })
    }

    pub fn min_energy(&mut self, f: &PotentialFunction) -> Result<(Rat, Quasicode)> {
        let n = self.table.n;
        let objective = objective_from(f, n)?;
        let outcome = self.prepared.minimize(&objective)?;
        let sol = outcome
            .optimal()
            .ok_or_else(|| Error::Internal("strengthened program must stay solvable".into()))?;
        let mut a = Vec::with_capacity(n + 1);
        a.push(Rat::one());
        a.extend(sol.primal.iter().cloned());
        Ok((sol.value.clone(), Quasicode::new(self.table.q, n, a)?))
    }
}

/// Strengthened minimum energy for integer `N` with `q` not dividing `N`.
pub fn as_min_energy(
    q: u32,
    n: usize,
    size: &BigInt,
    f: &PotentialFunction,
) -> Result<(Rat, Quasicode)> {
    AshikhminSimonisLp::new(q, n, size)?.min_energy(f)
}

/// Outcome of the LP universal optimality decision.
#[derive(Debug, Clone)]
pub enum LpUoOutcome {
    /// One verified certificate per fundamental potential `f_1..f_n`.
    Certified(Vec<DualCertificate>),
    /// The first `j` whose program beats the quasicode's energy.
    NotOptimal { violated_j: usize, lp_value: Rat, energy: Rat },
}

impl LpUoOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, LpUoOutcome::Certified(_))
    }
}

/// Decides LP universal optimality of `a` by solving the `n` fundamental
/// programs at size `|a|` (the `f_0` case is the trivial identity
/// `sum A_i = N`).
pub fn is_lp_universally_optimal(a: &Quasicode) -> Result<LpUoOutcome> {
    let n = a.n;
    let size = a.size();
    let mut lp = DelsarteLp::new(a.q, n, &size)?;
    let mut certificates = Vec::with_capacity(n);
    for j in 1..=n {
        let fj = fundamental_potential(j, n)?;
        let (value, _, cert) = lp.min_energy(&fj)?;
        let energy = a.energy(&fj)?;
        if energy != value {
            return Ok(LpUoOutcome::NotOptimal { violated_j: j, lp_value: value, energy });
        }
        if !verify_certificate(a, &fj, &cert)? {
            return Err(Error::Internal(format!(
                "optimal value attained but certificate fails complementary slackness at j={j}"
            )));
        }
        certificates.push(cert);
    }
    Ok(LpUoOutcome::Certified(certificates))
}

/// The universally optimal quasicode of a given length and size, when it
/// exists: computes the `n` fundamental minima and solves the feasibility
/// program that attains all of them simultaneously. The solution is unique
/// when it exists (the fundamental energies are independent constraints).
pub fn universal_quasicode(q: u32, n: usize, size: &Rat) -> Result<Option<Quasicode>> {
    let mut lp = DelsarteLp::new(q, n, size)?;
    let mut minima = Vec::with_capacity(n);
    for j in 1..=n {
        let fj = fundamental_potential(j, n)?;
        let (value, _, _) = lp.min_energy(&fj)?;
        minima.push((fj, value));
    }
    let table = lp.table();
    let mut eq_rows = vec![(vec![Rat::one(); n], size - Rat::one())];
    for (fj, mj) in &minima {
        let row: Vec<Rat> = (1..=n as i64).map(|i| fj.value(i).cloned()).collect::<Result<_>>()?;
        eq_rows.push((row, mj.clone()));
    }
    let mut ge_rows = Vec::with_capacity(n);
    for j in 1..=n {
        let row: Vec<Rat> =
            (1..=n).map(|i| Rat::from_integer(table.entry(j, i).clone())).collect();
        let rhs = -Rat::from_integer(table.entry(j, 0).clone());
        ge_rows.push((row, rhs));
    }
    let instance = LinearProgramInstance {
        num_vars: n,
        objective: vec![Rat::zero(); n],
        eq_rows,
        ge_rows,
    };
    match solve_lp(&instance)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Internal("feasibility program cannot be unbounded".into())),
        LpOutcome::Optimal(sol) => {
            let mut a = Vec::with_capacity(n + 1);
            a.push(Rat::one());
            a.extend(sol.primal.iter().cloned());
            Ok(Some(Quasicode::new(q, n, a)?))
        }
    }
}
