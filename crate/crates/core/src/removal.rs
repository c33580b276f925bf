//! Codeword-removal machinery: the expected distribution after deleting a
//! random codeword, the Ashikhmin-Simonis inequalities, the size
//! divisibility dichotomy for LP-tight codes, the single-deletion theorem
//! checks, and the complement (antiparticle) energy identity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{complement, distance_distribution, energy, is_distance_regular, Code};
use crate::error::{Error, Result};
use crate::exact::{binomial, rat_serde, PotentialFunction, Rat};
use crate::krawtchouk::fundamental_potential;
use crate::lp::{delsarte_min_energy, is_lp_universally_optimal, AshikhminSimonisLp};
use crate::quasicode::Quasicode;

/// Expected distance distribution after deleting one uniformly random
/// codeword: `B_0 = 1`, `B_i = (N-2)/(N-1) A_i` for `i >= 1`; size `N - 1`.
pub fn removal_distribution(a: &Quasicode) -> Result<Quasicode> {
    let size = a
        .integer_size()
        .ok_or_else(|| Error::InvalidParameter("removal needs an integer size".into()))?;
    if size < BigInt::from(2) {
        return Err(Error::InvalidParameter("removal needs at least two codewords".into()));
    }
    let factor = Rat::new(&size - BigInt::from(2), &size - BigInt::one());
    let mut b = vec![Rat::one()];
    b.extend(a.entries().iter().skip(1).map(|ai| ai * &factor));
    Quasicode::new(a.q, a.n, b)
}

/// Evaluates the strengthened inequalities
/// `N sum_i A_i K_j(i) >= (q-1)^j C(n,j)` exactly, returning the slack for
/// each `j`. Only meaningful when `q` does not divide the integer size.
pub fn check_ashikhmin_simonis(a: &Quasicode) -> Result<(bool, Vec<Rat>)> {
    let size = a
        .integer_size()
        .ok_or_else(|| Error::InvalidParameter("the inequalities require an integer size".into()))?;
    if size.mod_floor(&BigInt::from(a.q)).is_zero() {
        return Err(Error::InvalidParameter(format!(
            "the inequalities are not asserted when q divides N (q={}, N={size})",
            a.q
        )));
    }
    let table = a.table()?;
    let transformed = table.apply(a.entries());
    let rsize = Rat::from_integer(size);
    let qm1 = BigInt::from(a.q - 1);
    let slacks: Vec<Rat> = transformed
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let rhs = Rat::from_integer(qm1.pow(j as u32) * binomial(a.n as i64, j as i64));
            &rsize * v - rhs
        })
        .collect();
    let holds = slacks.iter().all(|s| !s.is_negative());
    Ok((holds, slacks))
}

/// Classification from the size-divisibility lemma: when the program is
/// tight for `f`, either `q` divides the code size or `f` is minimized at
/// every distance occurring in the code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizeDichotomy {
    MultipleOfQ,
    FMinimizedAtAllDistances,
    BoundNotTight,
}

pub fn qmult_check(code: &Code, f: &PotentialFunction) -> Result<SizeDichotomy> {
    let a = distance_distribution(code)?;
    let size = Rat::from_integer(BigInt::from(code.len()));
    let (lp_value, _, _) = delsarte_min_energy(code.q, code.n, &size, f)?;
    if energy(code, f)? != lp_value {
        return Ok(SizeDichotomy::BoundNotTight);
    }
    if code.len() % code.q as usize == 0 {
        return Ok(SizeDichotomy::MultipleOfQ);
    }
    let fmin = (1..=code.n as i64)
        .map(|i| f.value(i).cloned())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("nonempty domain");
    let minimized = a.support().iter().all(|&d| f.value(d as i64).map(|v| *v == fmin).unwrap_or(false));
    if minimized {
        Ok(SizeDichotomy::FMinimizedAtAllDistances)
    } else {
        Err(Error::Internal(
            "LP-tight code with size not divisible by q whose potential is not minimized on the support".into(),
        ))
    }
}

/// Per-potential comparison of the deleted code's energy against the
/// strengthened program optimum at size `N - 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RemovalEnergyCheck {
    pub j: usize,
    #[serde(with = "rat_serde")]
    pub strengthened_optimum: Rat,
    #[serde(with = "rat_serde")]
    pub removed_energy: Rat,
    pub attained: bool,
}

/// Outcome of the single-deletion theorem checks on one code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RemovalReport {
    pub q: u32,
    pub n: usize,
    pub size: usize,
    pub distance_regular: bool,
    /// All `N` single-deletion distributions coincide and match the
    /// `(N-2)/(N-1)` scaling of the original distribution.
    pub deletions_coincide: bool,
    pub removal_distribution: Quasicode,
    pub energy_checks: Vec<RemovalEnergyCheck>,
    pub verdict: bool,
}

/// Verifies the deletion theorem on an LP universally optimal code:
/// distance regularity, equality of all single-deletion distributions
/// with the expected-removal formula, and attainment of the strengthened
/// bound at size `N - 1` for every fundamental potential.
///
/// The precondition (LP universal optimality) is an error when violated;
/// any later failure is a theorem discrepancy and lands in the report.
pub fn verify_removal_theorem(code: &Code) -> Result<RemovalReport> {
    let a = distance_distribution(code)?;
    if !is_lp_universally_optimal(&a)?.is_certified() {
        return Err(Error::NotApplicable(
            "the deletion theorem applies to LP universally optimal codes".into(),
        ));
    }
    let n = code.n;
    let size = code.len();
    let distance_regular = is_distance_regular(code);

    let b = removal_distribution(&a)?;
    // single-deletion distribution for word w: pair counts minus the pairs
    // through w, over N - 1
    let counts = code_pair_counts(code);
    let mut deletions_coincide = true;
    'words: for idx in 0..size {
        let profile = code_profile(code, idx);
        for i in 1..=n {
            let remaining = counts[i] - 2 * profile[i];
            let expect = b.entry(i) * Rat::from_integer(BigInt::from(size as u64 - 1));
            if Rat::from_integer(BigInt::from(remaining)) != expect {
                deletions_coincide = false;
                break 'words;
            }
        }
    }

    let mut lp = AshikhminSimonisLp::new(code.q, n, &BigInt::from(size as u64 - 1))?;
    let mut energy_checks = Vec::with_capacity(n);
    for j in 1..=n {
        let fj = fundamental_potential(j, n)?;
        let (optimum, _) = lp.min_energy(&fj)?;
        let removed = b.energy(&fj)?;
        energy_checks.push(RemovalEnergyCheck {
            j,
            attained: removed == optimum,
            strengthened_optimum: optimum,
            removed_energy: removed,
        });
    }
    let verdict =
        distance_regular && deletions_coincide && energy_checks.iter().all(|c| c.attained);
    Ok(RemovalReport {
        q: code.q,
        n,
        size,
        distance_regular,
        deletions_coincide,
        removal_distribution: b,
        energy_checks,
        verdict,
    })
}

fn code_pair_counts(code: &Code) -> Vec<u64> {
    code.pair_counts_public()
}

fn code_profile(code: &Code, idx: usize) -> Vec<u64> {
    code.profile_public(idx)
}

impl Code {
    pub(crate) fn pair_counts_public(&self) -> Vec<u64> {
        self.pair_counts()
    }

    pub(crate) fn profile_public(&self, idx: usize) -> Vec<u64> {
        self.profile(idx)
    }
}

/// Both sides of the antiparticle identity
/// `(q^n - N) E_f(complement) = N E_f(C) + (q^n - 2N) sum_k C(n,k)(q-1)^k f(k)`.
pub fn complement_energy_identity(code: &Code, f: &PotentialFunction) -> Result<(Rat, Rat)> {
    let comp = complement(code)?;
    let qn = Rat::from_integer(BigInt::from(code.q).pow(code.n as u32));
    let size = Rat::from_integer(BigInt::from(code.len()));
    let lhs = (&qn - &size) * energy(&comp, f)?;
    let mut weighted = Rat::zero();
    for k in 1..=code.n as i64 {
        let w = binomial(code.n as i64, k) * BigInt::from(code.q - 1).pow(k as u32);
        weighted += Rat::from_integer(w) * f.value(k)?;
    }
    let rhs = &size * energy(code, f)? + (&qn - Rat::from_integer(BigInt::from(2u32)) * &size) * weighted;
    Ok((lhs, rhs))
}
