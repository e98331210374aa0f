//! Zero patterns, the mirror identity on coefficients of quadratic powers,
//! the `3R_1^2 - 2R_2` condition and the end-to-end palindrome pipeline.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::modmath::{ModError, Modulus, Residue};
use crate::polymod::DensePoly;
use crate::sequences::{
    cached_table, exact_terms, Provenance, QuadraticSpec, ResidueTable, SequenceError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("mirror check needs b != 0 mod {0}")]
    ZeroB(u64),
    #[error("jobs must be at least 1")]
    NoJobs,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Bit `j` is set iff `R_j ≢ 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    bits: Vec<bool>,
}

impl ZeroPattern {
    pub fn from_residues(residues: &[u64]) -> Self {
        ZeroPattern {
            bits: residues.iter().map(|&r| r != 0).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Renders as `b_0 b_1 ... b_{p-1}` with no separators.
impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ZeroPattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid pattern character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|bits| ZeroPattern { bits })
    }
}

pub fn zero_pattern(table: &ResidueTable) -> ZeroPattern {
    ZeroPattern::from_residues(table.residues())
}

pub fn is_palindrome(pattern: &ZeroPattern) -> bool {
    let bits = pattern.bits();
    bits.iter().eq(bits.iter().rev())
}

/// Checks `α_{2k-j} = b^{k-j} α_j` for every `j ∈ [0, 2k]`, where `poly`
/// is meant to be `(1 + a x + b x^2)^k`.
///
/// Negative powers of `b` go through its inverse. Coefficients beyond the
/// stored degree count as zero.
pub fn mirror_check(poly: &DensePoly, b: Residue, k: u64) -> Result<bool, AnalysisError> {
    let m = poly.modulus();
    if b.modulus() != m {
        return Err(ModError::ModulusMismatch(m.get(), b.modulus().get()).into());
    }
    if b.is_zero() {
        return Err(AnalysisError::ZeroB(m.get()));
    }
    let two_k = 2 * k as usize;
    if poly.coeffs().len() > two_k + 1 {
        return Ok(false);
    }
    let b_inv = b.inv()?.value();
    // b^{k-j} for j = 0..=k runs from b^k down to 1; for j > k it is b^{-(j-k)}.
    let mut factor = b.pow(k).value();
    for j in 0..=two_k {
        let lhs = poly.coeff(two_k - j).value();
        let rhs = m.mul(factor, poly.coeff(j).value());
        if lhs != rhs {
            return Ok(false);
        }
        factor = m.mul(factor, b_inv);
    }
    Ok(true)
}

/// `3 R_1^2 - 2 R_2 (mod p)`.
///
/// For odd `p` this comes from the mod-p recurrence and works for any spec;
/// for `p = 2` it is taken from exact terms, which need `a` even.
pub fn lucas_condition(spec: QuadraticSpec, modulus: Modulus) -> Result<Residue, AnalysisError> {
    let (r1, r2) = if modulus.get() == 2 {
        let exact = exact_terms(spec, 3)?.reduce(modulus);
        (exact[1], exact[2])
    } else {
        // p >= 3, so the table holds at least R_0, R_1, R_2
        let t = cached_table(spec, modulus, Provenance::Recurrence)?;
        (t.residues()[1], t.residues()[2])
    };
    let m = modulus;
    let value = m.sub(m.mul(3, m.mul(r1, r1)), m.mul(2, r2));
    Ok(Residue::new(value, m))
}

/// Outcome of the palindrome pipeline at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub spec: QuadraticSpec,
    pub p: u64,
    /// Recurrence table equals the coefficients of `P^((p-1)/2)`.
    pub tables_agree: bool,
    pub pattern: ZeroPattern,
    pub palindromic: bool,
    /// Mirror identity on `P^((p-1)/2)`; false when `b ≡ 0`, where it is undefined.
    pub mirror_holds: bool,
    pub condition_value: Residue,
    pub condition_ok: bool,
    pub degenerate_b: bool,
}

impl VerificationRecord {
    /// A record contradicts a proven statement: the two table routes differ,
    /// or the hypotheses hold and the mirror identity or the palindrome fails.
    pub fn is_violation(&self) -> bool {
        if !self.tables_agree {
            return true;
        }
        if self.degenerate_b {
            return false;
        }
        !self.mirror_holds || (self.condition_ok && !self.palindromic)
    }
}

fn record_for_two(
    spec: QuadraticSpec,
    modulus: Modulus,
) -> Result<VerificationRecord, AnalysisError> {
    let exact = exact_terms(spec, 3)?;
    let residues = exact.reduce(modulus);
    let pattern = ZeroPattern::from_residues(&residues[..2]);
    let two = BigInt::from(2);
    let cond = (BigInt::from(3) * &exact.terms[1] * &exact.terms[1] - &two * &exact.terms[2])
        .mod_floor(&two);
    let condition_value = Residue::new(u64::try_from(&cond).expect("bit"), modulus);
    let b = Residue::from_i64(spec.b(), modulus);
    let degenerate_b = b.is_zero();
    // k = (p - 1) / 2 = 0, so the power is the constant 1
    let mirror_holds = !degenerate_b && mirror_check(&DensePoly::one(modulus), b, 0)?;
    Ok(VerificationRecord {
        spec,
        p: 2,
        tables_agree: true,
        palindromic: is_palindrome(&pattern),
        pattern,
        mirror_holds,
        condition_ok: !condition_value.is_zero(),
        condition_value,
        degenerate_b,
    })
}

fn record_for_odd(
    spec: QuadraticSpec,
    modulus: Modulus,
) -> Result<VerificationRecord, AnalysisError> {
    let by_recurrence = cached_table(spec, modulus, Provenance::Recurrence)?;
    let by_power = cached_table(spec, modulus, Provenance::PolyPow)?;
    let tables_agree = by_recurrence.agrees_with(&by_power);
    let pattern = zero_pattern(&by_power);
    let b = Residue::from_i64(spec.b(), modulus);
    let degenerate_b = b.is_zero();
    let mirror_holds = if degenerate_b {
        false
    } else {
        let k = (modulus.get() - 1) / 2;
        let poly = DensePoly::from_reduced(by_power.residues().to_vec(), modulus);
        mirror_check(&poly, b, k)?
    };
    let condition_value = lucas_condition(spec, modulus)?;
    Ok(VerificationRecord {
        spec,
        p: modulus.get(),
        tables_agree,
        palindromic: is_palindrome(&pattern),
        pattern,
        mirror_holds,
        condition_ok: !condition_value.is_zero(),
        condition_value,
        degenerate_b,
    })
}

pub fn verify_prime(spec: QuadraticSpec, p: u64) -> Result<VerificationRecord, AnalysisError> {
    let modulus = Modulus::new(p).map_err(|_| AnalysisError::NotPrime(p))?;
    if p == 2 {
        record_for_two(spec, modulus)
    } else {
        record_for_odd(spec, modulus)
    }
}

/// Runs the pipeline for every prime on `jobs` worker threads.
///
/// Records come back in ascending prime order (duplicates dropped) no
/// matter how the work was scheduled. `p = 2` is handled from exact terms.
pub fn verify_theorem(
    spec: QuadraticSpec,
    primes: &[u64],
    jobs: usize,
) -> Result<Vec<VerificationRecord>, AnalysisError> {
    if jobs == 0 {
        return Err(AnalysisError::NoJobs);
    }
    if let Some(&bad) = primes.iter().find(|&&p| !crate::modmath::is_prime(p)) {
        return Err(AnalysisError::NotPrime(bad));
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| AnalysisError::ThreadPool(e.to_string()))?;
    pool.install(|| {
        primes
            .par_iter()
            .map(|&p| verify_prime(spec, p))
            .collect::<Result<Vec<_>, _>>()
    })
}
