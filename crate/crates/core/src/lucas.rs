//! Evaluation of `R_n mod p` for huge `n` through the digit-product
//! congruence `R_n ≡ ∏ R_{n_j} (mod p)` over the base-p digits `n_j` of `n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::modmath::{Modulus, Residue};
use crate::sequences::{
    cached_table, exact_terms, Provenance, QuadraticSpec, ResidueTable, SequenceError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error("invalid decimal integer {0:?}")]
    InvalidDecimal(String),
    #[error("table has {len} entries but modulus is {modulus}")]
    TableLength { len: usize, modulus: u64 },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Base-p digits, least significant first. Zero is `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    pub digits: Vec<u64>,
    pub modulus: Modulus,
}

impl DigitVector {
    pub fn to_biguint(&self) -> BigUint {
        let p = BigUint::from(self.modulus.get());
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &p + d)
    }
}

/// Parses a non-negative decimal integer of any length.
pub fn parse_decimal(s: &str) -> Result<BigUint, LucasError> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
        return Err(LucasError::InvalidDecimal(s.to_string()));
    }
    BigUint::parse_bytes(t.as_bytes(), 10).ok_or_else(|| LucasError::InvalidDecimal(s.to_string()))
}

/// Largest `(p^k, k)` with `p^k` fitting in a `u64`.
fn digit_block(p: u64) -> (u64, usize) {
    let mut pk = p;
    let mut k = 1;
    while let Some(next) = pk.checked_mul(p) {
        pk = next;
        k += 1;
    }
    (pk, k)
}

pub fn base_p_digits(n: &BigUint, modulus: Modulus) -> DigitVector {
    let p = modulus.get();
    let mut digits = Vec::new();
    if let Some(mut small) = n.to_u64() {
        while small > 0 {
            digits.push(small % p);
            small /= p;
        }
    } else {
        // Peel off u64-sized blocks of k digits each, then split every block.
        let (pk, k) = digit_block(p);
        let pk_big = BigUint::from(pk);
        let mut rest = n.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&pk_big);
            let mut block = r.to_u64().expect("remainder below u64 block");
            if q.is_zero() {
                while block > 0 {
                    digits.push(block % p);
                    block /= p;
                }
            } else {
                for _ in 0..k {
                    digits.push(block % p);
                    block /= p;
                }
            }
            rest = q;
        }
    }
    if digits.is_empty() {
        digits.push(0);
    }
    DigitVector { digits, modulus }
}

/// `∏ table[n_j]` over the base-p digits of `n`.
pub fn lucas_eval(table: &ResidueTable, n: &BigUint) -> Result<Residue, LucasError> {
    let m = table.modulus;
    if table.len() as u64 != m.get() {
        return Err(LucasError::TableLength {
            len: table.len(),
            modulus: m.get(),
        });
    }
    let residues = table.residues();
    let mut acc = 1 % m.get();
    for d in base_p_digits(n, m).digits {
        acc = m.mul(acc, residues[d as usize]);
        if acc == 0 {
            break;
        }
    }
    Ok(Residue::new(acc, m))
}

pub fn lucas_eval_decimal(table: &ResidueTable, n: &str) -> Result<Residue, LucasError> {
    lucas_eval(table, &parse_decimal(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LucasCounterexample {
    pub n: u64,
    /// `R_n mod p` from exact terms.
    pub exact: u64,
    /// Digit-product value.
    pub lucas: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasReport {
    pub holds: bool,
    pub checked: u64,
    pub counterexample: Option<LucasCounterexample>,
}

/// Compares the digit product with exact `R_n mod p` for every `n ≤ n_max`.
///
/// The reported counterexample is the smallest failing `n`, independent of
/// how the range is split across workers.
pub fn verify_lucas(
    spec: QuadraticSpec,
    modulus: Modulus,
    n_max: u64,
) -> Result<LucasReport, LucasError> {
    let exact = exact_terms(spec, n_max as usize + 1)?.reduce(modulus);
    let table = cached_table(spec, modulus, Provenance::Recurrence)?;
    let counterexample = exact
        .par_iter()
        .enumerate()
        .map(|(n, &expected)| {
            let got = lucas_eval(&table, &BigUint::from(n as u64)).map(Residue::value)?;
            Ok((n as u64, expected, got))
        })
        .collect::<Result<Vec<_>, LucasError>>()?
        .into_iter()
        .find(|&(_, e, g)| e != g)
        .map(|(n, exact, lucas)| LucasCounterexample { n, exact, lucas });
    Ok(LucasReport {
        holds: counterexample.is_none(),
        checked: n_max + 1,
        counterexample,
    })
}
