//! Sequences with generating function `(1 + a x + b x^2)^(-1/2)`.
//!
//! Terms satisfy the P-recursive recurrence
//!
//! ```text
//! 2(n+1) R_{n+1} + a(2n+1) R_n + 2bn R_{n-1} = 0,    R_0 = 1,
//! ```
//!
//! obtained from `2 P F' + P' F = 0`. The recurrence drives both the exact
//! generator and the mod-p table; the second mod-p route expands
//! `P(x)^((p-1)/2)` directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modmath::{Modulus, Residue};
use crate::polymod::DensePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("b must be nonzero")]
    ZeroB,
    #[error("term R_{index} is not an integer")]
    NonInteger { index: usize },
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("modulus {0} is not supported (odd prime required)")]
    UnsupportedModulus(u64),
    #[error("modulus {0} is too large for a residue table (limit {MAX_TABLE_MODULUS})")]
    TableTooLarge(u64),
}

/// Largest prime for which a full residue table is materialized.
pub const MAX_TABLE_MODULUS: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `1 - 2x - 3x^2`: central trinomial coefficients.
    Trinomial,
    /// `1 - 6x + x^2`: central Delannoy numbers.
    Delannoy,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Trinomial => "trinomial",
            Preset::Delannoy => "delannoy",
        }
    }
}

/// The quadratic `P(x) = 1 + a x + b x^2` selecting a sequence family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticSpec {
    a: i64,
    b: i64,
    preset: Option<Preset>,
}

impl QuadraticSpec {
    pub fn new(a: i64, b: i64) -> Result<Self, SequenceError> {
        if b == 0 {
            return Err(SequenceError::ZeroB);
        }
        Ok(QuadraticSpec { a, b, preset: None })
    }

    pub fn trinomial() -> Self {
        QuadraticSpec {
            a: -2,
            b: -3,
            preset: Some(Preset::Trinomial),
        }
    }

    pub fn delannoy() -> Self {
        QuadraticSpec {
            a: -6,
            b: 1,
            preset: Some(Preset::Delannoy),
        }
    }

    pub fn from_preset(preset: Preset) -> Self {
        match preset {
            Preset::Trinomial => Self::trinomial(),
            Preset::Delannoy => Self::delannoy(),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn preset(&self) -> Option<Preset> {
        self.preset
    }

    pub fn name(&self) -> Option<&'static str> {
        self.preset.map(Preset::name)
    }

    /// Whether every exact term is an integer: `a = 2c` with `b ≡ c^2 (mod 4)`.
    ///
    /// Then `P = (1 + cx)^2 + 4dx^2` and `P^(-1/2)` expands through the
    /// integral series of `(1 + 4u)^(-1/2)`.
    pub fn is_integer_valued(&self) -> bool {
        if self.a % 2 != 0 {
            return false;
        }
        let c = (self.a / 2) as i128;
        (self.b as i128 - c * c).rem_euclid(4) == 0
    }

    pub fn base_poly(&self, modulus: Modulus) -> DensePoly {
        DensePoly::from_quadratic(self.a, self.b, modulus)
    }
}

impl fmt::Display for QuadraticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.preset {
            Some(p) => f.write_str(p.name()),
            None => write!(f, "quad:a={},b={}", self.a, self.b),
        }
    }
}

/// Exact terms `R_0..R_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequence {
    pub spec: QuadraticSpec,
    pub terms: Vec<BigInt>,
}

impl ExactSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reduce(&self, modulus: Modulus) -> Vec<u64> {
        let p = BigInt::from(modulus.get());
        self.terms
            .iter()
            .map(|t| {
                let r = t.mod_floor(&p);
                u64::try_from(&r).expect("residue below modulus")
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Recurrence,
    PolyPow,
}

/// First `p` residues `R_0..R_{p-1}` mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    pub spec: QuadraticSpec,
    pub modulus: Modulus,
    pub provenance: Provenance,
    /// `b ≡ 0 (mod p)`: the quadratic degenerates and no palindrome claim applies.
    pub degenerate_b: bool,
    residues: Vec<u64>,
}

impl ResidueTable {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn get(&self, j: usize) -> Residue {
        Residue::new(self.residues[j], self.modulus)
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Same residues regardless of how they were produced.
    pub fn agrees_with(&self, other: &ResidueTable) -> bool {
        self.modulus == other.modulus && self.residues == other.residues
    }
}

/// Coefficient of `x^n` in `(1 + x + x^2)^n`, by repeated exact multiplication.
///
/// Quadratic in `n`; meant as an oracle.
pub fn trinomial_expand_oracle(n: usize) -> BigInt {
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); poly.len() + 2];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
            next[i + 2] += c;
        }
        poly = next;
    }
    poly.swap_remove(n)
}

/// Exact `R_0..R_{count-1}`, failing at the first non-integral term.
pub fn exact_terms(spec: QuadraticSpec, count: usize) -> Result<ExactSequence, SequenceError> {
    if count == 0 {
        return Err(SequenceError::EmptyCount);
    }
    let a = BigInt::from(spec.a);
    let b = BigInt::from(spec.b);
    let mut terms = Vec::with_capacity(count);
    terms.push(BigInt::one());
    let mut prev = BigInt::zero();
    for n in 0..count - 1 {
        let cur = &terms[n];
        let numer: BigInt = -(&a * (2 * n + 1)) * cur - (&b * (2 * n)) * &prev;
        let denom = BigInt::from(2 * (n + 1));
        let (q, r) = numer.div_rem(&denom);
        if !r.is_zero() {
            return Err(SequenceError::NonInteger { index: n + 1 });
        }
        prev = cur.clone();
        terms.push(q);
    }
    Ok(ExactSequence { spec, terms })
}

fn require_odd(modulus: Modulus) -> Result<(), SequenceError> {
    if modulus.get() == 2 {
        return Err(SequenceError::UnsupportedModulus(2));
    }
    if modulus.get() > MAX_TABLE_MODULUS {
        return Err(SequenceError::TableTooLarge(modulus.get()));
    }
    Ok(())
}

/// Runs the recurrence in Z/pZ; every divisor `2(n+1)` with `n+1 < p` is a unit.
pub fn table_via_recurrence(
    spec: QuadraticSpec,
    modulus: Modulus,
) -> Result<ResidueTable, SequenceError> {
    require_odd(modulus)?;
    let p = modulus.get() as usize;
    let a = modulus.reduce_i64(spec.a);
    let b = modulus.reduce_i64(spec.b);
    let inv = modulus.inverses_up_to(p - 1);
    let inv2 = modulus.inv(2);

    let mut residues = Vec::with_capacity(p);
    residues.push(1 % modulus.get());
    let mut prev = 0u64;
    for n in 0..p - 1 {
        let cur = residues[n];
        let n64 = n as u64;
        let t1 = modulus.mul(modulus.mul(a, modulus.reduce(2 * n64 + 1)), cur);
        let t2 = modulus.mul(modulus.mul(b, modulus.reduce(2 * n64)), prev);
        let numer = modulus.neg(modulus.add(t1, t2));
        let next = modulus.mul(modulus.mul(numer, inv2), inv[n + 1]);
        prev = cur;
        residues.push(next);
    }
    Ok(ResidueTable {
        spec,
        modulus,
        provenance: Provenance::Recurrence,
        degenerate_b: b == 0,
        residues,
    })
}

/// Coefficients of `P(x)^((p-1)/2)` mod p, zero-padded to length p.
pub fn table_via_poly_pow(
    spec: QuadraticSpec,
    modulus: Modulus,
) -> Result<ResidueTable, SequenceError> {
    require_odd(modulus)?;
    let p = modulus.get() as usize;
    let power = spec.base_poly(modulus).pow((modulus.get() - 1) / 2);
    let mut residues = power.into_coeffs();
    debug_assert!(residues.len() <= p);
    residues.resize(p, 0);
    Ok(ResidueTable {
        spec,
        modulus,
        provenance: Provenance::PolyPow,
        degenerate_b: modulus.reduce_i64(spec.b) == 0,
        residues,
    })
}

type CacheKey = (u64, u64, u64, Provenance);

fn table_cache() -> &'static RwLock<HashMap<CacheKey, Arc<ResidueTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<ResidueTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized table lookup keyed by `(a mod p, b mod p, p, route)`.
///
/// Tables built from a different spec with the same reduction are shared, so
/// the returned table's `spec` field may name that other spec.
pub fn cached_table(
    spec: QuadraticSpec,
    modulus: Modulus,
    provenance: Provenance,
) -> Result<Arc<ResidueTable>, SequenceError> {
    let key = (
        modulus.reduce_i64(spec.a),
        modulus.reduce_i64(spec.b),
        modulus.get(),
        provenance,
    );
    if let Some(t) = table_cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(match provenance {
        Provenance::Recurrence => table_via_recurrence(spec, modulus)?,
        Provenance::PolyPow => table_via_poly_pow(spec, modulus)?,
    });
    let mut guard = table_cache().write().unwrap();
    Ok(Arc::clone(guard.entry(key).or_insert(table)))
}
