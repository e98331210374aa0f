//! Arithmetic in Z/pZ for prime p below 2^62, plus primality testing and
//! prime enumeration.
//!
//! Residues are always stored in least non-negative form. Products go
//! through a `u128` intermediate, which is why moduli are capped at 62 bits.

use std::fmt;

use thiserror::Error;

/// Largest accepted modulus bit width.
pub const MAX_MODULUS_BITS: u32 = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds {MAX_MODULUS_BITS} bits")]
    ModulusTooLarge(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("0 is not invertible modulo {0}")]
    NotInvertible(u64),
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ModError> {
        if p >> MAX_MODULUS_BITS != 0 {
            return Err(ModError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ModError::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.0 - y
        }
    }

    #[inline]
    pub fn neg(self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.0 - x
        }
    }

    #[inline]
    pub fn mul(self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, base: u64, mut e: u64) -> u64 {
        let mut result = 1 % self.0;
        let mut base = base % self.0;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Inverse by Fermat; `x` must be nonzero mod p.
    #[inline]
    pub fn inv(self, x: u64) -> u64 {
        self.pow(x, self.0 - 2)
    }

    /// Inverses of 1..=n (index 0 unused, set to 0). Requires n < p.
    pub fn inverses_up_to(self, n: usize) -> Vec<u64> {
        let p = self.0;
        debug_assert!((n as u64) < p);
        let mut inv = vec![0u64; n + 1];
        if n >= 1 {
            inv[1] = 1;
        }
        for i in 2..=n {
            let i64_ = i as u64;
            // inv(i) = -(p / i) * inv(p mod i)
            inv[i] = self.neg(self.mul(p / i64_, inv[(p % i64_) as usize]));
        }
        inv
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z/pZ.
///
/// The binary operations return `Err` on mismatched moduli, which is why they
/// are inherent methods rather than `std::ops` impls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

#[allow(clippy::should_implement_trait)]
impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce_i64(value),
            modulus,
        }
    }

    pub fn zero(modulus: Modulus) -> Self {
        Residue { value: 0, modulus }
    }

    pub fn one(modulus: Modulus) -> Self {
        Residue::new(1, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Residue) -> Result<Modulus, ModError> {
        if self.modulus != other.modulus {
            return Err(ModError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(self.modulus)
    }

    pub fn add(self, other: Residue) -> Result<Residue, ModError> {
        let m = self.check(other)?;
        Ok(Residue {
            value: m.add(self.value, other.value),
            modulus: m,
        })
    }

    pub fn sub(self, other: Residue) -> Result<Residue, ModError> {
        let m = self.check(other)?;
        Ok(Residue {
            value: m.sub(self.value, other.value),
            modulus: m,
        })
    }

    pub fn mul(self, other: Residue) -> Result<Residue, ModError> {
        let m = self.check(other)?;
        Ok(Residue {
            value: m.mul(self.value, other.value),
            modulus: m,
        })
    }

    /// `self^e`, with `0^0 = 1`.
    pub fn pow(self, e: u64) -> Residue {
        Residue {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<Residue, ModError> {
        if self.value == 0 {
            return Err(ModError::NotInvertible(self.modulus.get()));
        }
        Ok(self.pow(self.modulus.get() - 2))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut result = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod_u64(result, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // Jim Sinclair's base set covers all n < 2^64.
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

const SEGMENT_LEN: u64 = 1 << 16;

/// All primes in `[lo, hi]`, ascending, via a segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(2);
    if lo > hi {
        return Vec::new();
    }
    let base = simple_sieve(hi.isqrt());
    let mut out = Vec::new();
    let mut seg_lo = lo;
    loop {
        let seg_hi = seg_lo.saturating_add(SEGMENT_LEN - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        let mut composite = vec![false; len];
        for &q in &base {
            if q.saturating_mul(q) > seg_hi {
                break;
            }
            let first = (q * q).max(seg_lo.div_ceil(q) * q);
            let mut m = first;
            while m <= seg_hi {
                composite[(m - seg_lo) as usize] = true;
                m += q;
            }
        }
        out.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| seg_lo + i as u64),
        );
        if seg_hi == hi {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn add_examples() {
        let r = |v, p| Residue::new(v, m(p));
        assert_eq!(r(3, 7).add(r(5, 7)).unwrap(), r(1, 7));
        assert_eq!(r(0, 5).add(r(0, 5)).unwrap(), r(0, 5));
        assert_eq!(r(4, 5).add(r(1, 5)).unwrap(), r(0, 5));
        assert_eq!(r(1, 5).add(r(1, 7)), Err(ModError::ModulusMismatch(5, 7)));
    }

    #[test]
    fn mul_examples() {
        let r = |v, p| Residue::new(v, m(p));
        assert_eq!(r(3, 7).mul(r(5, 7)).unwrap(), r(1, 7));
        assert_eq!(r(1, 7).mul(r(4, 7)).unwrap(), r(4, 7));
        assert_eq!(r(0, 7).mul(r(4, 7)).unwrap(), r(0, 7));
        assert!(r(1, 5).mul(r(1, 7)).is_err());
    }

    #[test]
    fn mul_near_62_bits() {
        let p = (1u64 << 62) - 57;
        assert!(is_prime(p));
        let r = Residue::new(p - 1, m(p));
        // (-1)^2 = 1
        assert_eq!(r.mul(r).unwrap().value(), 1);
        assert_eq!(
            Modulus::new(1u64 << 62),
            Err(ModError::ModulusTooLarge(1u64 << 62))
        );
    }

    #[test]
    fn pow_examples() {
        assert_eq!(Residue::new(2, m(7)).pow(3).value(), 1);
        assert_eq!(Residue::new(0, m(7)).pow(0).value(), 1);
        assert_eq!(Residue::new(5, m(7)).pow(0).value(), 1);
        assert_eq!(Residue::new(3, m(5)).pow(4).value(), 1);
    }

    #[test]
    fn inv_examples() {
        assert_eq!(Residue::new(3, m(7)).inv().unwrap().value(), 5);
        assert_eq!(Residue::new(1, m(13)).inv().unwrap().value(), 1);
        assert_eq!(Residue::new(0, m(5)).inv(), Err(ModError::NotInvertible(5)));
    }

    #[test]
    fn constructors_reduce() {
        assert_eq!(Residue::new(17, m(5)).value(), 2);
        assert_eq!(Residue::from_i64(-3, m(5)).value(), 2);
        assert_eq!(
            Residue::from_i64(i64::MIN, m(7)).value(),
            (i64::MIN as i128).rem_euclid(7) as u64
        );
        assert_eq!(Modulus::new(9), Err(ModError::NotPrime(9)));
    }

    #[test]
    fn fermat_small_primes() {
        for p in primes_in_range(2, 101) {
            let md = m(p);
            for x in 1..p {
                assert_eq!(Residue::new(x, md).pow(p - 1).value(), 1, "x={x} p={p}");
            }
        }
    }

    #[test]
    fn batch_inverses_match_fermat() {
        for p in [3u64, 5, 7, 101, 997] {
            let md = m(p);
            let table = md.inverses_up_to((p - 1) as usize);
            for x in 1..p {
                assert_eq!(table[x as usize], md.inv(x));
            }
        }
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(91));
        assert!(!is_prime(561));
        assert!(is_prime(998244353));
        assert!(!is_prime(999381247093216751));
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(u64::MAX));
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn is_prime_matches_trial_division_to_1e6() {
        let sieve = simple_sieve(1_000_000);
        let mut idx = 0;
        for n in 0..=1_000_000u64 {
            let expected = idx < sieve.len() && sieve[idx] == n;
            if expected {
                idx += 1;
            }
            assert_eq!(is_prime(n), expected, "n={n}");
        }
        // sieve itself against trial division on a prefix
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division(n));
        }
    }

    #[test]
    fn range_examples() {
        assert_eq!(primes_in_range(5, 13), vec![5, 7, 11, 13]);
        assert_eq!(primes_in_range(8, 10), Vec::<u64>::new());
        assert_eq!(primes_in_range(2, 2), vec![2]);
        assert_eq!(primes_in_range(0, 1), Vec::<u64>::new());
        assert_eq!(primes_in_range(10, 3), Vec::<u64>::new());
    }

    #[test]
    fn prime_counts() {
        let oracle = (0..=1000u64).filter(|&n| trial_division(n)).count();
        assert_eq!(oracle, 168);
        assert_eq!(primes_in_range(2, 1000).len(), 168);
        assert_eq!(primes_in_range(2, 1_000_000).len(), 78498);
        // segment boundaries
        let lo = SEGMENT_LEN - 50;
        let hi = 3 * SEGMENT_LEN + 50;
        let expected: Vec<u64> = (lo..=hi).filter(|&n| trial_division(n)).collect();
        assert_eq!(primes_in_range(lo, hi), expected);
    }

    #[test]
    fn high_range() {
        let lo = 1_000_000_000_000u64;
        let hi = lo + 5000;
        let expected: Vec<u64> = (lo..=hi).filter(|&n| is_prime(n)).collect();
        let got = primes_in_range(lo, hi);
        assert_eq!(got, expected);
    }
}
