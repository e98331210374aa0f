//! Dense univariate polynomials over Z/pZ.

use thiserror::Error;

use crate::modmath::{ModError, Modulus, Residue};

/// Operand length at or above which multiplication switches to Karatsuba.
const KARATSUBA_THRESHOLD: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Mod(#[from] ModError),
}

/// Polynomial over Z/pZ with coefficients in ascending degree order.
///
/// Always normalized: the last coefficient is nonzero, except for the zero
/// polynomial which is stored as `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl DensePoly {
    /// Builds a polynomial from raw coefficients, reducing each mod p.
    pub fn new(coeffs: Vec<u64>, modulus: Modulus) -> Self {
        let coeffs = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        Self::from_reduced(coeffs, modulus)
    }

    pub fn from_i64(coeffs: &[i64], modulus: Modulus) -> Self {
        let coeffs = coeffs.iter().map(|&c| modulus.reduce_i64(c)).collect();
        Self::from_reduced(coeffs, modulus)
    }

    pub(crate) fn from_reduced(mut coeffs: Vec<u64>, modulus: Modulus) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        DensePoly { modulus, coeffs }
    }

    pub fn one(modulus: Modulus) -> Self {
        DensePoly {
            modulus,
            coeffs: vec![1],
        }
    }

    /// `1 + a x + b x^2` reduced mod p.
    pub fn from_quadratic(a: i64, b: i64, modulus: Modulus) -> Self {
        Self::from_i64(&[1, a, b], modulus)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Residue {
        Residue::new(self.coeffs.get(j).copied().unwrap_or(0), self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn mul(&self, other: &DensePoly) -> Result<DensePoly, PolyError> {
        if self.modulus != other.modulus {
            return Err(ModError::ModulusMismatch(self.modulus.get(), other.modulus.get()).into());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(DensePoly {
                modulus: self.modulus,
                coeffs: vec![0],
            });
        }
        let coeffs = mul_coeffs(&self.coeffs, &other.coeffs, self.modulus);
        Ok(Self::from_reduced(coeffs, self.modulus))
    }

    /// `self^k` by square-and-multiply; `f^0 = 1`.
    pub fn pow(&self, mut k: u64) -> DensePoly {
        let mut result = DensePoly::one(self.modulus);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same modulus");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same modulus");
            }
        }
        result
    }
}

fn mul_coeffs(f: &[u64], g: &[u64], m: Modulus) -> Vec<u64> {
    let mut out = vec![0u64; f.len() + g.len() - 1];
    mul_into(f, g, m, &mut out);
    out
}

/// Adds `f * g` into `out[..f.len() + g.len() - 1]`.
fn mul_into(f: &[u64], g: &[u64], m: Modulus, out: &mut [u64]) {
    if f.len().min(g.len()) < KARATSUBA_THRESHOLD {
        schoolbook_into(f, g, m, out);
    } else {
        karatsuba_into(f, g, m, out);
    }
}

fn schoolbook_into(f: &[u64], g: &[u64], m: Modulus, out: &mut [u64]) {
    let p = m.get();
    if p < 1 << 32 {
        // products fit in 64 bits, so a u128 accumulator never overflows
        for k in 0..f.len() + g.len() - 1 {
            let lo = k.saturating_sub(g.len() - 1);
            let hi = k.min(f.len() - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += (f[i] * g[k - i]) as u128;
            }
            out[k] = m.add(out[k], (acc % p as u128) as u64);
        }
    } else {
        for (i, &fi) in f.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for (j, &gj) in g.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(fi, gj));
            }
        }
    }
}

fn karatsuba_into(f: &[u64], g: &[u64], m: Modulus, out: &mut [u64]) {
    // Unbalanced operands: slice the longer one into chunks of the shorter length.
    let (f, g) = if f.len() >= g.len() { (f, g) } else { (g, f) };
    if f.len() > g.len() {
        let n = g.len();
        let mut offset = 0;
        while offset < f.len() {
            let end = (offset + n).min(f.len());
            let chunk = &f[offset..end];
            mul_into(chunk, g, m, &mut out[offset..offset + chunk.len() + n - 1]);
            offset = end;
        }
        return;
    }

    let n = f.len();
    let half = n / 2;
    let (f0, f1) = f.split_at(half);
    let (g0, g1) = g.split_at(half);

    let mut z0 = vec![0u64; 2 * half - 1];
    mul_into(f0, g0, m, &mut z0);
    let mut z2 = vec![0u64; f1.len() + g1.len() - 1];
    mul_into(f1, g1, m, &mut z2);

    let fs = sum_halves(f0, f1, m);
    let gs = sum_halves(g0, g1, m);
    let mut z1 = vec![0u64; fs.len() + gs.len() - 1];
    mul_into(&fs, &gs, m, &mut z1);
    for (i, &c) in z0.iter().enumerate() {
        z1[i] = m.sub(z1[i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        z1[i] = m.sub(z1[i], c);
    }

    for (i, &c) in z0.iter().enumerate() {
        out[i] = m.add(out[i], c);
    }
    for (i, &c) in z1.iter().enumerate() {
        out[half + i] = m.add(out[half + i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        out[2 * half + i] = m.add(out[2 * half + i], c);
    }
}

fn sum_halves(lo: &[u64], hi: &[u64], m: Modulus) -> Vec<u64> {
    let mut s = hi.to_vec();
    for (i, &c) in lo.iter().enumerate() {
        s[i] = m.add(s[i], c);
    }
    s
}
