//! Fast arithmetic inside one fixed cyclotomic field.
//!
//! `Field` precomputes the canonical basis of Q(ζ_n) and the expansion of
//! every power ζ_n^k, so products cost a table lookup per pair of terms.
//! `FElem` is a dense coordinate vector of 128-bit numerators over a common
//! denominator; every operation is overflow-checked. Used by the hot loops of
//! group enumeration, character lifting and series assembly, with results
//! converted back to [`CycloNum`] at the boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::cyclo::{axes, expand_power, CycloNum};
use crate::error::{Error, Result};

/// Precomputed basis and multiplication table for Q(ζ_n).
#[derive(Clone, Debug)]
pub struct Field {
    n: u64,
    basis: Vec<u64>,
    /// ζ_n^k in basis coordinates, for every k < n.
    table: Vec<Vec<(u32, i8)>>,
    one_pos: usize,
}

/// Element of a fixed field: Σ num_i·b_i / den with den > 0 and
/// gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElem {
    pub num: Vec<i128>,
    pub den: i128,
}

fn ovf() -> Error {
    Error::Overflow("fixed-field arithmetic")
}

impl Field {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let ax = axes(n);
        let mut pos = vec![u32::MAX; n as usize];
        let mut basis = Vec::new();
        for k in 0..n {
            let ok = ax.iter().all(|a| ((k as u128 * a.cinv as u128) % a.q as u128) < a.phi as u128);
            if ok {
                pos[k as usize] = basis.len() as u32;
                basis.push(k);
            }
        }
        let table = (0..n)
            .map(|k| expand_power(&ax, n, k).into_iter().map(|(b, s)| (pos[b as usize], s as i8)).collect())
            .collect();
        let one_pos = pos[0] as usize;
        Field { n, basis, table, one_pos }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> FElem {
        FElem { num: vec![0; self.dim()], den: 1 }
    }

    pub fn from_int(&self, v: i128) -> FElem {
        let mut e = self.zero();
        e.num[self.one_pos] = v;
        e
    }

    pub fn one(&self) -> FElem {
        self.from_int(1)
    }

    /// ζ_n^k as a field element.
    pub fn root(&self, k: i64) -> FElem {
        let mut e = self.zero();
        for &(p, s) in &self.table[k.rem_euclid(self.n as i64) as usize] {
            e.num[p as usize] += s as i128;
        }
        e
    }

    fn normalize(num: &mut [i128], den: &mut i128) {
        let mut g = *den;
        for &v in num.iter() {
            if g == 1 {
                break;
            }
            g = g.gcd(&v);
        }
        if *den < 0 {
            g = -g.abs();
        } else {
            g = g.abs();
        }
        if g != 1 && g != 0 {
            for v in num.iter_mut() {
                *v /= g;
            }
            *den /= g;
        }
    }

    pub fn add(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        if a.den == b.den {
            let mut num = Vec::with_capacity(a.num.len());
            for (x, y) in a.num.iter().zip(&b.num) {
                num.push(x.checked_add(*y).ok_or_else(ovf)?);
            }
            let mut den = a.den;
            Self::normalize(&mut num, &mut den);
            return Ok(FElem { num, den });
        }
        let g = a.den.gcd(&b.den);
        let fa = b.den / g;
        let fb = a.den / g;
        let mut den = a.den.checked_mul(fa).ok_or_else(ovf)?;
        let mut num = Vec::with_capacity(a.num.len());
        for (x, y) in a.num.iter().zip(&b.num) {
            let u = x.checked_mul(fa).ok_or_else(ovf)?;
            let v = y.checked_mul(fb).ok_or_else(ovf)?;
            num.push(u.checked_add(v).ok_or_else(ovf)?);
        }
        Self::normalize(&mut num, &mut den);
        Ok(FElem { num, den })
    }

    pub fn neg(&self, a: &FElem) -> FElem {
        FElem { num: a.num.iter().map(|v| -v).collect(), den: a.den }
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        self.add(a, &self.neg(b))
    }

    /// Product of raw coordinate vectors (no denominators).
    pub fn mul_coords(&self, a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
        let mut acc = vec![0i128; self.dim()];
        self.fma_coords(&mut acc, a, b)?;
        Ok(acc)
    }

    /// acc += a·b on raw coordinates.
    pub fn fma_coords(&self, acc: &mut [i128], a: &[i128], b: &[i128]) -> Result<()> {
        let n = self.n as usize;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ki = self.basis[i] as usize;
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let p = x.checked_mul(y).ok_or_else(ovf)?;
                let mut k = ki + self.basis[j] as usize;
                if k >= n {
                    k -= n;
                }
                for &(pos, s) in &self.table[k] {
                    let slot = &mut acc[pos as usize];
                    *slot = if s > 0 { slot.checked_add(p) } else { slot.checked_sub(p) }.ok_or_else(ovf)?;
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        let mut num = self.mul_coords(&a.num, &b.num)?;
        let mut den = a.den.checked_mul(b.den).ok_or_else(ovf)?;
        Self::normalize(&mut num, &mut den);
        Ok(FElem { num, den })
    }

    pub fn scale_int(&self, a: &FElem, k: i128) -> Result<FElem> {
        let mut num = Vec::with_capacity(a.num.len());
        for v in &a.num {
            num.push(v.checked_mul(k).ok_or_else(ovf)?);
        }
        let mut den = a.den;
        Self::normalize(&mut num, &mut den);
        Ok(FElem { num, den })
    }

    /// Galois automorphism ζ ↦ ζ^a on raw coordinates.
    pub fn galois_coords(&self, x: &[i128], a: i64) -> Vec<i128> {
        let a = a.rem_euclid(self.n as i64) as u64;
        let mut out = vec![0i128; self.dim()];
        for (i, &v) in x.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let k = (self.basis[i] * a % self.n) as usize;
            for &(pos, s) in &self.table[k] {
                out[pos as usize] += if s > 0 { v } else { -v };
            }
        }
        out
    }

    pub fn galois(&self, x: &FElem, a: i64) -> FElem {
        FElem { num: self.galois_coords(&x.num, a), den: x.den }
    }

    pub fn is_zero(&self, x: &FElem) -> bool {
        x.num.iter().all(|&v| v == 0)
    }

    /// The value as a rational p/q when it lies in Q.
    pub fn as_rational(&self, x: &FElem) -> Option<(i128, i128)> {
        x.num.iter().enumerate().all(|(i, &v)| i == self.one_pos || v == 0).then(|| (x.num[self.one_pos], x.den))
    }

    /// Trace form Tr(b_k·b_l) on the basis, so Tr(x·y) = xᵀ·M·y.
    pub fn trace_form(&self) -> Vec<Vec<i128>> {
        self.basis
            .iter()
            .map(|&a| self.basis.iter().map(|&b| i128::from(crate::numth::ramanujan_sum(self.n, a + b))).collect())
            .collect()
    }

    /// Rational coordinate at the basis element 1 of raw coordinates, if all
    /// other coordinates vanish.
    pub fn coords_rational(&self, x: &[i128]) -> Option<i128> {
        x.iter().enumerate().all(|(i, &v)| i == self.one_pos || v == 0).then(|| x[self.one_pos])
    }

    /// Embed a cyclotomic number whose conductor divides n.
    pub fn from_cyclo(&self, c: &CycloNum) -> Result<FElem> {
        let m = c.conductor();
        if !self.n.is_multiple_of(m) {
            return Err(Error::Invariant(format!("conductor {m} does not divide {}", self.n)));
        }
        let f = self.n / m;
        let mut den = BigInt::one();
        for (_, v) in c.coeffs() {
            den = den.lcm(v.denom());
        }
        let mut num = vec![0i128; self.dim()];
        for (k, v) in c.coeffs() {
            let scaled = (v * BigRational::from_integer(den.clone())).to_integer();
            let s = scaled.to_i128().ok_or_else(ovf)?;
            for &(pos, sg) in &self.table[((k * f) % self.n) as usize] {
                num[pos as usize] += if sg > 0 { s } else { -s };
            }
        }
        let mut den = den.to_i128().ok_or_else(ovf)?;
        Self::normalize(&mut num, &mut den);
        Ok(FElem { num, den })
    }

    pub fn to_cyclo(&self, x: &FElem) -> CycloNum {
        let den = BigInt::from(x.den);
        CycloNum::from_terms(
            self.n,
            x.num
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (self.basis[i], BigRational::new(BigInt::from(v), den.clone()))),
        )
    }

    pub fn coords_to_cyclo(&self, x: &[i128], den: i128) -> CycloNum {
        self.to_cyclo(&FElem { num: x.to_vec(), den })
    }
}

/// Minimal ring interface shared by exact and fixed-field arithmetic.
pub trait Ring {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn int(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
}

/// Ring of all cyclotomic numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Ring for Exact {
    type E = CycloNum;
    fn zero(&self) -> CycloNum {
        CycloNum::zero()
    }
    fn one(&self) -> CycloNum {
        CycloNum::one()
    }
    fn int(&self, v: i64) -> CycloNum {
        CycloNum::from_int(v)
    }
    fn add(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        Ok(a.mul(b))
    }
}

impl Ring for Field {
    type E = FElem;
    fn zero(&self) -> FElem {
        Field::zero(self)
    }
    fn one(&self) -> FElem {
        Field::one(self)
    }
    fn int(&self, v: i64) -> FElem {
        self.from_int(v as i128)
    }
    fn add(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &FElem, b: &FElem) -> Result<FElem> {
        Field::mul(self, a, b)
    }
}

impl FElem {
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_with_cyclo() {
        let f = Field::new(60);
        assert_eq!(f.dim(), 16);
        let x = &CycloNum::root_of_unity(5, 2) + &CycloNum::from_frac(1, 3);
        let y = CycloNum::root_of_unity(12, 5);
        let fx = f.from_cyclo(&x).unwrap();
        let fy = f.from_cyclo(&y).unwrap();
        assert_eq!(f.to_cyclo(&f.mul(&fx, &fy).unwrap()), &x * &y);
        assert_eq!(f.to_cyclo(&f.add(&fx, &fy).unwrap()), &x + &y);
        assert_eq!(f.to_cyclo(&f.galois(&fx, 7)), x.galois(7));
    }
}
