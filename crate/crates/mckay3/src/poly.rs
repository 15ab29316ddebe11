//! Integer polynomials in one variable (`ZPoly`) and two variables
//! (`ZBiPoly`), cyclotomic polynomials and power-series inversion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numth::divisors;

/// Dense univariate polynomial with integer coefficients, lowest degree
/// first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// coef·t^deg
    pub fn monomial(deg: usize, coef: BigInt) -> Self {
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = coef;
        Self::from_coeffs(c)
    }

    /// 1 − t^a
    pub fn one_minus_power(a: usize) -> Self {
        Self::one().sub(&Self::monomial(a, BigInt::one()))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| v * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder by a divisor with leading coefficient ±1.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = &d.c[dd];
        if !lead.abs().is_one() {
            return None;
        }
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * lead;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &f * dj;
            }
            q[k] = f;
        }
        r.truncate(dd);
        Some((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// The d-th cyclotomic polynomial Φ_d (Φ_1 = t − 1).
    pub fn cyclotomic(d: u64) -> Self {
        assert!(d >= 1);
        let mut p = Self::monomial(d as usize, BigInt::one()).sub(&Self::one());
        for e in divisors(d) {
            if e < d {
                p = p.div_exact(&Self::cyclotomic(e)).expect("Φ_e divides t^d − 1");
            }
        }
        p
    }

    /// First `len` coefficients of 1/self as a power series; needs a unit
    /// constant term.
    pub fn series_inverse(&self, len: usize) -> Option<Vec<BigInt>> {
        let c0 = self.c.first()?;
        if !c0.abs().is_one() {
            return None;
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for k in 0..len {
            let mut s = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k.min(self.c.len().saturating_sub(1)) {
                s -= &self.c[j] * &out[k - j];
            }
            out.push(s * c0);
        }
        Some(out)
    }

    /// Evaluate at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, v| acc * x + v)
    }

    /// Render in descending powers of `var`, e.g. `-t^8 - t^7 + t - 1`.
    pub fn display(&self, var: &str) -> String {
        let terms = self.c.iter().enumerate().rev().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (v.clone(), i, 0));
        render_terms(terms, var, "")
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

fn monomial_str(a: usize, b: usize, tv: &str, uv: &str) -> String {
    let mut parts = Vec::new();
    for (e, v) in [(a, tv), (b, uv)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

fn render_terms<I: Iterator<Item = (BigInt, usize, usize)>>(terms: I, tv: &str, uv: &str) -> String {
    let mut s = String::new();
    for (v, a, b) in terms {
        let neg = v.is_negative();
        let abs = v.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_str(a, b, tv, uv);
        if mono.is_empty() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{abs}*{mono}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Sparse bivariate integer polynomial Σ c_{a,b} t^a u^b.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZBiPoly {
    c: BTreeMap<(u32, u32), BigInt>,
}

impl ZBiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([((0, 0), BigInt::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(terms: I) -> Self {
        let mut c: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (k, v) in terms {
            *c.entry(k).or_default() += v;
        }
        c.retain(|_, v| !v.is_zero());
        ZBiPoly { c }
    }

    /// p(t) viewed as a bivariate polynomial.
    pub fn from_t(p: &ZPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, v)| ((i as u32, 0), v.clone())))
    }

    /// p(u) viewed as a bivariate polynomial.
    pub fn from_u(p: &ZPoly) -> Self {
        Self::from_t(p).swap()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.c.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.c.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.c.iter().chain(o.c.iter()).map(|(&k, v)| (k, v.clone())))
    }

    pub fn neg(&self) -> Self {
        ZBiPoly { c: self.c.iter().map(|(&k, v)| (k, -v)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(a, b), x) in &self.c {
            for (&(p, q), y) in &o.c {
                *c.entry((a + p, b + q)).or_default() += x * y;
            }
        }
        c.retain(|_, v| !v.is_zero());
        ZBiPoly { c }
    }

    /// Exchange the roles of t and u.
    pub fn swap(&self) -> Self {
        ZBiPoly { c: self.c.iter().map(|(&(a, b), v)| ((b, a), v.clone())).collect() }
    }

    /// Degree in t (None for zero).
    pub fn degree_t(&self) -> Option<u32> {
        self.c.keys().map(|k| k.0).max()
    }

    /// Degree in u (None for zero).
    pub fn degree_u(&self) -> Option<u32> {
        self.c.keys().map(|k| k.1).max()
    }

    /// The coefficient of u^b as a polynomial in t.
    pub fn slice_u(&self, b: u32) -> ZPoly {
        let Some(deg) = self.degree_t() else { return ZPoly::zero() };
        ZPoly::from_coeffs((0..=deg).map(|a| self.coeff(a, b)).collect())
    }

    /// Exact division by a polynomial in t alone.
    pub fn div_exact_t(&self, d: &ZPoly) -> Option<Self> {
        let Some(du) = self.degree_u() else { return Some(Self::zero()) };
        let mut out = BTreeMap::new();
        for b in 0..=du {
            let q = self.slice_u(b).div_exact(d)?;
            for (a, v) in q.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    out.insert((a as u32, b), v.clone());
                }
            }
        }
        Some(ZBiPoly { c: out })
    }

    /// Exact division by a polynomial in u alone.
    pub fn div_exact_u(&self, d: &ZPoly) -> Option<Self> {
        Some(self.swap().div_exact_t(d)?.swap())
    }

    /// Multiply by a polynomial in t alone.
    pub fn mul_t(&self, p: &ZPoly) -> Self {
        self.mul(&Self::from_t(p))
    }

    /// Multiply by a polynomial in u alone.
    pub fn mul_u(&self, p: &ZPoly) -> Self {
        self.mul(&Self::from_u(p))
    }

    /// The section u = 0 as a polynomial in t.
    pub fn at_u0(&self) -> ZPoly {
        self.slice_u(0)
    }

    /// Render with total degree descending, then t-degree descending.
    pub fn display(&self, tv: &str, uv: &str) -> String {
        let mut keys: Vec<_> = self.c.iter().collect();
        keys.sort_by(|x, y| {
            let (a, b) = *x.0;
            let (p, q) = *y.0;
            (p + q, p).cmp(&(a + b, a))
        });
        render_terms(keys.into_iter().map(|(&(a, b), v)| (v.clone(), a as usize, b as usize)), tv, uv)
    }
}

impl fmt::Display for ZBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t", "u"))
    }
}

impl fmt::Debug for ZBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZBiPoly({self})")
    }
}

/// Serialized as a list of `[a, b, "coef"]` triples.
impl Serialize for ZBiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(u32, u32, String)> = self.c.iter().map(|(&(a, b), c)| (a, b, c.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZBiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(v.len());
        for (a, b, c) in v {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            terms.push(((a, b), c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for ZPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.c.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let c = v
            .into_iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(c))
    }
}

/// A product ∏ Φ_d^{e_d} of cyclotomic polynomials, keyed by d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CycloFactors(pub BTreeMap<u64, u32>);

impl CycloFactors {
    pub fn expand(&self) -> ZPoly {
        self.0.iter().fold(ZPoly::one(), |acc, (&d, &e)| acc.mul(&ZPoly::cyclotomic(d).pow(e)))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(&d, &e)| crate::numth::euler_phi(d) * e as u64).sum()
    }

    /// Factors of 1 − t^a: Φ_d for every d | a (the sign of Φ_1 absorbed by
    /// the caller).
    pub fn of_one_minus_power(a: u64) -> Self {
        CycloFactors(divisors(a).into_iter().map(|d| (d, 1)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (&d, &e) in &o.0 {
            *m.entry(d).or_default() += e;
        }
        CycloFactors(m)
    }

    /// self / o when o divides self.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut m = self.0.clone();
        for (&d, &e) in &o.0 {
            let cur = m.get(&d).copied().unwrap_or(0);
            if cur < e {
                return None;
            }
            if cur == e {
                m.remove(&d);
            } else {
                m.insert(d, cur - e);
            }
        }
        Some(CycloFactors(m))
    }

    /// Factored rendering, e.g. `(t-1)^3*(t^2+t+1)`.
    pub fn display(&self, var: &str) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|(&d, &e)| {
                let p = ZPoly::cyclotomic(d).display(var).replace(' ', "");
                if e == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// gcd of all coefficients (0 for the zero polynomial).
pub fn content(p: &ZBiPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, v)| g.gcd(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(ZPoly::cyclotomic(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(ZPoly::cyclotomic(2), ZPoly::from_i64(&[1, 1]));
        assert_eq!(ZPoly::cyclotomic(12), ZPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(ZPoly::cyclotomic(15).degree(), Some(8));
        assert_eq!(ZPoly::cyclotomic(21).degree(), Some(12));
    }

    #[test]
    fn division_and_inverse() {
        let a = ZPoly::one_minus_power(6);
        let q = a.div_exact(&ZPoly::cyclotomic(3)).unwrap();
        assert_eq!(q.mul(&ZPoly::cyclotomic(3)), a);
        let inv = ZPoly::one_minus_power(2).series_inverse(7).unwrap();
        let want: Vec<BigInt> = [1, 0, 1, 0, 1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(inv, want);
    }

    #[test]
    fn rendering() {
        let p = ZPoly::from_i64(&[-1, -1, 0, 1, 1, 1, 0, -1, -1]);
        assert_eq!(p.display("t"), "-t^8 - t^7 + t^5 + t^4 + t^3 - t - 1");
        let f = CycloFactors([(1, 3), (2, 2)].into_iter().collect());
        assert_eq!(f.display("t"), "(t-1)^3*(t+1)^2");
    }

    #[test]
    fn bivariate_division() {
        let d = ZPoly::cyclotomic(3);
        let x = ZBiPoly::from_t(&d).mul(&ZBiPoly::from_terms([((1, 2), BigInt::from(3)), ((0, 0), BigInt::one())]));
        let q = x.div_exact_t(&d).unwrap();
        assert_eq!(q.coeff(1, 2), BigInt::from(3));
        assert!(x.div_exact_u(&d).is_none());
        assert_eq!(x.swap().div_exact_u(&d).unwrap(), q.swap());
    }
}
