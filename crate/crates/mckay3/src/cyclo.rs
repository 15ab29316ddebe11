//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored over the tensor basis of Q(ζ_n) = ⊗ Q(ζ_q), one
//! factor per prime power q = p^e dividing n, where each factor uses the
//! exponents 0 ≤ j < φ(q). A basis tuple (j_1, …, j_r) is recorded by the
//! single exponent k = Σ j_i·(n/q_i) mod n of ζ_n. After every operation the
//! element is moved to the smallest cyclotomic field containing it, so the
//! pair (conductor, coefficients) is a canonical form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numth::{euler_phi, factorize, gcd, lcm, mod_inv, units};

/// One prime-power factor q = p^e of a conductor n.
#[derive(Clone, Debug)]
pub(crate) struct Axis {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// n / q
    pub cof: u64,
    /// (n / q)^{-1} mod q
    pub cinv: u64,
    /// φ(q)
    pub phi: u64,
}

pub(crate) fn axes(n: u64) -> Vec<Axis> {
    factorize(n)
        .into_iter()
        .map(|(p, e)| {
            let q = p.pow(e);
            let cof = n / q;
            let cinv = if q == 1 { 0 } else { mod_inv((cof % q) as i64, q as i64).unwrap_or(0) as u64 };
            Axis { p, e, q, cof, cinv, phi: euler_phi(q) }
        })
        .collect()
}

fn components(ax: &[Axis], n: u64, k: u64) -> Vec<u64> {
    ax.iter().map(|a| ((k % n) as u128 * a.cinv as u128 % a.q as u128) as u64).collect()
}

fn compose(ax: &[Axis], n: u64, js: &[u64]) -> u64 {
    ax.iter().zip(js).fold(0u128, |acc, (a, &j)| (acc + j as u128 * a.cof as u128) % n as u128) as u64
}

/// Write ζ_n^k in the canonical basis as a list of (basis exponent, sign).
pub(crate) fn expand_power(ax: &[Axis], n: u64, k: u64) -> Vec<(u64, i64)> {
    let js = components(ax, n, k);
    let mut acc: Vec<(u64, i64)> = vec![(0, 1)];
    for (a, &j) in ax.iter().zip(&js) {
        let choices: Vec<(u64, i64)> = if j < a.phi {
            vec![(j, 1)]
        } else {
            let r = j - a.phi;
            let step = a.q / a.p;
            (0..a.p - 1).map(|s| (r + step * s, -1)).collect()
        };
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for &(k0, s0) in &acc {
            for &(j1, s1) in &choices {
                next.push(((k0 as u128 + j1 as u128 * a.cof as u128) as u64 % n, s0 * s1));
            }
        }
        acc = next;
    }
    acc
}

/// Exact element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    n: u64,
    c: BTreeMap<u64, BigRational>,
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum { n: 1, c: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = BTreeMap::new();
        if !r.is_zero() {
            c.insert(0, r);
        }
        CycloNum { n: 1, c }
    }

    /// ζ_n^k; `k` is reduced modulo `n`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity needs n ≥ 1");
        let k = k.rem_euclid(n as i64) as u64;
        Self::from_terms(n, std::iter::once((k, BigRational::one())))
    }

    /// Build Σ coef·ζ_n^k from arbitrary (not necessarily basis) exponents.
    pub fn from_terms<I: IntoIterator<Item = (u64, BigRational)>>(n: u64, terms: I) -> Self {
        let ax = axes(n);
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        let mut cache: HashMap<u64, Vec<(u64, i64)>> = HashMap::new();
        for (k, v) in terms {
            if v.is_zero() {
                continue;
            }
            let exp = cache.entry(k % n).or_insert_with(|| expand_power(&ax, n, k));
            for &(b, s) in exp.iter() {
                add_into(&mut acc, b, if s > 0 { v.clone() } else { -v.clone() });
            }
        }
        Self::reduce(n, acc)
    }

    /// Canonical exponent map in the field of conductor `n`, which must be
    /// in canonical basis form already.
    fn reduce(mut n: u64, mut c: BTreeMap<u64, BigRational>) -> Self {
        c.retain(|_, v| !v.is_zero());
        if c.is_empty() {
            return Self::zero();
        }
        loop {
            let ax = axes(n);
            let comps: Vec<(Vec<u64>, BigRational)> =
                c.iter().map(|(&k, v)| (components(&ax, n, k), v.clone())).collect();
            let mut changed = false;
            for (i, a) in ax.iter().enumerate() {
                let all_div = comps.iter().all(|(js, _)| js[i] % a.p == 0);
                let all_zero = comps.iter().all(|(js, _)| js[i] == 0);
                if (a.e >= 2 && all_div) || (a.e == 1 && all_zero) {
                    let n2 = n / a.p;
                    let ax2 = axes(n2);
                    let mut c2 = BTreeMap::new();
                    for (js, v) in &comps {
                        let mut js2: Vec<u64> = Vec::with_capacity(ax2.len());
                        for (l, &j) in js.iter().enumerate() {
                            if l != i {
                                js2.push(j);
                            } else if a.e >= 2 {
                                js2.push(j / a.p);
                            }
                        }
                        c2.insert(compose(&ax2, n2, &js2), v.clone());
                    }
                    n = n2;
                    c = c2;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return CycloNum { n, c };
            }
        }
    }

    /// Coefficients of `self` re-expressed in the field of conductor `big`
    /// (a multiple of the conductor).
    fn lifted(&self, big: u64) -> BTreeMap<u64, BigRational> {
        if big == self.n {
            return self.c.clone();
        }
        debug_assert_eq!(big % self.n, 0);
        let ax = axes(big);
        let f = big / self.n;
        let mut acc = BTreeMap::new();
        for (&k, v) in &self.c {
            for (b, s) in expand_power(&ax, big, k * f) {
                add_into(&mut acc, b, if s > 0 { v.clone() } else { -v.clone() });
            }
        }
        acc
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Canonical (basis exponent, coefficient) pairs, exponents ascending.
    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.c.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c.len() == 1 && self.c.get(&0).is_some_and(|v| v.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.n != 1 {
            return None;
        }
        Some(self.c.get(&0).cloned().unwrap_or_else(BigRational::zero))
    }

    /// The value as a machine integer when it is a rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return None;
        }
        i64::try_from(r.to_integer()).ok()
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let n = lcm(self.n, o.n);
        let mut a = self.lifted(n);
        for (k, v) in o.lifted(n) {
            add_into(&mut a, k, v);
        }
        Self::reduce(n, a)
    }

    pub fn neg(&self) -> Self {
        CycloNum { n: self.n, c: self.c.iter().map(|(&k, v)| (k, -v.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycloNum { n: self.n, c: self.c.iter().map(|(&k, v)| (k, v * r)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(r) = self.to_rational() {
            return o.scale(&r);
        }
        if let Some(r) = o.to_rational() {
            return self.scale(&r);
        }
        let n = lcm(self.n, o.n);
        let a = self.lifted(n);
        let b = o.lifted(n);
        let ax = axes(n);
        let mut cache: HashMap<u64, Vec<(u64, i64)>> = HashMap::new();
        let mut acc = BTreeMap::new();
        for (&k1, v1) in &a {
            for (&k2, v2) in &b {
                let k = (k1 + k2) % n;
                let prod = v1 * v2;
                let exp = cache.entry(k).or_insert_with(|| expand_power(&ax, n, k));
                for &(e, s) in exp.iter() {
                    add_into(&mut acc, e, if s > 0 { prod.clone() } else { -prod.clone() });
                }
            }
        }
        Self::reduce(n, acc)
    }

    /// Galois automorphism ζ ↦ ζ^a, for `a` coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n;
        let a = a.rem_euclid(n as i64) as u64;
        debug_assert_eq!(gcd(a.max(1), n), 1);
        Self::from_terms(n, self.c.iter().map(|(&k, v)| ((k * a) % n, v.clone())))
    }

    /// Complex conjugate (the Galois map ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let mut y = Self::one();
        for a in units(self.n) {
            if a != 1 {
                y = Self::mul(&y, &self.galois(a as i64));
            }
        }
        let norm = self.mul(&y).to_rational().ok_or_else(|| Error::Invariant("norm is not rational".into()))?;
        Ok(y.scale(&norm.recip()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mul(&r, &base);
            }
            base = Self::mul(&base, &base);
            e >>= 1;
        }
        Ok(r)
    }

    /// Double precision value Σ c_k e^{2πik/n}.
    pub fn embed(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&k, v) in &self.c {
            let x = ratio_to_f64(v);
            let th = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += x * th.cos();
            im += x * th.sin();
        }
        (re, im)
    }

    /// Deterministic ordering key.
    pub fn key(&self) -> String {
        let mut s = format!("{}:", self.n);
        for (k, v) in &self.c {
            s.push_str(&format!("{k}={v};"));
        }
        s
    }
}

fn add_into(m: &mut BTreeMap<u64, BigRational>, k: u64, v: BigRational) {
    match m.get_mut(&k) {
        Some(x) => {
            *x += v;
            if x.is_zero() {
                m.remove(&k);
            }
        }
        None => {
            if !v.is_zero() {
                m.insert(k, v);
            }
        }
    }
}

pub(crate) fn ratio_to_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        let n = v.numer().to_f64().unwrap_or(f64::NAN);
        let d = v.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| self.c.iter().cmp(other.c.iter()))
    }
}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloNum {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, o: &CycloNum) -> CycloNum {
                CycloNum::$m(self, o)
            }
        }
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                CycloNum::$m(&self, &o)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::neg(self)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::neg(&self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, v) in &self.c {
            let neg = v.is_negative();
            let a = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "z{}", self.n)?;
                if k != 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    n: u64,
    c: Vec<(u64, String)>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr { n: self.n, c: self.c.iter().map(|(&k, v)| (k, v.to_string())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.n == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let mut terms = Vec::with_capacity(r.c.len());
        for (k, v) in r.c {
            let q = parse_rational(&v).map_err(serde::de::Error::custom)?;
            terms.push((k, q));
        }
        Ok(CycloNum::from_terms(r.n, terms))
    }
}

/// Parse "p" or "p/q".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycloNum {
        CycloNum::root_of_unity(n, k)
    }

    #[test]
    fn basic_identities() {
        assert_eq!(z(4, 2), CycloNum::from_int(-1));
        let s2 = &z(8, 1) + &z(8, 7);
        assert_eq!(&s2 * &s2, CycloNum::from_int(2));
        assert_eq!((&CycloNum::one() + &z(3, 1)) * (&CycloNum::one() + &z(3, 2)), CycloNum::one());
        assert_eq!(&z(6, 1) + &z(6, 5), CycloNum::one());
        assert_eq!(z(2, 1).conductor(), 1);
    }

    #[test]
    fn conductor_is_minimal() {
        assert_eq!(z(12, 4).conductor(), 3);
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(10, 1).conductor(), 5);
        assert_eq!((&z(8, 1) + &z(8, 7)).conductor(), 8);
        assert_eq!((&z(5, 1) * &z(5, 4)).conductor(), 1);
        let mut sum = CycloNum::zero();
        for k in 0..15 {
            sum = &sum + &z(15, k);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_and_json() {
        let x = &z(5, 1) + &CycloNum::from_int(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let js = serde_json::to_string(&x).unwrap();
        let back: CycloNum = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert!(CycloNum::zero().inv().is_err());
    }
}
