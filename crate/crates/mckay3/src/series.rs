//! Closed-form generating series of branching multiplicities, their power
//! series expansion, and Molien series.
//!
//! For a subgroup of SL3, P_i(t,u) = Σ_{m,n} m_i(m,n)·t^m·u^n equals
//! Σ_j (|C_j|/|G|)·χ_i(g_j)·(1 − tu) / (∏(1 − tα⁻¹)·∏(1 − uα)), with α over
//! the eigenvalues of g_j. Over a common denominator D(t)·D(u), where
//! D = ∏ Φ_d^{e_d}, every numerator has rational integer coefficients. For
//! SL2 the class factor is 1/((1 − tα)(1 − tα⁻¹)) and there is no u.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chartab::{CharacterTable, Coords, Ctx};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grp::ConjClassSet;
use crate::numth::gcd;
use crate::poly::{CycloFactors, ZBiPoly, ZPoly};
use crate::weyl::MultTable;

/// Rational generating functions N_i(t,u) / (D_t(t)·D_u(u)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBranchingSeries {
    /// 2 or 3.
    pub rank: usize,
    /// Numerators; for SL3 they contain the factor (1 − tu).
    pub numerators: Vec<ZBiPoly>,
    pub den_t: CycloFactors,
    /// Empty for SL2.
    pub den_u: CycloFactors,
}

/// Root-of-unity exponents r (mod E) of the linear factors (1 − ζ_E^r·x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFactor {
    pub t_roots: Vec<u64>,
    pub u_roots: Vec<u64>,
}

/// Linear factors of the class term: for SL3, 1 − χ̄t + χt² − t³ =
/// ∏(1 − tα⁻¹) and 1 − χu + χ̄u² − u³ = ∏(1 − uα); for SL2,
/// (1 − tα)(1 − tα⁻¹) in t only.
pub fn per_class_factor(eigen: &[u64], exponent: u64) -> ClassFactor {
    let e = exponent;
    let neg: Vec<u64> = eigen.iter().map(|&x| (e - x % e) % e).collect();
    let pos: Vec<u64> = eigen.iter().map(|&x| x % e).collect();
    if eigen.len() == 2 {
        ClassFactor { t_roots: neg, u_roots: Vec::new() }
    } else {
        ClassFactor { t_roots: neg, u_roots: pos }
    }
}

fn root_order(r: u64, e: u64) -> u64 {
    e / gcd(r, e)
}

/// Smallest ∏Φ_d^{e_d} divisible by every class's product of linear
/// factors, with e_d the largest multiplicity of any root of order d.
fn common_denominator(root_lists: &[Vec<u64>], e: u64) -> CycloFactors {
    let mut ex: BTreeMap<u64, u32> = BTreeMap::new();
    for roots in root_lists {
        let mut cnt: BTreeMap<u64, u32> = BTreeMap::new();
        for &r in roots {
            *cnt.entry(r).or_default() += 1;
        }
        for (r, c) in cnt {
            let d = root_order(r, e);
            let v = ex.entry(d).or_default();
            *v = (*v).max(c);
        }
    }
    CycloFactors(ex)
}

/// Coefficients (in Z[ζ_E]) of D(x) / ∏_{r ∈ roots}(1 − ζ^r·x).
fn cofactor(f: &Field, den: &CycloFactors, roots: &[u64]) -> Result<Vec<Vec<i128>>> {
    let e = f.conductor();
    let mut need: BTreeMap<u64, u32> = BTreeMap::new();
    for r in 0..e {
        let d = root_order(r, e);
        if let Some(&k) = den.0.get(&d) {
            need.insert(r, k);
        }
    }
    for &r in roots {
        let k = need
            .get_mut(&r)
            .filter(|k| **k > 0)
            .ok_or_else(|| Error::Invariant("root missing from denominator".into()))?;
        *k -= 1;
    }
    // D(x) = (−1)^{e_1}·∏_r (1 − ζ^r x)^{e_{ord r}}
    let sign = if den.0.get(&1).copied().unwrap_or(0) % 2 == 1 { -1 } else { 1 };
    let mut poly: Vec<Vec<i128>> = vec![f.from_int(sign).num];
    for (&r, &k) in &need {
        let z = f.root(r as i64).num;
        for _ in 0..k {
            let mut next = poly.clone();
            next.push(vec![0; f.dim()]);
            for (i, c) in poly.iter().enumerate() {
                let zc = f.mul_coords(&z, c)?;
                for (a, b) in next[i + 1].iter_mut().zip(&zc) {
                    *a -= b;
                }
            }
            poly = next;
        }
    }
    Ok(poly)
}

fn to_integer(f: &Field, x: &[i128], n: i128) -> Result<BigInt> {
    let v = f.coords_rational(x).ok_or(Error::NonIntegerNumerator)?;
    if v % n != 0 {
        return Err(Error::NonIntegerNumerator);
    }
    Ok(BigInt::from(v / n))
}

fn dot(x: &[i128], y: &[i128]) -> Result<i128> {
    x.iter()
        .zip(y)
        .try_fold(0i128, |acc, (a, b)| {
            if *a == 0 || *b == 0 {
                return Some(acc);
            }
            acc.checked_add(a.checked_mul(*b)?)
        })
        .ok_or(Error::Overflow("series assembly"))
}

fn mat_vec(m: &[Vec<i128>], y: &[i128]) -> Result<Vec<i128>> {
    m.iter().map(|row| dot(row, y)).collect()
}

/// Assemble the closed form over the common cyclotomic denominator and
/// cancel every Φ_d that divides all numerators.
pub fn closed_form(cs: &ConjClassSet, t: &CharacterTable) -> Result<RationalBranchingSeries> {
    let ctx = Ctx::new(cs);
    let f = &ctx.f;
    let rows: Vec<Coords> = t.coords(&ctx)?;
    let e = cs.exponent;
    let rank = cs.eigen.first().map_or(3, |v| v.len());
    let factors: Vec<ClassFactor> = cs.eigen.iter().map(|ev| per_class_factor(ev, e)).collect();
    let den_t = common_denominator(&factors.iter().map(|c| c.t_roots.clone()).collect::<Vec<_>>(), e);
    let den_u = common_denominator(&factors.iter().map(|c| c.u_roots.clone()).collect::<Vec<_>>(), e);
    let n = cs.group_order() as i128;
    let dim = f.dim();

    // Each numerator coefficient S is rational, so S = Tr(S)/φ(E), and
    // Tr(w·x·y) = (w·x)ᵀ·M·y with M the trace form. Per class j the t-side
    // cofactor Q_j(t) is scaled by |C_j|·χ_i(g_j) and the u-side cofactor is
    // pre-multiplied by M, so no bivariate product in Z[ζ_E] is formed.
    let m = f.trace_form();
    let phi = dim as i128;
    let mut qts: Vec<Vec<Vec<i128>>> = Vec::with_capacity(cs.len());
    let mut zus: Vec<Vec<Vec<i128>>> = Vec::with_capacity(cs.len());
    for (j, fac) in factors.iter().enumerate() {
        let size = cs.sizes[j] as i128;
        let qt = cofactor(f, &den_t, &fac.t_roots)?;
        qts.push(
            qt.iter()
                .map(|x| x.iter().map(|v| v.checked_mul(size).ok_or(Error::Overflow("series assembly"))).collect())
                .collect::<Result<_>>()?,
        );
        let qu = if rank == 3 { cofactor(f, &den_u, &fac.u_roots)? } else { vec![f.one().num] };
        zus.push(qu.iter().map(|y| mat_vec(&m, y)).collect::<Result<_>>()?);
    }
    let da = qts.iter().map(Vec::len).max().unwrap_or(1);
    let db = zus.iter().map(Vec::len).max().unwrap_or(1);
    let one_minus_tu = ZBiPoly::from_terms([((0, 0), BigInt::one()), ((1, 1), BigInt::from(-1))]);
    let mut numerators = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut acc = vec![vec![0i128; db]; da];
        for (j, qt) in qts.iter().enumerate() {
            for (a, x) in qt.iter().enumerate() {
                let y = f.mul_coords(&row[j], x)?;
                for (b, z) in zus[j].iter().enumerate() {
                    acc[a][b] = acc[a][b].checked_add(dot(&y, z)?).ok_or(Error::Overflow("series assembly"))?;
                }
            }
        }
        let mut terms = Vec::new();
        for (a, line) in acc.iter().enumerate() {
            for (b, &v) in line.iter().enumerate() {
                if v % (phi * n) != 0 {
                    return Err(Error::NonIntegerNumerator);
                }
                if v != 0 {
                    terms.push(((a as u32, b as u32), BigInt::from(v / (phi * n))));
                }
            }
        }
        let p = ZBiPoly::from_terms(terms);
        numerators.push(if rank == 3 { p.mul(&one_minus_tu) } else { p });
    }
    let mut s = RationalBranchingSeries { rank, numerators, den_t, den_u };
    s.cancel();
    Ok(s)
}

impl RationalBranchingSeries {
    /// Remove Φ_d factors dividing every numerator, in t and in u.
    fn cancel(&mut self) {
        loop {
            let mut changed = false;
            let ds: Vec<u64> = self.den_t.0.keys().copied().collect();
            for d in ds {
                let phi = ZPoly::cyclotomic(d);
                let q: Option<Vec<ZBiPoly>> = self.numerators.iter().map(|p| p.div_exact_t(&phi)).collect();
                if let Some(q) = q {
                    self.numerators = q;
                    dec(&mut self.den_t, d);
                    changed = true;
                }
            }
            let ds: Vec<u64> = self.den_u.0.keys().copied().collect();
            for d in ds {
                let phi = ZPoly::cyclotomic(d);
                let q: Option<Vec<ZBiPoly>> = self.numerators.iter().map(|p| p.div_exact_u(&phi)).collect();
                if let Some(q) = q {
                    self.numerators = q;
                    dec(&mut self.den_u, d);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn den_t_poly(&self) -> ZPoly {
        self.den_t.expand()
    }

    pub fn den_u_poly(&self) -> ZPoly {
        self.den_u.expand()
    }

    /// Numerators with the factor (1 − tu) removed (SL3 only).
    pub fn m_numerators(&self) -> Option<Vec<ZBiPoly>> {
        if self.rank != 3 {
            return None;
        }
        let one_minus_tu = ZBiPoly::from_terms([((0, 0), BigInt::one()), ((1, 1), BigInt::from(-1))]);
        self.numerators
            .iter()
            .map(|p| {
                // q_{a,b} = p_{a,b} + q_{a-1,b-1}; keys iterate lexicographically.
                let da = p.degree_t().unwrap_or(0);
                let db = p.degree_u().unwrap_or(0);
                let mut q: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
                for a in 0..=da {
                    for b in 0..=db {
                        let mut v = p.coeff(a, b);
                        if a > 0 && b > 0 {
                            if let Some(x) = q.get(&(a - 1, b - 1)) {
                                v += x;
                            }
                        }
                        if !v.is_zero() {
                            q.insert((a, b), v);
                        }
                    }
                }
                let q = ZBiPoly::from_terms(q);
                (q.mul(&one_minus_tu) == *p).then_some(q)
            })
            .collect()
    }

    /// Power-series coefficients for every weight up to `level`.
    pub fn expand(&self, level: u32) -> Result<MultTable> {
        let len = level as usize + 1;
        let it = self
            .den_t_poly()
            .series_inverse(len)
            .ok_or_else(|| Error::Invariant("denominator is not invertible".into()))?;
        let iu = if self.rank == 3 {
            self.den_u_poly()
                .series_inverse(len)
                .ok_or_else(|| Error::Invariant("denominator is not invertible".into()))?
        } else {
            vec![BigInt::one()]
        };
        let k = self.numerators.len();
        let mut v: BTreeMap<(u32, u32), Vec<i64>> = BTreeMap::new();
        for (i, num) in self.numerators.iter().enumerate() {
            let mut grid = vec![vec![BigInt::zero(); len]; len];
            for ((a, b), c) in num.terms() {
                let (a, b) = (a as usize, b as usize);
                if a + b > level as usize {
                    continue;
                }
                for x in 0..len - a - b {
                    if it[x].is_zero() {
                        continue;
                    }
                    let cx = c * &it[x];
                    for (y, iy) in iu.iter().enumerate().take(len - a - b - x) {
                        if !iy.is_zero() {
                            grid[a + x][b + y] += &cx * iy;
                        }
                    }
                }
            }
            for a in 0..len {
                for b in 0..len - a {
                    if self.rank == 2 && b > 0 {
                        continue;
                    }
                    let val = grid[a][b].to_i64().ok_or(Error::Overflow("series expansion"))?;
                    v.entry((a as u32, b as u32)).or_insert_with(|| vec![0; k])[i] = val;
                }
            }
        }
        Ok(MultTable { rank: self.rank, level, v })
    }

    /// SL2: the smallest (a, b), a ≤ b, ordered by (a + b, b), with
    /// D | (1 − t^a)(1 − t^b) and all rewritten numerators nonnegative.
    pub fn binomial_presentation(&self) -> Option<(u64, u64, Vec<ZPoly>)> {
        if self.rank != 2 {
            return None;
        }
        for s in 2..=400u64 {
            for a in 1..=s / 2 {
                let b = s - a;
                let full = CycloFactors::of_one_minus_power(a).mul(&CycloFactors::of_one_minus_power(b));
                let Some(co) = full.div(&self.den_t) else { continue };
                let cp = co.expand();
                let nums: Vec<ZPoly> = self.numerators.iter().map(|p| p.at_u0().mul(&cp)).collect();
                if nums.iter().all(|p| p.coeffs().iter().all(|c| *c >= BigInt::zero())) {
                    return Some((a, b, nums));
                }
            }
        }
        None
    }

    /// Check P_i(u,t) = P_{σ(i)}(t,u) for the given permutation.
    pub fn check_swap(&self, sigma: &[usize]) -> Result<()> {
        if self.rank != 3 {
            return Ok(());
        }
        if self.den_t != self.den_u {
            return Err(Error::Invariant("t and u denominators differ".into()));
        }
        for (i, &s) in sigma.iter().enumerate() {
            if self.numerators[i].swap() != self.numerators[s] {
                return Err(Error::Invariant(format!("swap symmetry fails for {i}")));
            }
        }
        Ok(())
    }

    /// The section P_0(t, 0) as numerator over ∏Φ_d(t)^{e_d}, with the
    /// constant D_u(0) folded into the numerator.
    pub fn t_section_0(&self) -> (ZPoly, CycloFactors) {
        let d0 = if self.rank == 3 { self.den_u_poly().coeff(0) } else { BigInt::one() };
        (self.numerators[0].at_u0().scale(&d0), self.den_t.clone())
    }

    /// Plain-text rendering in factored style.
    pub fn to_text(&self) -> String {
        let mut s = format!("D(t) = {}\n", self.den_t.display("t"));
        if self.rank == 3 {
            s.push_str(&format!("D(u) = {}\n", self.den_u.display("u")));
            for (i, p) in self.numerators.iter().enumerate() {
                s.push_str(&format!("N_{i}(t,u) = {}\n", p.display("t", "u")));
            }
        } else {
            if let Some((a, b, nums)) = self.binomial_presentation() {
                s.push_str(&format!("binomial form:\nD(t) = (1-t^{a})*(1-t^{b})\n"));
                for (i, p) in nums.iter().enumerate() {
                    s.push_str(&format!("N_{i}(t) = {}\n", p.display("t")));
                }
                return s;
            }
            for (i, p) in self.numerators.iter().enumerate() {
                s.push_str(&format!("N_{i}(t) = {}\n", p.at_u0().display("t")));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let nums: Vec<Value> = self
            .numerators
            .iter()
            .map(|p| {
                let m: serde_json::Map<String, Value> = p
                    .terms()
                    .map(|((a, b), c)| {
                        let v = c.to_i64().map(Value::from).unwrap_or_else(|| Value::from(c.to_string()));
                        (format!("{a},{b}"), v)
                    })
                    .collect();
                Value::Object(m)
            })
            .collect();
        let mut obj = json!({
            "rank": self.rank,
            "den_t": {"phi": self.den_t.0},
            "numerators": nums,
        });
        if self.rank == 3 {
            obj["den_u"] = json!({"phi": self.den_u.0});
        }
        if let Some((a, b, ns)) = self.binomial_presentation() {
            obj["binomial"] = json!({
                "den": [a, b],
                "numerators": ns.iter().map(|p| p.display("t")).collect::<Vec<_>>(),
            });
        }
        obj
    }
}

fn dec(f: &mut CycloFactors, d: u64) {
    if let Some(e) = f.0.get_mut(&d) {
        *e -= 1;
        if *e == 0 {
            f.0.remove(&d);
        }
    }
}

/// Molien series (1/|G|) Σ_j |C_j| / det(I − t·g_j) as a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Molien {
    pub num: ZPoly,
    pub den: CycloFactors,
}

pub fn molien(cs: &ConjClassSet) -> Result<Molien> {
    let e = cs.exponent;
    let f = Field::new(e);
    let roots: Vec<Vec<u64>> = cs.eigen.iter().map(|ev| ev.iter().map(|&x| x % e).collect()).collect();
    let mut den = common_denominator(&roots, e);
    let n = cs.group_order() as i128;
    let mut acc: Vec<Vec<i128>> = Vec::new();
    for (j, r) in roots.iter().enumerate() {
        let q = cofactor(&f, &den, r)?;
        if acc.len() < q.len() {
            acc.resize(q.len(), vec![0; f.dim()]);
        }
        for (a, x) in acc.iter_mut().zip(&q) {
            for (u, v) in a.iter_mut().zip(x) {
                *u += v * cs.sizes[j] as i128;
            }
        }
    }
    let coeffs = acc.iter().map(|x| to_integer(&f, x, n)).collect::<Result<Vec<_>>>()?;
    let mut num = ZPoly::from_coeffs(coeffs);
    loop {
        let mut changed = false;
        let ds: Vec<u64> = den.0.keys().copied().collect();
        for d in ds {
            if let Some(q) = num.div_exact(&ZPoly::cyclotomic(d)) {
                num = q;
                dec(&mut den, d);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Molien { num, den })
}

impl Molien {
    /// a/b = c/d by cross-multiplication.
    pub fn equals(&self, num: &ZPoly, den: &ZPoly) -> bool {
        self.num.mul(den) == num.mul(&self.den.expand())
    }

    pub fn to_text(&self) -> String {
        format!("({}) / ({})", self.num.display("t"), self.den.display("t"))
    }
}
