//! Irreducible character tables.
//!
//! The production path peels irreducibles out of tensor products of the
//! natural character and their Galois conjugates. When peeling stops making
//! progress the table is completed by Dixon's method: the class-sum
//! structure constants are split into common eigenspaces modulo a prime
//! p ≡ 1 (mod E) and the resulting modular characters are lifted to
//! cyclotomic integers through the power maps. Both routes are exact and the
//! result is verified for row orthogonality.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grp::{ConjClassSet, FiniteMatrixGroup};
use crate::numth::{is_prime, mod_inv, mod_pow, primitive_root, units};

/// Per-class values of a class function.
pub type ClassFunction = Vec<CycloNum>;

/// Integral coordinates of a class function in a fixed field: one
/// coordinate vector per class.
pub type Coords = Vec<Vec<i128>>;

/// How a table was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Peeling,
    Dixon,
}

/// Irreducible character table; row 0 is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    #[serde(rename = "classes")]
    pub class_sizes: Vec<usize>,
    pub rows: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    pub exponent: u64,
    pub method: Method,
}

/// Value at class j of the natural character: the trace of the
/// representative.
pub fn natural_character(cs: &ConjClassSet) -> ClassFunction {
    cs.traces.clone()
}

/// (1/|G|) Σ_j |C_j|·φ_j·conj(ψ_j), exact.
pub fn inner_product(phi: &[CycloNum], psi: &[CycloNum], cs: &ConjClassSet) -> CycloNum {
    let mut s = CycloNum::zero();
    for ((a, b), &size) in phi.iter().zip(psi).zip(&cs.sizes) {
        s = s.add(&a.mul(&b.conj()).mul(&CycloNum::from_int(size as i64)));
    }
    s.mul(&CycloNum::from_frac(1, cs.group_order() as i64))
}

/// Fixed-field helper for class functions with integral coordinates.
pub(crate) struct Ctx<'a> {
    pub f: Field,
    pub cs: &'a ConjClassSet,
    order: i128,
}

impl<'a> Ctx<'a> {
    pub fn new(cs: &'a ConjClassSet) -> Self {
        Ctx { f: Field::new(cs.exponent), cs, order: cs.group_order() as i128 }
    }

    pub fn mul(&self, a: &Coords, b: &Coords) -> Result<Coords> {
        a.iter().zip(b).map(|(x, y)| self.f.mul_coords(x, y)).collect()
    }

    pub fn conj(&self, a: &Coords) -> Coords {
        self.galois(a, -1)
    }

    pub fn galois(&self, a: &Coords, s: i64) -> Coords {
        a.iter().map(|x| self.f.galois_coords(x, s)).collect()
    }

    /// |G|·⟨a, b⟩ as a rational integer.
    pub fn ip_scaled(&self, a: &Coords, b: &Coords) -> Result<i128> {
        let mut acc = vec![0i128; self.f.dim()];
        for ((x, y), &size) in a.iter().zip(b).zip(&self.cs.sizes) {
            let yc = self.f.galois_coords(y, -1);
            let sx: Vec<i128> = x.iter().map(|v| v * size as i128).collect();
            self.f.fma_coords(&mut acc, &sx, &yc)?;
        }
        self.f.coords_rational(&acc).ok_or_else(|| Error::Invariant("inner product is not rational".into()))
    }

    /// ⟨a, b⟩ for virtual characters (must be an integer).
    pub fn ip(&self, a: &Coords, b: &Coords) -> Result<i128> {
        let v = self.ip_scaled(a, b)?;
        if v % self.order != 0 {
            return Err(Error::Invariant("inner product of virtual characters is not an integer".into()));
        }
        Ok(v / self.order)
    }

    pub fn sub_scaled(&self, a: &Coords, b: &Coords, k: i128) -> Result<Coords> {
        let ovf = || Error::Overflow("class function");
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                x.iter().zip(y).map(|(u, v)| v.checked_mul(k).and_then(|w| u.checked_sub(w)).ok_or_else(ovf)).collect()
            })
            .collect()
    }

    pub fn degree(&self, a: &Coords) -> Option<i128> {
        self.f.coords_rational(&a[0])
    }

    pub fn to_cyclo(&self, a: &Coords) -> ClassFunction {
        a.iter().map(|x| self.f.coords_to_cyclo(x, 1)).collect()
    }

    #[allow(clippy::wrong_self_convention)]
    pub fn from_cyclo(&self, a: &[CycloNum]) -> Result<Coords> {
        a.iter()
            .map(|c| {
                let e = self.f.from_cyclo(c)?;
                if e.den != 1 {
                    return Err(Error::Invariant("character value is not integral".into()));
                }
                Ok(e.num)
            })
            .collect()
    }

    /// Natural character from the eigenvalues, checked against the traces.
    pub fn natural(&self) -> Result<Coords> {
        let e = self.cs.exponent;
        let mut out = Vec::with_capacity(self.cs.len());
        for (c, ev) in self.cs.eigen.iter().enumerate() {
            let mut acc = vec![0i128; self.f.dim()];
            for &x in ev {
                for (a, b) in acc.iter_mut().zip(&self.f.root((x % e) as i64).num) {
                    *a += b;
                }
            }
            if self.f.coords_to_cyclo(&acc, 1) != self.cs.traces[c] {
                return Err(Error::Invariant(format!("class {c}: eigenvalues do not sum to the trace")));
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Character table by tensor peeling alone. Fails with
/// [`Error::PeelingStalled`] when no new irreducible appears within
/// 10·(#classes) consecutive steps.
pub fn peel(cs: &ConjClassSet) -> Result<Vec<ClassFunction>> {
    let ctx = Ctx::new(cs);
    let (found, complete) = peel_coords(&ctx)?;
    if !complete {
        return Err(Error::PeelingStalled);
    }
    Ok(found.iter().map(|r| ctx.to_cyclo(r)).collect())
}

fn peel_coords(ctx: &Ctx) -> Result<(Vec<Coords>, bool)> {
    let k = ctx.cs.len();
    let chi = ctx.natural()?;
    let chib = ctx.conj(&chi);
    let trivial: Coords = (0..k).map(|_| ctx.f.one().num).collect();
    let mut found = vec![trivial];
    let mut seen: HashSet<Coords> = HashSet::new();
    let mut work: VecDeque<Coords> = VecDeque::from([chi.clone(), chib.clone()]);
    let mut retry: Vec<Coords> = Vec::new();
    let galois: Vec<i64> = units(ctx.cs.exponent).into_iter().filter(|&a| a > 1).map(|a| a as i64).collect();
    let cap = 10 * k;
    let mut idle = 0;
    let mut grew = false;
    // Coefficient overflow ends peeling; the caller completes the table.
    macro_rules! stall {
        ($l:lifetime, $e:expr) => {
            match $e {
                Ok(v) => v,
                Err(Error::Overflow(_)) => break $l,
                Err(e) => return Err(e),
            }
        };
    }
    let order = ctx.cs.group_order() as i128;
    'peel: while found.len() < k {
        let theta = match work.pop_front() {
            Some(t) => t,
            None if grew && !retry.is_empty() => {
                work.extend(retry.drain(..));
                grew = false;
                continue;
            }
            None => break,
        };
        if idle > cap {
            break;
        }
        let mut rho = theta;
        for f in &found {
            let c = stall!('peel, ctx.ip(&rho, f));
            if c != 0 {
                rho = stall!('peel, ctx.sub_scaled(&rho, f, c));
            }
        }
        if !seen.insert(rho.clone()) {
            idle += 1;
            continue;
        }
        let n = stall!('peel, ctx.ip(&rho, &rho));
        if n == 0 {
            idle += 1;
            continue;
        }
        if n == 1 {
            if ctx.degree(&rho).is_some_and(|d| d < 0) {
                rho = rho.iter().map(|x| x.iter().map(|v| -v).collect()).collect();
            }
            work.push_back(stall!('peel, ctx.mul(&rho, &chi)));
            work.push_back(stall!('peel, ctx.mul(&rho, &chib)));
            work.push_back(ctx.conj(&rho));
            for &a in &galois {
                work.push_back(ctx.galois(&rho, a));
            }
            found.push(rho);
            idle = 0;
            grew = true;
        } else {
            // Remainders larger than the regular character carry no new
            // information worth the coefficient growth.
            if ctx.degree(&rho).is_some_and(|d| d.abs() * 3 <= order) {
                work.push_back(stall!('peel, ctx.mul(&rho, &chi)));
                work.push_back(stall!('peel, ctx.mul(&rho, &chib)));
            }
            retry.push(rho);
            idle += 1;
        }
    }
    let complete = found.len() == k;
    Ok((found, complete))
}

/// Character table by Dixon's modular method alone.
pub fn dixon(g: &FiniteMatrixGroup, cs: &ConjClassSet) -> Result<Vec<ClassFunction>> {
    let ctx = Ctx::new(cs);
    Ok(dixon_coords(g, &ctx)?.iter().map(|r| ctx.to_cyclo(r)).collect())
}

fn dixon_coords(g: &FiniteMatrixGroup, ctx: &Ctx) -> Result<Vec<Coords>> {
    let cs = ctx.cs;
    let k = cs.len();
    let n = cs.group_order() as u64;
    let e = cs.exponent;
    let root_n = (n as f64).sqrt() as u64 + 1;
    let mut p = e + 1;
    while !(is_prime(p) && p > 2 * root_n + 2) {
        p += e;
    }
    let zp = primitive_root(p);
    let inv = |a: u64| mod_inv((a % p) as i64, p as i64).map(|v| v as u64).ok_or(Error::DivisionByZero);

    // spaces: column bases (k × d) of common eigenspaces.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for r in 1..k {
        if spaces.iter().all(|s| s[0].len() == 1) {
            break;
        }
        let m = class_matrix(g, cs, r)?;
        let mut next = Vec::new();
        for s in spaces {
            let d = s[0].len();
            if d == 1 {
                next.push(s);
                continue;
            }
            let ms: Vec<Vec<u64>> = (0..k)
                .map(|t| (0..d).map(|c| (0..k).fold(0u64, |acc, u| (acc + m[t][u] % p * s[u][c]) % p)).collect())
                .collect();
            let x = solve_mod(&s, &ms, p)?;
            let mut dims = 0;
            for lam in 0..p {
                let y: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| (x[i][j] + if i == j { p - lam } else { 0 }) % p).collect())
                    .collect();
                let ns = nullspace_mod(&y, p);
                if ns.is_empty() {
                    continue;
                }
                dims += ns.len();
                // new basis = s · ns (k × |ns|)
                let nb: Vec<Vec<u64>> = (0..k)
                    .map(|t| ns.iter().map(|v| (0..d).fold(0u64, |acc, c| (acc + s[t][c] * v[c]) % p)).collect())
                    .collect();
                next.push(nb);
                if dims == d {
                    break;
                }
            }
            if dims != d {
                return Err(Error::Invariant("class matrix is not diagonalizable modulo p".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s[0].len() != 1) {
        return Err(Error::Invariant("class matrices did not separate the characters".into()));
    }
    let mut rows = Vec::with_capacity(k);
    for s in &spaces {
        let w0 = s[0][0];
        let i0 = inv(w0)?;
        let w: Vec<u64> = s.iter().map(|row| row[0] * i0 % p).collect();
        let mut tot = 0u64;
        for t in 0..k {
            tot = (tot + w[t] * w[cs.inverse(t)] % p * inv(cs.sizes[t] as u64)?) % p;
        }
        let d2 = n % p * inv(tot)? % p;
        let cands: Vec<u64> = (1..=root_n).filter(|&d| d * d <= n && n.is_multiple_of(d) && d * d % p == d2).collect();
        if cands.len() != 1 {
            return Err(Error::Invariant("character degree is not determined modulo p".into()));
        }
        let deg = cands[0];
        let chi: Vec<u64> = (0..k).map(|t| Ok(deg * w[t] % p * inv(cs.sizes[t] as u64)? % p)).collect::<Result<_>>()?;
        let mut row = Vec::with_capacity(k);
        for t in 0..k {
            let o = cs.orders[t];
            let zo = mod_pow(zp, (p - 1) / o, p);
            let io = inv(o)?;
            let mut acc = vec![0i128; ctx.f.dim()];
            for kk in 0..o {
                let mut m = 0u64;
                for l in 0..o {
                    let ex = (o - (kk * l) % o) % o;
                    m = (m + chi[cs.powers[t][l as usize]] * mod_pow(zo, ex, p)) % p;
                }
                let m = m * io % p;
                if m > deg {
                    return Err(Error::Invariant("eigenvalue multiplicity exceeds the degree".into()));
                }
                if m > 0 {
                    let r = ctx.f.root((kk * (e / o)) as i64);
                    for (a, b) in acc.iter_mut().zip(&r.num) {
                        *a += b * m as i128;
                    }
                }
            }
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// c_{t,s} = #{y ∈ C_{r*} : y·g_s ∈ C_t}
fn class_matrix(g: &FiniteMatrixGroup, cs: &ConjClassSet, r: usize) -> Result<Vec<Vec<u64>>> {
    let k = cs.len();
    let mut m = vec![vec![0u64; k]; k];
    for &y in &cs.members[cs.inverse(r)] {
        for s in 0..k {
            let t = cs.class_of[g.mul(y, cs.reps[s])?];
            m[t][s] += 1;
        }
    }
    Ok(m)
}

/// Solve S·X = B modulo p for S of full column rank (k × d).
fn solve_mod(s: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Result<Vec<Vec<u64>>> {
    let k = s.len();
    let d = s[0].len();
    let m = b[0].len();
    let mut a: Vec<Vec<u64>> = (0..k).map(|i| s[i].iter().chain(&b[i]).map(|v| v % p).collect()).collect();
    let mut r = 0;
    #[allow(clippy::explicit_counter_loop)]
    for c in 0..d {
        let pr = (r..k)
            .find(|&i| a[i][c] != 0)
            .ok_or_else(|| Error::Invariant("eigenspace basis is rank deficient".into()))?;
        a.swap(r, pr);
        let iv = mod_inv(a[r][c] as i64, p as i64).expect("nonzero pivot") as u64;
        for v in a[r].iter_mut() {
            *v = *v * iv % p;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    Ok((0..d).map(|i| a[i][d..d + m].to_vec()).collect())
}

/// Basis of the right null space of a square matrix modulo p.
fn nullspace_mod(y: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = y.len();
    let mut a: Vec<Vec<u64>> = y.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let mut piv = Vec::new();
    let mut r = 0;
    #[allow(clippy::explicit_counter_loop)]
    for c in 0..d {
        let Some(pr) = (r..d).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let iv = mod_inv(a[r][c] as i64, p as i64).expect("nonzero pivot") as u64;
        for v in a[r].iter_mut() {
            *v = *v * iv % p;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, yv) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * yv % p) % p;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (i, &c) in piv.iter().enumerate() {
                v[c] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Full character table: peeling, completed by Dixon's method on stall.
pub fn character_table(g: &FiniteMatrixGroup, cs: &ConjClassSet) -> Result<CharacterTable> {
    let ctx = Ctx::new(cs);
    let (peeled, complete) = peel_coords(&ctx)?;
    let (rows, method) = if complete {
        (peeled, Method::Peeling)
    } else {
        let full = dixon_coords(g, &ctx)?;
        for r in &peeled {
            if !full.contains(r) {
                return Err(Error::Invariant("peeled character missing from the modular table".into()));
            }
        }
        (full, Method::Dixon)
    };
    finish(&ctx, rows, method)
}

/// Sort rows canonically and verify the table.
fn finish(ctx: &Ctx, rows: Vec<Coords>, method: Method) -> Result<CharacterTable> {
    let cs = ctx.cs;
    let k = cs.len();
    if rows.len() != k {
        return Err(Error::Invariant(format!("{} characters for {k} classes", rows.len())));
    }
    let mut tagged: Vec<(bool, u64, ClassFunction, Coords)> = Vec::with_capacity(k);
    for r in rows {
        let deg = ctx
            .degree(&r)
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::Invariant("degree is not a positive integer".into()))?;
        let cf = ctx.to_cyclo(&r);
        let trivial = cf.iter().all(|v| v.is_one());
        tagged.push((!trivial, deg as u64, cf, r));
    }
    tagged.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    if tagged[0].0 {
        return Err(Error::Invariant("trivial character missing".into()));
    }
    let coords: Vec<Coords> = tagged.iter().map(|t| t.3.clone()).collect();
    verify_orthogonality(ctx, &coords)?;
    let degrees: Vec<u64> = tagged.iter().map(|t| t.1).collect();
    let n = cs.group_order() as u64;
    if degrees.iter().map(|d| d * d).sum::<u64>() != n || degrees.iter().any(|d| !n.is_multiple_of(*d)) {
        return Err(Error::Invariant("degrees are inconsistent with the group order".into()));
    }
    Ok(CharacterTable {
        class_sizes: cs.sizes.clone(),
        rows: tagged.into_iter().map(|t| t.2).collect(),
        degrees,
        exponent: cs.exponent,
        method,
    })
}

fn verify_orthogonality(ctx: &Ctx, rows: &[Coords]) -> Result<()> {
    let n = ctx.cs.group_order() as i128;
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i) {
            let v = ctx.ip_scaled(a, b)?;
            if v != if i == j { n } else { 0 } {
                return Err(Error::Invariant(format!("rows {i} and {j} are not orthonormal")));
            }
        }
    }
    Ok(())
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows as integral coordinates in Q(ζ_E).
    pub(crate) fn coords(&self, ctx: &Ctx) -> Result<Vec<Coords>> {
        self.rows.iter().map(|r| ctx.from_cyclo(r)).collect()
    }

    /// Exact row orthogonality ⟨χ_i, χ_j⟩ = δ_ij.
    pub fn check_rows(&self, cs: &ConjClassSet) -> Result<()> {
        let ctx = Ctx::new(cs);
        verify_orthogonality(&ctx, &self.coords(&ctx)?)
    }

    /// Exact column orthogonality Σ_i χ_i(g_j)·conj(χ_i(g_k)) = δ_jk·|G|/|C_j|.
    pub fn check_columns(&self, cs: &ConjClassSet) -> Result<()> {
        let ctx = Ctx::new(cs);
        let rows = self.coords(&ctx)?;
        let k = cs.len();
        let n = cs.group_order() as i128;
        for j in 0..k {
            for l in j..k {
                let mut acc = vec![0i128; ctx.f.dim()];
                for r in &rows {
                    ctx.f.fma_coords(&mut acc, &r[j], &ctx.f.galois_coords(&r[l], -1))?;
                }
                let want = if j == l { n / cs.sizes[j] as i128 } else { 0 };
                if ctx.f.coords_rational(&acc) != Some(want) {
                    return Err(Error::Invariant(format!("columns {j} and {l} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// Permutation of rows induced by complex conjugation.
    pub fn conjugation_perm(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| {
                let c: ClassFunction = r.iter().map(|v| v.conj()).collect();
                self.rows.iter().position(|s| *s == c).expect("conjugate of an irreducible is irreducible")
            })
            .collect()
    }

    /// Canonical table from rows in any order (sorted and verified).
    pub fn from_rows(cs: &ConjClassSet, rows: Vec<ClassFunction>, method: Method) -> Result<Self> {
        let ctx = Ctx::new(cs);
        let coords = rows.iter().map(|r| ctx.from_cyclo(r)).collect::<Result<Vec<_>>>()?;
        finish(&ctx, coords, method)
    }
}
