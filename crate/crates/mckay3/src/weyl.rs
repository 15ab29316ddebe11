//! Characters of irreducible SL2/SL3 modules at group elements, and
//! branching multiplicities by two independent methods: averaging the
//! Jacobi–Trudi character against the table (direct), and the McKay-matrix
//! recursion.
//!
//! Multiplicity tables are keyed by (a, b), the exponents of t and u in the
//! generating series. For SL3, V(a·ϖ₁ + b·ϖ₂) sits at (a, b); for SL2, the
//! module of highest weight n sits at (n, 0).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chartab::{CharacterTable, Ctx};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{Exact, Ring};
use crate::grp::ConjClassSet;
use crate::mckay::IMat;

/// h_0 … h_{len−1} in three variables with elementary symmetric values
/// e1, e2, e3: h_k = e1·h_{k−1} − e2·h_{k−2} + e3·h_{k−3}.
pub fn complete_homogeneous<R: Ring>(r: &R, e1: &R::E, e2: &R::E, e3: &R::E, len: usize) -> Result<Vec<R::E>> {
    let mut h: Vec<R::E> = Vec::with_capacity(len);
    for k in 0..len {
        let v = if k == 0 {
            r.one()
        } else {
            let mut v = r.mul(e1, &h[k - 1])?;
            if k >= 2 {
                v = r.sub(&v, &r.mul(e2, &h[k - 2])?)?;
            }
            if k >= 3 {
                v = r.add(&v, &r.mul(e3, &h[k - 3])?)?;
            }
            v
        };
        h.push(v);
    }
    Ok(h)
}

/// s_{(m+n, n, 0)} = h_{m+n}·h_n − h_{m+n+1}·h_{n−1} from the Jacobi–Trudi
/// determinant (the third row is (0, 0, 1)).
pub fn schur_from_h<R: Ring>(r: &R, h: &[R::E], m: usize, n: usize) -> Result<R::E> {
    let first = r.mul(&h[m + n], &h[n])?;
    if n == 0 {
        return Ok(first);
    }
    r.sub(&first, &r.mul(&h[m + n + 1], &h[n - 1])?)
}

/// Character of V(m·ϖ₁ + n·ϖ₂) at an element with the given eigenvalues.
pub fn sl3_char_value(m: usize, n: usize, eig: &[CycloNum; 3]) -> Result<CycloNum> {
    if !eig[0].mul(&eig[1]).mul(&eig[2]).is_one() {
        return Err(Error::Determinant);
    }
    let e1 = eig[0].add(&eig[1]).add(&eig[2]);
    let e2 = eig[0].mul(&eig[1]).add(&eig[0].mul(&eig[2])).add(&eig[1].mul(&eig[2]));
    let h = complete_homogeneous(&Exact, &e1, &e2, &CycloNum::one(), m + n + 2)?;
    schur_from_h(&Exact, &h, m, n)
}

/// Character of the (n+1)-dimensional SL2 module at an element with
/// eigenvalues α, α⁻¹.
pub fn sl2_char_value(n: usize, alpha: &CycloNum) -> Result<CycloNum> {
    let e1 = alpha.add(&alpha.inv()?);
    let h = complete_homogeneous(&Exact, &e1, &CycloNum::one(), &CycloNum::zero(), n + 1)?;
    Ok(h[n].clone())
}

/// Branching multiplicities keyed by (t-exponent, u-exponent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultTable {
    /// 2 or 3.
    pub rank: usize,
    pub level: u32,
    pub v: BTreeMap<(u32, u32), Vec<i64>>,
}

impl MultTable {
    pub fn get(&self, a: u32, b: u32) -> Option<&Vec<i64>> {
        self.v.get(&(a, b))
    }

    /// Dimension of the SL module at key (a, b).
    pub fn module_dim(rank: usize, a: u32, b: u32) -> i64 {
        let (m, n) = (a as i64, b as i64);
        if rank == 2 {
            m + 1
        } else {
            (m + 1) * (n + 1) * (m + n + 2) / 2
        }
    }

    /// Σ_i deg_i·m_i equals the module dimension at every point.
    pub fn check_dimensions(&self, degrees: &[u64]) -> Result<()> {
        for (&(a, b), v) in &self.v {
            let s: i64 = v.iter().zip(degrees).map(|(m, &d)| m * d as i64).sum();
            if s != Self::module_dim(self.rank, a, b) {
                return Err(Error::Invariant(format!("dimension mismatch at ({a},{b})")));
            }
        }
        Ok(())
    }

    /// Keys in the order (level, a descending).
    pub fn keys_sorted(&self) -> Vec<(u32, u32)> {
        let mut k: Vec<_> = self.v.keys().copied().collect();
        k.sort_by_key(|&(a, b)| (a + b, std::cmp::Reverse(a)));
        k
    }

    /// CSV with one row per weight and one column per irreducible.
    pub fn to_csv(&self) -> String {
        let l = self.v.values().next().map_or(0, |v| v.len());
        let mut s = String::from("m,n");
        for i in 0..l {
            s.push_str(&format!(",chi{i}"));
        }
        s.push('\n');
        for (a, b) in self.keys_sorted() {
            s.push_str(&format!("{a},{b}"));
            for x in &self.v[&(a, b)] {
                s.push_str(&format!(",{x}"));
            }
            s.push('\n');
        }
        s
    }

    /// JSON object with weights keyed as "m,n".
    pub fn to_json(&self) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .keys_sorted()
            .into_iter()
            .map(|(a, b)| (format!("{a},{b}"), serde_json::json!(self.v[&(a, b)])))
            .collect();
        serde_json::json!({"rank": self.rank, "level": self.level, "values": values})
    }
}

fn all_points(rank: usize, level: u32) -> Vec<(u32, u32)> {
    if rank == 2 {
        (0..=level).map(|n| (n, 0)).collect()
    } else {
        (0..=level).flat_map(|s| (0..=s).map(move |a| (a, s - a))).collect()
    }
}

/// m_i = (1/|G|) Σ_j |C_j|·χ_V(g_j)·conj(χ_i(g_j)) for one module.
pub fn mults_direct(cs: &ConjClassSet, t: &CharacterTable, m: u32, n: u32) -> Result<Vec<i64>> {
    let rank = cs.eigen.first().map_or(3, |e| e.len());
    let lvl = m + n;
    let tab = direct_points(cs, t, rank, lvl, &[(m, n)])?;
    Ok(tab.v[&(m, n)].clone())
}

/// Direct multiplicities for every weight up to the given level.
pub fn mults_direct_all(cs: &ConjClassSet, t: &CharacterTable, level: u32) -> Result<MultTable> {
    let rank = cs.eigen.first().map_or(3, |e| e.len());
    direct_points(cs, t, rank, level, &all_points(rank, level))
}

fn direct_points(
    cs: &ConjClassSet,
    t: &CharacterTable,
    rank: usize,
    level: u32,
    points: &[(u32, u32)],
) -> Result<MultTable> {
    let ctx = Ctx::new(cs);
    let f = &ctx.f;
    let rows = t.coords(&ctx)?;
    let e = cs.exponent;
    let len = level as usize + 3;
    // h_k per class, in the fixed field.
    let mut hs = Vec::with_capacity(cs.len());
    for ev in &cs.eigen {
        let r: Vec<_> = ev.iter().map(|&x| f.root((x % e) as i64)).collect();
        let h = if rank == 2 {
            let e1 = f.add(&r[0], &r[1])?;
            complete_homogeneous(f, &e1, &f.one(), &f.zero(), len)?
        } else {
            let e1 = f.add(&f.add(&r[0], &r[1])?, &r[2])?;
            let e2 = f.add(&f.add(&f.mul(&r[0], &r[1])?, &f.mul(&r[0], &r[2])?)?, &f.mul(&r[1], &r[2])?)?;
            let e3 = f.mul(&f.mul(&r[0], &r[1])?, &r[2])?;
            complete_homogeneous(f, &e1, &e2, &e3, len)?
        };
        hs.push(h);
    }
    let n = cs.group_order() as i128;
    let mut v = BTreeMap::new();
    for &(a, b) in points {
        let chi_v: Vec<Vec<i128>> = hs
            .iter()
            .map(|h| {
                let x = if rank == 2 { h[a as usize].clone() } else { schur_from_h(f, h, a as usize, b as usize)? };
                if x.den != 1 {
                    return Err(Error::Invariant("module character is not integral".into()));
                }
                Ok(x.num)
            })
            .collect::<Result<_>>()?;
        let mut mults = Vec::with_capacity(rows.len());
        for row in &rows {
            let s = ctx.ip_scaled(&chi_v, row).map_err(|_| Error::NonIntegerMultiplicity)?;
            if s % n != 0 || s < 0 {
                return Err(Error::NonIntegerMultiplicity);
            }
            mults.push((s / n) as i64);
        }
        v.insert((a, b), mults);
    }
    Ok(MultTable { rank, level, v })
}

fn mat_vec(m: &IMat, x: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn sub_in(x: &mut [i64], y: Option<&Vec<i64>>) {
    if let Some(y) = y {
        for (a, b) in x.iter_mut().zip(y) {
            *a -= b;
        }
    }
}

/// Multiplicities from the recursion
/// A1·v_{m,n} = v_{m+1,n} + v_{m,n−1} + v_{m−1,n+1}, level by level.
pub fn mults_recursive(a1: &IMat, a2: &IMat, level: u32) -> MultTable {
    let k = a1.len();
    let mut v: BTreeMap<(u32, u32), Vec<i64>> = BTreeMap::new();
    let mut e0 = vec![0; k];
    e0[0] = 1;
    v.insert((0, 0), e0);
    let get = |v: &BTreeMap<(u32, u32), Vec<i64>>, a: i64, b: i64| -> Option<Vec<i64>> {
        if a < 0 || b < 0 {
            None
        } else {
            v.get(&(a as u32, b as u32)).cloned()
        }
    };
    for l0 in 0..level as i64 {
        let mut x = mat_vec(a2, &v[&(0, l0 as u32)]);
        sub_in(&mut x, get(&v, 1, l0 - 1).as_ref());
        v.insert((0, l0 as u32 + 1), x);
        for m in 0..=l0 {
            let mut x = mat_vec(a1, &v[&(m as u32, (l0 - m) as u32)]);
            sub_in(&mut x, get(&v, m, l0 - m - 1).as_ref());
            sub_in(&mut x, get(&v, m - 1, l0 - m + 1).as_ref());
            v.insert((m as u32 + 1, (l0 - m) as u32), x);
        }
    }
    MultTable { rank: 3, level, v }
}

/// SL2 recursion A·v_n = v_{n+1} + v_{n−1}.
pub fn mults_recursive_sl2(a: &IMat, level: u32) -> MultTable {
    let k = a.len();
    let mut v: BTreeMap<(u32, u32), Vec<i64>> = BTreeMap::new();
    let mut e0 = vec![0; k];
    e0[0] = 1;
    v.insert((0, 0), e0);
    for n in 0..level {
        let mut x = mat_vec(a, &v[&(n, 0)]);
        if n > 0 {
            sub_in(&mut x, v.get(&(n - 1, 0)));
        }
        v.insert((n + 1, 0), x);
    }
    MultTable { rank: 2, level, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_at_identity() {
        let one = [CycloNum::one(), CycloNum::one(), CycloNum::one()];
        assert_eq!(sl3_char_value(1, 1, &one).unwrap(), CycloNum::from_int(8));
        assert_eq!(sl3_char_value(2, 0, &one).unwrap(), CycloNum::from_int(6));
        assert_eq!(sl3_char_value(3, 2, &one).unwrap(), CycloNum::from_int(MultTable::module_dim(3, 3, 2)));
    }

    #[test]
    fn natural_character() {
        let w = CycloNum::root_of_unity(7, 1);
        let eig = [w.clone(), w.pow(2).unwrap(), w.pow(4).unwrap()];
        let tr = eig[0].add(&eig[1]).add(&eig[2]);
        assert_eq!(sl3_char_value(1, 0, &eig).unwrap(), tr);
        assert_eq!(sl3_char_value(0, 1, &eig).unwrap(), tr.conj());
        let bad = [w.clone(), w.clone(), w];
        assert_eq!(sl3_char_value(1, 0, &bad).unwrap_err(), Error::Determinant);
    }

    #[test]
    fn sl2_values() {
        let m1 = CycloNum::from_int(-1);
        assert_eq!(sl2_char_value(2, &m1).unwrap(), CycloNum::from_int(3));
        assert_eq!(sl2_char_value(3, &m1).unwrap(), CycloNum::from_int(-4));
    }
}
