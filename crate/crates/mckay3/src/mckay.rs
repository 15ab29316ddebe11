//! McKay matrices, the generalized Cartan matrix, the eigenvalue list Θ and
//! the McKay graph.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chartab::{CharacterTable, Ctx};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::grp::ConjClassSet;

/// Integer square matrix, row-major.
pub type IMat = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayData {
    /// a1[i][j] = multiplicity of γ_i in γ_j ⊗ γ.
    pub a1: IMat,
    /// a2[i][j] = multiplicity of γ_i in γ_j ⊗ γ*.
    pub a2: IMat,
    /// C = 2I − A1 − ᵀA1 + 2·Diag(A1).
    pub c: IMat,
    /// theta[k] = conj(χ(g_k)).
    pub theta: Vec<CycloNum>,
    pub rank_a1: usize,
}

pub fn transpose(m: &IMat) -> IMat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Rank over Q by exact elimination.
pub fn rank(m: &IMat) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Cartan matrix 2I − A − ᵀA + 2·Diag(A).
pub fn cartan(a1: &IMat) -> IMat {
    let n = a1.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = 2 * i64::from(i == j) - a1[i][j] - a1[j][i];
                    if i == j {
                        base + 2 * a1[i][i]
                    } else {
                        base
                    }
                })
                .collect()
        })
        .collect()
}

/// Multiplicity matrices and their spectral data, with every invariant
/// checked exactly.
pub fn mckay_matrices(cs: &ConjClassSet, t: &CharacterTable) -> Result<McKayData> {
    let ctx = Ctx::new(cs);
    let rows = t.coords(&ctx)?;
    let chi = ctx.natural()?;
    let chib = ctx.conj(&chi);
    let k = rows.len();
    let n = cs.group_order() as i128;
    let mult = |x: &crate::chartab::Coords, y: &crate::chartab::Coords| -> Result<i64> {
        let v = ctx.ip_scaled(x, y).map_err(|_| Error::NonIntegerMultiplicity)?;
        if v % n != 0 || v < 0 {
            return Err(Error::NonIntegerMultiplicity);
        }
        Ok((v / n) as i64)
    };
    let mut a1 = vec![vec![0i64; k]; k];
    let mut a2 = vec![vec![0i64; k]; k];
    for j in 0..k {
        let p1 = ctx.mul(&rows[j], &chi)?;
        let p2 = ctx.mul(&rows[j], &chib)?;
        for i in 0..k {
            a1[i][j] = mult(&p1, &rows[i])?;
            a2[i][j] = mult(&p2, &rows[i])?;
        }
    }
    // A1·w_k = conj(χ(g_k))·w_k for every column w_k of the table.
    for kk in 0..k {
        for i in 0..k {
            let mut lhs = vec![0i128; ctx.f.dim()];
            for j in 0..k {
                if a1[i][j] != 0 {
                    for (x, y) in lhs.iter_mut().zip(&rows[j][kk]) {
                        *x += a1[i][j] as i128 * y;
                    }
                }
            }
            let rhs = ctx.f.mul_coords(&rows[i][kk], &chib[kk])?;
            if lhs != rhs {
                return Err(Error::Eigenvector);
            }
        }
    }
    if a2 != transpose(&a1) {
        return Err(Error::Invariant("A2 is not the transpose of A1".into()));
    }
    if mat_mul(&a1, &a2) != mat_mul(&a2, &a1) {
        return Err(Error::Invariant("A1 is not normal".into()));
    }
    if cs.eigen.first().is_some_and(|e| e.len() == 2) && a1 != a2 {
        return Err(Error::Invariant("SL2 McKay matrix is not symmetric".into()));
    }
    let theta = cs.traces.iter().map(|v| v.conj()).collect();
    let c = cartan(&a1);
    let rank_a1 = rank(&a1);
    Ok(McKayData { a1, a2, c, theta, rank_a1 })
}

impl McKayData {
    pub fn len(&self) -> usize {
        self.a1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a1.is_empty()
    }

    /// Edges (i, j, |C_ij|) with i < j and C_ij ≠ 0.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.c[i][j] != 0 || self.c[j][i] != 0 {
                    out.push((i, j, self.c[i][j].abs().max(self.c[j][i].abs())));
                }
            }
        }
        out
    }

    /// DOT rendering of the McKay graph. Edges of multiplicity 2 are drawn
    /// as double lines.
    pub fn graph_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("graph mckay {\n");
        for i in 0..self.len() {
            let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            s.push_str(&format!("  {i} [label=\"{label}\"];\n"));
        }
        for (i, j, m) in self.edges() {
            if m == 2 {
                s.push_str(&format!("  {i} -- {j} [multiplicity={m}, color=\"black:invis:black\"];\n"));
            } else {
                s.push_str(&format!("  {i} -- {j} [multiplicity={m}];\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_and_rank() {
        let a = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(cartan(&a), vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(cartan(&vec![vec![3]]), vec![vec![2]]);
    }
}
