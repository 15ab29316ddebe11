//! Simple reflections of a generalized Cartan matrix and their partition
//! into a minimal number of mutually orthogonal sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mckay::{identity, mat_mul, IMat};

/// Above this many vertices the exact search runs under a node budget.
pub const EXACT_VERTEX_LIMIT: usize = 40;
const NODE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionSet {
    #[serde(skip)]
    pub s: Vec<IMat>,
    #[serde(rename = "sets")]
    pub partition: Vec<Vec<usize>>,
    #[serde(skip)]
    pub tau: Vec<IMat>,
    pub p: usize,
    /// False when minimality was not certified within the search budget.
    pub exact: bool,
}

/// (s_k)_{ij} = δ_ij − C_kj·δ_ik.
pub fn reflections(c: &IMat) -> Vec<IMat> {
    let n = c.len();
    (0..n)
        .map(|k| {
            let mut s = identity(n);
            for j in 0..n {
                s[k][j] -= c[k][j];
            }
            s
        })
        .collect()
}

/// i ~ j iff i ≠ j and C_ij or C_ji is nonzero.
pub fn orthogonality_graph(c: &IMat) -> Vec<Vec<bool>> {
    let n = c.len();
    (0..n).map(|i| (0..n).map(|j| i != j && (c[i][j] != 0 || c[j][i] != 0)).collect()).collect()
}

struct Coloring<'a> {
    adj: &'a [Vec<bool>],
    n: usize,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Coloring<'_> {
    /// Uncolored vertex of largest saturation, then largest uncolored
    /// degree, then lowest index.
    fn pick(&self, colors: &[Option<usize>]) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.n {
            if colors[v].is_some() {
                continue;
            }
            let mut seen = Vec::new();
            let mut deg = 0;
            for u in 0..self.n {
                if !self.adj[v][u] {
                    continue;
                }
                match colors[u] {
                    Some(c) if !seen.contains(&c) => seen.push(c),
                    Some(_) => {}
                    None => deg += 1,
                }
            }
            let key = (seen.len(), deg, v);
            if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn feasible(&self, colors: &[Option<usize>], v: usize, c: usize) -> bool {
        (0..self.n).all(|u| !self.adj[v][u] || colors[u] != Some(c))
    }

    fn search(&mut self, colors: &mut Vec<Option<usize>>, used: usize) {
        if self.best_k <= self.lower || self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let Some(v) = self.pick(colors) else {
            if used < self.best_k {
                self.best_k = used;
                self.best = colors.iter().map(|c| c.unwrap_or(0)).collect();
            }
            return;
        };
        for c in 0..=used {
            let next = used.max(c + 1);
            if next >= self.best_k || !self.feasible(colors, v, c) {
                continue;
            }
            colors[v] = Some(c);
            self.search(colors, next);
            colors[v] = None;
        }
    }
}

/// Greedy clique, grown from each vertex in index order.
fn clique_bound(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let mut best = usize::from(n > 0);
    for s in 0..n {
        let mut clique = vec![s];
        for v in 0..n {
            if v != s && clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Chromatic coloring: color per vertex, and whether minimality is
/// certified.
pub fn color(adj: &[Vec<bool>]) -> (Vec<usize>, bool) {
    let n = adj.len();
    if n == 0 {
        return (Vec::new(), true);
    }
    let budget = if n <= EXACT_VERTEX_LIMIT { u64::MAX } else { NODE_BUDGET };
    let mut st = Coloring {
        adj,
        n,
        best: Vec::new(),
        best_k: n + 1,
        lower: clique_bound(adj),
        nodes: 0,
        budget,
        aborted: false,
    };
    st.search(&mut vec![None; n], 0);
    let exact = !st.aborted || st.best_k <= st.lower;
    // Renumber colors by their lowest vertex.
    let mut map: Vec<Option<usize>> = vec![None; st.best_k];
    let mut next = 0;
    let colors = st
        .best
        .iter()
        .map(|&c| {
            *map[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    (colors, exact)
}

fn product(mats: &[&IMat], n: usize) -> IMat {
    mats.iter().fold(identity(n), |acc, m| mat_mul(&acc, m))
}

/// Minimal orthogonal partition of the simple reflections, with
/// C = p·I − Σ τ_l verified.
pub fn min_partition(c: &IMat) -> Result<ReflectionSet> {
    let n = c.len();
    let s = reflections(c);
    let adj = orthogonality_graph(c);
    let (colors, exact) = color(&adj);
    let p = colors.iter().max().map_or(0, |m| m + 1);
    let mut partition = vec![Vec::new(); p];
    for (v, &k) in colors.iter().enumerate() {
        partition[k].push(v);
    }
    let mut tau = Vec::with_capacity(p);
    for set in &partition {
        for (x, &a) in set.iter().enumerate() {
            for &b in &set[x + 1..] {
                if adj[a][b] {
                    return Err(Error::IdentityCheck);
                }
            }
        }
        let fwd: Vec<&IMat> = set.iter().map(|&k| &s[k]).collect();
        let rev: Vec<&IMat> = set.iter().rev().map(|&k| &s[k]).collect();
        let t = product(&fwd, n);
        if t != product(&rev, n) {
            return Err(Error::Invariant("reflections in one set do not commute".into()));
        }
        tau.push(t);
    }
    let rs = ReflectionSet { s, partition, tau, p, exact };
    rs.check(c)?;
    Ok(rs)
}

impl ReflectionSet {
    /// C = p·I − Σ τ_l, and s_k² = I where C_kk = 2.
    pub fn check(&self, c: &IMat) -> Result<()> {
        let n = c.len();
        for (k, s) in self.s.iter().enumerate() {
            if c[k][k] == 2 && mat_mul(s, s) != identity(n) {
                return Err(Error::Invariant(format!("s_{k} is not an involution")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let sum: i64 = self.tau.iter().map(|t| t[i][j]).sum();
                let lhs = self.p as i64 * i64::from(i == j) - sum;
                if lhs != c[i][j] {
                    return Err(Error::IdentityCheck);
                }
            }
        }
        Ok(())
    }

    /// DOT rendering of the non-orthogonality graph, colored by set.
    pub fn dot(&self, c: &IMat) -> String {
        let adj = orthogonality_graph(c);
        let mut out = String::from("graph roots {\n");
        for (k, set) in self.partition.iter().enumerate() {
            for v in set {
                out.push_str(&format!("  {v} [label=\"s{v}\", group={k}];\n"));
            }
        }
        for (i, row) in adj.iter().enumerate() {
            for (j, &e) in row.iter().enumerate().skip(i + 1) {
                if e {
                    out.push_str(&format!("  {i} -- {j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mckay::cartan;

    fn cycle(n: usize) -> IMat {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][(i + 1) % n] = 1;
        }
        a
    }

    #[test]
    fn odd_cycle_needs_three() {
        let c = cartan(&cycle(5));
        let r = min_partition(&c).unwrap();
        assert_eq!(r.p, 3);
        assert!(r.exact);
    }

    #[test]
    fn even_cycle_needs_two() {
        let r = min_partition(&cartan(&cycle(6))).unwrap();
        assert_eq!(r.p, 2);
        assert_eq!(r.partition, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn isolated_vertex_reflection() {
        let c = vec![vec![2, 0], vec![0, 2]];
        let s = reflections(&c);
        assert_eq!(s[0], vec![vec![-1, 0], vec![0, 1]]);
        assert_eq!(min_partition(&c).unwrap().p, 1);
    }
}
