//! Comparison of computed data with reference values whose irreducible
//! characters are indexed differently.
//!
//! A labeling is a map perm from reference index to canonical index with
//! perm[0] = 0 (the trivial character). It must carry reference McKay edges
//! to computed edges, reference numerators to computed numerators, and
//! respect the recorded numerator relations.

use crate::analysis::Analysis;
use crate::error::Result;
use crate::expr::{parse_zbipoly, parse_zpoly};
use crate::poly::{CycloFactors, ZBiPoly, ZPoly};
use crate::presets::Expected;

/// Reference numerators re-expressed over the computed denominators, so
/// that they compare directly with `Analysis::series.numerators`.
pub fn reference_numerators(exp: &Expected, a: &Analysis) -> Result<Option<Vec<ZBiPoly>>> {
    if exp.numerators.is_empty() {
        return Ok(None);
    }
    let s = &a.series;
    let mut out = Vec::with_capacity(exp.numerators.len());
    if s.rank == 2 {
        // ref / ∏(1 − t^a)  =  ours / D   ⇔   ours = ref·D / ∏(1 − t^a)
        let (x, y) = exp.den_binomial.unwrap_or((1, 1));
        let full = CycloFactors::of_one_minus_power(x).mul(&CycloFactors::of_one_minus_power(y));
        let d = s.den_t_poly();
        let fp = full.expand();
        for src in &exp.numerators {
            let p = parse_zpoly(src)?;
            match p.mul(&d).div_exact(&fp) {
                Some(q) => out.push(ZBiPoly::from_t(&q)),
                None => return Ok(Some(Vec::new())),
            }
        }
    } else {
        let rd: CycloFactors = CycloFactors(exp.den.clone().unwrap_or_default().into_iter().collect());
        let rdp = rd.expand();
        let one_minus_tu = ZBiPoly::from_terms([((0, 0), 1.into()), ((1, 1), (-1).into())]);
        for src in &exp.numerators {
            let mut p = parse_zbipoly(src)?;
            if exp.numerators_without_tu {
                p = p.mul(&one_minus_tu);
            }
            let scaled = p.mul_t(&s.den_t_poly()).mul_u(&s.den_u_poly());
            match scaled.div_exact_t(&rdp).and_then(|q| q.div_exact_u(&rdp)) {
                Some(q) => out.push(q),
                None => return Ok(Some(Vec::new())),
            }
        }
    }
    Ok(Some(out))
}

struct Search<'a> {
    n: usize,
    ref_adj: Vec<Vec<bool>>,
    our_adj: Vec<Vec<bool>>,
    use_edges: bool,
    ref_a1: Option<&'a Vec<Vec<i64>>>,
    our_a1: &'a [Vec<i64>],
    ref_nums: Option<Vec<ZBiPoly>>,
    our_nums: &'a [ZBiPoly],
    relations: Vec<(bool, usize, usize)>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn compatible(&self, perm: &[Option<usize>], i: usize, j: usize) -> bool {
        if i == 0 && j != 0 {
            return false;
        }
        if let Some(rn) = &self.ref_nums {
            if rn[i] != self.our_nums[j] {
                return false;
            }
        }
        if let Some(ra) = self.ref_a1 {
            if ra[i][i] != self.our_a1[j][j] {
                return false;
            }
        }
        for (k, pk) in perm.iter().enumerate() {
            let Some(pk) = *pk else { continue };
            if self.use_edges && self.ref_adj[i][k] != self.our_adj[j][pk] {
                return false;
            }
            if let Some(ra) = self.ref_a1 {
                if ra[i][k] != self.our_a1[j][pk] || ra[k][i] != self.our_a1[pk][j] {
                    return false;
                }
            }
        }
        for &(swap, a, b) in &self.relations {
            let (pa, pb) = match (a == i, b == i) {
                (true, true) => (j, j),
                (true, false) => match perm[b] {
                    Some(pb) => (j, pb),
                    None => continue,
                },
                (false, true) => match perm[a] {
                    Some(pa) => (pa, j),
                    None => continue,
                },
                _ => continue,
            };
            let lhs = if swap { self.our_nums[pa].swap() } else { self.our_nums[pa].clone() };
            if lhs != self.our_nums[pb] {
                return false;
            }
        }
        true
    }

    fn run(&mut self, perm: &mut Vec<Option<usize>>, used: &mut Vec<bool>, i: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if i == self.n {
            self.found.push(perm.iter().map(|x| x.unwrap_or(0)).collect());
            return;
        }
        for j in 0..self.n {
            if used[j] || !self.compatible(perm, i, j) {
                continue;
            }
            perm[i] = Some(j);
            used[j] = true;
            self.run(perm, used, i + 1);
            perm[i] = None;
            used[j] = false;
        }
    }
}

fn search<'a>(exp: &'a Expected, a: &'a Analysis, limit: usize) -> Result<Option<Search<'a>>> {
    let n = a.mckay.len();
    let mut ref_adj = vec![vec![false; n]; n];
    for &(x, y) in &exp.edges {
        if x >= n || y >= n {
            return Ok(None);
        }
        ref_adj[x][y] = true;
        ref_adj[y][x] = true;
    }
    let mut our_adj = vec![vec![false; n]; n];
    for (x, y, _) in a.mckay.edges() {
        our_adj[x][y] = true;
        our_adj[y][x] = true;
    }
    let ref_nums = reference_numerators(exp, a)?;
    if ref_nums.as_ref().is_some_and(|v| v.len() != n) || exp.a1.as_ref().is_some_and(|m| m.len() != n) {
        return Ok(None);
    }
    let relations = exp.relations.iter().map(|(k, x, y)| (k == "swap", *x, *y)).collect();
    Ok(Some(Search {
        n,
        ref_adj,
        our_adj,
        use_edges: !exp.edges.is_empty(),
        ref_a1: exp.a1.as_ref(),
        our_a1: &a.mckay.a1,
        ref_nums,
        our_nums: &a.series.numerators,
        relations,
        limit,
        found: Vec::new(),
    }))
}

/// Every labeling (up to `limit`) consistent with the reference edges, A1,
/// numerators and relations.
pub fn candidate_perms(exp: &Expected, a: &Analysis, limit: usize) -> Result<Vec<Vec<usize>>> {
    let Some(mut s) = search(exp, a, limit)? else { return Ok(Vec::new()) };
    let n = s.n;
    s.run(&mut vec![None; n], &mut vec![false; n], 0);
    Ok(s.found)
}

/// Check one labeling against every reference constraint.
pub fn check_perm(exp: &Expected, a: &Analysis, perm: &[usize]) -> Result<bool> {
    let n = a.mckay.len();
    if perm.len() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Ok(false);
        }
        seen[p] = true;
    }
    let Some(s) = search(exp, a, 1)? else { return Ok(false) };
    let mut partial = vec![None; n];
    for (i, &j) in perm.iter().enumerate() {
        if !s.compatible(&partial, i, j) {
            return Ok(false);
        }
        partial[i] = Some(j);
    }
    Ok(true)
}

/// Reference Molien numerator over the computed denominator convention.
pub fn reference_molien(exp: &Expected) -> Result<Option<(ZPoly, ZPoly)>> {
    let (Some(num), Some(den)) = (&exp.molien_num, &exp.den) else { return Ok(None) };
    let d = CycloFactors(den.iter().copied().collect());
    Ok(Some((parse_zpoly(num)?, d.expand())))
}
