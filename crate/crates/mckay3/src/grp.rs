//! Finite matrix groups inside SL2(C) and SL3(C): closure from generators,
//! conjugacy classes, element orders, eigenvalues and power maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{FElem, Field};
use crate::numth::lcm;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 10_000;

/// A square matrix of cyclotomic numbers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<CycloNum>>", into = "Vec<Vec<CycloNum>>")]
pub struct GroupElement {
    dim: usize,
    entries: Vec<CycloNum>,
}

impl TryFrom<Vec<Vec<CycloNum>>> for GroupElement {
    type Error = Error;
    fn try_from(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<GroupElement> for Vec<Vec<CycloNum>> {
    fn from(g: GroupElement) -> Self {
        g.rows()
    }
}

impl GroupElement {
    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix must be square and nonempty".into()));
        }
        Ok(GroupElement { dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(d: &[CycloNum]) -> Self {
        let n = d.len();
        let mut entries = vec![CycloNum::zero(); n * n];
        for (i, v) in d.iter().enumerate() {
            entries[i * n + i] = v.clone();
        }
        GroupElement { dim: n, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![CycloNum::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<CycloNum>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        GroupElement { dim: self.dim, entries: self.entries.iter().map(|v| v.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = CycloNum::zero();
                for k in 0..n {
                    s = s.add(&self.entry(i, k).mul(o.entry(k, j)));
                }
                entries.push(s);
            }
        }
        GroupElement { dim: n, entries }
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.dim).fold(CycloNum::zero(), |s, i| s.add(self.entry(i, i)))
    }

    pub fn det(&self) -> CycloNum {
        det_generic(self.dim, &|i, j| self.entry(i, j).clone())
    }

    /// Inverse, computed as the adjugate (valid for determinant one).
    pub fn inverse_unimodular(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![CycloNum::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = |a: usize, b: usize| {
                    let r = if a < j { a } else { a + 1 };
                    let c = if b < i { b } else { b + 1 };
                    self.entry(r, c).clone()
                };
                let m = det_generic(n - 1, &minor);
                entries[i * n + j] = if (i + j) % 2 == 0 { m } else { m.neg() };
            }
        }
        GroupElement { dim: n, entries }
    }

    /// Canonical text key of the entries.
    pub fn key(&self) -> String {
        self.entries.iter().map(|c| c.key()).collect::<Vec<_>>().join(";")
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u64 {
        self.entries.iter().fold(1, |a, c| lcm(a, c.conductor()))
    }
}

fn det_generic(n: usize, e: &dyn Fn(usize, usize) -> CycloNum) -> CycloNum {
    match n {
        0 => CycloNum::one(),
        1 => e(0, 0),
        _ => {
            let mut s = CycloNum::zero();
            for j in 0..n {
                let a = e(0, j);
                if a.is_zero() {
                    continue;
                }
                let minor = |r: usize, c: usize| e(r + 1, if c < j { c } else { c + 1 });
                let m = a.mul(&det_generic(n - 1, &minor));
                s = if j % 2 == 0 { s.add(&m) } else { s.sub(&m) };
            }
            s
        }
    }
}

/// Matrix over a fixed field, used as the hash key of enumerated elements.
type FMat = Vec<FElem>;

fn fmat_mul(f: &Field, n: usize, a: &FMat, b: &FMat) -> Result<FMat> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut s = f.zero();
            for k in 0..n {
                let x = &a[i * n + k];
                let y = &b[k * n + j];
                if f.is_zero(x) || f.is_zero(y) {
                    continue;
                }
                s = f.add(&s, &f.mul(x, y)?)?;
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// A finite group of matrices enumerated by breadth-first closure.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    field: Field,
    elems: Vec<FMat>,
    index: HashMap<FMat, usize>,
    generators: Vec<GroupElement>,
    gen_index: Vec<usize>,
    /// left[s][g] = index of generator s times element g.
    left: Vec<Vec<usize>>,
}

impl FiniteMatrixGroup {
    /// Closure of `generators` under left multiplication, in BFS order with
    /// generators applied in the given order. Index 0 is the identity.
    pub fn enumerate(generators: &[GroupElement], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidParams("no generators".into()))?;
        let dim = first.dim();
        if !(2..=3).contains(&dim) {
            return Err(Error::Dimension(format!("matrices must be 2×2 or 3×3, got {dim}×{dim}")));
        }
        if generators.iter().any(|g| g.dim() != dim) {
            return Err(Error::Dimension("generators have different sizes".into()));
        }
        if generators.iter().any(|g| !g.det().is_one()) {
            return Err(Error::Determinant);
        }
        let n = generators.iter().fold(1, |a, g| lcm(a, g.conductor()));
        let field = Field::new(n);
        let gens: Vec<FMat> = generators
            .iter()
            .map(|g| g.entries().iter().map(|c| field.from_cyclo(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let id: FMat =
            GroupElement::identity(dim).entries().iter().map(|c| field.from_cyclo(c)).collect::<Result<_>>()?;
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut q = 0;
        while q < elems.len() {
            for (s, g) in gens.iter().enumerate() {
                let h = fmat_mul(&field, dim, g, &elems[q])?;
                let k = match index.get(&h) {
                    Some(&k) => k,
                    None => {
                        if elems.len() >= cap {
                            return Err(Error::Cap(cap));
                        }
                        index.insert(h.clone(), elems.len());
                        elems.push(h);
                        elems.len() - 1
                    }
                };
                left[s].push(k);
            }
            q += 1;
        }
        let gen_index = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteMatrixGroup { dim, field, elems, index, generators: generators.to_vec(), gen_index, left })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Conductor of the field holding every matrix entry.
    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    /// Index of generator s times element g.
    pub fn left_mul(&self, s: usize, g: usize) -> usize {
        self.left[s][g]
    }

    /// Element `i` as an exact matrix.
    pub fn element(&self, i: usize) -> GroupElement {
        GroupElement { dim: self.dim, entries: self.elems[i].iter().map(|x| self.field.to_cyclo(x)).collect() }
    }

    /// Index of a matrix, if it belongs to the group.
    pub fn find(&self, g: &GroupElement) -> Option<usize> {
        let m: FMat = g.entries().iter().map(|c| self.field.from_cyclo(c)).collect::<Result<_>>().ok()?;
        self.index.get(&m).copied()
    }

    /// Index of the product of elements a and b.
    pub fn mul(&self, a: usize, b: usize) -> Result<usize> {
        let h = fmat_mul(&self.field, self.dim, &self.elems[a], &self.elems[b])?;
        self.index.get(&h).copied().ok_or_else(|| Error::Invariant("product left the group".into()))
    }

    pub fn trace(&self, i: usize) -> Result<CycloNum> {
        let f = &self.field;
        let mut s = f.zero();
        for k in 0..self.dim {
            s = f.add(&s, &self.elems[i][k * self.dim + k])?;
        }
        Ok(f.to_cyclo(&s))
    }

    /// Multiplicative order of element i.
    pub fn element_order(&self, i: usize) -> Result<u64> {
        let mut x = i;
        let mut d = 1;
        while x != 0 {
            x = self.mul(x, i)?;
            d += 1;
        }
        Ok(d)
    }

    /// Content hash (hex sha256) of the generator matrices.
    pub fn generator_hash(generators: &[GroupElement]) -> String {
        let text = serde_json::to_string(generators).expect("matrices serialize");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn hash(&self) -> String {
        Self::generator_hash(&self.generators)
    }

    /// Conjugacy classes as orbits of conjugation by the generators.
    pub fn conjugacy_classes(&self) -> Result<ConjClassSet> {
        let n = self.order();
        let ginv: Vec<FMat> = self
            .generators
            .iter()
            .map(|g| g.inverse_unimodular().entries().iter().map(|c| self.field.from_cyclo(c)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut conj: Vec<Vec<usize>> = Vec::with_capacity(ginv.len());
        for (s, gi) in ginv.iter().enumerate() {
            let mut row = Vec::with_capacity(n);
            for x in &self.elems {
                let r = fmat_mul(&self.field, self.dim, x, gi)?;
                let k = self.index.get(&r).copied().ok_or_else(|| Error::Invariant("inverse left the group".into()))?;
                row.push(self.left[s][k]);
            }
            conj.push(row);
        }
        let mut raw_class = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let c = orbits.len();
            raw_class[start] = c;
            let mut orbit = vec![start];
            let mut q = 0;
            while q < orbit.len() {
                let x = orbit[q];
                for row in &conj {
                    let y = row[x];
                    if raw_class[y] == usize::MAX {
                        raw_class[y] = c;
                        orbit.push(y);
                    }
                }
                q += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        // Canonical order: identity, then (size, trace, key-minimal element).
        let keys: Vec<Vec<CycloNum>> = (0..n).map(|i| self.element(i).entries).collect();
        let mut info = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let rep = *orbit.iter().min_by(|&&a, &&b| keys[a].cmp(&keys[b])).expect("orbit is nonempty");
            let tr = self.trace(rep)?;
            info.push((orbit, rep, tr));
        }
        info.sort_by(|a, b| {
            let ida = a.0.contains(&0);
            let idb = b.0.contains(&0);
            idb.cmp(&ida).then(a.0.len().cmp(&b.0.len())).then(a.2.cmp(&b.2)).then(keys[a.1].cmp(&keys[b.1]))
        });
        let mut class_of = vec![0; n];
        for (c, (orbit, _, _)) in info.iter().enumerate() {
            for &x in orbit {
                class_of[x] = c;
            }
        }
        let reps: Vec<usize> = info.iter().map(|x| x.1).collect();
        let sizes: Vec<usize> = info.iter().map(|x| x.0.len()).collect();
        let traces: Vec<CycloNum> = info.iter().map(|x| x.2.clone()).collect();
        let members: Vec<Vec<usize>> = info.into_iter().map(|x| x.0).collect();

        let mut orders = Vec::with_capacity(reps.len());
        let mut powers = Vec::with_capacity(reps.len());
        for &r in &reps {
            let mut p = vec![0usize];
            let mut x = r;
            while x != 0 {
                p.push(class_of[x]);
                x = self.mul(x, r)?;
            }
            orders.push(p.len() as u64);
            powers.push(p);
        }
        let exponent = orders.iter().fold(1, |a, &o| lcm(a, o));
        let mut cs =
            ConjClassSet { class_of, reps, sizes, members, traces, orders, exponent, powers, eigen: Vec::new() };
        cs.eigen = self.eigen_exponents(&cs)?;
        Ok(cs)
    }

    /// Eigenvalues of every class representative as exponents e of ζ_E^e,
    /// found by substituting roots of unity into the characteristic
    /// polynomial and deflating.
    fn eigen_exponents(&self, cs: &ConjClassSet) -> Result<Vec<Vec<u64>>> {
        let e = cs.exponent;
        let fm = Field::new(lcm(self.conductor(), e));
        let mut out = Vec::with_capacity(cs.reps.len());
        for (c, &r) in cs.reps.iter().enumerate() {
            let g = self.element(r);
            let tr = fm.from_cyclo(&g.trace())?;
            // Characteristic polynomial, highest coefficient first.
            let mut poly: Vec<FElem> = if self.dim == 2 {
                vec![fm.one(), fm.neg(&tr), fm.one()]
            } else {
                let tr2 = fm.from_cyclo(&g.mul(&g).trace())?;
                let c2 = fm.mul(&fm.sub(&fm.mul(&tr, &tr)?, &tr2)?, &fm.from_cyclo(&CycloNum::from_frac(1, 2))?)?;
                vec![fm.one(), fm.neg(&tr), c2, fm.neg(&fm.one())]
            };
            let d = cs.orders[c];
            let step = e / d;
            let mut found = Vec::new();
            for k in 0..d {
                let ex = k * step;
                let root = fm.root((ex * (fm.conductor() / e)) as i64);
                loop {
                    if poly.len() <= 1 {
                        break;
                    }
                    // Synthetic division by (x − root).
                    let mut q = Vec::with_capacity(poly.len() - 1);
                    let mut acc = fm.zero();
                    for coef in &poly {
                        acc = fm.add(&fm.mul(&acc, &root)?, coef)?;
                        q.push(acc.clone());
                    }
                    let rem = q.pop().expect("nonempty");
                    if !fm.is_zero(&rem) {
                        break;
                    }
                    poly = q;
                    found.push(ex);
                }
            }
            if found.len() != self.dim {
                return Err(Error::Invariant(format!("class {c}: found {} eigenvalues", found.len())));
            }
            found.sort_unstable();
            out.push(found);
        }
        Ok(out)
    }

    /// JSON-serializable snapshot of the group and its classes.
    pub fn dump(&self, cs: &ConjClassSet) -> GroupDump {
        GroupDump {
            dim: self.dim,
            order: self.order(),
            elements: (0..self.order()).map(|i| self.element(i)).collect(),
            generators: self.gen_index.clone(),
            classes: ClassDump { class_of: cs.class_of.clone(), reps: cs.reps.clone(), sizes: cs.sizes.clone() },
        }
    }
}

/// Conjugacy classes of a `FiniteMatrixGroup` with per-class data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassSet {
    /// Element index to class index.
    pub class_of: Vec<usize>,
    /// Class index to representative element index (the key-minimal element).
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Sorted element indices of each class.
    pub members: Vec<Vec<usize>>,
    /// Trace of each class.
    pub traces: Vec<CycloNum>,
    /// Element order of each class.
    pub orders: Vec<u64>,
    /// Exponent E of the group (lcm of element orders).
    pub exponent: u64,
    /// powers[c][l] = class of rep_c^l for 0 ≤ l < order_c.
    pub powers: Vec<Vec<usize>>,
    /// Eigenvalues of rep_c as sorted exponents e of ζ_E^e.
    pub eigen: Vec<Vec<u64>>,
}

impl ConjClassSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Class of rep_c^a (a may be negative).
    pub fn power(&self, c: usize, a: i64) -> usize {
        let o = self.orders[c] as i64;
        self.powers[c][a.rem_euclid(o) as usize]
    }

    /// Class of the inverses of class c.
    pub fn inverse(&self, c: usize) -> usize {
        self.power(c, -1)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDump {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDump {
    pub dim: usize,
    pub order: usize,
    pub elements: Vec<GroupElement>,
    pub generators: Vec<usize>,
    pub classes: ClassDump,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycloNum {
        CycloNum::root_of_unity(n, k)
    }

    #[test]
    fn cyclic_group() {
        let g = GroupElement::diag(&[z(5, 1), z(5, 4)]);
        let grp = FiniteMatrixGroup::enumerate(&[g], DEFAULT_CAP).unwrap();
        assert_eq!(grp.order(), 5);
        let cs = grp.conjugacy_classes().unwrap();
        assert_eq!(cs.len(), 5);
        assert_eq!(cs.exponent, 5);
        assert_eq!(cs.eigen[0], vec![0, 0]);
    }

    #[test]
    fn determinant_checked() {
        let g = GroupElement::diag(&[z(4, 1), CycloNum::one()]);
        assert_eq!(FiniteMatrixGroup::enumerate(&[g], DEFAULT_CAP).unwrap_err(), Error::Determinant);
    }

    #[test]
    fn cap_enforced() {
        let g = GroupElement::diag(&[z(7, 1), z(7, 6)]);
        assert_eq!(FiniteMatrixGroup::enumerate(&[g], 5).unwrap_err(), Error::Cap(5));
    }

    #[test]
    fn adjugate_inverse() {
        let c = CycloNum::from_int;
        let g = GroupElement::from_rows(vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)]])
            .unwrap();
        assert_eq!(g.mul(&g.inverse_unimodular()), GroupElement::identity(3));
    }
}
