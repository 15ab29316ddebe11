//! Catalog of generator matrices for the classified finite subgroups of
//! SL2(C) and SL3(C), with parameter validation and reference data.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::grp::GroupElement;
use crate::numth::gcd;

fn z(n: u64, k: i64) -> CycloNum {
    CycloNum::root_of_unity(n, k)
}

fn c(v: i64) -> CycloNum {
    CycloNum::from_int(v)
}

fn mat(rows: Vec<Vec<CycloNum>>) -> GroupElement {
    GroupElement::from_rows(rows).expect("square literal")
}

fn diag(d: &[CycloNum]) -> GroupElement {
    GroupElement::diag(d)
}

fn inv(x: &CycloNum) -> CycloNum {
    x.inv().expect("nonzero constant")
}

/// √2 = ζ8 + ζ8⁻¹
fn sqrt2() -> CycloNum {
    z(8, 1).add(&z(8, 7))
}

/// √5 = 2(ζ5 + ζ5⁴) + 1
fn sqrt5() -> CycloNum {
    z(5, 1).add(&z(5, 4)).scale(&num_rational::BigRational::from_integer(2.into())).add(&c(1))
}

/// √−3 = ζ3 − ζ3²
fn sqrt_m3() -> CycloNum {
    z(3, 1).sub(&z(3, 2))
}

/// Named family of presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    ACyclic,
    DBinary,
    E6,
    E7,
    E8,
    A1,
    A2,
    BDa,
    BTa,
    BO,
    BI,
    C,
    DExample,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

struct FamilyInfo {
    family: Family,
    name: &'static str,
    aliases: &'static [&'static str],
    sl: u8,
    class: &'static str,
    params: &'static [&'static str],
}

const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { family: Family::ACyclic, name: "A_cyclic", aliases: &["Asl2"], sl: 2, class: "A", params: &["j"] },
    FamilyInfo { family: Family::DBinary, name: "D_binary", aliases: &["Dsl2"], sl: 2, class: "D", params: &["n"] },
    FamilyInfo { family: Family::E6, name: "E6", aliases: &["E6sl2"], sl: 2, class: "E6", params: &[] },
    FamilyInfo { family: Family::E7, name: "E7", aliases: &["E7sl2"], sl: 2, class: "E7", params: &[] },
    FamilyInfo { family: Family::E8, name: "E8", aliases: &["E8sl2"], sl: 2, class: "E8", params: &[] },
    FamilyInfo { family: Family::A1, name: "A1", aliases: &[], sl: 3, class: "A", params: &["j"] },
    FamilyInfo { family: Family::A2, name: "A2", aliases: &[], sl: 3, class: "A", params: &["j1", "j2"] },
    FamilyInfo { family: Family::BDa, name: "BDa", aliases: &[], sl: 3, class: "B", params: &["q", "n"] },
    FamilyInfo { family: Family::BTa, name: "BTa", aliases: &[], sl: 3, class: "B", params: &["m"] },
    FamilyInfo { family: Family::BO, name: "BO", aliases: &[], sl: 3, class: "B", params: &["m"] },
    FamilyInfo { family: Family::BI, name: "BI", aliases: &[], sl: 3, class: "B", params: &["m"] },
    FamilyInfo { family: Family::C, name: "C", aliases: &[], sl: 3, class: "C", params: &["m"] },
    FamilyInfo { family: Family::DExample, name: "D_example", aliases: &["D"], sl: 3, class: "D", params: &[] },
    FamilyInfo { family: Family::E, name: "E", aliases: &[], sl: 3, class: "E", params: &[] },
    FamilyInfo { family: Family::F, name: "F", aliases: &[], sl: 3, class: "F", params: &[] },
    FamilyInfo { family: Family::G, name: "G", aliases: &[], sl: 3, class: "G", params: &[] },
    FamilyInfo { family: Family::H, name: "H", aliases: &[], sl: 3, class: "H", params: &[] },
    FamilyInfo { family: Family::I, name: "I", aliases: &[], sl: 3, class: "I", params: &[] },
    FamilyInfo { family: Family::J, name: "J", aliases: &[], sl: 3, class: "J", params: &[] },
    FamilyInfo { family: Family::K, name: "K", aliases: &[], sl: 3, class: "K", params: &[] },
    FamilyInfo { family: Family::L, name: "L", aliases: &[], sl: 3, class: "L", params: &[] },
];

fn info(f: Family) -> &'static FamilyInfo {
    FAMILIES.iter().find(|i| i.family == f).expect("every family is listed")
}

impl Family {
    /// Look up a family by name or alias.
    pub fn parse(name: &str) -> Result<Self> {
        FAMILIES
            .iter()
            .find(|i| i.name == name || i.aliases.contains(&name))
            .map(|i| i.family)
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset {name:?}")))
    }

    pub fn name(self) -> &'static str {
        info(self).name
    }

    /// 2 for subgroups of SL2, 3 for subgroups of SL3.
    pub fn rank(self) -> usize {
        info(self).sl as usize
    }

    pub fn params(self) -> &'static [&'static str] {
        info(self).params
    }
}

/// Reference values for a preset, used by the acceptance suite.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub classes: Option<usize>,
    #[serde(default)]
    pub rank_a1: Option<usize>,
    /// Eigenvalue list Θ, as expressions.
    #[serde(default)]
    pub theta: Vec<String>,
    #[serde(default)]
    pub p: Option<usize>,
    /// Denominator D(t) as pairs (d, e_d) for ∏ Φ_d^{e_d}.
    #[serde(default)]
    pub den: Option<Vec<(u64, u32)>>,
    /// SL2: the denominator as (1 − t^a)(1 − t^b).
    #[serde(default)]
    pub den_binomial: Option<(u64, u64)>,
    /// Numerator of the Poincaré series of the invariant ring over `den`.
    #[serde(default)]
    pub molien_num: Option<String>,
    /// Numerators in reference index order.
    #[serde(default)]
    pub numerators: Vec<String>,
    /// Whether `numerators` exclude the (1 − tu) factor.
    #[serde(default)]
    pub numerators_without_tu: bool,
    /// McKay matrix A⁽¹⁾ in reference index order.
    #[serde(default)]
    pub a1: Option<Vec<Vec<i64>>>,
    /// McKay graph edges in reference index order.
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    /// Numerator relations in reference indices: ("eq", a, b) for
    /// M_a(t,u) = M_b(t,u) and ("swap", a, b) for M_a(t,u) = M_b(u,t).
    #[serde(default)]
    pub relations: Vec<(String, usize, usize)>,
    /// Reference index i corresponds to canonical index perm[i].
    #[serde(default)]
    pub perm: Option<Vec<usize>>,
}

#[derive(Deserialize)]
struct RefEntry {
    name: String,
    #[serde(default)]
    params: BTreeMap<String, i64>,
    #[serde(flatten)]
    expected: Expected,
}

fn reference() -> &'static [RefEntry] {
    static DATA: OnceLock<Vec<RefEntry>> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(include_str!("../data/reference.json")).expect("reference data parses"))
}

/// A family member with concrete parameters and generators.
#[derive(Clone, Debug)]
pub struct Preset {
    pub family: Family,
    pub params: BTreeMap<String, i64>,
    pub generators: Vec<GroupElement>,
    pub expected: Option<Expected>,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// Display label such as `BDa(q=2,n=3)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name().to_string();
        }
        let ps: Vec<String> = self.family.params().iter().map(|p| format!("{p}={}", self.params[*p])).collect();
        format!("{}({})", self.name(), ps.join(","))
    }

    pub fn dim(&self) -> usize {
        self.family.rank()
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

/// Build a preset from a family name and named integer parameters.
pub fn build(name: &str, params: &BTreeMap<String, i64>) -> Result<Preset> {
    let family = Family::parse(name)?;
    let names = family.params();
    for k in params.keys() {
        if !names.contains(&k.as_str()) {
            return Err(bad(format!("{} takes no parameter {k:?}", family.name())));
        }
    }
    let mut vals = Vec::with_capacity(names.len());
    for n in names {
        let v = *params.get(*n).ok_or_else(|| bad(format!("{} needs parameter {n}", family.name())))?;
        vals.push(v);
    }
    let generators = generators(family, &vals)?;
    let params: BTreeMap<String, i64> = names.iter().map(|n| (n.to_string(), params[*n])).collect();
    let expected =
        reference().iter().find(|e| e.name == family.name() && e.params == params).map(|e| e.expected.clone());
    Ok(Preset { family, params, generators, expected })
}

/// Build with positional parameters in the family's declared order.
pub fn build_with(name: &str, vals: &[i64]) -> Result<Preset> {
    let family = Family::parse(name)?;
    if vals.len() != family.params().len() {
        return Err(bad(format!("{} takes {} parameters", family.name(), family.params().len())));
    }
    let params = family.params().iter().zip(vals).map(|(k, v)| (k.to_string(), *v)).collect();
    build(name, &params)
}

fn generators(f: Family, p: &[i64]) -> Result<Vec<GroupElement>> {
    let i4 = z(4, 1);
    let o = c(0);
    let l = c(1);
    Ok(match f {
        Family::ACyclic => {
            let j = p[0];
            if j < 1 {
                return Err(bad("A_cyclic requires j ≥ 1"));
            }
            let j = j as u64;
            vec![diag(&[z(j, 1), z(j, -1)])]
        }
        Family::DBinary => {
            let n = p[0];
            if n < 2 {
                return Err(bad("D_binary requires n ≥ 2"));
            }
            let n = n as u64;
            vec![
                diag(&[z(2 * n, 1), z(2 * n, -1)]),
                mat(vec![vec![o.clone(), i4.clone()], vec![i4.clone(), o.clone()]]),
            ]
        }
        Family::E6 | Family::E7 => {
            let a = diag(&[z(8, 1), z(8, 7)]);
            let b = mat(vec![vec![o.clone(), i4.clone()], vec![i4.clone(), o.clone()]]);
            let cm = mat(vec![vec![z(8, 7), z(8, 7)], vec![z(8, 5), z(8, 1)]]).scale(&inv(&sqrt2()));
            let first = if f == Family::E6 { a.mul(&a) } else { a };
            vec![first, b, cm]
        }
        Family::E8 => {
            let s = inv(&z(5, 2).sub(&z(5, 3)));
            let r = z(5, 1).add(&z(5, 4));
            vec![
                diag(&[z(5, 3).neg(), z(5, 2).neg()]),
                mat(vec![vec![o.clone(), l.clone()], vec![c(-1), o.clone()]]),
                mat(vec![vec![r.clone(), l.clone()], vec![l.clone(), r.neg()]]).scale(&s),
            ]
        }
        Family::A1 => {
            let j = p[0];
            if j < 1 {
                return Err(bad("A1 requires j ≥ 1"));
            }
            let j = j as u64;
            vec![diag(&[z(j, 1), l.clone(), z(j, -1)])]
        }
        Family::A2 => {
            let (j1, j2) = (p[0], p[1]);
            if !(j1 >= j2 && j2 >= 2) {
                return Err(bad("A2 requires j1 ≥ j2 ≥ 2"));
            }
            let (j1, j2) = (j1 as u64, j2 as u64);
            vec![diag(&[z(j1, 1), l.clone(), z(j1, -1)]), diag(&[l.clone(), z(j2, 1), z(j2, -1)])]
        }
        Family::BDa => {
            let (q, n) = (p[0], p[1]);
            if !(1 < q && q < n) {
                return Err(bad("BDa requires 1 < q < n"));
            }
            if gcd(q as u64, n as u64) != 1 {
                return Err(bad("BDa requires gcd(n, q) = 1"));
            }
            let m = n - q;
            if m % 2 == 0 {
                return Err(bad("BDa requires n − q odd"));
            }
            vec![psi(2 * q as u64), tau(), phi(2 * m as u64)]
        }
        Family::BTa => {
            let m = p[0];
            if m < 1 || !(m % 6 == 1 || m % 6 == 5) {
                return Err(bad("BTa requires m ≡ 1 or 5 mod 6"));
            }
            vec![psi(4), tau(), eta(), phi(2 * m as u64)]
        }
        Family::BO => {
            let m = p[0];
            if m < 1 || gcd(m as u64, 6) != 1 {
                return Err(bad("BO requires gcd(m, 6) = 1"));
            }
            vec![psi(8), tau(), eta(), phi(2 * m as u64)]
        }
        Family::BI => {
            let m = p[0];
            if m < 1 || gcd(m as u64, 30) != 1 {
                return Err(bad("BI requires gcd(m, 30) = 1"));
            }
            let s = inv(&z(5, 2).sub(&z(5, 3)));
            let r = z(5, 1).add(&z(5, 4));
            let w = z(5, 2).sub(&z(5, 3));
            let eta_i = mat(vec![
                vec![w, o.clone(), o.clone()],
                vec![o.clone(), r.clone(), l.clone()],
                vec![o.clone(), l.clone(), r.neg()],
            ])
            .scale(&s);
            vec![
                diag(&[l.clone(), z(5, 3).neg(), z(5, 2).neg()]),
                mat(vec![
                    vec![l.clone(), o.clone(), o.clone()],
                    vec![o.clone(), o.clone(), l.clone()],
                    vec![o.clone(), c(-1), o.clone()],
                ]),
                eta_i,
                phi(2 * m as u64),
            ]
        }
        Family::C => {
            let m = p[0];
            if m < 2 {
                return Err(bad("C requires m ≥ 2"));
            }
            let m = m as u64;
            vec![diag(&[z(m, 1), l.clone(), z(m, -1)]), cyclic_t()]
        }
        Family::DExample => vec![
            diag(&[l.clone(), c(-1), c(-1)]),
            cyclic_t(),
            mat(vec![
                vec![c(-1), o.clone(), o.clone()],
                vec![o.clone(), o.clone(), l.clone()],
                vec![o.clone(), l.clone(), o.clone()],
            ]),
        ],
        Family::E => vec![s_mat(), cyclic_t(), v_mat()],
        Family::F => vec![s_mat(), cyclic_t(), v_mat(), p_mat()],
        Family::G => vec![s_mat(), cyclic_t(), v_mat(), u_mat()],
        Family::H => h_gens(),
        Family::I => i_gens(),
        Family::J => {
            let mut g = h_gens();
            g.push(w_mat());
            g
        }
        Family::K => {
            let mut g = i_gens();
            g.push(w_mat());
            g
        }
        Family::L => {
            let mut g = h_gens();
            g.push(v_l());
            g
        }
    })
}

/// ψ_k = diag(1, ζ_k, ζ_k⁻¹)
fn psi(k: u64) -> GroupElement {
    diag(&[c(1), z(k, 1), z(k, -1)])
}

/// φ_k = diag(ζ_k⁻², ζ_k, ζ_k)
fn phi(k: u64) -> GroupElement {
    diag(&[z(k, -2), z(k, 1), z(k, 1)])
}

fn tau() -> GroupElement {
    let (o, l, i) = (c(0), c(1), z(4, 1));
    mat(vec![vec![l, o.clone(), o.clone()], vec![o.clone(), o.clone(), i.clone()], vec![o, i, c(0)]])
}

fn eta() -> GroupElement {
    let o = c(0);
    let s = inv(&sqrt2());
    mat(vec![vec![sqrt2(), o.clone(), o.clone()], vec![o.clone(), z(8, 7), z(8, 7)], vec![o, z(8, 5), z(8, 1)]])
        .scale(&s)
}

/// Cyclic permutation matrix T.
fn cyclic_t() -> GroupElement {
    let (o, l) = (c(0), c(1));
    mat(vec![vec![o.clone(), l.clone(), o.clone()], vec![o.clone(), o.clone(), l.clone()], vec![l, o.clone(), o]])
}

fn s_mat() -> GroupElement {
    diag(&[c(1), z(3, 1), z(3, 2)])
}

/// V with the sign that makes its determinant one.
fn v_mat() -> GroupElement {
    let (l, w, w2) = (c(1), z(3, 1), z(3, 2));
    mat(vec![vec![l.clone(), l.clone(), l.clone()], vec![l.clone(), w.clone(), w2.clone()], vec![l, w2, w]])
        .scale(&inv(&sqrt_m3()))
}

fn p_mat() -> GroupElement {
    let (l, w, w2) = (c(1), z(3, 1), z(3, 2));
    mat(vec![vec![l.clone(), l.clone(), w2], vec![l.clone(), w.clone(), w.clone()], vec![w, l.clone(), z(3, 1)]])
        .scale(&inv(&sqrt_m3()))
}

fn u_mat() -> GroupElement {
    diag(&[z(9, 2), z(9, 2), z(9, 5)])
}

fn w_mat() -> GroupElement {
    diag(&[z(3, 1), z(3, 1), z(3, 1)])
}

fn h_gens() -> Vec<GroupElement> {
    let (o, l) = (c(0), c(1));
    let s = z(5, 2).add(&z(5, 3));
    let t = z(5, 1).add(&z(5, 4));
    let two = c(2);
    let th = mat(vec![vec![l.clone(), l.clone(), l.clone()], vec![two.clone(), s.clone(), t.clone()], vec![two, t, s]])
        .scale(&inv(&sqrt5()));
    vec![
        diag(&[l.clone(), z(5, 4), z(5, 1)]),
        mat(vec![vec![c(-1), o.clone(), o.clone()], vec![o.clone(), o.clone(), c(-1)], vec![o.clone(), c(-1), o]]),
        th,
    ]
}

fn i_gens() -> Vec<GroupElement> {
    let w = |k: i64| z(7, k);
    let a = w(4).sub(&w(3));
    let b = w(2).sub(&w(5));
    let cc = w(1).sub(&w(6));
    // i/√7 = g/7 with g = ζ+ζ²+ζ⁴−ζ³−ζ⁵−ζ⁶ = i√7.
    let g = w(1).add(&w(2)).add(&w(4)).sub(&w(3)).sub(&w(5)).sub(&w(6));
    let k = g.mul(&CycloNum::from_frac(1, 7));
    let r = mat(vec![vec![a.clone(), b.clone(), cc.clone()], vec![b.clone(), cc.clone(), a.clone()], vec![cc, a, b]])
        .scale(&k);
    vec![diag(&[w(1), w(2), w(4)]), cyclic_t(), r]
}

fn v_l() -> GroupElement {
    let s = z(5, 2).add(&z(5, 3));
    let t = z(5, 1).add(&z(5, 4));
    // i√15 = (ζ3 − ζ3²)·√5
    let i15 = sqrt_m3().mul(&sqrt5());
    let l1 = c(-1).add(&i15).mul(&CycloNum::from_frac(1, 4));
    let l2 = c(-1).sub(&i15).mul(&CycloNum::from_frac(1, 4));
    let two_l2 = l2.mul(&c(2));
    mat(vec![vec![c(1), l1.clone(), l1], vec![two_l2.clone(), s.clone(), t.clone()], vec![two_l2, t, s]])
        .scale(&inv(&sqrt5()))
}

/// One catalog line: a family with its parameter schema.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogVariant {
    pub name: &'static str,
    pub params: Vec<&'static str>,
    /// Parameter sets for which reference values are available.
    pub reference: Vec<BTreeMap<String, i64>>,
    /// Length of the reference eigenvalue list, where available.
    pub theta_len: Option<usize>,
    /// Number of reference numerators, where available.
    pub numerators: Option<usize>,
}

/// Catalog entry: a classification type in SL2 or SL3 with its variants.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub group: &'static str,
    pub class: &'static str,
    pub variants: Vec<CatalogVariant>,
}

/// Static listing of all families: five SL2 types and twelve SL3 types.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    for fi in FAMILIES {
        let group = if fi.sl == 2 { "SL2" } else { "SL3" };
        let refs: Vec<&RefEntry> = reference().iter().filter(|r| r.name == fi.name).collect();
        let var = CatalogVariant {
            name: fi.name,
            params: fi.params.to_vec(),
            reference: refs.iter().map(|r| r.params.clone()).collect(),
            theta_len: refs.iter().find(|r| !r.expected.theta.is_empty()).map(|r| r.expected.theta.len()),
            numerators: refs.iter().find(|r| !r.expected.numerators.is_empty()).map(|r| r.expected.numerators.len()),
        };
        match out.last_mut() {
            Some(e) if e.group == group && e.class == fi.class => e.variants.push(var),
            _ => out.push(CatalogEntry { group, class: fi.class, variants: vec![var] }),
        }
    }
    out
}

/// Every reference parameter set, as (family name, params).
pub fn reference_presets() -> Vec<(String, BTreeMap<String, i64>)> {
    reference().iter().map(|r| (r.name.clone(), r.params.clone())).collect()
}
