//! Property tests for the arithmetic layers and the structural invariants.

use mckay3::analysis::Analysis;
use mckay3::expr::parse_cyclo;
use mckay3::field::Field;
use mckay3::grp::{GroupElement, DEFAULT_CAP};
use mckay3::mckay::cartan;
use mckay3::poly::{CycloFactors, ZBiPoly, ZPoly};
use mckay3::roots::{color, min_partition, orthogonality_graph};
use mckay3::series::RationalBranchingSeries;
use mckay3::weyl::{mults_direct_all, mults_recursive};
use mckay3::CycloNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: &[u64] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 20];

fn cyclo_in(n: u64) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((0..n, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(CycloNum::zero(), |acc, (k, p, q)| {
            acc.add(&CycloNum::root_of_unity(n, k as i64).scale(&BigRational::new(p.into(), q.into())))
        })
    })
}

fn cyclo() -> impl Strategy<Value = CycloNum> {
    prop::sample::select(CONDUCTORS).prop_flat_map(cyclo_in)
}

fn same_field() -> impl Strategy<Value = (u64, CycloNum, CycloNum)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|n| (Just(n), cyclo_in(n), cyclo_in(n)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 * (1.0 + a.0.abs()) && (a.1 - b.1).abs() < 1e-9 * (1.0 + a.1.abs())
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-9i64..=9, 0..7).prop_map(|c| ZPoly::from_i64(&c))
}

fn zbipoly() -> impl Strategy<Value = ZBiPoly> {
    prop::collection::vec(((0u32..5, 0u32..5), -9i64..=9), 0..8)
        .prop_map(|t| ZBiPoly::from_terms(t.into_iter().map(|(k, v)| (k, BigInt::from(v)))))
}

fn graph(max: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            (0..n).map(|i| (0..n).map(|j| i != j && bits[i.min(j) * n + i.max(j)]).collect()).collect()
        })
    })
}

fn chromatic_brute(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    (1..=n)
        .find(|&k| {
            let total = k.pow(n as u32);
            (0..total).any(|mut code| {
                let col: Vec<usize> = (0..n)
                    .map(|_| {
                        let c = code % k;
                        code /= k;
                        c
                    })
                    .collect();
                (0..n).all(|i| (0..n).all(|j| !adj[i][j] || col[i] != col[j]))
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse(a in cyclo()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in cyclo(), b in cyclo()) {
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        let (re, im) = a.embed();
        prop_assert!(close(a.conj().embed(), (re, -im)));
    }

    #[test]
    fn galois_is_a_homomorphism(n in prop::sample::select(CONDUCTORS), k in 1i64..60) {
        prop_assume!(num_integer::gcd(k, n as i64) == 1);
        let z = CycloNum::root_of_unity(n, 1);
        let w = CycloNum::root_of_unity(n, 3).add(&CycloNum::from_int(2));
        prop_assert_eq!(z.mul(&w).galois(k), z.galois(k).mul(&w.galois(k)));
        prop_assert_eq!(z.galois(k), CycloNum::root_of_unity(n, k));
    }

    #[test]
    fn embedding_agrees(a in cyclo(), b in cyclo()) {
        let (x, y) = (a.embed(), b.embed());
        prop_assert!(close(a.mul(&b).embed(), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
        prop_assert!(close(a.add(&b).embed(), (x.0 + y.0, x.1 + y.1)));
    }

    #[test]
    fn display_round_trip(a in cyclo()) {
        prop_assert_eq!(parse_cyclo(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn fixed_field_matches_exact((n, a, b) in same_field()) {
        let f = Field::new(n);
        let fa = f.from_cyclo(&a).unwrap();
        let fb = f.from_cyclo(&b).unwrap();
        prop_assert_eq!(f.to_cyclo(&f.mul(&fa, &fb).unwrap()), a.mul(&b));
        prop_assert_eq!(f.to_cyclo(&f.add(&fa, &fb).unwrap()), a.add(&b));
        prop_assert_eq!(f.to_cyclo(&f.galois(&fa, -1)), a.conj());
    }

    #[test]
    fn poly_division_round_trip(p in zpoly(), q in zpoly(), lead in prop::sample::select(&[-1i64, 1][..])) {
        // Division is defined for divisors with leading coefficient ±1.
        let q = q.add(&ZPoly::monomial(q.degree().map_or(0, |d| d + 1), lead.into()));
        prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p.clone()));
        if let Some((quo, rem)) = p.div_rem(&ZPoly::one_minus_power(3)) {
            prop_assert_eq!(quo.mul(&ZPoly::one_minus_power(3)).add(&rem), p);
        }
    }

    #[test]
    fn series_inverse(ds in prop::collection::vec(1u64..=12, 1..4)) {
        let d = ds.iter().fold(CycloFactors::default(), |acc, &a| acc.mul(&CycloFactors::of_one_minus_power(a)));
        let dp = d.expand();
        let inv = ZPoly::from_coeffs(dp.series_inverse(20).unwrap());
        let prod = dp.mul(&inv);
        for i in 0..20 {
            prop_assert_eq!(prod.coeff(i), BigInt::from(i64::from(i == 0)));
        }
    }

    #[test]
    fn cyclotomic_factors(a in 1u64..=24, b in 1u64..=24) {
        let fa = CycloFactors::of_one_minus_power(a);
        let fb = CycloFactors::of_one_minus_power(b);
        prop_assert_eq!(fa.mul(&fb).expand(), fa.expand().mul(&fb.expand()));
        prop_assert_eq!(fa.mul(&fb).div(&fb), Some(fa.clone()));
        prop_assert_eq!(fa.expand(), ZPoly::one_minus_power(a as usize).neg());
    }

    #[test]
    fn m_numerators_round_trip(qs in prop::collection::vec(zbipoly(), 1..4)) {
        let one_minus_tu = ZBiPoly::from_terms([((0, 0), BigInt::from(1)), ((1, 1), BigInt::from(-1))]);
        let s = RationalBranchingSeries {
            rank: 3,
            numerators: qs.iter().map(|q| q.mul(&one_minus_tu)).collect(),
            den_t: CycloFactors::of_one_minus_power(2),
            den_u: CycloFactors::of_one_minus_power(2),
        };
        prop_assert_eq!(s.m_numerators(), Some(qs.clone()));
        for q in &qs {
            prop_assert_eq!(q.swap().swap(), q.clone());
        }
    }

    #[test]
    fn coloring_is_proper_and_minimal(adj in graph(8)) {
        let (colors, exact) = color(&adj);
        prop_assert!(exact);
        let n = adj.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(!adj[i][j] || colors[i] != colors[j]);
            }
        }
        let k = colors.iter().max().map_or(0, |m| m + 1);
        prop_assert_eq!(k, chromatic_brute(&adj));
    }

    #[test]
    fn partition_identity(entries in prop::collection::vec(0i64..=2, 1..=49)) {
        let n = (entries.len() as f64).sqrt() as usize;
        prop_assume!(n >= 1);
        let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { entries[i * n + j] }).collect()).collect();
        let c = cartan(&a);
        let r = min_partition(&c).unwrap();
        prop_assert_eq!(r.p, chromatic_brute(&orthogonality_graph(&c)));
        let mut all: Vec<usize> = r.partition.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Cyclic diagonal subgroups diag(ζ^a, ζ^b, ζ^{−a−b}) of SL3.
    #[test]
    fn diagonal_groups_agree(n in 1u64..=9, a in 0i64..9, b in 0i64..9) {
        let g = GroupElement::diag(&[
            CycloNum::root_of_unity(n, a),
            CycloNum::root_of_unity(n, b),
            CycloNum::root_of_unity(n, -a - b),
        ]);
        let an = Analysis::run(&[g], DEFAULT_CAP).unwrap();
        let direct = mults_direct_all(&an.classes, &an.table, 6).unwrap();
        prop_assert_eq!(&direct, &mults_recursive(&an.mckay.a1, &an.mckay.a2, 6));
        prop_assert_eq!(&direct, &an.series.expand(6).unwrap());
        direct.check_dimensions(&an.table.degrees).unwrap();
        let (num, den) = an.series.t_section_0();
        prop_assert!(an.molien.equals(&num, &den.expand()));
    }
}
