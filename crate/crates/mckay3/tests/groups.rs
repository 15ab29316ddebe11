use mckay3::grp::{FiniteMatrixGroup, DEFAULT_CAP};
use mckay3::presets::build_with;

fn check(name: &str, params: &[i64], order: usize, classes: usize) {
    let p = build_with(name, params).unwrap();
    let g = FiniteMatrixGroup::enumerate(&p.generators, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), order, "{name} {params:?} order");
    let cs = g.conjugacy_classes().unwrap();
    assert_eq!(cs.len(), classes, "{name} {params:?} classes");
    assert_eq!(cs.sizes.iter().sum::<usize>(), order);
    assert!(cs.sizes.iter().all(|s| order.is_multiple_of(*s)));
}

#[test]
fn orders_and_class_counts() {
    check("E6", &[], 24, 7);
    check("E7", &[], 48, 8);
    check("E8", &[], 120, 9);
    check("D_binary", &[5], 20, 8);
    check("A1", &[3], 3, 3);
    check("E", &[], 108, 14);
    check("F", &[], 216, 16);
    check("G", &[], 648, 24);
    check("H", &[], 60, 5);
    check("I", &[], 168, 6);
    check("J", &[], 180, 15);
    check("K", &[], 504, 18);
    check("L", &[], 1080, 17);
    check("BTa", &[1], 24, 7);
    check("BO", &[1], 48, 8);
    check("BI", &[1], 120, 9);
    check("BDa", &[2, 3], 8, 5);
    check("D_example", &[], 24, 5);
    check("C", &[3], 27, 11);
}
