use mckay3::analysis::Analysis;
use mckay3::grp::DEFAULT_CAP;
use mckay3::presets::build_with;
use mckay3::weyl::{mults_direct_all, mults_recursive, mults_recursive_sl2};

const SMALL: &[(&str, &[i64])] = &[
    ("A_cyclic", &[5]),
    ("D_binary", &[3]),
    ("E6", &[]),
    ("E7", &[]),
    ("E8", &[]),
    ("A1", &[4]),
    ("A1", &[5]),
    ("A2", &[3, 2]),
    ("BDa", &[2, 3]),
    ("BTa", &[1]),
    ("BO", &[1]),
    ("BI", &[1]),
    ("C", &[2]),
    ("C", &[3]),
    ("D_example", &[]),
    ("E", &[]),
    ("H", &[]),
    ("I", &[]),
    ("J", &[]),
];

#[test]
fn direct_recursive_and_closed_form_agree() {
    for &(name, params) in SMALL {
        let p = build_with(name, params).unwrap();
        let a = Analysis::run(&p.generators, DEFAULT_CAP).unwrap();
        assert!(a.group.order() <= 200, "{name}");
        let direct = mults_direct_all(&a.classes, &a.table, 8).unwrap();
        let rec = if p.dim() == 2 {
            mults_recursive_sl2(&a.mckay.a1, 8)
        } else {
            mults_recursive(&a.mckay.a1, &a.mckay.a2, 8)
        };
        let series = a.series.expand(8).unwrap();
        assert_eq!(direct, rec, "{name} direct vs recursive");
        assert_eq!(direct, series, "{name} direct vs closed form");
        direct.check_dimensions(&a.table.degrees).unwrap();
    }
}

#[test]
fn molien_is_trivial_section() {
    for &(name, params) in SMALL {
        let p = build_with(name, params).unwrap();
        let a = Analysis::run(&p.generators, DEFAULT_CAP).unwrap();
        let (num, den) = a.series.t_section_0();
        assert!(a.molien.equals(&num, &den.expand()), "{name}");
    }
}
