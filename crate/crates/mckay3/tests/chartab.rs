use mckay3::chartab::{character_table, dixon, peel, Method};
use mckay3::grp::{FiniteMatrixGroup, DEFAULT_CAP};
use mckay3::presets::build_with;

#[test]
fn tables() {
    for (name, params) in [
        ("E6", vec![]),
        ("E7", vec![]),
        ("E8", vec![]),
        ("H", vec![]),
        ("I", vec![]),
        ("E", vec![]),
        ("F", vec![]),
        ("G", vec![]),
        ("J", vec![]),
        ("K", vec![]),
        ("L", vec![]),
        ("BI", vec![7]),
    ] {
        let t0 = std::time::Instant::now();
        let p = build_with(name, &params).unwrap();
        let g = FiniteMatrixGroup::enumerate(&p.generators, DEFAULT_CAP).unwrap();
        let cs = g.conjugacy_classes().unwrap();
        let t = character_table(&g, &cs).unwrap();
        t.check_columns(&cs).unwrap();
        let peeled = peel(&cs).is_ok();
        eprintln!(
            "{name}: {} classes, method {:?}, peel ok {peeled}, degrees {:?}, {:?}",
            cs.len(),
            t.method,
            t.degrees,
            t0.elapsed()
        );
        if t.method == Method::Peeling && g.order() <= 200 {
            let mut d = dixon(&g, &cs).unwrap();
            let mut r = t.rows.clone();
            d.sort();
            r.sort();
            assert_eq!(d, r);
        }
    }
}
