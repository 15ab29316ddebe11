//! Derive reference-to-canonical labelings for every reference entry with
//! index-dependent data: `cargo run --release --example align`.

use mckay3::analysis::Analysis;
use mckay3::grp::DEFAULT_CAP;
use mckay3::presets::{build, reference_presets};
use mckay3::reference::candidate_perms;

fn main() {
    for (name, params) in reference_presets() {
        let p = build(&name, &params).unwrap();
        let Some(exp) = p.expected.clone() else { continue };
        if exp.edges.is_empty() && exp.numerators.is_empty() && exp.a1.is_none() {
            continue;
        }
        let a = Analysis::run(&p.generators, DEFAULT_CAP).unwrap();
        let c = candidate_perms(&exp, &a, 100_000).unwrap();
        println!("{} candidates={} first={:?}", p.label(), c.len(), c.first());
    }
}
