//! Print the computed data for a preset: `cargo run --example dump -- E6`.

use mckay3::analysis::Analysis;
use mckay3::grp::DEFAULT_CAP;
use mckay3::presets::build_with;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("E6");
    let params: Vec<i64> = args[1..].iter().map(|s| s.parse().unwrap()).collect();
    let p = build_with(name, &params).unwrap();
    let a = Analysis::run(&p.generators, DEFAULT_CAP).unwrap();
    println!("order {} classes {}", a.group.order(), a.classes.len());
    println!("degrees {:?}", a.table.degrees);
    let th: Vec<String> = a.mckay.theta.iter().map(|x| x.to_string()).collect();
    println!("theta {}", th.join(", "));
    println!("rank {}", a.mckay.rank_a1);
    for r in &a.mckay.a1 {
        println!("  {r:?}");
    }
    println!("edges {:?}", a.mckay.edges());
    print!("{}", a.series.to_text());
    println!("molien {}", a.molien.to_text());
    println!("p {} exact {} sets {:?}", a.partition.p, a.partition.exact, a.partition.partition);
}
