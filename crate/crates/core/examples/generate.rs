//! Prints a generated program, its answer sets, and its split solution.
//!
//!     cargo run --example generate -- [seed] [atoms] [rules] [max_body] [preference_density]

use plp::generator::{generate, GenConfig};
use plp::reduct::{plp_answer_sets, ReductConfig};
use plp::split::{solve_via_split, BlockCount};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let cfg = GenConfig {
        seed: arg(0, "1").parse().expect("seed"),
        atom_count: arg(1, "4").parse().expect("atoms"),
        rule_count: arg(2, "6").parse().expect("rules"),
        max_body: arg(3, "2").parse().expect("max body"),
        preference_density: arg(4, "0.2").parse().expect("density"),
        ..GenConfig::default()
    };
    let p = generate(&cfg);
    print!("{}", plp::print(&p));

    let rc = ReductConfig::default();
    println!("% answer sets");
    for s in plp_answer_sets(&p, &rc).expect("within the cap") {
        println!("{s}");
    }
    let split = solve_via_split(&p, BlockCount::Coarsest, &rc).expect("within the cap");
    match &split.blocks {
        Some(blocks) => println!("% split {blocks:?}"),
        None => println!("% no split"),
    }
    for s in &split.answer_sets {
        println!("{s}");
    }
}
