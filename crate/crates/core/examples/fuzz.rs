//! Checks the semantic properties on a batch of generated programs.
//!
//!     cargo run --example fuzz -- [iterations] [seed]

use plp::generator::GenConfig;
use plp::reduct::ReductConfig;
use plp::report::fuzz;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("a number")).collect();
    let iterations = args.first().copied().unwrap_or(200);
    let base = GenConfig {
        seed: args.get(1).copied().unwrap_or(0),
        rule_count: 8,
        preference_density: 0.4,
        ..Default::default()
    };
    let report = fuzz("fuzz example", iterations, &base, &ReductConfig::default()).unwrap();
    print!("{}", report.render(false));
}
