//! Grounds a non-ground program over its constants and checks
//! well-formedness of the priorities.

use plp::ground::{check_well_formed, ground, WellFormedness};
use plp::parse;

fn main() {
    let p = parse(
        "n1: fly(X) :- bird(X), not -fly(X).\n\
         n2: -fly(X) :- penguin(X), not fly(X).\n\
         n3: bird(tweety).\nn4: bird(sam).\nn5: penguin(tweety).\n\
         n2 < n1.",
    )
    .unwrap();
    let g = ground(&p).expect("well-formed");
    print!("{}", plp::print(&g.plp));
    for (instance, source) in &g.provenance {
        if instance != source {
            println!("% {instance} comes from {source}");
        }
    }

    // Both rules share the instance `a(c) :- b(c).`, which would be ordered
    // against itself.
    let bad = parse("r1: a(X) :- b(X).\nr2: a(c) :- b(c).\nr3: b(c).\nr1 < r2.").unwrap();
    if let WellFormedness::Violation(v) = check_well_formed(&bad) {
        println!("violation: {v}");
    }
    println!("ground: {}", ground(&bad).unwrap_err());
}
