//! Reducts of prioritized programs with their witnessing chains, and the
//! two readings of the "less preferred rule" condition.

use plp::parse;
use plp::reduct::{all_reducts, compare_readings, plp_answer_sets, ReductConfig};

fn main() {
    let cfg = ReductConfig::default();
    let p = parse(
        "n1: a :- not b.\nn2: b :- not a.\nn3: c :- not b, not d.\nn4: d :- not c.\n\
         n1 < n2.\nn3 < n4.",
    )
    .unwrap();
    for r in all_reducts(&p, &cfg).unwrap() {
        println!("reduct {:?}", r.program.name_set());
        for (i, removed) in r.chain.removals.iter().enumerate() {
            println!("  step {}: remove {removed:?}", i + 1);
        }
    }
    for s in plp_answer_sets(&p, &cfg).unwrap() {
        println!("answer set {s}");
    }

    // Two reducts: nothing orders n2 against n4.
    let p2 = parse("n1: a.\nn2: b :- not c.\nn3: d.\nn4: c :- not b.\nn1 < n2.\nn3 < n4.").unwrap();
    let cmp = compare_readings(&p2, &cfg).unwrap();
    println!("same dominator: {:?}", cmp.same_dominator);
    println!("any dominator:  {:?}", cmp.any_dominator);
    println!("readings diverge: {}", cmp.diverges());
}
