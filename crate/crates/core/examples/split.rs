//! Solving block by block: the split plan, the derived programs with the
//! `__first` fact, and the recombined answer sets.

use plp::parse;
use plp::reduct::{plp_answer_sets, ReductConfig};
use plp::split::{solve_via_split, BlockCount};

fn main() {
    let cfg = ReductConfig::default();
    let p = parse(
        "n1: a :- not -a, not d.\nn2: d :- not -d.\nn3: -d :- not d.\n\
         n4: b :- not c.\nn5: c :- not b.\nn6: a :- c, -d.\nn1 < n4.\nn6 < n2.",
    )
    .unwrap();
    let s = solve_via_split(&p, BlockCount::Coarsest, &cfg).unwrap();
    println!("blocks {:?}", s.blocks.unwrap());
    for b in &s.branches {
        for (i, derived) in b.plan.programs.iter().enumerate() {
            println!("-- block {} (order {:?})", i + 1, derived.order().pairs());
            print!("{}", derived.program());
        }
        println!("-> {}", b.answer_set.as_ref().map_or("inconsistent".into(), ToString::to_string));
    }

    // A later block can rule out the answer sets that made an earlier rule
    // defeated; solving the first block alone then removes too much.
    let gap = parse("r1: a :- not b.\nr2: b :- not a.\nr3: x :- a, not x.\nr1 < r2.").unwrap();
    let direct: Vec<String> = plp_answer_sets(&gap, &cfg).unwrap().iter().map(ToString::to_string).collect();
    let split = solve_via_split(&gap, BlockCount::Coarsest, &cfg).unwrap();
    println!("direct {direct:?}, via split {:?}", split.answer_sets);
}
