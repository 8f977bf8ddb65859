//! Local stratification, priority partitions, mutual defeasibility and the
//! uniqueness certificate.

use plp::analysis::{certify_uniqueness, local_stratification, priority_partition, Obstacle, Stratification, Verdict};
use plp::parse;
use plp::reduct::ReductConfig;

fn main() {
    let tweety =
        parse("n1: fly :- bird, not -fly.\nn2: -fly :- penguin, not fly.\nn3: bird.\nn4: penguin.\nn2 < n1.").unwrap();
    match local_stratification(tweety.program()) {
        Stratification::Stratified(m) => println!("strata {:?}", m.0),
        Stratification::Cycle(c) => println!("not stratified: {c}"),
    }

    let p4 = parse(
        "n1: a :- not b, not c.\nn2: b :- not -c.\nn3: c :- not a, not -c.\nn4: -c :- not c.\n\
         n1 < n2.\nn2 < n4.\nn3 < n4.",
    )
    .unwrap();
    println!("partition {:?}", priority_partition(&p4).blocks);
    for p in [&tweety, &p4] {
        describe(p);
    }

    // Stratified, yet without any answer set.
    let odd = parse("n1: p.\nn2: -p :- not q.").unwrap();
    describe(&odd);
}

fn describe(p: &plp::Plp) {
    let cert = certify_uniqueness(p, &ReductConfig::default()).unwrap();
    let detail = match &cert.verdict {
        Verdict::UniqueAnswerSet { reduct, answer_set } => {
            format!("reduct {:?}, answer set {answer_set}", reduct.name_set())
        }
        Verdict::UniqueReduct { reduct, obstacle } => {
            let why = match obstacle {
                Obstacle::NotStratified(c) => format!("not stratified ({c})"),
                Obstacle::Constraints(cs) => format!("constraints {cs:?}"),
                Obstacle::NoAnswerSet => "stratified, no answer set".into(),
            };
            format!("reduct {:?}, {why}", reduct.name_set())
        }
        Verdict::NotCertified { witness } => format!("witness {witness:?}"),
    };
    println!("{}: {detail}", cert.verdict.label());
}
