//! Answer sets of extended logic programs: several, none, `Lit`, and
//! rule defeat.

use plp::parse;
use plp::solver::{answer_sets, defeats, SolverConfig};

fn show(text: &str) {
    let named: String = text.lines().enumerate().map(|(i, l)| format!("r{}: {l}\n", i + 1)).collect();
    let p = parse(&named).unwrap();
    let sets = answer_sets(p.program(), &SolverConfig::default()).unwrap();
    let shown: Vec<String> = sets.iter().map(ToString::to_string).collect();
    println!("{:<40} => [{}]", text.replace('\n', " "), shown.join(" "));
}

fn main() {
    show("a :- not b.\nb :- not a.");
    show("a :- not a.");
    show("a.\n-a :- a.");
    show("p.\n-p :- not q.");
    show("a :- not b.\nb :- not a.\n:- a.");

    let p = parse("n1: a.\nn2: b :- not a.").unwrap();
    let rest = p.program().filter(|r| r.name == "n1");
    let n2 = p.program().rule("n2").unwrap();
    println!("{{n1}} defeats n2: {}", defeats(&rest, n2, &SolverConfig::default()).unwrap());

    let wide: String = (0..12).map(|i| format!("p{i}: a{i} :- not b{i}.\nq{i}: b{i} :- not a{i}.\n")).collect();
    let err = answer_sets(parse(&wide).unwrap().program(), &SolverConfig::default()).unwrap_err();
    println!("{err}");
}
