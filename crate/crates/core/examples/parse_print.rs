//! Parses a program, walks its rules, and prints it back in canonical form.

use plp::{parse, print};

const TEXT: &str = "\
% comments run to the end of the line
n1: fly(X) :- bird(X), not -fly(X).
n2: -fly(X) :- penguin(X), not fly(X).
n3: bird(tweety).
n4: penguin(tweety).
n5: :- fly(X), penguin(X).
n2 < n1.
";

fn main() {
    let p = parse(TEXT).expect("valid program");
    for r in p.program().rules() {
        let head = r.head.as_ref().map_or("(constraint)".to_string(), ToString::to_string);
        println!("{}: head {head}, {} positive, {} negated", r.name, r.pos.len(), r.neg.len());
    }
    println!("order: {:?}", p.order().pairs());
    print!("{}", print(&p));

    match parse("n1: a :- b c.") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error at {:?}: {e}", e.position()),
    }
}
