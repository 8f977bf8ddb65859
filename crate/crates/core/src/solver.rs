//! Answer sets of ground extended logic programs.
//!
//! `S` is an answer set of `Π` when `S` is the least set closed under the
//! naf-free program `Π^S` (rules blocked by `S` deleted, remaining `not`
//! literals dropped), with any set holding a complementary pair replaced by
//! `Lit`. A constraint rules out every candidate that satisfies its body.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::engine::{self, CapExceeded, Compiled};
use crate::model::{AnswerSet, Literal, Program, Rule};

/// Default bound on the number of literals the enumeration guesses over.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("candidate space too large: {size} guessed literals exceed the cap of {cap}")]
    CandidateSpaceTooLarge { size: usize, cap: usize },
    #[error("rule `{0}` is not ground")]
    NotGround(String),
    #[error("rule `{0}` has a `not` literal; the closure needs a naf-free program")]
    NotNafFree(String),
    #[error("constraint `{0}` is violated")]
    ConstraintViolated(String),
}

impl From<CapExceeded> for SolveError {
    fn from(e: CapExceeded) -> Self {
        SolveError::CandidateSpaceTooLarge { size: e.size, cap: e.cap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of literals (heads that also occur under `not`) whose
    /// truth the enumeration may guess.
    pub cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { cap: DEFAULT_CAP }
    }
}

pub(crate) fn require_ground(pi: &Program) -> Result<(), SolveError> {
    match pi.rules().iter().find(|r| !r.is_ground()) {
        Some(r) => Err(SolveError::NotGround(r.name.clone())),
        None => Ok(()),
    }
}

/// The Gelfond-Lifschitz transform `Π^S`.
pub fn gl_transform(pi: &Program, s: &BTreeSet<Literal>) -> Program {
    transform_with(pi, |l| s.contains(l))
}

fn transform_with(pi: &Program, holds: impl Fn(&Literal) -> bool) -> Program {
    let rules = pi
        .rules()
        .iter()
        .filter(|r| !r.neg.iter().any(&holds))
        .map(|r| Rule { neg: BTreeSet::new(), ..r.clone() })
        .collect();
    Program::new(rules).expect("names stay unique")
}

/// Least set closed under a naf-free program; `Lit` if it is inconsistent.
pub fn minimal_closure(pi: &Program) -> Result<AnswerSet, SolveError> {
    if let Some(r) = pi.rules().iter().find(|r| !r.neg.is_empty()) {
        return Err(SolveError::NotNafFree(r.name.clone()));
    }
    let closure = AnswerSet::from_closure(closure_of(pi));
    if let Some(c) = pi.rules().iter().find(|r| r.is_constraint() && r.pos.iter().all(|l| closure.contains(l))) {
        return Err(SolveError::ConstraintViolated(c.name.clone()));
    }
    Ok(closure)
}

fn closure_of(pi: &Program) -> BTreeSet<Literal> {
    let mut set = BTreeSet::new();
    loop {
        let before = set.len();
        for r in pi.rules() {
            if let Some(h) = &r.head {
                if r.pos.iter().all(|l| set.contains(l)) {
                    set.insert(h.clone());
                }
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Checks `s` directly against the definition (no search involved).
pub fn is_answer_set(pi: &Program, s: &AnswerSet) -> bool {
    let reduced = transform_with(pi, |l| s.contains(l)).filter(|r| !r.is_constraint());
    let closure = AnswerSet::from_closure(closure_of(&reduced));
    closure == *s
        && !pi
            .rules()
            .iter()
            .any(|r| r.is_constraint() && r.pos.iter().all(|l| s.contains(l)) && !r.neg.iter().any(|l| s.contains(l)))
}

/// All answer sets, sorted by size then literals, `Lit` last.
pub fn answer_sets(pi: &Program, cfg: &SolverConfig) -> Result<Vec<AnswerSet>, SolveError> {
    require_ground(pi)?;
    let compiled = Compiled::new(pi);
    let models = compiled.models(&compiled.full_mask(), cfg.cap)?;
    let mut out: Vec<AnswerSet> = models.iter().map(|m| compiled.to_answer_set(m)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `r` is defeated by `pi` when `pi` has an answer set and every answer
/// set contains a literal of `neg(r)`. `Lit` contains every literal, so it
/// defeats exactly the rules with a nonempty naf body.
pub fn defeats(pi: &Program, r: &Rule, cfg: &SolverConfig) -> Result<bool, SolveError> {
    require_ground(pi)?;
    if !r.is_ground() {
        return Err(SolveError::NotGround(r.name.clone()));
    }
    let compiled = Compiled::with_rules(pi.rules(), r.literals());
    let models = compiled.models(&compiled.full_mask(), cfg.cap)?;
    Ok(engine::defeated(&compiled.compile_rule(r).neg, &models))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn program(text: &str) -> Program {
        parse(text).unwrap().program().clone()
    }

    fn set(lits: &[&str]) -> AnswerSet {
        AnswerSet::consistent(lits.iter().map(|s| lit(s))).unwrap()
    }

    fn lit(s: &str) -> Literal {
        parse(&format!("x: {s}.")).unwrap().program().rules()[0].head.clone().unwrap()
    }

    fn lits(v: &[&str]) -> BTreeSet<Literal> {
        v.iter().map(|s| lit(s)).collect()
    }

    fn solve(text: &str) -> Vec<AnswerSet> {
        answer_sets(&program(text), &SolverConfig::default()).unwrap()
    }

    const P1_GROUND: &str = "\
n1: fly(tweety) :- bird(tweety), not -fly(tweety).
n2: -fly(tweety) :- penguin(tweety), not fly(tweety).
n3: bird(tweety).
n4: penguin(tweety).";

    const P2: &str = "n1: a.\nn2: b :- not c.\nn3: d.\nn4: c :- not b.";

    #[test]
    fn gl_transform_of_p1_reduct() {
        let reduct =
            program("n2: -fly(tweety) :- penguin(tweety), not fly(tweety).\nn3: bird(tweety).\nn4: penguin(tweety).");
        let s = lits(&["bird(tweety)", "penguin(tweety)", "-fly(tweety)"]);
        let t = gl_transform(&reduct, &s);
        assert_eq!(t.to_string(), "n2: -fly(tweety) :- penguin(tweety).\nn3: bird(tweety).\nn4: penguin(tweety).\n");
        assert_eq!(minimal_closure(&t).unwrap(), AnswerSet::consistent(s).unwrap());
    }

    #[test]
    fn gl_transform_edge_cases() {
        let horn = program("a: p :- q.\nb: q.");
        assert_eq!(gl_transform(&horn, &lits(&["p", "z"])), horn);
        let blocking = program("r: a :- not a.");
        assert!(gl_transform(&blocking, &lits(&["a"])).is_empty());
    }

    #[test]
    fn closure_cases() {
        assert_eq!(minimal_closure(&program("a: a.\nb: -a.")).unwrap(), AnswerSet::Inconsistent);
        assert_eq!(minimal_closure(&Program::empty()).unwrap(), set(&[]));
        assert_eq!(minimal_closure(&program("a: a.\nc: :- a.")), Err(SolveError::ConstraintViolated("c".into())));
        assert_eq!(minimal_closure(&program("a: a :- not b.")), Err(SolveError::NotNafFree("a".into())));
    }

    #[test]
    fn p2_answer_set_checks() {
        let pi = program(P2);
        assert!(is_answer_set(&pi, &set(&["a", "c", "d"])));
        assert!(is_answer_set(&pi, &set(&["a", "b", "d"])));
        assert!(!is_answer_set(&pi, &set(&["a"])));
        assert!(is_answer_set(&program("a: a.\nb: -a."), &AnswerSet::Inconsistent));
        assert_eq!(solve(P2), vec![set(&["a", "b", "d"]), set(&["a", "c", "d"])]);
    }

    #[test]
    fn three_answer_sets_of_p3() {
        let got = solve("n1: a :- not b.\nn2: b :- not a.\nn3: c :- not b, not d.\nn4: d :- not c.");
        assert_eq!(got, vec![set(&["a", "c"]), set(&["a", "d"]), set(&["b", "d"])]);
    }

    #[test]
    fn even_loop() {
        assert_eq!(solve("r1: a :- not b.\nr2: b :- not a."), vec![set(&["a"]), set(&["b"])]);
    }

    #[test]
    fn answer_sets_of_p6_program() {
        // brute-forced over all subsets of head(Π)
        let got = solve(
            "n1: a :- not -a, not d.\nn2: d :- not -d.\nn3: -d :- not d.\n\
             n4: b :- not c.\nn5: c :- not b.\nn6: a :- c, -d.",
        );
        assert_eq!(got, vec![set(&["b", "d"]), set(&["c", "d"]), set(&["a", "b", "-d"]), set(&["a", "c", "-d"])]);
    }

    #[test]
    fn lit_answer_sets() {
        assert_eq!(solve("a: a.\nb: -a."), vec![AnswerSet::Inconsistent]);
        assert_eq!(solve("a: a.\nb: -a.\nc: p :- not q."), vec![AnswerSet::Inconsistent]);
        // a constraint without naf literals always applies to Lit
        assert!(solve("a: a.\nb: -a.\nc: :- q.").is_empty());
        // a constraint with naf literals never does
        assert_eq!(solve("a: a.\nb: -a.\nc: :- not q."), vec![AnswerSet::Inconsistent]);
        // inconsistency reachable only through naf yields nothing
        assert!(solve("a: a :- not b.\nc: -a.").iter().all(AnswerSet::is_consistent));
    }

    #[test]
    fn constraints_filter() {
        assert_eq!(solve("r1: a :- not b.\nr2: b :- not a.\nc: :- a."), vec![set(&["b"])]);
        assert!(solve("r: a.\nc: :- a.").is_empty());
        assert!(solve("r: a :- not a.").is_empty());
    }

    #[test]
    fn defeat_cases() {
        let cfg = SolverConfig::default();
        let p1 = program(P1_GROUND);
        let n1 = p1.rule("n1").unwrap().clone();
        assert!(defeats(&p1.without(&BTreeSet::from(["n1".to_string()])), &n1, &cfg).unwrap());

        let p2 = program(P2);
        let n2 = p2.rule("n2").unwrap().clone();
        assert!(defeats(&p2.without(&BTreeSet::from(["n2".to_string()])), &n2, &cfg).unwrap());

        let no_models = program("r: a :- not a.");
        let any = Rule::new("x", Some(lit("z")), [], [lit("a")]);
        assert!(!defeats(&no_models, &any, &cfg).unwrap());

        // literals outside the program are interned for the rule
        let other = Rule::new("y", Some(lit("z")), [], [lit("unseen")]);
        assert!(!defeats(&p2, &other, &cfg).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let text: String = (0..6).map(|i| format!("r{i}: a{i} :- not b{i}.\ns{i}: b{i} :- not a{i}.\n")).collect();
        let err = answer_sets(&program(&text), &SolverConfig { cap: 11 }).unwrap_err();
        assert_eq!(err, SolveError::CandidateSpaceTooLarge { size: 12, cap: 11 });
        assert_eq!(answer_sets(&program(&text), &SolverConfig { cap: 12 }).unwrap().len(), 64);
    }

    #[test]
    fn non_ground_rejected() {
        let err = answer_sets(&program("r: p(X) :- q(X)."), &SolverConfig::default()).unwrap_err();
        assert_eq!(err, SolveError::NotGround("r".into()));
    }
}
