//! Brute-force reference implementations, written straight from the
//! definitions and sharing no code with the library's search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use plp::generator::{generate, GenConfig};
use plp::{AnswerSet, Literal, Plp, Program, Rule};

/// `Some(closure)` of `rules` read without their `not` parts, or `None` when
/// the closure holds a complementary pair (i.e. it is `Lit`).
fn closure<'a>(rules: impl Iterator<Item = &'a Rule> + Clone) -> Option<BTreeSet<Literal>> {
    let mut s = BTreeSet::new();
    loop {
        let mut grew = false;
        for r in rules.clone() {
            if let Some(h) = &r.head {
                if !s.contains(h) && r.pos.iter().all(|l| s.contains(l)) {
                    s.insert(h.clone());
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let inconsistent = s.iter().any(|l| s.contains(&l.complement()));
    (!inconsistent).then_some(s)
}

fn violates_constraint(pi: &Program, holds: impl Fn(&Literal) -> bool) -> bool {
    pi.rules().iter().any(|r| r.head.is_none() && r.pos.iter().all(&holds) && !r.neg.iter().any(&holds))
}

/// Answer sets by trying every subset of `lit(Π)` plus `Lit`.
pub fn answer_sets(pi: &Program) -> Vec<AnswerSet> {
    let lits: Vec<Literal> = pi.lit().into_iter().collect();
    assert!(lits.len() <= 16, "oracle is exponential in the literal count");
    let mut out = Vec::new();
    for bits in 0u32..1 << lits.len() {
        let s: BTreeSet<Literal> =
            lits.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        if s.iter().any(|l| s.contains(&l.complement())) {
            continue;
        }
        let kept = pi.rules().iter().filter(|r| r.neg.iter().all(|l| !s.contains(l)));
        if closure(kept) == Some(s.clone()) && !violates_constraint(pi, |l| s.contains(l)) {
            out.push(AnswerSet::consistent(s).unwrap());
        }
    }
    // Under Lit every `not L` is blocked.
    let kept = pi.rules().iter().filter(|r| r.neg.is_empty());
    if closure(kept).is_none() && !violates_constraint(pi, |_| true) {
        out.push(AnswerSet::Inconsistent);
    }
    out.sort();
    out
}

pub fn defeated(pi: &Program, r: &Rule) -> bool {
    let sets = answer_sets(pi);
    !sets.is_empty() && sets.iter().all(|s| r.neg.iter().any(|l| s.contains(l)))
}

/// Transitive closure of the declared pairs.
pub fn less_closure(p: &Plp) -> BTreeSet<(String, String)> {
    let mut less: BTreeSet<(String, String)> = p.order().pairs().clone();
    loop {
        let extra: Vec<(String, String)> = less
            .iter()
            .flat_map(|(a, b)| less.iter().filter(move |(c, _)| c == b).map(move |(_, d)| (a.clone(), d.clone())))
            .filter(|pair| !less.contains(pair))
            .collect();
        if extra.is_empty() {
            return less;
        }
        less.extend(extra);
    }
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (1u32..1 << items.len())
        .map(|bits| items.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn self_defeated(pi: &[Rule], set: &[Rule]) -> bool {
    let names: BTreeSet<&str> = set.iter().map(|r| r.name.as_str()).collect();
    let rest = Program::new(pi.iter().filter(|r| !names.contains(r.name.as_str())).cloned().collect()).unwrap();
    let sets = answer_sets(&rest);
    !sets.is_empty() && set.iter().all(|r| sets.iter().all(|s| r.neg.iter().any(|l| s.contains(l))))
}

/// Removal sets allowed in one step: (a) one rule dominates all of them and
/// they are defeated once removed, (b) no member dominates a nonempty set
/// that would be defeated once removed.
pub fn eligible(pi: &[Rule], less: &BTreeSet<(String, String)>) -> Vec<BTreeSet<String>> {
    let lt = |a: &Rule, b: &Rule| less.contains(&(a.name.clone(), b.name.clone()));
    let mut out = Vec::new();
    for set in subsets(pi) {
        let dominated = pi.iter().any(|d| set.iter().all(|r| lt(d, r)));
        if !dominated || !self_defeated(pi, &set) {
            continue;
        }
        let blocked = set.iter().any(|rj| {
            let below: Vec<Rule> = pi.iter().filter(|r| lt(rj, r)).cloned().collect();
            subsets(&below).iter().any(|other| self_defeated(pi, other))
        });
        if !blocked {
            out.push(set.iter().map(|r| r.name.clone()).collect());
        }
    }
    out
}

/// Every reduct, as the set of surviving rule names.
pub fn reducts(p: &Plp) -> BTreeSet<BTreeSet<String>> {
    let less = less_closure(p);
    let mut found = BTreeSet::new();
    let mut stack = vec![p.program().rules().to_vec()];
    let mut seen = BTreeSet::new();
    while let Some(pi) = stack.pop() {
        let names: BTreeSet<String> = pi.iter().map(|r| r.name.clone()).collect();
        if !seen.insert(names.clone()) {
            continue;
        }
        let steps = eligible(&pi, &less);
        if steps.is_empty() {
            found.insert(names);
        }
        for removed in steps {
            stack.push(pi.iter().filter(|r| !removed.contains(&r.name)).cloned().collect());
        }
    }
    found
}

pub fn plp_answer_sets(p: &Plp) -> Vec<AnswerSet> {
    let mut out: Vec<AnswerSet> =
        reducts(p).iter().flat_map(|names| answer_sets(&p.program().filter(|r| names.contains(&r.name)))).collect();
    out.sort();
    out.dedup();
    out
}

pub fn names(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Programs over at most four atoms (eight literals).
pub fn small_programs(count: u64, rules: usize, density: f64) -> impl Iterator<Item = (u64, Plp)> {
    (0..count).map(move |seed| {
        let cfg = GenConfig {
            seed,
            atom_count: 2 + (seed % 3) as usize,
            rule_count: 1 + (seed as usize % rules),
            max_body: 1 + (seed % 3) as usize,
            preference_density: density,
            constraint_probability: if seed.is_multiple_of(4) { 0.15 } else { 0.0 },
            ..Default::default()
        };
        (seed, generate(&cfg))
    })
}

pub fn load(path: &str) -> Plp {
    let text = std::fs::read_to_string(format!("{}/programs/{path}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    plp::ground::ground(&plp::parse(&text).unwrap()).unwrap().plp
}
