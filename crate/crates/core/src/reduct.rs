//! Reducts of ground prioritized programs.
//!
//! A reduct chain starts from the whole program and repeatedly removes a set
//! `R` of rules such that
//!
//! - (a) one surviving rule is preferred to every member of `R`, and every
//!   member of `R` is defeated by the program without `R`;
//! - (b) no member of `R` has a nonempty set of less preferred rules that is
//!   in the same way defeated by the program without that set.
//!
//! Several removal sets may qualify at a step; every choice is explored and
//! the reducts are the distinct fixpoints.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::engine::{self, Compiled, Model};
use crate::model::{AnswerSet, Plp, PriorityRelation, Program};
use crate::solver::{require_ground, SolveError, SolverConfig};

/// Who may dominate the less preferred sets `R'` ruled out by condition (b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ConditionBReading {
    /// All of `R'` lies below one and the same member of `R`.
    #[default]
    SameDominator,
    /// Each member of `R'` lies below some member of `R`.
    AnyDominator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReductConfig {
    pub solver: SolverConfig,
    /// Largest removal set (and largest `R'`) considered; `None` is unbounded.
    pub max_removal_size: Option<usize>,
    pub reading: ConditionBReading,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductChain {
    /// `Π₀ ⊋ Π₁ ⊋ … ⊋ Πₙ`, starting from the input program.
    pub steps: Vec<Program>,
    /// `removals[i]` turns `steps[i]` into `steps[i + 1]`.
    pub removals: Vec<BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduct {
    pub program: Program,
    pub chain: ReductChain,
}

/// Outcome of running the reduct search under both readings of (b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadingComparison {
    pub same_dominator: Vec<BTreeSet<String>>,
    pub any_dominator: Vec<BTreeSet<String>>,
}

impl ReadingComparison {
    pub fn diverges(&self) -> bool {
        self.same_dominator != self.any_dominator
    }
}

/// Shared state for one ground program: compiled rules, the strict order as
/// a matrix, and answer sets memoized per sub-program.
pub(crate) struct Reducer<'a> {
    program: &'a Program,
    compiled: Compiled,
    below: Vec<FixedBitSet>,
    cfg: ReductConfig,
    models: HashMap<FixedBitSet, Rc<Vec<Model>>>,
    self_defeated: HashMap<FixedBitSet, bool>,
}

impl<'a> Reducer<'a> {
    pub fn new(program: &'a Program, order: &PriorityRelation, cfg: ReductConfig) -> Result<Self, SolveError> {
        require_ground(program)?;
        let n = program.len();
        let below = program
            .rules()
            .iter()
            .map(|r| {
                let mut set = FixedBitSet::with_capacity(n);
                for (j, other) in program.rules().iter().enumerate() {
                    if order.less(&r.name, &other.name) {
                        set.insert(j);
                    }
                }
                set
            })
            .collect();
        Ok(Reducer {
            program,
            compiled: Compiled::new(program),
            below,
            cfg,
            models: HashMap::new(),
            self_defeated: HashMap::new(),
        })
    }

    pub fn full(&self) -> FixedBitSet {
        self.compiled.full_mask()
    }

    pub fn models(&mut self, mask: &FixedBitSet) -> Result<Rc<Vec<Model>>, SolveError> {
        if let Some(m) = self.models.get(mask) {
            return Ok(Rc::clone(m));
        }
        let m = Rc::new(self.compiled.models(mask, self.cfg.solver.cap)?);
        self.models.insert(mask.clone(), Rc::clone(&m));
        Ok(m)
    }

    pub fn answer_sets(&mut self, mask: &FixedBitSet) -> Result<Vec<AnswerSet>, SolveError> {
        let models = self.models(mask)?;
        let mut out: Vec<AnswerSet> = models.iter().map(|m| self.compiled.to_answer_set(m)).collect();
        out.sort();
        Ok(out)
    }

    pub fn program_of(&self, mask: &FixedBitSet) -> Program {
        let rules = mask.ones().map(|i| self.program.rules()[i].clone()).collect();
        Program::new(rules).expect("subset of a valid program")
    }

    pub fn names_of(&self, mask: &FixedBitSet) -> BTreeSet<String> {
        mask.ones().map(|i| self.program.rules()[i].name.clone()).collect()
    }

    /// Every member of `set` is defeated by `pi - set`.
    fn is_self_defeated(&mut self, pi: &FixedBitSet, set: &FixedBitSet) -> Result<bool, SolveError> {
        let mut rest = pi.clone();
        rest.difference_with(set);
        if let Some(&known) = self.self_defeated.get(&rest_key(&rest, set)) {
            return Ok(known);
        }
        let models = self.models(&rest)?;
        let verdict = set.ones().all(|j| engine::defeated(&self.compiled.rules[j].neg, &models));
        self.self_defeated.insert(rest_key(&rest, set), verdict);
        Ok(verdict)
    }

    /// Some nonempty subset of `pool` is self-defeated within `pi`.
    fn has_self_defeated_subset(&mut self, pi: &FixedBitSet, pool: &FixedBitSet) -> Result<bool, SolveError> {
        for sub in subsets(pool, self.cfg.max_removal_size) {
            if self.is_self_defeated(pi, &sub)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn dominated(&self, pi: &FixedBitSet, r: usize) -> FixedBitSet {
        let mut d = self.below[r].clone();
        d.intersect_with(pi);
        d
    }

    /// Removal sets eligible at `pi`, in canonical order.
    pub fn eligible(&mut self, pi: &FixedBitSet, reading: ConditionBReading) -> Result<Vec<FixedBitSet>, SolveError> {
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        for d in pi.ones() {
            let pool = self.dominated(pi, d);
            for sub in subsets(&pool, self.cfg.max_removal_size) {
                candidates.insert(sub.ones().collect());
            }
        }
        let mut blocked: HashMap<FixedBitSet, bool> = HashMap::new();
        let mut out = Vec::new();
        for members in candidates {
            let mut r = FixedBitSet::with_capacity(pi.len());
            members.iter().for_each(|&i| r.insert(i));
            if !self.is_self_defeated(pi, &r)? {
                continue;
            }
            let pools: Vec<FixedBitSet> = match reading {
                ConditionBReading::SameDominator => members.iter().map(|&j| self.dominated(pi, j)).collect(),
                ConditionBReading::AnyDominator => {
                    let mut union = FixedBitSet::with_capacity(pi.len());
                    members.iter().for_each(|&j| union.union_with(&self.dominated(pi, j)));
                    vec![union]
                }
            };
            let mut ok = true;
            for pool in pools {
                let hit = match blocked.get(&pool) {
                    Some(&b) => b,
                    None => {
                        let b = self.has_self_defeated_subset(pi, &pool)?;
                        blocked.insert(pool, b);
                        b
                    }
                };
                if hit {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(r);
            }
        }
        out.sort_by_key(|r| self.names_of(r));
        Ok(out)
    }

    /// All fixpoints reachable from the full program, each with the first
    /// chain found, sorted by rule names.
    pub fn reducts(&mut self, reading: ConditionBReading) -> Result<Vec<(FixedBitSet, Vec<FixedBitSet>)>, SolveError> {
        let mut visited: HashSet<FixedBitSet> = HashSet::new();
        let mut found: Vec<(FixedBitSet, Vec<FixedBitSet>)> = Vec::new();
        let mut stack = vec![(self.full(), Vec::new())];
        while let Some((pi, path)) = stack.pop() {
            if !visited.insert(pi.clone()) {
                continue;
            }
            let removals = self.eligible(&pi, reading)?;
            if removals.is_empty() {
                found.push((pi, path));
                continue;
            }
            for r in removals.into_iter().rev() {
                debug_assert!(r.count_ones(..) > 0 && r.is_subset(&pi));
                let mut next = pi.clone();
                next.difference_with(&r);
                let mut p = path.clone();
                p.push(r);
                stack.push((next, p));
            }
        }
        found.sort_by_key(|(pi, _)| self.names_of(pi));
        Ok(found)
    }

    fn chain(&self, path: &[FixedBitSet]) -> ReductChain {
        let mut pi = self.full();
        let mut steps = vec![self.program_of(&pi)];
        for r in path {
            pi.difference_with(r);
            steps.push(self.program_of(&pi));
        }
        ReductChain { steps, removals: path.iter().map(|r| self.names_of(r)).collect() }
    }
}

fn rest_key(rest: &FixedBitSet, set: &FixedBitSet) -> FixedBitSet {
    // `rest` and `set` are disjoint; concatenating them keys the pair.
    let n = rest.len();
    let mut key = FixedBitSet::with_capacity(2 * n);
    rest.ones().for_each(|i| key.insert(i));
    set.ones().for_each(|i| key.insert(n + i));
    key
}

/// Nonempty subsets of `pool`, smallest first, up to `max` members.
fn subsets(pool: &FixedBitSet, max: Option<usize>) -> Vec<FixedBitSet> {
    let items: Vec<usize> = pool.ones().collect();
    let limit = max.unwrap_or(items.len()).min(items.len());
    let mut out = Vec::new();
    let mut current = Vec::new();
    for size in 1..=limit {
        combinations(&items, size, 0, &mut current, &mut |c| {
            let mut s = FixedBitSet::with_capacity(pool.len());
            c.iter().for_each(|&i| s.insert(i));
            out.push(s);
        });
    }
    out
}

fn combinations(items: &[usize], size: usize, from: usize, current: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if current.len() == size {
        emit(current);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < size - current.len() {
            break;
        }
        current.push(items[i]);
        combinations(items, size, i + 1, current, emit);
        current.pop();
    }
}

/// Removal sets that may be taken from `pi` in one step.
pub fn eligible_removals(
    pi: &Program,
    order: &PriorityRelation,
    cfg: &ReductConfig,
) -> Result<Vec<BTreeSet<String>>, SolveError> {
    let mut reducer = Reducer::new(pi, order, *cfg)?;
    let full = reducer.full();
    let sets = reducer.eligible(&full, cfg.reading)?;
    Ok(sets.iter().map(|r| reducer.names_of(r)).collect())
}

/// Every reduct of `p`, sorted by rule names.
pub fn all_reducts(p: &Plp, cfg: &ReductConfig) -> Result<Vec<Reduct>, SolveError> {
    let mut reducer = Reducer::new(p.program(), p.order(), *cfg)?;
    let found = reducer.reducts(cfg.reading)?;
    Ok(found.iter().map(|(pi, path)| Reduct { program: reducer.program_of(pi), chain: reducer.chain(path) }).collect())
}

/// Answer sets of all reducts, merged and sorted.
pub fn plp_answer_sets(p: &Plp, cfg: &ReductConfig) -> Result<Vec<AnswerSet>, SolveError> {
    let mut reducer = Reducer::new(p.program(), p.order(), *cfg)?;
    let found = reducer.reducts(cfg.reading)?;
    let mut out = Vec::new();
    for (pi, _) in &found {
        out.extend(reducer.answer_sets(pi)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Reducts under both readings of condition (b).
pub fn compare_readings(p: &Plp, cfg: &ReductConfig) -> Result<ReadingComparison, SolveError> {
    let mut reducer = Reducer::new(p.program(), p.order(), *cfg)?;
    let mut names = |reading| -> Result<Vec<BTreeSet<String>>, SolveError> {
        let found = reducer.reducts(reading)?;
        Ok(found.iter().map(|(pi, _)| reducer.names_of(pi)).collect())
    };
    Ok(ReadingComparison {
        same_dominator: names(ConditionBReading::SameDominator)?,
        any_dominator: names(ConditionBReading::AnyDominator)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn cfg() -> ReductConfig {
        ReductConfig::default()
    }

    fn names(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn reduct_names(text: &str) -> Vec<BTreeSet<String>> {
        all_reducts(&parse(text).unwrap(), &cfg()).unwrap().into_iter().map(|r| r.program.name_set()).collect()
    }

    fn answers(text: &str) -> Vec<String> {
        plp_answer_sets(&parse(text).unwrap(), &cfg()).unwrap().iter().map(|s| s.to_string()).collect()
    }

    const P1: &str = "\
n1: fly(tweety) :- bird(tweety), not -fly(tweety).
n2: -fly(tweety) :- penguin(tweety), not fly(tweety).
n3: bird(tweety).
n4: penguin(tweety).
n2 < n1.";
    const P2: &str = "n1: a.\nn2: b :- not c.\nn3: d.\nn4: c :- not b.\nn1 < n2.\nn3 < n4.";
    const P2_PRIME: &str = "n1: a.\nn2: b :- not c.\nn3: c :- not b.\nn1 < n2.";
    const P3: &str = "n1: a :- not b.\nn2: b :- not a.\nn3: c :- not b, not d.\nn4: d :- not c.\nn1 < n2.\nn3 < n4.";

    #[test]
    fn p1_removes_n1() {
        let p = parse(P1).unwrap();
        assert_eq!(eligible_removals(p.program(), p.order(), &cfg()).unwrap(), vec![names(&["n1"])]);
        assert_eq!(reduct_names(P1), vec![names(&["n2", "n3", "n4"])]);
        assert_eq!(answers(P1), vec!["{bird(tweety), penguin(tweety), -fly(tweety)}"]);
    }

    #[test]
    fn p2_two_reducts() {
        let p = parse(P2).unwrap();
        assert_eq!(eligible_removals(p.program(), p.order(), &cfg()).unwrap(), vec![names(&["n2"]), names(&["n4"])]);
        assert_eq!(reduct_names(P2), vec![names(&["n1", "n2", "n3"]), names(&["n1", "n3", "n4"])]);
        assert_eq!(answers(P2), vec!["{a, b, d}", "{a, c, d}"]);
    }

    #[test]
    fn p2_prime_single_answer() {
        assert_eq!(answers(P2_PRIME), vec!["{a, c}"]);
    }

    #[test]
    fn p3_chain() {
        let reducts = all_reducts(&parse(P3).unwrap(), &cfg()).unwrap();
        assert_eq!(reducts.len(), 1);
        let chain = &reducts[0].chain;
        assert_eq!(chain.removals, vec![names(&["n2"]), names(&["n4"])]);
        assert_eq!(chain.steps.len(), 3);
        assert_eq!(reducts[0].program.name_set(), names(&["n1", "n3"]));
        assert_eq!(answers(P3), vec!["{a, c}"]);
    }

    #[test]
    fn condition_b_blocks_removal() {
        // with n3 < n2 added, n2 is defeated once n1 is gone, but n1 lies
        // below n2 and is itself removable, so n2 stays
        let text = format!("{P1}\nn3 < n2.");
        let p = parse(&text).unwrap();
        assert_eq!(eligible_removals(p.program(), p.order(), &cfg()).unwrap(), vec![names(&["n1"])]);
        assert_eq!(answers(&text), vec!["{bird(tweety), penguin(tweety), -fly(tweety)}"]);
    }

    #[test]
    fn empty_order_is_a_fixpoint() {
        let p = parse("n1: a :- not b.\nn2: b :- not a.").unwrap();
        assert!(eligible_removals(p.program(), p.order(), &cfg()).unwrap().is_empty());
        let reducts = all_reducts(&p, &cfg()).unwrap();
        assert_eq!(reducts.len(), 1);
        assert!(reducts[0].chain.removals.is_empty());
        assert_eq!(reducts[0].chain.steps, vec![p.program().clone()]);
    }

    #[test]
    fn empty_program() {
        assert_eq!(answers(""), vec!["{}"]);
    }

    #[test]
    fn removal_size_bound() {
        // n2 survives removal on its own, but not together with n3
        let text = "n1: x.\nn2: a :- not b.\nn3: c :- not b.\nn4: b :- not c.\nn1 < n2.\nn1 < n3.";
        let p = parse(text).unwrap();
        let unbounded = eligible_removals(p.program(), p.order(), &cfg()).unwrap();
        assert_eq!(unbounded, vec![names(&["n2", "n3"]), names(&["n3"])]);
        let bounded = ReductConfig { max_removal_size: Some(1), ..cfg() };
        assert_eq!(eligible_removals(p.program(), p.order(), &bounded).unwrap(), vec![names(&["n3"])]);
        assert_eq!(reduct_names(text), vec![names(&["n1", "n4"])]);
    }

    #[test]
    fn readings_agree_on_p2() {
        let cmp = compare_readings(&parse(P2).unwrap(), &cfg()).unwrap();
        assert!(!cmp.diverges());
    }

    #[test]
    fn subsets_smallest_first() {
        let mut pool = FixedBitSet::with_capacity(5);
        pool.insert(1);
        pool.insert(3);
        pool.insert(4);
        let all: Vec<Vec<usize>> = subsets(&pool, None).iter().map(|s| s.ones().collect()).collect();
        assert_eq!(all, vec![vec![1], vec![3], vec![4], vec![1, 3], vec![1, 4], vec![3, 4], vec![1, 3, 4]]);
        assert_eq!(subsets(&pool, Some(1)).len(), 3);
    }
}
