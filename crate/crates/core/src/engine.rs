// Index-based answer set search shared by the solver, reduct and split
// modules. Literals are interned once per program; sub-programs are rule
// bitmasks over the same table, so memo tables can key on the mask.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::model::{AnswerSet, Literal, Program, Rule};

#[derive(Debug, Clone)]
pub(crate) struct CRule {
    pub head: Option<usize>,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Model {
    Set(FixedBitSet),
    Lit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapExceeded {
    pub size: usize,
    pub cap: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub lits: Vec<Literal>,
    index: HashMap<Literal, usize>,
    complement: Vec<Option<usize>>,
    pub rules: Vec<CRule>,
}

impl Compiled {
    pub fn new(program: &Program) -> Self {
        Compiled::with_rules(program.rules(), std::iter::empty())
    }

    /// Also interns `extra` literals (for rules outside the program).
    pub fn with_rules<'a>(rules: &'a [Rule], extra: impl Iterator<Item = &'a Literal>) -> Self {
        let mut lits: Vec<Literal> = rules.iter().flat_map(Rule::literals).chain(extra).cloned().collect();
        lits.sort();
        lits.dedup();
        let index: HashMap<Literal, usize> = lits.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let complement = lits.iter().map(|l| index.get(&l.complement()).copied()).collect();
        let mut c = Compiled { lits, index, complement, rules: Vec::new() };
        c.rules = rules.iter().map(|r| c.compile_rule(r)).collect();
        c
    }

    pub fn compile_rule(&self, r: &Rule) -> CRule {
        CRule {
            head: r.head.as_ref().map(|h| self.index[h]),
            pos: r.pos.iter().map(|l| self.index[l]).collect(),
            neg: r.neg.iter().map(|l| self.index[l]).collect(),
        }
    }

    pub fn full_mask(&self) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.rules.len());
        m.insert_range(..);
        m
    }

    pub fn to_answer_set(&self, m: &Model) -> AnswerSet {
        match m {
            Model::Lit => AnswerSet::Inconsistent,
            Model::Set(bits) => AnswerSet::consistent(bits.ones().map(|i| self.lits[i].clone()))
                .expect("search only yields consistent sets"),
        }
    }

    fn consistent(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|i| self.complement[i].is_none_or(|j| !set.contains(j)))
    }

    /// Least set closed under the rules in `rules` that `allowed` admits.
    fn closure(&self, rules: &[usize], allowed: impl Fn(&CRule) -> bool) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.lits.len());
        let live: Vec<&CRule> = rules.iter().map(|&i| &self.rules[i]).filter(|r| allowed(r)).collect();
        loop {
            let mut changed = false;
            for r in &live {
                let h = r.head.expect("closure over non-constraint rules");
                if !set.contains(h) && r.pos.iter().all(|&l| set.contains(l)) {
                    set.insert(h);
                    changed = true;
                }
            }
            if !changed {
                return set;
            }
        }
    }

    /// All answer sets of the sub-program selected by `active`: consistent
    /// ones in discovery order, then `Lit` if it qualifies.
    pub fn models(&self, active: &FixedBitSet, cap: usize) -> Result<Vec<Model>, CapExceeded> {
        let mut rules = Vec::new();
        let mut constraints = Vec::new();
        for i in active.ones() {
            if self.rules[i].head.is_some() {
                rules.push(i);
            } else {
                constraints.push(i);
            }
        }
        let mut heads = FixedBitSet::with_capacity(self.lits.len());
        for &i in &rules {
            heads.insert(self.rules[i].head.unwrap());
        }
        let mut guess: Vec<usize> =
            active.ones().flat_map(|i| self.rules[i].neg.iter().copied()).filter(|&l| heads.contains(l)).collect();
        guess.sort_unstable();
        guess.dedup();
        if guess.len() > cap {
            return Err(CapExceeded { size: guess.len(), cap });
        }

        let mut search =
            Search { c: self, rules: &rules, constraints: &constraints, heads: &heads, guess: &guess, out: Vec::new() };
        search.run(vec![Truth::Unknown; self.lits.len()]);
        let mut out = search.out;

        // Lit: the naf-free part closes to an inconsistent set and no
        // constraint without naf literals applies.
        let strict = self.closure(&rules, |r| r.neg.is_empty());
        if !self.consistent(&strict) && constraints.iter().all(|&c| !self.rules[c].neg.is_empty()) {
            out.push(Model::Lit);
        }
        Ok(out)
    }
}

/// Every model makes some naf literal of the rule true (and there is a model).
pub(crate) fn defeated(neg: &[usize], models: &[Model]) -> bool {
    !models.is_empty()
        && models.iter().all(|m| match m {
            Model::Lit => !neg.is_empty(),
            Model::Set(s) => neg.iter().any(|&l| s.contains(l)),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Truth {
    Unknown,
    True,
    False,
}

struct Search<'a> {
    c: &'a Compiled,
    rules: &'a [usize],
    constraints: &'a [usize],
    heads: &'a FixedBitSet,
    guess: &'a [usize],
    out: Vec<Model>,
}

impl Search<'_> {
    // A naf literal outside head(Π) is false in every consistent answer set.
    fn surely_false(&self, assign: &[Truth], l: usize) -> bool {
        !self.heads.contains(l) || assign[l] == Truth::False
    }

    fn run(&mut self, mut assign: Vec<Truth>) {
        let Some(lower) = self.propagate(&mut assign) else {
            return;
        };
        match self.guess.iter().find(|&&l| assign[l] == Truth::Unknown) {
            None => {
                let violated = self.constraints.iter().any(|&c| {
                    let r = &self.c.rules[c];
                    r.pos.iter().all(|&l| lower.contains(l)) && r.neg.iter().all(|&l| !lower.contains(l))
                });
                if !violated {
                    self.out.push(Model::Set(lower));
                }
            }
            Some(&l) => {
                let mut yes = assign.clone();
                yes[l] = Truth::True;
                self.run(yes);
                assign[l] = Truth::False;
                self.run(assign);
            }
        }
    }

    /// Bounds the answer set from below (rules whose naf body is surely
    /// satisfied) and above (rules not yet blocked), forcing guesses until
    /// nothing changes. `None` when the branch holds no consistent answer set.
    fn propagate(&self, assign: &mut [Truth]) -> Option<FixedBitSet> {
        loop {
            let lower = self.c.closure(self.rules, |r| r.neg.iter().all(|&l| self.surely_false(assign, l)));
            if !self.c.consistent(&lower) {
                return None;
            }
            let upper = self.c.closure(self.rules, |r| r.neg.iter().all(|&l| assign[l] != Truth::True));
            let mut changed = false;
            for &l in self.guess {
                match assign[l] {
                    Truth::True if !upper.contains(l) => return None,
                    Truth::False if lower.contains(l) => return None,
                    Truth::Unknown if lower.contains(l) => {
                        assign[l] = Truth::True;
                        changed = true;
                    }
                    Truth::Unknown if !upper.contains(l) => {
                        assign[l] = Truth::False;
                        changed = true;
                    }
                    _ => {}
                }
            }
            let doomed = self.constraints.iter().any(|&c| {
                let r = &self.c.rules[c];
                r.pos.iter().all(|&l| lower.contains(l)) && r.neg.iter().all(|&l| self.surely_false(assign, l))
            });
            if doomed {
                return None;
            }
            if !changed {
                return Some(lower);
            }
        }
    }
}
