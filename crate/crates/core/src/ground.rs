//! Herbrand instantiation of prioritized programs.
//!
//! Only constants are allowed as ground terms: a program that uses a
//! compound term `f(...)` would have an infinite instantiation and is
//! rejected. Before instantiating, every ordered pair of rules is checked for
//! a common instance, which would make the ground order reflexive.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Literal, ModelError, Plp, PriorityRelation, Program, Rule, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("program is not well formed: {0}")]
    NotWellFormed(Box<Violation>),
    #[error("rule `{rule}` uses function symbol `{symbol}`; only constants can be grounded")]
    NonNullaryFunctionSymbol { rule: String, symbol: String },
    #[error("rule `{rule}` has variables but the program has no constants")]
    EmptyHerbrandUniverse { rule: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A rule that is an instance of two rules ordered by the priority relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub instance: Rule,
    pub preferred: String,
    pub less_preferred: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "`{}` is an instance of both `{}` and `{}` while {} < {}",
            self.instance, self.preferred, self.less_preferred, self.preferred, self.less_preferred
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WellFormedness {
    Ok,
    Violation(Violation),
}

impl WellFormedness {
    pub fn is_ok(&self) -> bool {
        matches!(self, WellFormedness::Ok)
    }
}

/// A ground PLP and, for each ground rule, the name of the rule it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundPlp {
    pub plp: Plp,
    pub provenance: BTreeMap<String, String>,
}

/// Constants occurring anywhere in the program, sorted.
pub fn herbrand_universe(program: &Program) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for l in program.rules().iter().flat_map(Rule::literals) {
        l.atom.args.iter().for_each(|t| t.collect_constants(&mut out));
    }
    out.into_iter().map(str::to_owned).collect()
}

fn rule_variables(rule: &Rule) -> Vec<String> {
    let mut vars = BTreeSet::new();
    for l in rule.literals() {
        l.atom.args.iter().for_each(|t| t.collect_variables(&mut vars));
    }
    vars.into_iter().map(str::to_owned).collect()
}

/// Reports whether some rule is an instance of two distinct rules `r1`,
/// `r2` with `r1 < r2`. The witness is a most general common instance,
/// grounded with the smallest constant when the program has one.
pub fn check_well_formed(p: &Plp) -> WellFormedness {
    let program = p.program();
    let universe = herbrand_universe(program);
    for (a, b) in p.order().closure() {
        let (Some(r1), Some(r2)) = (program.rule(a), program.rule(b)) else {
            continue;
        };
        if let Some(mut instance) = common_instance(r1, r2) {
            if let Some(c) = universe.first() {
                let fill: BTreeMap<String, Term> =
                    rule_variables(&instance).into_iter().map(|v| (v, Term::constant(c.clone()))).collect();
                instance = instance.substitute(instance.name.clone(), &fill);
            }
            return WellFormedness::Violation(Violation { instance, preferred: a.clone(), less_preferred: b.clone() });
        }
    }
    WellFormedness::Ok
}

/// Replaces every rule by all of its instances over the program's constants.
///
/// A ground rule keeps its name; an instance of a rule with variables is
/// named `name/c1,c2,...` with constants listed in sorted variable order.
pub fn ground(p: &Plp) -> Result<GroundPlp, GroundError> {
    let program = p.program();
    for r in program.rules() {
        for l in r.literals() {
            if let Some(symbol) = l.atom.args.iter().find_map(Term::first_function_symbol) {
                return Err(GroundError::NonNullaryFunctionSymbol { rule: r.name.clone(), symbol: symbol.to_owned() });
            }
        }
    }
    if let WellFormedness::Violation(v) = check_well_formed(p) {
        return Err(GroundError::NotWellFormed(Box::new(v)));
    }

    let universe: Vec<String> = herbrand_universe(program).into_iter().collect();
    let mut rules = Vec::new();
    let mut provenance = BTreeMap::new();
    let mut instances: BTreeMap<&str, Vec<String>> = BTreeMap::new();

    for r in program.rules() {
        let vars = rule_variables(r);
        if vars.is_empty() {
            provenance.insert(r.name.clone(), r.name.clone());
            instances.entry(&r.name).or_default().push(r.name.clone());
            rules.push(r.clone());
            continue;
        }
        if universe.is_empty() {
            return Err(GroundError::EmptyHerbrandUniverse { rule: r.name.clone() });
        }
        let mut produced: Vec<Rule> = Vec::new();
        let mut digits = vec![0usize; vars.len()];
        loop {
            let binding: BTreeMap<String, Term> =
                vars.iter().zip(&digits).map(|(v, &i)| (v.clone(), Term::constant(universe[i].clone()))).collect();
            let suffix: Vec<&str> = digits.iter().map(|&i| universe[i].as_str()).collect();
            produced.push(r.substitute(format!("{}/{}", r.name, suffix.join(",")), &binding));
            if !advance(&mut digits, universe.len()) {
                break;
            }
        }
        for inst in produced {
            provenance.insert(inst.name.clone(), r.name.clone());
            instances.entry(&r.name).or_default().push(inst.name.clone());
            rules.push(inst);
        }
    }

    let mut pairs = Vec::new();
    for (a, b) in p.order().pairs() {
        for ga in instances.get(a.as_str()).into_iter().flatten() {
            for gb in instances.get(b.as_str()).into_iter().flatten() {
                pairs.push((ga.clone(), gb.clone()));
            }
        }
    }
    let order = PriorityRelation::new(pairs)?;
    let plp = Plp::new(Program::new(rules)?, order)?;
    Ok(GroundPlp { plp, provenance })
}

/// Odometer increment; false once every combination has been produced.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

type Subst = BTreeMap<String, Term>;

fn resolve(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Variable(v) => match s.get(v) {
            Some(bound) => resolve(bound, s),
            None => t.clone(),
        },
        Term::Constant(_) => t.clone(),
        Term::Function(f, args) => Term::Function(f.clone(), args.iter().map(|a| resolve(a, s)).collect()),
    }
}

fn occurs(v: &str, t: &Term) -> bool {
    match t {
        Term::Variable(w) => v == w,
        Term::Constant(_) => false,
        Term::Function(_, args) => args.iter().any(|a| occurs(v, a)),
    }
}

fn unify_terms(a: &Term, b: &Term, s: &mut Subst) -> bool {
    let (a, b) = (resolve(a, s), resolve(b, s));
    match (&a, &b) {
        (Term::Variable(x), Term::Variable(y)) if x == y => true,
        (Term::Variable(x), other) | (other, Term::Variable(x)) => {
            if occurs(x, other) {
                return false;
            }
            s.insert(x.clone(), other.clone());
            true
        }
        (Term::Constant(x), Term::Constant(y)) => x == y,
        (Term::Function(f, xs), Term::Function(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify_terms(x, y, s))
        }
        _ => false,
    }
}

fn unify_literals(a: &Literal, b: &Literal, s: &mut Subst) -> bool {
    a.negated == b.negated
        && a.atom.predicate == b.atom.predicate
        && a.atom.args.len() == b.atom.args.len()
        && a.atom.args.iter().zip(&b.atom.args).all(|(x, y)| unify_terms(x, y, s))
}

/// Most general rule `r'` with `r1 θ1 = r' = r2 θ2`, comparing bodies as sets.
pub(crate) fn common_instance(r1: &Rule, r2: &Rule) -> Option<Rule> {
    let rename: Subst = rule_variables(r2).into_iter().map(|v| (v.clone(), Term::Variable(format!("{v}#2")))).collect();
    let r2 = r2.substitute(r2.name.clone(), &rename);

    let mut s = Subst::new();
    match (&r1.head, &r2.head) {
        (None, None) => {}
        (Some(h1), Some(h2)) => {
            if !unify_literals(h1, h2, &mut s) {
                return None;
            }
        }
        _ => return None,
    }

    // Each literal on either side needs a partner on the other side.
    let mut tasks: Vec<(&Literal, Vec<&Literal>)> = Vec::new();
    for (mine, theirs) in [(&r1.pos, &r2.pos), (&r1.neg, &r2.neg)] {
        if mine.is_empty() != theirs.is_empty() {
            return None;
        }
        tasks.extend(mine.iter().map(|l| (l, theirs.iter().collect())));
        tasks.extend(theirs.iter().map(|l| (l, mine.iter().collect())));
    }
    let s = solve_tasks(&tasks, s)?;

    let full: Subst = rule_variables(r1)
        .into_iter()
        .chain(rule_variables(&r2))
        .map(|v| {
            let t = resolve(&Term::Variable(v.clone()), &s);
            (v, t)
        })
        .collect();
    Some(r1.substitute(format!("{}'", r1.name), &full))
}

fn solve_tasks(tasks: &[(&Literal, Vec<&Literal>)], s: Subst) -> Option<Subst> {
    let Some(((lit, candidates), rest)) = tasks.split_first() else {
        return Some(s);
    };
    for cand in candidates {
        let mut trial = s.clone();
        if unify_literals(lit, cand, &mut trial) {
            if let Some(done) = solve_tasks(rest, trial) {
                return Some(done);
            }
        }
    }
    None
}
