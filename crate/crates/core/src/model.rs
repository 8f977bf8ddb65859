//! Value types shared by every other module: terms, literals, rules,
//! programs, priority relations and answer sets.
//!
//! All types are immutable once built. Constructors that carry an invariant
//! (unique rule names, acyclic priorities, consistent answer sets) validate
//! it and return a [`ModelError`] instead of building a bad value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Predicate of the fresh literal used by program splitting.
pub const FIRST_PREDICATE: &str = "__first";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate rule name `{0}`")]
    DuplicateRuleName(String),
    #[error("priority `{0} < {1}` names a rule that is not in the program")]
    UnknownRuleName(String, String),
    #[error("priority relation is cyclic: `{0}` precedes itself")]
    CyclicPriority(String),
    #[error("literal set contains both `{0}` and its complement")]
    ComplementaryPair(String),
}

/// A term. Function terms only exist so that programs using them can be
/// parsed and rejected with a precise error by the grounder.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Constant(String),
    Variable(String),
    Function(String, Vec<Term>),
}

impl Term {
    pub fn constant(symbol: impl Into<String>) -> Self {
        Term::Constant(symbol.into())
    }

    pub fn variable(symbol: impl Into<String>) -> Self {
        Term::Variable(symbol.into())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Constant(_) => true,
            Term::Variable(_) => false,
            Term::Function(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub(crate) fn collect_variables<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Constant(_) => {}
            Term::Variable(v) => {
                out.insert(v);
            }
            Term::Function(_, args) => args.iter().for_each(|t| t.collect_variables(out)),
        }
    }

    pub(crate) fn collect_constants<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Constant(c) => {
                out.insert(c);
            }
            Term::Variable(_) => {}
            Term::Function(_, args) => args.iter().for_each(|t| t.collect_constants(out)),
        }
    }

    pub(crate) fn first_function_symbol(&self) -> Option<&str> {
        match self {
            Term::Function(f, _) => Some(f),
            _ => None,
        }
    }

    pub(crate) fn substitute(&self, binding: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Variable(v) => binding.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Constant(_) => self.clone(),
            Term::Function(f, args) => Term::Function(f.clone(), args.iter().map(|t| t.substitute(binding)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(s) | Term::Variable(s) => f.write_str(s),
            Term::Function(name, args) => {
                write!(f, "{name}(")?;
                write_joined(f, args, ",")?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { predicate: predicate.into(), args }
    }

    /// Nullary atom.
    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_joined(f, &self.args, ",")?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A classically signed atom.
///
/// Literals order positive before classically negated, then by atom, so a
/// sorted set prints as `{bird(tweety), penguin(tweety), -fly(tweety)}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { negated: false, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { negated: true, atom }
    }

    /// Nullary positive literal, handy for propositional programs.
    pub fn prop(predicate: &str) -> Self {
        Literal::pos(Atom::prop(predicate))
    }

    pub fn complement(&self) -> Literal {
        Literal { negated: !self.negated, atom: self.atom.clone() }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub(crate) fn substitute(&self, binding: &BTreeMap<String, Term>) -> Literal {
        Literal {
            negated: self.negated,
            atom: Atom {
                predicate: self.atom.predicate.clone(),
                args: self.atom.args.iter().map(|t| t.substitute(binding)).collect(),
            },
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        self.atom.fmt(f)
    }
}

/// Flips the classical sign of `l`.
pub fn complement(l: &Literal) -> Literal {
    l.complement()
}

/// `name: head :- pos, not neg.` An absent head makes the rule a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: String,
    pub head: Option<Literal>,
    pub pos: BTreeSet<Literal>,
    pub neg: BTreeSet<Literal>,
}

/// The five component sets of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleParts {
    pub head: BTreeSet<Literal>,
    pub pos: BTreeSet<Literal>,
    pub neg: BTreeSet<Literal>,
    pub body: BTreeSet<Literal>,
    pub lit: BTreeSet<Literal>,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        head: Option<Literal>,
        pos: impl IntoIterator<Item = Literal>,
        neg: impl IntoIterator<Item = Literal>,
    ) -> Self {
        Rule { name: name.into(), head, pos: pos.into_iter().collect(), neg: neg.into_iter().collect() }
    }

    pub fn fact(name: impl Into<String>, head: Literal) -> Self {
        Rule::new(name, Some(head), [], [])
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(Literal::is_ground)
    }

    pub fn head_set(&self) -> BTreeSet<Literal> {
        self.head.iter().cloned().collect()
    }

    pub fn body(&self) -> BTreeSet<Literal> {
        self.pos.union(&self.neg).cloned().collect()
    }

    pub fn lit(&self) -> BTreeSet<Literal> {
        self.literals().cloned().collect()
    }

    pub fn parts(&self) -> RuleParts {
        RuleParts {
            head: self.head_set(),
            pos: self.pos.clone(),
            neg: self.neg.clone(),
            body: self.body(),
            lit: self.lit(),
        }
    }

    /// Head, positive body and naf body literals, in that order.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head.iter().chain(self.pos.iter()).chain(self.neg.iter())
    }

    /// Same rule under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Rule {
        Rule { name: name.into(), ..self.clone() }
    }

    /// True when both rules have the same head and bodies, ignoring names.
    pub fn same_content(&self, other: &Rule) -> bool {
        self.head == other.head && self.pos == other.pos && self.neg == other.neg
    }

    pub(crate) fn substitute(&self, name: String, binding: &BTreeMap<String, Term>) -> Rule {
        Rule {
            name,
            head: self.head.as_ref().map(|l| l.substitute(binding)),
            pos: self.pos.iter().map(|l| l.substitute(binding)).collect(),
            neg: self.neg.iter().map(|l| l.substitute(binding)).collect(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        if let Some(h) = &self.head {
            write!(f, " {h}")?;
        }
        if !self.pos.is_empty() || !self.neg.is_empty() {
            f.write_str(" :- ")?;
            let mut first = true;
            for l in &self.pos {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{l}")?;
            }
            for l in &self.neg {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "not {l}")?;
            }
        }
        f.write_str(".")
    }
}

/// An ordered collection of uniquely named rules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.name.as_str()) {
                return Err(ModelError::DuplicateRuleName(r.name.clone()));
            }
        }
        Ok(Program { rules })
    }

    pub fn empty() -> Self {
        Program::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.rule(name).is_some()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.rules.iter().map(|r| r.name.as_str())
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    pub fn head(&self) -> BTreeSet<Literal> {
        self.rules.iter().filter_map(|r| r.head.clone()).collect()
    }

    pub fn pos(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.pos.iter().cloned()).collect()
    }

    pub fn neg(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.neg.iter().cloned()).collect()
    }

    pub fn body(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.body()).collect()
    }

    pub fn lit(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.literals().cloned()).collect()
    }

    /// Rules satisfying `keep`, in program order.
    pub fn filter(&self, mut keep: impl FnMut(&Rule) -> bool) -> Program {
        Program { rules: self.rules.iter().filter(|r| keep(r)).cloned().collect() }
    }

    pub fn without(&self, names: &BTreeSet<String>) -> Program {
        self.filter(|r| !names.contains(&r.name))
    }

    /// Sorted rule names; used as the canonical identity of a sub-program.
    pub fn name_set(&self) -> BTreeSet<String> {
        self.rules.iter().map(|r| r.name.clone()).collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A strict partial order on rule names. `(a, b)` means `a < b`: rule `a`
/// is preferred over rule `b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PriorityRelation {
    pairs: BTreeSet<(String, String)>,
    closure: BTreeSet<(String, String)>,
}

impl PriorityRelation {
    /// Accepts any pair set whose transitive closure is irreflexive.
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, ModelError> {
        let pairs: BTreeSet<(String, String)> = pairs.into_iter().collect();
        let closure = transitive_closure(&pairs);
        if let Some((a, _)) = closure.iter().find(|(a, b)| a == b) {
            return Err(ModelError::CyclicPriority(a.clone()));
        }
        Ok(PriorityRelation { pairs, closure })
    }

    pub fn empty() -> Self {
        PriorityRelation::default()
    }

    /// The pairs as given.
    pub fn pairs(&self) -> &BTreeSet<(String, String)> {
        &self.pairs
    }

    /// All pairs implied by transitivity.
    pub fn closure(&self) -> &BTreeSet<(String, String)> {
        &self.closure
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `a < b` in the transitive closure.
    pub fn less(&self, a: &str, b: &str) -> bool {
        // BTreeSet<(String, String)> cannot be probed with borrowed strs.
        self.closure.contains(&(a.to_owned(), b.to_owned()))
    }

    /// Keeps only pairs whose both ends satisfy `keep`. The closure is
    /// recomputed from the surviving given pairs.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> PriorityRelation {
        let pairs: BTreeSet<_> = self.pairs.iter().filter(|(a, b)| keep(a) && keep(b)).cloned().collect();
        let closure = transitive_closure(&pairs);
        PriorityRelation { pairs, closure }
    }

    /// Keeps closure pairs (not just given pairs) between names satisfying `keep`.
    pub fn restrict_closure(&self, mut keep: impl FnMut(&str) -> bool) -> PriorityRelation {
        let pairs: BTreeSet<_> = self.closure.iter().filter(|(a, b)| keep(a) && keep(b)).cloned().collect();
        PriorityRelation { closure: pairs.clone(), pairs }
    }

    pub fn names(&self) -> BTreeSet<&str> {
        self.pairs.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect()
    }
}

fn transitive_closure(pairs: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (a, b) in pairs {
        succ.entry(a).or_default().insert(b);
    }
    let mut closure = BTreeSet::new();
    for start in succ.keys() {
        let mut stack: Vec<&str> = succ[start].iter().copied().collect();
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                closure.insert((start.to_string(), n.to_string()));
                if let Some(next) = succ.get(n) {
                    stack.extend(next.iter().copied());
                }
            }
        }
    }
    closure
}

/// A prioritized logic program: a program plus a strict partial order on
/// its rule names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Plp {
    program: Program,
    order: PriorityRelation,
}

impl Plp {
    pub fn new(program: Program, order: PriorityRelation) -> Result<Self, ModelError> {
        for (a, b) in order.pairs() {
            if !program.contains(a) || !program.contains(b) {
                return Err(ModelError::UnknownRuleName(a.clone(), b.clone()));
            }
        }
        Ok(Plp { program, order })
    }

    pub fn unordered(program: Program) -> Self {
        Plp { program, order: PriorityRelation::empty() }
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn order(&self) -> &PriorityRelation {
        &self.order
    }

    pub fn is_ground(&self) -> bool {
        self.program.is_ground()
    }
}

/// A literal set with no complementary pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConsistentSet(BTreeSet<Literal>);

impl ConsistentSet {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, ModelError> {
        let set: BTreeSet<Literal> = literals.into_iter().collect();
        if let Some(l) = set.iter().find(|l| !l.negated && set.contains(&l.complement())) {
            return Err(ModelError::ComplementaryPair(l.to_string()));
        }
        Ok(ConsistentSet(set))
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.0
    }

    pub fn into_literals(self) -> BTreeSet<Literal> {
        self.0
    }
}

/// An answer set: either a consistent literal set or `Lit`, the set of all
/// ground literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnswerSet {
    Consistent(ConsistentSet),
    Inconsistent,
}

impl AnswerSet {
    /// Builds a consistent answer set; fails on a complementary pair.
    pub fn consistent(literals: impl IntoIterator<Item = Literal>) -> Result<Self, ModelError> {
        ConsistentSet::new(literals).map(AnswerSet::Consistent)
    }

    /// A closed set of literals: `Lit` when it holds a complementary pair.
    pub fn from_closure(literals: BTreeSet<Literal>) -> Self {
        match ConsistentSet::new(literals) {
            Ok(s) => AnswerSet::Consistent(s),
            Err(_) => AnswerSet::Inconsistent,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, AnswerSet::Consistent(_))
    }

    pub fn contains(&self, l: &Literal) -> bool {
        match self {
            AnswerSet::Consistent(s) => s.0.contains(l),
            AnswerSet::Inconsistent => true,
        }
    }

    pub fn literals(&self) -> Option<&BTreeSet<Literal>> {
        match self {
            AnswerSet::Consistent(s) => Some(&s.0),
            AnswerSet::Inconsistent => None,
        }
    }

    /// `true` when some literal of `set` is in the answer set.
    pub fn intersects(&self, set: &BTreeSet<Literal>) -> bool {
        set.iter().any(|l| self.contains(l))
    }
}

impl Ord for AnswerSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (AnswerSet::Consistent(a), AnswerSet::Consistent(b)) => {
                a.0.len().cmp(&b.0.len()).then_with(|| a.0.iter().cmp(b.0.iter()))
            }
            (AnswerSet::Consistent(_), AnswerSet::Inconsistent) => Ordering::Less,
            (AnswerSet::Inconsistent, AnswerSet::Consistent(_)) => Ordering::Greater,
            (AnswerSet::Inconsistent, AnswerSet::Inconsistent) => Ordering::Equal,
        }
    }
}

impl PartialOrd for AnswerSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerSet::Inconsistent => f.write_str("LIT"),
            AnswerSet::Consistent(s) => {
                f.write_str("{")?;
                write_joined(f, s.0.iter(), ", ")?;
                f.write_str("}")
            }
        }
    }
}

pub(crate) fn write_joined<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = T>,
    sep: &str,
) -> fmt::Result {
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Formats a literal set as `{a, b, -c}`.
pub fn format_literals<'a>(literals: impl IntoIterator<Item = &'a Literal>) -> String {
    let items: Vec<String> = literals.into_iter().map(Literal::to_string).collect();
    format!("{{{}}}", items.join(", "))
}
