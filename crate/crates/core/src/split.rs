//! Splitting a ground prioritized program into blocks solved in sequence.
//!
//! Blocks `Π₁ … Πₖ` must satisfy `head(Πᵢ) ∩ body(Π₁ ∪ … ∪ Πᵢ₋₁) = ∅`: later
//! blocks never feed earlier ones. Block `i` is solved as its own program,
//! simplified by the literals already derived (`e`-reduct), plus a fresh
//! fact `First` whose rule stands in for preferences lost at the cut.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::model::{AnswerSet, Atom, Literal, Plp, PriorityRelation, Program, Rule, FIRST_PREDICATE};
use crate::reduct::{plp_answer_sets, ReductConfig};
use crate::solver::SolveError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("blocks are not a partition of the program: {0}")]
    BlocksNotDisjoint(String),
    #[error("block {block} defines `{literal}`, which an earlier block uses")]
    HeadBodyConditionViolated { block: usize, literal: Literal },
    #[error("the program already uses the reserved literal `{0}`")]
    FirstLiteralCollision(Literal),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub fn first_literal() -> Literal {
    Literal::pos(Atom::prop(FIRST_PREDICATE))
}

/// A simplified program and, per surviving rule, the name of the rule it
/// came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EReduct {
    pub program: Program,
    pub original: BTreeMap<String, String>,
}

/// `e(Π, X)`: drop rules with a `not L` for some `L ∈ X`, then drop the
/// members of `X` from the remaining positive bodies. A rewritten rule is
/// renamed with a trailing `'`.
pub fn e_reduct(pi: &Program, x: &BTreeSet<Literal>) -> EReduct {
    let mut rules = Vec::new();
    let mut original = BTreeMap::new();
    for r in pi.rules() {
        if r.neg.iter().any(|l| x.contains(l)) {
            continue;
        }
        let pos: BTreeSet<Literal> = r.pos.iter().filter(|l| !x.contains(*l)).cloned().collect();
        let name = if pos.len() == r.pos.len() { r.name.clone() } else { format!("{}'", r.name) };
        original.insert(name.clone(), r.name.clone());
        rules.push(Rule { name, pos, ..r.clone() });
    }
    EReduct { program: Program::new(rules).expect("primed names are fresh"), original }
}

/// The most preferred rules above `r`: dominators of `r` that nothing
/// dominates. Empty when nothing dominates `r`.
pub fn first_dominators(p: &Plp, r: &str) -> BTreeSet<String> {
    let order = p.order();
    p.program()
        .names()
        .filter(|d| order.less(d, r))
        .filter(|d| !p.program().names().any(|e| order.less(e, d)))
        .map(String::from)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockCount {
    /// Two blocks, as balanced as possible.
    #[default]
    Coarsest,
    Exactly(usize),
    /// One block per dependency component.
    Max,
}

/// Rules grouped into strongly connected components of "`r` needs `r'`
/// when `head(r') ∈ body(r)`", needed components first, ties broken by the
/// smallest rule position.
fn components(pi: &Program) -> Vec<Vec<usize>> {
    let rules = pi.rules();
    let mut graph: DiGraph<usize, ()> = DiGraph::new();
    let nodes: Vec<NodeIndex> = (0..rules.len()).map(|i| graph.add_node(i)).collect();
    for (i, r) in rules.iter().enumerate() {
        let body = r.body();
        for (j, s) in rules.iter().enumerate() {
            if s.head.as_ref().is_some_and(|h| body.contains(h)) {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| graph[n]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_by_key(|c| c[0]);
    let comp_of: BTreeMap<usize, usize> =
        comps.iter().enumerate().flat_map(|(ci, c)| c.iter().map(move |&r| (r, ci))).collect();
    let needs: Vec<BTreeSet<usize>> = comps
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            c.iter()
                .flat_map(|&r| graph.neighbors(nodes[r]).map(|n| comp_of[&graph[n]]))
                .filter(|&cj| cj != ci)
                .collect()
        })
        .collect();

    let mut done = vec![false; comps.len()];
    let mut order = Vec::new();
    while order.len() < comps.len() {
        let next = (0..comps.len())
            .find(|&ci| !done[ci] && needs[ci].iter().all(|&cj| done[cj]))
            .expect("condensation is acyclic");
        done[next] = true;
        order.push(comps[next].clone());
    }
    order
}

/// Cuts the ordered components into `k` contiguous groups, minimizing the
/// largest group; among equals, earlier groups are kept larger.
fn cut(sizes: &[usize], k: usize) -> Vec<usize> {
    fn go(sizes: &[usize], k: usize, best: &mut Option<(usize, Vec<usize>, Vec<usize>)>, cuts: &mut Vec<usize>) {
        let start = cuts.last().copied().unwrap_or(0);
        if cuts.len() == k - 1 {
            let mut bounds = vec![0];
            bounds.extend(cuts.iter().copied());
            bounds.push(sizes.len());
            let groups: Vec<usize> = bounds.windows(2).map(|w| sizes[w[0]..w[1]].iter().sum()).collect();
            let max = *groups.iter().max().unwrap();
            let better = match best {
                None => true,
                Some((m, g, _)) => max < *m || (max == *m && groups > *g),
            };
            if better {
                *best = Some((max, groups, cuts.clone()));
            }
            return;
        }
        let remaining = k - 1 - cuts.len();
        for c in start + 1..=sizes.len() - remaining {
            cuts.push(c);
            go(sizes, k, best, cuts);
            cuts.pop();
        }
    }
    let mut best = None;
    go(sizes, k, &mut best, &mut Vec::new());
    best.expect("k is at most the number of components").2
}

/// Blocks of rule names, or `None` when the program admits no split into
/// the requested number (at least two) of blocks.
pub fn find_split(p: &Plp, count: BlockCount) -> Option<Vec<Vec<String>>> {
    let comps = components(p.program());
    let k = match count {
        BlockCount::Coarsest => 2,
        BlockCount::Exactly(k) => k,
        BlockCount::Max => comps.len(),
    };
    if k < 2 || k > comps.len() {
        return None;
    }
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let mut bounds = vec![0];
    bounds.extend(cut(&sizes, k));
    bounds.push(comps.len());
    let names = p.program().rules();
    Some(
        bounds
            .windows(2)
            .map(|w| {
                let mut idx: Vec<usize> = comps[w[0]..w[1]].iter().flatten().copied().collect();
                idx.sort_unstable();
                idx.into_iter().map(|i| names[i].name.clone()).collect()
            })
            .collect(),
    )
}

/// Validates `blocks` against `p`: a partition of its rules in which no
/// block defines a literal used by an earlier one.
pub fn check_blocks(p: &Plp, blocks: &[Vec<String>]) -> Result<(), SplitError> {
    let first = first_literal();
    for l in [first.clone(), first.complement()] {
        if p.program().lit().contains(&l) {
            return Err(SplitError::FirstLiteralCollision(l));
        }
    }
    let mut seen = BTreeSet::new();
    for name in blocks.iter().flatten() {
        if !p.program().contains(name) {
            return Err(SplitError::BlocksNotDisjoint(format!("unknown rule `{name}`")));
        }
        if !seen.insert(name) {
            return Err(SplitError::BlocksNotDisjoint(format!("`{name}` appears twice")));
        }
    }
    if seen.len() != p.program().len() {
        return Err(SplitError::BlocksNotDisjoint("some rules are in no block".into()));
    }
    let mut earlier_body = BTreeSet::new();
    for (i, block) in blocks.iter().enumerate() {
        let rules: Vec<&Rule> = block.iter().map(|n| p.program().rule(n).unwrap()).collect();
        if let Some(l) = rules.iter().filter_map(|r| r.head.as_ref()).find(|h| earlier_body.contains(*h)) {
            return Err(SplitError::HeadBodyConditionViolated { block: i + 1, literal: l.clone() });
        }
        rules.iter().for_each(|r| earlier_body.extend(r.body()));
    }
    Ok(())
}

fn fresh_name(p: &Plp) -> String {
    std::iter::once("n0".to_string())
        .chain((1..).map(|i| format!("n0_{i}")))
        .find(|n| !p.program().contains(n) && !p.program().contains(&format!("{n}'")))
        .unwrap()
}

/// The program for one block given the literals `x` derived by the blocks
/// before it.
pub fn derived_program(p: &Plp, block: &[String], x: &BTreeSet<Literal>) -> Plp {
    let members: BTreeSet<&str> = block.iter().map(String::as_str).collect();
    let part = p.program().filter(|r| members.contains(r.name.as_str()));
    let reduced = e_reduct(&part, x);
    let n0 = fresh_name(p);

    let mut pairs = Vec::new();
    for r in reduced.program.rules() {
        let orig = &reduced.original[&r.name];
        for s in reduced.program.rules() {
            if p.order().less(orig, &reduced.original[&s.name]) {
                pairs.push((r.name.clone(), s.name.clone()));
            }
        }
        if first_dominators(p, orig).iter().any(|d| !members.contains(d.as_str())) {
            pairs.push((n0.clone(), r.name.clone()));
        }
    }
    let mut rules = vec![Rule::fact(n0, first_literal())];
    rules.extend(reduced.program.rules().iter().cloned());
    let program = Program::new(rules).expect("fresh n0");
    let order = PriorityRelation::new(pairs).expect("restriction of a strict order");
    Plp::new(program, order).expect("names come from the program")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPlan {
    pub blocks: Vec<Vec<String>>,
    /// `programs[i]` is built from the union of `dependent_sets[..i]`.
    pub programs: Vec<Plp>,
    pub first_literal: Literal,
    pub dependent_sets: Vec<BTreeSet<Literal>>,
}

/// Derived programs for as many blocks as `dependent_sets` allows: one
/// more than the number of sets supplied.
pub fn build_split_programs(
    p: &Plp,
    blocks: &[Vec<String>],
    dependent_sets: &[BTreeSet<Literal>],
) -> Result<SplitPlan, SplitError> {
    check_blocks(p, blocks)?;
    let mut x = BTreeSet::new();
    let mut programs = Vec::new();
    for (i, block) in blocks.iter().enumerate().take(dependent_sets.len() + 1) {
        programs.push(derived_program(p, block, &x));
        if let Some(s) = dependent_sets.get(i) {
            x.extend(s.iter().cloned());
        }
    }
    Ok(SplitPlan {
        blocks: blocks.to_vec(),
        programs,
        first_literal: first_literal(),
        dependent_sets: dependent_sets.to_vec(),
    })
}

/// One complete choice of answer sets, block by block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub plan: SplitPlan,
    /// Answer set chosen for the last block.
    pub last: BTreeSet<Literal>,
    /// The recombined set without `First`, when the union is consistent.
    pub answer_set: Option<AnswerSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSolution {
    /// `None` when no split exists and the program was solved directly.
    pub blocks: Option<Vec<Vec<String>>>,
    pub branches: Vec<Branch>,
    pub answer_sets: Vec<AnswerSet>,
}

pub fn solve_via_split(p: &Plp, count: BlockCount, cfg: &ReductConfig) -> Result<SplitSolution, SplitError> {
    let Some(blocks) = find_split(p, count) else {
        let answer_sets = plp_answer_sets(p, cfg)?.into_iter().filter(AnswerSet::is_consistent).collect();
        return Ok(SplitSolution { blocks: None, branches: Vec::new(), answer_sets });
    };
    solve_with_blocks(p, &blocks, cfg)
}

pub fn solve_with_blocks(p: &Plp, blocks: &[Vec<String>], cfg: &ReductConfig) -> Result<SplitSolution, SplitError> {
    check_blocks(p, blocks)?;
    let mut branches = Vec::new();
    explore(p, blocks, cfg, &mut Vec::new(), &BTreeSet::new(), &mut branches)?;
    let mut answer_sets: Vec<AnswerSet> = branches.iter().filter_map(|b| b.answer_set.clone()).collect();
    answer_sets.sort();
    answer_sets.dedup();
    Ok(SplitSolution { blocks: Some(blocks.to_vec()), branches, answer_sets })
}

fn explore(
    p: &Plp,
    blocks: &[Vec<String>],
    cfg: &ReductConfig,
    chosen: &mut Vec<BTreeSet<Literal>>,
    x: &BTreeSet<Literal>,
    out: &mut Vec<Branch>,
) -> Result<(), SplitError> {
    let i = chosen.len();
    let program = derived_program(p, &blocks[i], x);
    for s in plp_answer_sets(&program, cfg)? {
        // an inconsistent block answer set makes every union inconsistent
        let Some(lits) = s.literals() else { continue };
        let mut union = x.clone();
        union.extend(lits.iter().cloned());
        if i + 1 < blocks.len() {
            chosen.push(lits.clone());
            explore(p, blocks, cfg, chosen, &union, out)?;
            chosen.pop();
        } else {
            let plan = build_split_programs(p, blocks, chosen)?;
            let first = first_literal();
            let answer_set = AnswerSet::consistent(union.into_iter().filter(|l| *l != first)).ok();
            out.push(Branch { plan, last: lits.clone(), answer_set });
        }
    }
    Ok(())
}
