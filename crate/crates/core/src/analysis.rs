//! Static analyses of ground programs: local stratification, defeasibility,
//! `<`-partitions and the uniqueness certificate built from them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use petgraph::algo::{condensation, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;

use crate::model::{AnswerSet, Literal, Plp, Program, Rule};
use crate::reduct::{all_reducts, ReductConfig};
use crate::solver::{answer_sets, SolveError};

/// `stratum(head) ≥ stratum(L)` for positive body literals.
const WEAK: usize = 0;
/// `stratum(head) > stratum(not L) = stratum(L) + 1`.
const STRICT: usize = 2;

/// A local stratification with natural-number strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumMap(pub BTreeMap<Literal, usize>);

impl StratumMap {
    pub fn get(&self, l: &Literal) -> Option<usize> {
        self.0.get(l).copied()
    }

    /// The first rule of `pi` that is not locally stratified under this map.
    pub fn violation<'a>(&self, pi: &'a Program) -> Option<&'a Rule> {
        let s = |l: &Literal| self.0.get(l).copied();
        pi.rules().iter().find(|r| {
            let Some(h) = &r.head else { return false };
            let Some(top) = s(h) else { return true };
            r.pos.iter().any(|l| s(l).is_none_or(|v| top < v))
                || r.neg.iter().any(|l| s(l).is_none_or(|v| top <= v + 1))
        })
    }
}

/// A dependency cycle through at least one `not` edge: each literal
/// depends on the next one, the last on the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyCycle {
    pub literals: Vec<Literal>,
    /// `strict[i]`: the edge leaving `literals[i]` comes from a `not` literal.
    pub strict: Vec<bool>,
}

impl fmt::Display for DependencyCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, s) in self.literals.iter().zip(&self.strict) {
            write!(f, "{l} {} ", if *s { ">" } else { ">=" })?;
        }
        write!(f, "{}", self.literals[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratification {
    Stratified(StratumMap),
    Cycle(DependencyCycle),
}

impl Stratification {
    pub fn is_stratified(&self) -> bool {
        matches!(self, Stratification::Stratified(_))
    }
}

pub fn local_stratification(pi: &Program) -> Stratification {
    let mut graph: DiGraph<Literal, usize> = DiGraph::new();
    let mut nodes: HashMap<Literal, NodeIndex> = HashMap::new();
    for l in pi.lit() {
        nodes.insert(l.clone(), graph.add_node(l));
    }
    for r in pi.rules() {
        let Some(h) = &r.head else { continue };
        let weighted = r.pos.iter().map(|l| (l, WEAK)).chain(r.neg.iter().map(|l| (l, STRICT)));
        for (l, w) in weighted {
            // one edge per pair, strict if any occurrence is strict
            let (a, b) = (nodes[h], nodes[l]);
            match graph.find_edge(a, b) {
                Some(e) => graph[e] = graph[e].max(w),
                None => {
                    graph.add_edge(a, b, w);
                }
            }
        }
    }

    let mut scc_of = vec![0; graph.node_count()];
    let sccs = petgraph::algo::kosaraju_scc(&graph);
    for (i, comp) in sccs.iter().enumerate() {
        for &n in comp {
            scc_of[n.index()] = i;
        }
    }
    let mut strict_edges: Vec<(NodeIndex, NodeIndex)> = graph
        .edge_references()
        .filter(|e| *e.weight() == STRICT && scc_of[e.source().index()] == scc_of[e.target().index()])
        .map(|e| (e.source(), e.target()))
        .collect();
    strict_edges.sort_by(|a, b| (&graph[a.0], &graph[a.1]).cmp(&(&graph[b.0], &graph[b.1])));
    if let Some(&(u, v)) = strict_edges.first() {
        return Stratification::Cycle(cycle_through(&graph, &scc_of, u, v));
    }

    // Longest weighted path to a sink over the acyclic condensation.
    let dag = condensation(graph.clone(), true);
    let order = toposort(&dag, None).expect("condensation is acyclic");
    let mut level = vec![0usize; dag.node_count()];
    for &c in order.iter().rev() {
        level[c.index()] = dag.edges(c).map(|e| level[e.target().index()] + e.weight()).max().unwrap_or(0);
    }
    let mut map = BTreeMap::new();
    for c in dag.node_indices() {
        for l in &dag[c] {
            map.insert(l.clone(), level[c.index()]);
        }
    }
    Stratification::Stratified(StratumMap(map))
}

/// `u -> v` is a strict edge inside one component; close it with the
/// shortest path back from `v` to `u`.
fn cycle_through(graph: &DiGraph<Literal, usize>, scc_of: &[usize], u: NodeIndex, v: NodeIndex) -> DependencyCycle {
    let mut prev: HashMap<NodeIndex, NodeIndex> = HashMap::new();
    let mut queue = VecDeque::from([v]);
    let mut seen = BTreeSet::from([v]);
    while let Some(x) = queue.pop_front() {
        if x == u {
            break;
        }
        let mut next: Vec<NodeIndex> = graph.neighbors(x).filter(|y| scc_of[y.index()] == scc_of[u.index()]).collect();
        next.sort_by(|a, b| graph[*a].cmp(&graph[*b]));
        for y in next {
            if seen.insert(y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    let mut back = vec![u];
    while *back.last().unwrap() != v {
        let p = prev[back.last().unwrap()];
        back.push(p);
    }
    back.reverse(); // v ... u
    let mut path = vec![u];
    path.extend(back.into_iter().take_while(|&n| n != u));
    let strict = path
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let b = path[(i + 1) % path.len()];
            (i == 0) || graph.edges_connecting(a, b).any(|e| *e.weight() == STRICT)
        })
        .collect();
    DependencyCycle { literals: path.iter().map(|&n| graph[n].clone()).collect(), strict }
}

/// Literals reachable from `head(rp)` by repeatedly firing rules whose
/// positive body holds a literal already reached.
pub fn defeasibility_closure(pi: &Program, rp: &Rule) -> BTreeSet<Literal> {
    let mut d: BTreeSet<Literal> = rp.head.iter().cloned().collect();
    loop {
        let grow: Vec<Literal> = pi
            .rules()
            .iter()
            .filter_map(|r| r.head.as_ref().filter(|h| !d.contains(*h) && r.pos.iter().any(|l| d.contains(l))))
            .cloned()
            .collect();
        if grow.is_empty() {
            return d;
        }
        d.extend(grow);
    }
}

pub fn mutually_defeasible(pi: &Program, rp: &Rule, rq: &Rule) -> bool {
    let dp = defeasibility_closure(pi, rp);
    let dq = defeasibility_closure(pi, rq);
    rq.neg.iter().any(|l| dp.contains(l)) && rp.neg.iter().any(|l| dq.contains(l))
}

/// Blocks of rule names; every rule's dominators lie in earlier blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorityPartition {
    pub blocks: Vec<Vec<String>>,
}

impl PriorityPartition {
    pub fn block_of(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.iter().any(|n| n == name))
    }

    /// Checks the two partition conditions against `p`; `None` when both
    /// hold, otherwise a description of the first failure.
    pub fn check(&self, p: &Plp) -> Option<String> {
        let mut seen = BTreeSet::new();
        for n in self.blocks.iter().flatten() {
            if !seen.insert(n.as_str()) || !p.program().contains(n) {
                return Some(format!("`{n}` is repeated or unknown"));
            }
        }
        if seen.len() != p.program().len() {
            return Some("blocks do not cover the program".into());
        }
        for (a, b) in p.order().closure() {
            if self.block_of(a) >= self.block_of(b) {
                return Some(format!("{a} < {b} does not go to a later block"));
            }
        }
        for (j, block) in self.blocks.iter().enumerate().skip(1) {
            for n in block {
                if !self.blocks[..j].iter().flatten().any(|m| p.order().less(m, n)) {
                    return Some(format!("`{n}` has no dominator in an earlier block"));
                }
            }
        }
        None
    }
}

/// The canonical partition: undominated rules first, then layer by layer
/// the rules whose dominators are all placed.
pub fn priority_partition(p: &Plp) -> PriorityPartition {
    let names: Vec<&str> = p.program().names().collect();
    let mut placed: BTreeSet<&str> = BTreeSet::new();
    let mut blocks = Vec::new();
    while placed.len() < names.len() {
        let block: Vec<&str> = names
            .iter()
            .copied()
            .filter(|n| !placed.contains(n))
            .filter(|n| names.iter().all(|m| !p.order().less(m, n) || placed.contains(m)))
            .collect();
        assert!(!block.is_empty(), "priority order is acyclic");
        placed.extend(block.iter().copied());
        blocks.push(block.into_iter().map(String::from).collect());
    }
    PriorityPartition { blocks }
}

/// Why a unique reduct could not be promoted to a unique answer set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstacle {
    NotStratified(DependencyCycle),
    /// The stratification argument does not cover programs with constraints.
    Constraints(Vec<String>),
    /// Stratified, yet neither a consistent set nor `Lit` is an answer set
    /// (e.g. `p. -p :- not q.`): stratification bounds the count by one, not
    /// from below.
    NoAnswerSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    UniqueAnswerSet {
        reduct: Program,
        answer_set: AnswerSet,
    },
    UniqueReduct {
        reduct: Program,
        obstacle: Obstacle,
    },
    /// Two rules outside the first block are mutually defeasible.
    NotCertified {
        witness: (String, String),
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::UniqueAnswerSet { .. } => "certified-unique-answer-set",
            Verdict::UniqueReduct { .. } => "certified-unique-reduct",
            Verdict::NotCertified { .. } => "not-certified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessCertificate {
    pub verdict: Verdict,
    pub partition: PriorityPartition,
    /// Strata of the reduct, when it is locally stratified.
    pub strata: Option<StratumMap>,
}

/// The first mutually defeasible pair outside block 1; a rule may pair
/// with itself.
pub fn defeasible_pair(p: &Plp, partition: &PriorityPartition) -> Option<(String, String)> {
    let pi = p.program();
    let tail: Vec<&Rule> = partition.blocks.iter().skip(1).flatten().map(|n| pi.rule(n).unwrap()).collect();
    for (i, rp) in tail.iter().enumerate() {
        for rq in &tail[i..] {
            if mutually_defeasible(pi, rp, rq) {
                return Some((rp.name.clone(), rq.name.clone()));
            }
        }
    }
    None
}

pub fn certify_uniqueness(p: &Plp, cfg: &ReductConfig) -> Result<UniquenessCertificate, SolveError> {
    let partition = priority_partition(p);
    if let Some(witness) = defeasible_pair(p, &partition) {
        return Ok(UniquenessCertificate { verdict: Verdict::NotCertified { witness }, partition, strata: None });
    }
    let reduct = all_reducts(p, cfg)?.swap_remove(0).program;
    let constraints: Vec<String> =
        reduct.rules().iter().filter(|r| r.is_constraint()).map(|r| r.name.clone()).collect();
    let (verdict, strata) = match local_stratification(&reduct) {
        Stratification::Cycle(c) => (Verdict::UniqueReduct { reduct, obstacle: Obstacle::NotStratified(c) }, None),
        Stratification::Stratified(map) if !constraints.is_empty() => {
            (Verdict::UniqueReduct { reduct, obstacle: Obstacle::Constraints(constraints) }, Some(map))
        }
        Stratification::Stratified(map) => {
            let mut sets = answer_sets(&reduct, &cfg.solver)?;
            debug_assert!(sets.len() <= 1);
            match sets.pop() {
                Some(answer_set) => (Verdict::UniqueAnswerSet { reduct, answer_set }, Some(map)),
                None => (Verdict::UniqueReduct { reduct, obstacle: Obstacle::NoAnswerSet }, Some(map)),
            }
        }
    };
    Ok(UniquenessCertificate { verdict, partition, strata })
}
