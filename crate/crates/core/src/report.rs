//! Reports behind the `plp` command line.
//!
//! Every report starts with the command line and the SHA-256 of the input,
//! then the result: plain text by default (header lines start with `%`,
//! literal sets use the input syntax) or a JSON document.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{
    certify_uniqueness, local_stratification, mutually_defeasible, Obstacle, Stratification, Verdict,
};
use crate::generator::{generate, GenConfig, GenConfigError};
use crate::ground::{ground, GroundError};
use crate::model::{format_literals, AnswerSet, Literal, Plp, Program};
use crate::parser::{parse, print, ParseError};
use crate::reduct::{all_reducts, compare_readings, plp_answer_sets, ReductConfig};
use crate::solver::{answer_sets, SolveError};
use crate::split::{solve_via_split, solve_with_blocks, BlockCount, SplitError, SplitSolution};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Split(SplitError),
    #[error(transparent)]
    Generator(#[from] GenConfigError),
}

impl From<SplitError> for ReportError {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Solve(s) => ReportError::Solve(s),
            other => ReportError::Split(other),
        }
    }
}

impl ReportError {
    /// 2 when the enumeration cap was hit, 1 for every input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Solve(SolveError::CandidateSpaceTooLarge { .. }) => 2,
            _ => 1,
        }
    }
}

/// Exit code when `--check` or `fuzz` finds a disagreement.
pub const DISAGREEMENT: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub lines: Vec<String>,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.to_string(),
            digest: hex::encode(Sha256::digest(input.as_bytes())),
            lines: Vec::new(),
            payload: Value::Null,
            diagnostics: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let doc = json!({
                "command": self.command,
                "input_sha256": self.digest,
                "result": self.payload,
                "diagnostics": self.diagnostics,
                "exit_code": self.exit_code,
            });
            return serde_json::to_string_pretty(&doc).expect("values serialize") + "\n";
        }
        let mut out = format!("% {}\n% sha256 {}\n", self.command, self.digest);
        for d in &self.diagnostics {
            out.push_str(&format!("% {d}\n"));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// Parses and grounds `text`.
pub fn load(text: &str) -> Result<Plp, ReportError> {
    Ok(ground(&parse(text)?)?.plp)
}

fn set_json(s: &AnswerSet) -> Value {
    match s.literals() {
        Some(ls) => json!(ls.iter().map(ToString::to_string).collect::<Vec<_>>()),
        None => json!("LIT"),
    }
}

fn sets_json(sets: &[AnswerSet]) -> Value {
    Value::Array(sets.iter().map(set_json).collect())
}

fn lits_json(ls: &BTreeSet<Literal>) -> Value {
    json!(ls.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn names(set: &BTreeSet<String>) -> String {
    format!("{{{}}}", set.iter().cloned().collect::<Vec<_>>().join(", "))
}

fn program_names(pi: &Program) -> String {
    names(&pi.name_set())
}

fn push_sets(lines: &mut Vec<String>, sets: &[AnswerSet]) {
    if sets.is_empty() {
        lines.push("% no answer set".into());
    }
    lines.extend(sets.iter().map(ToString::to_string));
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub via_split: bool,
    pub check: bool,
    pub blocks: BlockCount,
    pub reduct: ReductConfig,
}

pub fn solve(command: &str, text: &str, opts: &SolveOptions) -> Result<Report, ReportError> {
    let p = load(text)?;
    let mut report = Report::new(command, text);
    let direct = || -> Result<Vec<AnswerSet>, ReportError> { Ok(plp_answer_sets(&p, &opts.reduct)?) };
    let sets = if opts.via_split {
        let solution = solve_via_split(&p, opts.blocks, &opts.reduct)?;
        match &solution.blocks {
            Some(b) => report.diagnostics.push(format!("via split {}", blocks_text(b))),
            None => report.diagnostics.push("no nontrivial split; solved directly".into()),
        }
        if opts.check {
            let expected: Vec<AnswerSet> = direct()?.into_iter().filter(AnswerSet::is_consistent).collect();
            if expected == solution.answer_sets {
                report.diagnostics.push("check: split agrees with the direct solution".into());
            } else {
                report.diagnostics.push(format!(
                    "check: DISAGREEMENT, direct solution has {}",
                    expected.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                ));
                report.exit_code = DISAGREEMENT;
            }
        }
        solution.answer_sets
    } else {
        direct()?
    };
    push_sets(&mut report.lines, &sets);
    report.payload = json!({ "answer_sets": sets_json(&sets) });
    Ok(report)
}

pub fn ground_report(command: &str, text: &str) -> Result<Report, ReportError> {
    let p = load(text)?;
    let mut report = Report::new(command, text);
    let printed = print(&p);
    report.lines.extend(printed.lines().map(String::from));
    report.payload = json!({ "program": printed });
    Ok(report)
}

pub fn reducts(command: &str, text: &str, cfg: &ReductConfig, strict: bool) -> Result<Report, ReportError> {
    let p = load(text)?;
    let mut report = Report::new(command, text);
    let found = all_reducts(&p, cfg)?;
    let mut items = Vec::new();
    for (i, r) in found.iter().enumerate() {
        let sets = answer_sets(&r.program, &cfg.solver)?;
        report.lines.push(format!("reduct {}: {}", i + 1, program_names(&r.program)));
        for (step, removed) in r.chain.removals.iter().enumerate() {
            report.lines.push(format!("  step {}: remove {}", step + 1, names(removed)));
        }
        let counts: Vec<usize> =
            r.chain.steps.iter().map(|s| answer_sets(s, &cfg.solver).map(|v| v.len())).collect::<Result<_, _>>()?;
        report.lines.push(format!(
            "  answer sets along the chain: {}",
            counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ));
        for s in &sets {
            report.lines.push(format!("  answer set {s}"));
        }
        items.push(json!({
            "rules": r.program.name_set(),
            "chain": r.chain.removals,
            "chain_answer_set_counts": counts,
            "answer_sets": sets_json(&sets),
        }));
    }
    let mut payload = json!({ "reducts": items });
    if strict {
        let cmp = compare_readings(&p, cfg)?;
        report.diagnostics.push(if cmp.diverges() {
            format!(
                "strict: readings of condition (b) diverge; any-dominator reducts {}",
                cmp.any_dominator.iter().map(names).collect::<Vec<_>>().join(" ")
            )
        } else {
            "strict: both readings of condition (b) agree".into()
        });
        payload["readings"] = json!(cmp);
    }
    report.payload = payload;
    Ok(report)
}

pub fn analyze(command: &str, text: &str, cfg: &ReductConfig) -> Result<Report, ReportError> {
    let p = load(text)?;
    let pi = p.program();
    let mut report = Report::new(command, text);
    let cert = certify_uniqueness(&p, cfg)?;

    for (i, b) in cert.partition.blocks.iter().enumerate() {
        report.lines.push(format!("block {}: {}", i + 1, b.join(", ")));
    }
    let strat = local_stratification(pi);
    let strat_json = match &strat {
        Stratification::Stratified(m) => {
            let strata: Vec<String> = m.0.iter().map(|(l, s)| format!("{l}={s}")).collect();
            report.lines.push(format!("stratified: {}", strata.join(", ")));
            json!({ "stratified": true, "strata": strata })
        }
        Stratification::Cycle(c) => {
            report.lines.push(format!("not stratified: {c}"));
            json!({ "stratified": false, "cycle": c.to_string() })
        }
    };
    let mut pairs = Vec::new();
    for (i, rp) in pi.rules().iter().enumerate() {
        for rq in &pi.rules()[i + 1..] {
            if mutually_defeasible(pi, rp, rq) {
                pairs.push((rp.name.clone(), rq.name.clone()));
            }
        }
    }
    report.lines.push(format!(
        "mutually defeasible: {}",
        if pairs.is_empty() {
            "none".to_string()
        } else {
            pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect::<Vec<_>>().join(" ")
        }
    ));
    report.lines.push(format!("certificate: {}", cert.verdict.label()));
    let verdict_json = match &cert.verdict {
        Verdict::UniqueAnswerSet { reduct, answer_set } => {
            report.lines.push(format!("  reduct {}", program_names(reduct)));
            report.lines.push(format!("  answer set {answer_set}"));
            json!({ "reduct": reduct.name_set(), "answer_set": set_json(answer_set) })
        }
        Verdict::UniqueReduct { reduct, obstacle } => {
            report.lines.push(format!("  reduct {}", program_names(reduct)));
            let why = match obstacle {
                Obstacle::NotStratified(c) => format!("reduct not stratified: {c}"),
                Obstacle::Constraints(cs) => format!("reduct has constraints: {}", cs.join(", ")),
                Obstacle::NoAnswerSet => "reduct is stratified but has no answer set".into(),
            };
            report.lines.push(format!("  {why}"));
            json!({ "reduct": reduct.name_set(), "obstacle": why })
        }
        Verdict::NotCertified { witness: (a, b) } => {
            report.lines.push(format!("  mutually defeasible witness ({a}, {b})"));
            json!({ "witness": [a, b] })
        }
    };
    report.payload = json!({
        "partition": cert.partition.blocks,
        "stratification": strat_json,
        "mutually_defeasible": pairs,
        "certificate": { "verdict": cert.verdict.label(), "detail": verdict_json },
    });
    Ok(report)
}

fn blocks_text(blocks: &[Vec<String>]) -> String {
    blocks.iter().map(|b| format!("{{{}}}", b.join(", "))).collect::<Vec<_>>().join(" | ")
}

pub fn split(command: &str, text: &str, count: BlockCount, cfg: &ReductConfig) -> Result<Report, ReportError> {
    let p = load(text)?;
    let mut report = Report::new(command, text);
    let solution = solve_via_split(&p, count, cfg)?;
    render_split(&mut report, &solution);
    Ok(report)
}

/// Like [`split`] with blocks given by the caller.
pub fn split_with_blocks(
    command: &str,
    text: &str,
    blocks: &[Vec<String>],
    cfg: &ReductConfig,
) -> Result<Report, ReportError> {
    let p = load(text)?;
    let mut report = Report::new(command, text);
    let solution = solve_with_blocks(&p, blocks, cfg)?;
    render_split(&mut report, &solution);
    Ok(report)
}

fn render_split(report: &mut Report, solution: &SplitSolution) {
    let Some(blocks) = &solution.blocks else {
        report.diagnostics.push("no nontrivial split; solved directly".into());
        push_sets(&mut report.lines, &solution.answer_sets);
        report.payload = json!({ "blocks": null, "answer_sets": sets_json(&solution.answer_sets) });
        return;
    };
    report.lines.push(format!("blocks: {}", blocks_text(blocks)));
    let mut branches = Vec::new();
    for (i, b) in solution.branches.iter().enumerate() {
        report.lines.push(format!("branch {}:", i + 1));
        let mut programs = Vec::new();
        for (j, prog) in b.plan.programs.iter().enumerate() {
            report.lines.push(format!("  program {}:", j + 1));
            let printed = print(prog);
            report.lines.extend(printed.lines().map(|l| format!("    {l}")));
            let chosen = b.plan.dependent_sets.get(j).unwrap_or(&b.last);
            report.lines.push(format!("  S{} = {}", j + 1, format_literals(chosen)));
            programs.push(json!({ "program": printed, "answer_set": lits_json(chosen) }));
        }
        let result = match &b.answer_set {
            Some(s) => s.to_string(),
            None => "inconsistent union, dropped".into(),
        };
        report.lines.push(format!("  result {result}"));
        branches.push(json!({
            "programs": programs,
            "result": b.answer_set.as_ref().map(set_json),
        }));
    }
    report.lines.push("answer sets:".into());
    push_sets(&mut report.lines, &solution.answer_sets);
    report.payload = json!({
        "blocks": blocks,
        "branches": branches,
        "answer_sets": sets_json(&solution.answer_sets),
    });
}

/// Checks the semantic invariants on `iterations` generated programs,
/// seeds `base.seed`, `base.seed + 1`, ….
/// Names of the properties `fuzz` checks, in report order.
pub const FUZZ_CHECKS: [&str; 7] =
    ["subset", "existence", "chain", "stratified-unique", "stratified-no-pair", "certificate", "split"];

pub fn fuzz(command: &str, iterations: u64, base: &GenConfig, cfg: &ReductConfig) -> Result<Report, ReportError> {
    base.check()?;
    let mut report = Report::new(command, "");
    let mut failures = Vec::new();
    let mut capped = 0u64;
    for i in 0..iterations {
        let gen = GenConfig { seed: base.seed.wrapping_add(i), ..base.clone() };
        let p = generate(&gen);
        match fuzz_one(&p, cfg) {
            Ok(found) => failures.extend(found.into_iter().map(|(check, why)| (gen.seed, check, why))),
            Err(SolveError::CandidateSpaceTooLarge { .. }) => capped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    report.lines.push(format!("programs: {iterations}"));
    report.lines.push(format!("skipped at the cap: {capped}"));
    report.lines.push(format!("violations: {}", failures.len()));
    for check in FUZZ_CHECKS {
        let n = failures.iter().filter(|f| f.1 == check).count();
        report.lines.push(format!("  {check}: {n}"));
    }
    for (seed, check, why) in &failures {
        report.lines.push(format!("seed {seed} [{check}]: {why}"));
    }
    if !failures.is_empty() {
        report.exit_code = DISAGREEMENT;
    }
    report.payload = json!({
        "programs": iterations,
        "skipped": capped,
        "violations": failures
            .iter()
            .map(|(s, c, w)| json!({ "seed": s, "check": c, "reason": w }))
            .collect::<Vec<_>>(),
    });
    Ok(report)
}

fn fuzz_one(p: &Plp, cfg: &ReductConfig) -> Result<Vec<(&'static str, String)>, SolveError> {
    let mut found = Vec::new();
    let pi = p.program();
    let plain = answer_sets(pi, &cfg.solver)?;
    let reducts = all_reducts(p, cfg)?;
    let prioritized = plp_answer_sets(p, cfg)?;
    if let Some(s) = prioritized.iter().find(|s| !plain.contains(s)) {
        found.push(("subset", format!("{s} is not an answer set of the program")));
    }
    if plain.is_empty() != prioritized.is_empty() {
        found.push(("existence", "existence of answer sets differs with priorities".into()));
    }
    'chains: for r in &reducts {
        let mut previous: Option<Vec<AnswerSet>> = None;
        for step in &r.chain.steps {
            let sets = answer_sets(step, &cfg.solver)?;
            if previous.as_ref().is_some_and(|prev| sets.iter().any(|s| !prev.contains(s))) {
                found.push(("chain", format!("answer sets grow along the chain of {}", program_names(&r.program))));
                break 'chains;
            }
            previous = Some(sets);
        }
    }
    if let Stratification::Stratified(_) = local_stratification(pi) {
        if plain.len() != 1 {
            found.push(("stratified-unique", format!("stratified program with {} answer sets", plain.len())));
        }
        let rules = pi.rules();
        if let Some((a, b)) = rules
            .iter()
            .enumerate()
            .flat_map(|(i, a)| rules[i..].iter().map(move |b| (a, b)))
            .find(|(a, b)| mutually_defeasible(pi, a, b))
        {
            found.push((
                "stratified-no-pair",
                format!("stratified program with mutually defeasible ({}, {})", a.name, b.name),
            ));
        }
    }
    match certify_uniqueness(p, cfg)?.verdict {
        Verdict::UniqueReduct { .. } if reducts.len() != 1 => {
            found.push(("certificate", format!("certified unique reduct, found {}", reducts.len())));
        }
        Verdict::UniqueAnswerSet { .. } if prioritized.len() != 1 => {
            found.push(("certificate", format!("certified unique answer set, found {}", prioritized.len())));
        }
        _ => {}
    }
    if let Ok(solution) = solve_via_split(p, BlockCount::Coarsest, cfg) {
        let consistent: Vec<AnswerSet> = prioritized.into_iter().filter(AnswerSet::is_consistent).collect();
        if solution.blocks.is_some() && solution.answer_sets != consistent {
            found.push((
                "split",
                format!("split gives {} answer sets, direct {}", solution.answer_sets.len(), consistent.len()),
            ));
        }
    }
    Ok(found)
}
