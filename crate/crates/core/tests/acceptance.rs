//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use plp::analysis::{certify_uniqueness, local_stratification, mutually_defeasible, priority_partition, Verdict};
use plp::generator::{generate, GenConfig};
use plp::reduct::{all_reducts, plp_answer_sets, ReductConfig};
use plp::solver::{answer_sets, SolveError, SolverConfig};
use plp::split::{first_literal, solve_via_split, BlockCount};
use plp::{AnswerSet, Literal, Plp, Program};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);
const MIN_GENERATED: u64 = 500;
const MIN_ORACLE: u64 = 200;
const MAX_ORACLE_LITERALS: usize = 8;

struct Outcome {
    failed: usize,
}

impl Outcome {
    fn report(&mut self, id: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn cfg() -> ReductConfig {
    ReductConfig::default()
}

fn show(sets: &[AnswerSet]) -> Vec<String> {
    sets.iter().map(ToString::to_string).collect()
}

fn lits(p: &[&str]) -> BTreeSet<Literal> {
    p.iter()
        .map(|s| {
            if s == &"First" {
                first_literal()
            } else {
                plp::parse(&format!("x: {s}.")).unwrap().program().rules()[0].head.clone().unwrap()
            }
        })
        .collect()
}

/// Rule names with ground-instance suffixes dropped.
fn base_names(pi: &Program) -> BTreeSet<String> {
    pi.names().map(|n| n.split('/').next().unwrap().to_string()).collect()
}

fn reduct_names(p: &Plp) -> BTreeSet<BTreeSet<String>> {
    all_reducts(p, &cfg()).unwrap().iter().map(|r| base_names(&r.program)).collect()
}

fn golden(out: &mut Outcome, name: &str, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let result = check();
    let took = start.elapsed();
    let timing = format!("{:.1} ms, limit {} ms", took.as_secs_f64() * 1e3, GOLDEN_LIMIT.as_millis());
    match result {
        Ok(detail) => out.report(&format!("1 {name}"), took <= GOLDEN_LIMIT, format!("{detail} ({timing})")),
        Err(why) => out.report(&format!("1 {name}"), false, format!("{why} ({timing})")),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn criterion_1(out: &mut Outcome) {
    golden(out, "P1", || {
        let p = common::load("p1.plp");
        expect(
            "answer sets",
            show(&plp_answer_sets(&p, &cfg()).unwrap()),
            vec!["{bird(tweety), penguin(tweety), -fly(tweety)}".to_string()],
        )?;
        expect("reducts", reduct_names(&p), BTreeSet::from([common::names(&["n2", "n3", "n4"])]))?;
        Ok("unique reduct {n2, n3, n4}, answer set {bird, penguin, -fly}".into())
    });
    golden(out, "P2", || {
        let p = common::load("p2.plp");
        expect(
            "reducts",
            reduct_names(&p),
            BTreeSet::from([common::names(&["n1", "n3", "n4"]), common::names(&["n1", "n2", "n3"])]),
        )?;
        expect(
            "answer sets",
            show(&plp_answer_sets(&p, &cfg()).unwrap()),
            vec!["{a, b, d}".into(), "{a, c, d}".into()],
        )?;
        Ok("two reducts, answer sets {a, b, d} and {a, c, d}".into())
    });
    golden(out, "P2'", || {
        let p = common::load("p2prime.plp");
        expect("answer sets", show(&plp_answer_sets(&p, &cfg()).unwrap()), vec!["{a, c}".to_string()])?;
        Ok("answer set {a, c}".into())
    });
    golden(out, "P3", || {
        let p = common::load("p3.plp");
        let reducts = all_reducts(&p, &cfg()).unwrap();
        expect("reduct count", reducts.len(), 1)?;
        let chain = &reducts[0].chain;
        expect("removals", chain.removals.clone(), vec![common::names(&["n2"]), common::names(&["n4"])])?;
        let families: Vec<Vec<AnswerSet>> =
            chain.steps.iter().map(|s| answer_sets(s, &SolverConfig::default()).unwrap()).collect();
        expect("counts", families.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 1])?;
        let monotone = families.windows(2).all(|w| w[1].iter().all(|s| w[0].contains(s)));
        expect("monotone", monotone, true)?;
        expect("final", show(&families[2]), vec!["{a, c}".to_string()])?;
        Ok("chain counts 3, 2, 1, monotone, final {a, c}".into())
    });
    golden(out, "P4", || {
        let p = common::load("p4.plp");
        let blocks = priority_partition(&p).blocks;
        expect("partition", blocks, vec![vec!["n1".to_string(), "n3".into()], vec!["n2".into()], vec!["n4".into()]])?;
        expect("answer sets", show(&plp_answer_sets(&p, &cfg()).unwrap()), vec!["{b, c}".to_string()])?;
        Ok("partition {n1, n3} {n2} {n4}, answer set {b, c}".into())
    });
    golden(out, "P5", || {
        let p = common::load("p5.plp");
        let cert = certify_uniqueness(&p, &cfg()).unwrap();
        expect("verdict", cert.verdict.label(), "certified-unique-answer-set")?;
        let Verdict::UniqueAnswerSet { reduct, answer_set } = cert.verdict else { unreachable!() };
        expect("reduct", base_names(&reduct), common::names(&["n1"]))?;
        expect("answer set", answer_set.to_string(), "{a}".to_string())?;
        Ok("certified unique answer set {a} from reduct {n1}".into())
    });
    golden(out, "P6", || {
        let p = common::load("p6.plp");
        let s = solve_via_split(&p, BlockCount::Coarsest, &cfg()).unwrap();
        let blocks =
            vec![vec!["n1".to_string(), "n2".into(), "n3".into()], vec!["n4".into(), "n5".into(), "n6".into()]];
        expect("blocks", s.blocks.clone(), Some(blocks))?;
        let branch = s.branches.iter().find(|b| b.answer_set.is_some()).ok_or("no consistent branch")?;
        expect("S1", branch.plan.dependent_sets.clone(), vec![lits(&["First", "a", "-d"])])?;
        expect("S2", branch.last.clone(), lits(&["First", "a", "c"]))?;
        expect("final", show(&s.answer_sets), vec!["{a, c, -d}".to_string()])?;
        Ok("blocks {n1, n2, n3} {n4, n5, n6}, S1 {First, a, -d}, S2 {First, a, c}, final {a, c, -d}".into())
    });
    golden(out, "P7", || {
        let p = common::load("p7.plp");
        let s = solve_via_split(&p, BlockCount::Exactly(3), &cfg()).unwrap();
        let blocks = vec![vec!["n1".to_string(), "n2".into()], vec!["n3".into(), "n4".into()], vec!["n5".into()]];
        expect("blocks", s.blocks.clone(), Some(blocks))?;
        let branch = s.branches.iter().find(|b| b.answer_set.is_some()).ok_or("no consistent branch")?;
        expect("S1, S2", branch.plan.dependent_sets.clone(), vec![lits(&["First", "a"]), lits(&["First", "c", "d"])])?;
        expect("S3", branch.last.clone(), lits(&["First"]))?;
        let second = &branch.plan.programs[1];
        expect("second order", (second.order().less("n0", "n3"), second.order().less("n3", "n4")), (true, true))?;
        expect("final", show(&s.answer_sets), vec!["{a, c, d}".to_string()])?;
        Ok("three blocks, S1 {First, a}, S2 {First, c, d}, S3 {First}, final {a, c, d}".into())
    });
    golden(out, "conclusion", || {
        let p = common::load("conclusion.plp");
        let s = solve_via_split(&p, BlockCount::Coarsest, &cfg()).unwrap();
        expect("split", s.blocks.is_some(), true)?;
        expect("split answer", show(&s.answer_sets), vec!["{a}".to_string()])?;
        expect("direct answer", show(&plp_answer_sets(&p, &cfg()).unwrap()), vec!["{a}".to_string()])?;
        Ok("split answer {a} equals the direct answer".into())
    });
}

/// A spread over the generator's bounds: every atom count, rule count and
/// body size occurs, with several preference densities.
fn generated(i: u64) -> GenConfig {
    GenConfig {
        seed: 10_000 + i,
        atom_count: 1 + (i % 8) as usize,
        rule_count: 1 + (i / 8 % 12) as usize,
        max_body: (i % 4) as usize,
        preference_density: [0.1, 0.3, 0.5, 0.7][(i / 96 % 4) as usize],
        constraint_probability: if i.is_multiple_of(5) { 0.1 } else { 0.0 },
        ..Default::default()
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: u64,
    example: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, seed: u64) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            self.example.get_or_insert_with(|| format!("seed {seed}"));
        }
    }

    fn line(&self, out: &mut Outcome, id: &str, what: &str) {
        let first = self.example.as_deref().map(|e| format!(", first at {e}")).unwrap_or_default();
        out.report(
            id,
            self.violations == 0,
            format!("{what}: {} violations in {} cases{first}", self.violations, self.checked),
        );
    }
}

fn criterion_2(out: &mut Outcome) {
    let solver = SolverConfig::default();
    let mut subset = Tally::default();
    let mut existence = Tally::default();
    let mut chains = Tally::default();
    let mut stratified_unique = Tally::default();
    let mut stratified_pairs = Tally::default();
    let mut certificates = Tally::default();
    let mut splits = Tally::default();
    let mut programs = 0u64;
    let mut capped = 0u64;

    let start = Instant::now();
    let mut i = 0;
    while programs < MIN_GENERATED {
        let gen = generated(i);
        i += 1;
        let p = generate(&gen);
        let pi = p.program();
        let plain = match answer_sets(pi, &solver) {
            Ok(s) => s,
            Err(SolveError::CandidateSpaceTooLarge { .. }) => {
                capped += 1;
                continue;
            }
            Err(e) => panic!("seed {}: {e}", gen.seed),
        };
        programs += 1;
        let seed = gen.seed;
        let reducts = all_reducts(&p, &cfg()).unwrap();
        let prioritized = plp_answer_sets(&p, &cfg()).unwrap();

        subset.record(prioritized.iter().all(|s| plain.contains(s)), seed);
        existence.record(plain.is_empty() == prioritized.is_empty(), seed);

        let mut chain_ok = true;
        for r in &reducts {
            let families: Vec<Vec<AnswerSet>> =
                r.chain.steps.iter().map(|s| answer_sets(s, &solver).unwrap()).collect();
            let finals = families.last().unwrap();
            chain_ok &= families.iter().all(|f| finals.iter().all(|s| f.contains(s)));
            chain_ok &= families.windows(2).all(|w| w[1].iter().all(|s| w[0].contains(s)));
        }
        chains.record(chain_ok, seed);

        if local_stratification(pi).is_stratified() {
            stratified_unique.record(plain.len() == 1, seed);
            let rules = pi.rules();
            let pair = rules.iter().any(|a| rules.iter().any(|b| mutually_defeasible(pi, a, b)));
            stratified_pairs.record(!pair, seed);
        }

        match certify_uniqueness(&p, &cfg()).unwrap().verdict {
            Verdict::UniqueReduct { .. } => certificates.record(reducts.len() == 1, seed),
            Verdict::UniqueAnswerSet { .. } => certificates.record(prioritized.len() == 1, seed),
            Verdict::NotCertified { .. } => {}
        }

        let solution = solve_via_split(&p, BlockCount::Coarsest, &cfg()).unwrap();
        if solution.blocks.is_some() {
            let consistent: Vec<AnswerSet> = prioritized.into_iter().filter(AnswerSet::is_consistent).collect();
            splits.record(solution.answer_sets == consistent, seed);
        }
    }
    let took = start.elapsed();

    subset.line(out, "2 subset", "PLP answer sets are answer sets of the program");
    existence.line(out, "2 existence", "a PLP has an answer set iff its program does");
    chains.line(out, "2 chains", "answer sets hold along and shrink along witnessing chains");
    stratified_unique.line(out, "2 stratified-unique", "locally stratified programs have exactly one answer set");
    stratified_pairs.line(out, "2 stratified-no-pair", "locally stratified programs have no mutually defeasible pair");
    certificates.line(out, "2 certificate", "certificates are sound");
    splits.line(out, "2 split", "split solutions equal the consistent direct answer sets");
    out.report(
        "2 budget",
        programs >= MIN_GENERATED && took <= PROPERTY_BUDGET,
        format!(
            "{programs} generated programs ({capped} over the cap) in {:.1} s, limit {} s",
            took.as_secs_f64(),
            PROPERTY_BUDGET.as_secs()
        ),
    );
}

fn criterion_3(out: &mut Outcome) {
    let mut tally = Tally::default();
    let mut too_wide = 0;
    for (seed, p) in common::small_programs(MIN_ORACLE, 8, 0.0) {
        if p.program().lit().len() > MAX_ORACLE_LITERALS {
            too_wide += 1;
            continue;
        }
        let got = answer_sets(p.program(), &SolverConfig::default()).unwrap();
        tally.record(got == common::answer_sets(p.program()), seed);
    }
    tally.line(out, "3 oracle", &format!("answer sets match brute force over lit(Π) ({too_wide} programs too wide)"));
    let enough = tally.checked >= MIN_ORACLE;
    out.report(
        "3 sample",
        enough,
        format!("{} programs of at most {MAX_ORACLE_LITERALS} literals, minimum {MIN_ORACLE}", tally.checked),
    );
}

fn criterion_4(out: &mut Outcome) {
    let rules: String = (0..11).map(|i| format!("p{i}: a{i} :- not b{i}.\nq{i}: b{i} :- not a{i}.\n")).collect();
    let p = plp::parse(&rules).unwrap();
    let refused = matches!(
        answer_sets(p.program(), &SolverConfig::default()),
        Err(SolveError::CandidateSpaceTooLarge { size: 22, cap: 20 })
    );
    out.report(
        "4 scale",
        refused,
        "no scalability measurement; the cap refuses a 22-literal guess at the default 20".into(),
    );
}

fn main() {
    let mut out = Outcome { failed: 0 };
    criterion_1(&mut out);
    criterion_2(&mut out);
    criterion_3(&mut out);
    criterion_4(&mut out);
    println!("{} criteria failed", out.failed);
    if out.failed > 0 {
        std::process::exit(1);
    }
}
