//! Seeded random propositional programs with acyclic priorities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Atom, Literal, Plp, PriorityRelation, Program, Rule};

pub const MAX_ATOMS: usize = 8;
pub const MAX_RULES: usize = 12;
pub const MAX_BODY: usize = 3;

const ATOMS: [&str; MAX_ATOMS] = ["a", "b", "c", "d", "e", "f", "g", "h"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenConfigError {
    #[error("{field} = {value} exceeds the bound {bound}")]
    OutOfBounds { field: &'static str, value: usize, bound: usize },
    #[error("{field} = {value} is not a probability")]
    NotAProbability { field: &'static str, value: f64 },
    #[error("rules need at least one atom")]
    NoAtoms,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub atom_count: usize,
    pub rule_count: usize,
    pub max_body: usize,
    pub naf_probability: f64,
    pub classical_neg_probability: f64,
    /// Chance that a pair of rules is ordered.
    pub preference_density: f64,
    pub constraint_probability: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            atom_count: 4,
            rule_count: 6,
            max_body: 2,
            naf_probability: 0.5,
            classical_neg_probability: 0.2,
            preference_density: 0.2,
            constraint_probability: 0.0,
        }
    }
}

impl GenConfig {
    pub fn check(&self) -> Result<(), GenConfigError> {
        for (field, value, bound) in [
            ("atom_count", self.atom_count, MAX_ATOMS),
            ("rule_count", self.rule_count, MAX_RULES),
            ("max_body", self.max_body, MAX_BODY),
        ] {
            if value > bound {
                return Err(GenConfigError::OutOfBounds { field, value, bound });
            }
        }
        for (field, value) in [
            ("naf_probability", self.naf_probability),
            ("classical_neg_probability", self.classical_neg_probability),
            ("preference_density", self.preference_density),
            ("constraint_probability", self.constraint_probability),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GenConfigError::NotAProbability { field, value });
            }
        }
        if self.atom_count == 0 && self.rule_count > 0 {
            return Err(GenConfigError::NoAtoms);
        }
        Ok(())
    }
}

/// A ground program over atoms `a`, `b`, … with rules `n1`, `n2`, …;
/// preferences only run from a rule to a later one, and never (even
/// transitively) between two rules with the same content: their common
/// instance would be ordered against itself.
///
/// Panics if `cfg` fails [`GenConfig::check`].
pub fn generate(cfg: &GenConfig) -> Plp {
    if let Err(e) = cfg.check() {
        panic!("invalid generator config: {e}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let literal = |rng: &mut ChaCha8Rng| {
        let atom = Atom::prop(ATOMS[rng.random_range(0..cfg.atom_count)]);
        if rng.random_bool(cfg.classical_neg_probability) {
            Literal::neg(atom)
        } else {
            Literal::pos(atom)
        }
    };

    let mut rules = Vec::with_capacity(cfg.rule_count);
    for i in 1..=cfg.rule_count {
        let head = (!rng.random_bool(cfg.constraint_probability)).then(|| literal(&mut rng));
        let size = rng.random_range(0..=cfg.max_body);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for _ in 0..size {
            let l = literal(&mut rng);
            if rng.random_bool(cfg.naf_probability) {
                neg.push(l);
            } else {
                pos.push(l);
            }
        }
        rules.push(Rule::new(format!("n{i}"), head, pos, neg));
    }

    // `less[a][b]` tracks the transitive closure so that no chain of pairs
    // orders two identical rules either.
    let n = rules.len();
    let mut less = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !rng.random_bool(cfg.preference_density) || less[i][j] {
                continue;
            }
            let above: Vec<usize> = (0..n).filter(|&a| a == i || less[a][i]).collect();
            let below: Vec<usize> = (0..n).filter(|&b| b == j || less[j][b]).collect();
            if above.iter().any(|&a| below.iter().any(|&b| rules[a].same_content(&rules[b]))) {
                continue;
            }
            for &a in &above {
                for &b in &below {
                    less[a][b] = true;
                }
            }
            pairs.push((rules[i].name.clone(), rules[j].name.clone()));
        }
    }
    let program = Program::new(rules).expect("names are distinct");
    let order = PriorityRelation::new(pairs).expect("pairs follow rule positions");
    Plp::new(program, order).expect("pairs name program rules")
}
