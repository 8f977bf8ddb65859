//! Prioritized extended logic programs under answer set semantics.
//!
//! A prioritized logic program is an extended logic program (classical
//! negation `-` plus negation as failure `not`) together with a strict
//! partial order on rule names. Its answer sets are those of its reducts:
//! programs obtained by repeatedly removing less preferred rules that the
//! rest of the program defeats.
//!
//! ```
//! use plp::reduct::{plp_answer_sets, ReductConfig};
//!
//! let p = plp::parse(
//!     "n1: fly :- bird, not -fly.
//!      n2: -fly :- penguin, not fly.
//!      n3: bird.
//!      n4: penguin.
//!      n2 < n1.",
//! )
//! .unwrap();
//! let sets = plp_answer_sets(&p, &ReductConfig::default()).unwrap();
//! assert_eq!(sets.len(), 1);
//! assert_eq!(sets[0].to_string(), "{bird, penguin, -fly}");
//! ```
//!
//! The crate is organized bottom-up:
//!
//! - [`model`]: terms, literals, rules, programs, priorities, answer sets
//! - [`parser`]: the text format and its canonical printer
//! - [`ground`]: Herbrand instantiation and the well-formedness check
//! - [`solver`]: answer sets of ground extended programs, defeat
//! - [`reduct`]: reducts and answer sets of prioritized programs
//! - [`analysis`]: local stratification, mutual defeasibility, `<`-partitions
//!   and uniqueness certificates
//! - [`split`]: splitting a program into blocks solved one after another
//! - [`generator`]: seeded random ground programs for property testing
//! - [`report`]: the command-line reports

pub mod analysis;
pub mod generator;
pub mod ground;
pub mod model;
pub mod parser;
pub mod reduct;
pub mod report;
pub mod solver;
pub mod split;

mod engine;

pub use model::{AnswerSet, Atom, Literal, Plp, PriorityRelation, Program, Rule, Term};
pub use parser::{parse, print};
