//! Text format for prioritized logic programs.
//!
//! ```text
//! % Tweety
//! n1: fly(X) :- bird(X), not -fly(X).
//! n2: -fly(X) :- penguin(X), not fly(X).
//! n3: bird(tweety).
//! n4: penguin(tweety).
//! n2 < n1.
//! ```
//!
//! Lowercase identifiers are constants, predicates and rule names; uppercase
//! identifiers are variables. `-` is classical negation and `not` is negation
//! as failure. A constraint has nothing between `:` and `:-`.
//!
//! Two extensions over the bare grammar: a term may be a compound
//! `f(t1, ..., tn)` (so that the grounder can reject it with a precise
//! error), and a rule name may carry a ground-instance suffix `n1/a,b` so
//! that printed ground programs parse back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::model::FIRST_PREDICATE;
use crate::model::{Atom, Literal, ModelError, Plp, PriorityRelation, Program, Rule, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Position, message: String },
    #[error("{pos}: duplicate rule name `{name}`")]
    DuplicateRuleName { pos: Position, name: String },
    #[error("{pos}: preference refers to undeclared rule `{name}`")]
    UndeclaredName { pos: Position, name: String },
    #[error("{pos}: preferences form a cycle through `{name}`")]
    Cycle { pos: Position, name: String },
    #[error("{pos}: predicate `{predicate}` used with arity {found}, earlier with {expected}")]
    ArityMismatch { pos: Position, predicate: String, expected: usize, found: usize },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::DuplicateRuleName { pos, .. }
            | ParseError::UndeclaredName { pos, .. }
            | ParseError::Cycle { pos, .. }
            | ParseError::ArityMismatch { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Rule(Rule),
    Preference(String, String),
}

/// A parsed file before semantic checks, with one position per statement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceProgram {
    pub statements: Vec<(Position, Statement)>,
}

impl SourceProgram {
    /// Resolves the statements into a [`Plp`], checking rule names, preference
    /// targets, arities and acyclicity.
    pub fn into_plp(self) -> Result<Plp, ParseError> {
        let mut rules = Vec::new();
        let mut declared = BTreeSet::new();
        let mut prefs = Vec::new();
        let mut arity: BTreeMap<String, usize> = BTreeMap::new();

        for (pos, stmt) in self.statements {
            match stmt {
                Statement::Rule(rule) => {
                    if !declared.insert(rule.name.clone()) {
                        return Err(ParseError::DuplicateRuleName { pos, name: rule.name });
                    }
                    for l in rule.literals() {
                        let found = l.atom.arity();
                        let expected = *arity.entry(l.atom.predicate.clone()).or_insert(found);
                        if expected != found {
                            return Err(ParseError::ArityMismatch {
                                pos,
                                predicate: l.atom.predicate.clone(),
                                expected,
                                found,
                            });
                        }
                    }
                    rules.push(rule);
                }
                Statement::Preference(a, b) => prefs.push((pos, a, b)),
            }
        }

        for (pos, a, b) in &prefs {
            for name in [a, b] {
                if !declared.contains(name) {
                    return Err(ParseError::UndeclaredName { pos: *pos, name: name.clone() });
                }
            }
        }

        let order =
            PriorityRelation::new(prefs.iter().map(|(_, a, b)| (a.clone(), b.clone()))).map_err(|e| match e {
                ModelError::CyclicPriority(name) => {
                    let pos = prefs
                        .iter()
                        .find(|(_, a, b)| *a == name || *b == name)
                        .map(|(p, _, _)| *p)
                        .unwrap_or(Position { line: 1, column: 1 });
                    ParseError::Cycle { pos, name }
                }
                other => unreachable!("priority construction only reports cycles: {other}"),
            })?;

        let program = Program::new(rules).expect("names checked above");
        Ok(Plp::new(program, order).expect("preference names checked above"))
    }
}

/// Parses program text into a [`Plp`].
pub fn parse(text: &str) -> Result<Plp, ParseError> {
    parse_source(text)?.into_plp()
}

/// Parses program text without the semantic checks.
pub fn parse_source(text: &str) -> Result<SourceProgram, ParseError> {
    let tokens = lex(text)?;
    Parser { tokens, at: 0 }.program()
}

/// Canonical text for a PLP: rules in program order (positive body literals
/// sorted, then `not` literals sorted), then preferences sorted.
pub fn print(p: &Plp) -> String {
    let mut out = String::new();
    for r in p.program().rules() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    for (a, b) in p.order().pairs() {
        out.push_str(&format!("{a} < {b}.\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Not,
    Colon,
    If,
    Comma,
    Dot,
    LParen,
    RParen,
    Less,
    Minus,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => write!(f, "`{s}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Position, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let tok = if ident == "not" {
                Tok::Not
            } else if ident.starts_with(|c: char| c.is_ascii_lowercase()) {
                Tok::Lower(ident)
            } else if ident.starts_with(|c: char| c.is_ascii_uppercase()) {
                Tok::Upper(ident)
            } else {
                let message = if ident == FIRST_PREDICATE {
                    format!("`{FIRST_PREDICATE}` is reserved")
                } else {
                    format!("identifier `{ident}` must start with a letter")
                };
                return Err(ParseError::Syntax { pos, message });
            };
            out.push((pos, tok));
            continue;
        }
        bump(&mut chars);
        let tok = match c {
            ':' => {
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    Tok::If
                } else {
                    Tok::Colon
                }
            }
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '<' => Tok::Less,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            other => return Err(ParseError::Syntax { pos, message: format!("unexpected character `{other}`") }),
        };
        out.push((pos, tok));
    }
    out.push((Position { line, column }, Tok::Eof));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Position, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].1
    }

    fn pos(&self) -> Position {
        self.tokens[self.at].0
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.at].1.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: format!("expected {expected}, found {}", self.peek()) })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn lower(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Lower(_) => match self.next() {
                Tok::Lower(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.error(what),
        }
    }

    fn program(&mut self) -> Result<SourceProgram, ParseError> {
        let mut statements = Vec::new();
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            statements.push((pos, self.statement()?));
        }
        Ok(SourceProgram { statements })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let name = self.rule_name()?;
        match self.peek() {
            Tok::Less => {
                self.next();
                let other = self.rule_name()?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(Statement::Preference(name, other))
            }
            Tok::Colon => {
                self.next();
                self.rule(name).map(Statement::Rule)
            }
            _ => self.error("`:` or `<` after a rule name"),
        }
    }

    fn rule_name(&mut self) -> Result<String, ParseError> {
        let mut name = self.lower("a rule name")?;
        if *self.peek() == Tok::Slash {
            self.next();
            name.push('/');
            name.push_str(&self.lower("a constant in an instance name")?);
            while *self.peek() == Tok::Comma {
                self.next();
                name.push(',');
                name.push_str(&self.lower("a constant in an instance name")?);
            }
        }
        Ok(name)
    }

    fn rule(&mut self, name: String) -> Result<Rule, ParseError> {
        let head = match self.peek() {
            Tok::If | Tok::Dot => None,
            _ => Some(self.literal()?),
        };
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        if *self.peek() == Tok::If {
            self.next();
            loop {
                if *self.peek() == Tok::Not {
                    self.next();
                    neg.push(self.literal()?);
                } else {
                    pos.push(self.literal()?);
                }
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` or `,`")?;
        Ok(Rule::new(name, head, pos, neg))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let negated = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let predicate = self.lower("a literal")?;
        let args = if *self.peek() == Tok::LParen { self.arguments()? } else { Vec::new() };
        Ok(Literal { negated, atom: Atom::new(predicate, args) })
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.next();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Tok::Upper(v) => Ok(Term::Variable(v)),
            Tok::Lower(c) => {
                if *self.peek() == Tok::LParen {
                    Ok(Term::Function(c, self.arguments()?))
                } else {
                    Ok(Term::Constant(c))
                }
            }
            _ => {
                self.at -= 1;
                self.error("a term")
            }
        }
    }
}
