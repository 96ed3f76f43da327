//! Recursive descent parser. Precedence from tightest: `~`, `&`, `|`, `->`
//! (right associative), `<->` (left associative); `forall`/`exists` bind as
//! far right as possible.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Formula, Var};
use crate::error::{Error, Result};
use crate::structures::BinaryStructure;

/// A named formula `name(params) := body`, inlined at each use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub params: Vec<Var>,
    pub body: Formula,
}

/// Symbols a formula may use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub relations: BTreeSet<String>,
    pub predicates: BTreeSet<String>,
    pub definitions: BTreeMap<String, Definition>,
}

impl Vocabulary {
    pub fn of(s: &BinaryStructure) -> Self {
        Vocabulary {
            relations: s.relations().iter().map(|r| r.name.clone()).collect(),
            predicates: s.predicates().keys().cloned().collect(),
            definitions: BTreeMap::new(),
        }
    }

    /// Just the edge relation `E`.
    pub fn graph() -> Self {
        Vocabulary {
            relations: ["E".to_string()].into(),
            ..Default::default()
        }
    }

    pub fn with_predicates<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Self {
        self.predicates
            .extend(names.into_iter().map(str::to_string));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Equals,
    Define,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (ln + 1, i + 1);
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let (tok, len) = if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
                continue;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let end = (i..chars.len())
                    .find(|&j| {
                        !(chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                    })
                    .unwrap_or(chars.len());
                (Tok::Ident(chars[i..end].iter().collect()), end - i)
            } else if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Implies, 2)
            } else if rest.starts_with(":=") {
                (Tok::Define, 2)
            } else {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '~' => Tok::Not,
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    '=' => Tok::Equals,
                    _ => {
                        return Err(Error::parse(
                            line,
                            column,
                            format!("unexpected character {c:?}"),
                        ))
                    }
                };
                (tok, 1)
            };
            out.push(Token { tok, line, column });
            i += len;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vocab: &'a Vocabulary,
    end: (usize, usize),
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "true", "false"];

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn var(&mut self) -> Result<Var> {
        match self.peek() {
            Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => self.fail("expected a variable"),
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut left = self.implies()?;
        while self.eat(&Tok::Iff) {
            let right = self.implies()?;
            left = Formula::Iff(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if self.eat(&Tok::Implies) {
            let right = self.implies()?;
            return Ok(Formula::Implies(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut left = self.and()?;
        while self.eat(&Tok::Or) {
            let right = self.and()?;
            left = Formula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            let right = self.unary()?;
            left = Formula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::negate(self.unary()?));
        }
        if self.eat(&Tok::LParen) {
            let f = self.iff()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let word = match self.peek() {
            Some(Tok::Ident(w)) => w.clone(),
            _ => return self.fail("expected a formula"),
        };
        match word.as_str() {
            "true" | "false" => {
                self.pos += 1;
                Ok(if word == "true" {
                    Formula::True
                } else {
                    Formula::False
                })
            }
            "forall" | "exists" => {
                self.pos += 1;
                let mut vars = vec![self.var()?];
                loop {
                    let had_comma = self.eat(&Tok::Comma);
                    match self.peek() {
                        Some(Tok::Ident(w))
                            if !KEYWORDS.contains(&w.as_str())
                                && self.toks.get(self.pos + 1).map(|t| &t.tok)
                                    != Some(&Tok::LParen)
                                && self.toks.get(self.pos + 1).map(|t| &t.tok)
                                    != Some(&Tok::Equals) =>
                        {
                            vars.push(self.var()?);
                        }
                        _ if had_comma => return self.fail("expected a variable after `,`"),
                        _ => break,
                    }
                }
                let mut body = self.iff()?;
                for v in vars.into_iter().rev() {
                    body = if word == "forall" {
                        Formula::Forall(v, Box::new(body))
                    } else {
                        Formula::Exists(v, Box::new(body))
                    };
                }
                Ok(body)
            }
            _ => self.atom(word),
        }
    }

    fn atom(&mut self, word: String) -> Result<Formula> {
        let at = self.here();
        self.pos += 1;
        if self.eat(&Tok::Equals) {
            let rhs = self.var()?;
            return Ok(Formula::Eq(word, rhs));
        }
        if !self.eat(&Tok::LParen) {
            return self.fail("expected `(` or `=`");
        }
        let mut args = vec![self.var()?];
        while self.eat(&Tok::Comma) {
            args.push(self.var()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        let v = self.vocab;
        match args.len() {
            2 if v.relations.contains(&word) => {
                Ok(Formula::Rel(word, args[0].clone(), args[1].clone()))
            }
            1 if v.predicates.contains(&word) => Ok(Formula::Pred(word, args[0].clone())),
            n => match v.definitions.get(&word) {
                Some(d) if d.params.len() == n => {
                    let map = d.params.iter().cloned().zip(args).collect();
                    Ok(d.body.substitute(&map))
                }
                Some(d) => Err(Error::parse(
                    at.0,
                    at.1,
                    format!("{word} takes {} arguments, got {n}", d.params.len()),
                )),
                None => Err(Error::UnknownSymbol(format!("{word}/{n}"))),
            },
        }
    }
}

fn parser<'a>(text: &str, vocab: &'a Vocabulary) -> Result<Parser<'a>> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last = text.lines().last().map_or(0, |l| l.chars().count());
    Ok(Parser {
        toks,
        pos: 0,
        vocab,
        end: (lines, last + 1),
    })
}

/// Parses one formula. Named definitions in `vocab` are expanded in place.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let mut p = parser(text, vocab)?;
    let f = p.iff()?;
    if p.pos < p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(f)
}

/// Parses a sequence of `name(params) := body` blocks. Later blocks may use
/// earlier ones; the returned vocabulary extends `base` with all of them.
pub fn parse_definitions(text: &str, base: &Vocabulary) -> Result<Vocabulary> {
    let mut vocab = base.clone();
    let toks = parser(text, base)?.toks;
    let mut pos = 0;
    while pos < toks.len() {
        let mut p = parser("", &vocab)?;
        p.toks = toks.clone();
        p.pos = pos;
        p.end = toks.last().map_or((1, 1), |t| (t.line, t.column + 1));
        let (line, column) = p.here();
        let name = p.var()?;
        p.expect(Tok::LParen, "`(`")?;
        let mut params = vec![p.var()?];
        while p.eat(&Tok::Comma) {
            params.push(p.var()?);
        }
        p.expect(Tok::RParen, "`)`")?;
        p.expect(Tok::Define, "`:=`")?;
        let body = p.iff()?;
        pos = p.pos;
        let unbound: Vec<Var> = body
            .free_vars()
            .into_iter()
            .filter(|v| !params.contains(v))
            .collect();
        if !unbound.is_empty() {
            return Err(Error::parse(
                line,
                column,
                format!("{name}: free variables {unbound:?} not declared"),
            ));
        }
        if vocab.relations.contains(&name)
            || vocab.predicates.contains(&name)
            || vocab.definitions.contains_key(&name)
        {
            return Err(Error::parse(
                line,
                column,
                format!("{name} is already defined"),
            ));
        }
        vocab.definitions.insert(name, Definition { params, body });
    }
    Ok(vocab)
}
