use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Var = String;

/// First-order formulas over binary relations and unary predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Var, Var),
    Rel(String, Var, Var),
    Pred(String, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut see = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) | Formula::Rel(_, a, b) => {
                see(a, bound);
                see(b, bound);
            }
            Formula::Pred(_, a) => see(a, bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) | Formula::Rel(_, a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Pred(_, a) | Formula::Exists(a, _) | Formula::Forall(a, _) => {
                out.insert(a.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    /// Maximum nesting depth of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::True
            | Formula::False
            | Formula::Eq(..)
            | Formula::Rel(..)
            | Formula::Pred(..) => 0,
            Formula::Not(a) => a.quantifier_rank(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + a.quantifier_rank(),
        }
    }

    /// Simultaneous capture-avoiding substitution of free variables.
    pub fn substitute(&self, map: &BTreeMap<Var, Var>) -> Formula {
        let mut avoid: BTreeSet<Var> = map.values().cloned().collect();
        avoid.extend(self.all_vars());
        self.subst(map, &avoid)
    }

    fn subst(&self, map: &BTreeMap<Var, Var>, avoid: &BTreeSet<Var>) -> Formula {
        let r = |v: &Var| map.get(v).cloned().unwrap_or_else(|| v.clone());
        let bin = |a: &Formula, b: &Formula| {
            (Box::new(a.subst(map, avoid)), Box::new(b.subst(map, avoid)))
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::Rel(n, a, b) => Formula::Rel(n.clone(), r(a), r(b)),
            Formula::Pred(n, a) => Formula::Pred(n.clone(), r(a)),
            Formula::Not(a) => Formula::Not(Box::new(a.subst(map, avoid))),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b);
                Formula::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Iff(a, b)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let mut inner = map.clone();
                inner.remove(v);
                let captured = inner.values().any(|t| t == v);
                let name = if captured { fresh(v, avoid) } else { v.clone() };
                if captured {
                    inner.insert(v.clone(), name.clone());
                }
                let mut avoid = avoid.clone();
                avoid.insert(name.clone());
                let body = Box::new(body.subst(&inner, &avoid));
                match self {
                    Formula::Exists(..) => Formula::Exists(name, body),
                    _ => Formula::Forall(name, body),
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, context: u8) -> fmt::Result {
        let wrap = self.precedence() < context;
        if wrap {
            f.write_str("(")?;
        }
        let p = self.precedence();
        match self {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
            Formula::Rel(n, a, b) => write!(f, "{n}({a},{b})")?,
            Formula::Pred(n, a) => write!(f, "{n}({a})")?,
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write(f, 5)?;
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " <-> ",
                };
                a.write(f, p)?;
                f.write_str(op)?;
                b.write(f, p + 1)?;
            }
            Formula::Implies(a, b) => {
                a.write(f, p + 1)?;
                f.write_str(" -> ")?;
                b.write(f, p)?;
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let q = if matches!(self, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                };
                write!(f, "{q} {v} ")?;
                a.write(f, 5)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn fresh(base: &str, avoid: &BTreeSet<Var>) -> Var {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// A variable-to-element map.
pub type Assignment = BTreeMap<Var, crate::graph::VertexId>;
