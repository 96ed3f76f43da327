use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ast::{Assignment, Formula, Var};
use crate::error::{Error, Result};
use crate::gf2::BitRow;
use crate::graph::VertexId;
use crate::structures::BinaryStructure;

/// Hard caps on evaluation cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_domain: usize,
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_domain: 32,
            max_rank: 5,
        }
    }
}

/// Element indices are stored in a byte.
const DOMAIN_CEILING: usize = 255;

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Eq(usize, usize),
    Rel(usize, usize, usize),
    Pred(usize, usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

/// A formula compiled against one structure. Variables live in slots, one
/// per free variable and one per quantifier; results of quantified
/// subformulas are memoized on the values of their free slots.
pub struct Evaluator<'s> {
    elems: Vec<VertexId>,
    index: BTreeMap<VertexId, u8>,
    rels: Vec<Vec<BitRow>>,
    preds: Vec<BitRow>,
    nodes: Vec<Node>,
    node_free: Vec<Vec<usize>>,
    root: usize,
    free: BTreeMap<Var, usize>,
    slots: usize,
    memo: HashMap<(u32, u64), bool>,
    _structure: std::marker::PhantomData<&'s BinaryStructure>,
}

struct Compiler {
    rel_index: BTreeMap<String, usize>,
    pred_index: BTreeMap<String, usize>,
    nodes: Vec<Node>,
    node_free: Vec<Vec<usize>>,
    slots: usize,
}

impl Compiler {
    fn push(&mut self, node: Node, free: BTreeSet<usize>) -> (usize, BTreeSet<usize>) {
        self.nodes.push(node);
        self.node_free.push(free.iter().copied().collect());
        (self.nodes.len() - 1, free)
    }

    fn compile(
        &mut self,
        f: &Formula,
        scope: &mut Vec<(Var, usize)>,
    ) -> Result<(usize, BTreeSet<usize>)> {
        let slot = |v: &Var, scope: &Vec<(Var, usize)>| -> usize {
            scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .expect("free variables are pre-scoped")
                .1
        };
        Ok(match f {
            Formula::True | Formula::False => {
                self.push(Node::Const(matches!(f, Formula::True)), BTreeSet::new())
            }
            Formula::Eq(a, b) => {
                let (a, b) = (slot(a, scope), slot(b, scope));
                self.push(Node::Eq(a, b), [a, b].into())
            }
            Formula::Rel(name, a, b) => {
                let r = *self
                    .rel_index
                    .get(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let (a, b) = (slot(a, scope), slot(b, scope));
                self.push(Node::Rel(r, a, b), [a, b].into())
            }
            Formula::Pred(name, a) => {
                let p = *self
                    .pred_index
                    .get(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let a = slot(a, scope);
                self.push(Node::Pred(p, a), [a].into())
            }
            Formula::Not(a) => {
                let (a, fa) = self.compile(a, scope)?;
                self.push(Node::Not(a), fa)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                let (a, mut fa) = self.compile(a, scope)?;
                let (b, fb) = self.compile(b, scope)?;
                fa.extend(fb);
                let node = match f {
                    Formula::And(..) => Node::And(a, b),
                    Formula::Or(..) => Node::Or(a, b),
                    Formula::Implies(..) => Node::Implies(a, b),
                    _ => Node::Iff(a, b),
                };
                self.push(node, fa)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let s = self.slots;
                self.slots += 1;
                scope.push((v.clone(), s));
                let (b, mut fb) = self.compile(body, scope)?;
                scope.pop();
                fb.remove(&s);
                let node = if matches!(f, Formula::Exists(..)) {
                    Node::Exists(s, b)
                } else {
                    Node::Forall(s, b)
                };
                self.push(node, fb)
            }
        })
    }
}

impl<'s> Evaluator<'s> {
    pub fn new(s: &'s BinaryStructure, phi: &Formula, limits: Limits) -> Result<Self> {
        let n = s.domain().len();
        let cap = limits.max_domain.min(DOMAIN_CEILING);
        if n > cap {
            return Err(Error::Capacity {
                what: "domain size for evaluation",
                got: n,
                limit: cap,
            });
        }
        let rank = phi.quantifier_rank();
        if rank > limits.max_rank {
            return Err(Error::Capacity {
                what: "quantifier rank",
                got: rank,
                limit: limits.max_rank,
            });
        }
        let elems: Vec<VertexId> = s.domain().iter().copied().collect();
        let index: BTreeMap<VertexId, u8> = elems
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u8))
            .collect();
        let rels = s
            .relations()
            .iter()
            .map(|r| {
                elems
                    .iter()
                    .map(|&u| {
                        let mut row = BitRow::zeros(n);
                        for (j, &v) in elems.iter().enumerate() {
                            row.set(j, r.holds(u, v));
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let preds = s
            .predicates()
            .values()
            .map(|members| {
                let mut row = BitRow::zeros(n);
                for m in members {
                    row.set(index[m] as usize, true);
                }
                row
            })
            .collect();

        let free: BTreeMap<Var, usize> = phi
            .free_vars()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut c = Compiler {
            rel_index: s
                .relations()
                .iter()
                .enumerate()
                .map(|(i, r)| (r.name.clone(), i))
                .collect(),
            pred_index: s
                .predicates()
                .keys()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect(),
            nodes: Vec::new(),
            node_free: Vec::new(),
            slots: free.len(),
        };
        let mut scope: Vec<(Var, usize)> = free.iter().map(|(v, &i)| (v.clone(), i)).collect();
        let (root, _) = c.compile(phi, &mut scope)?;
        Ok(Evaluator {
            elems,
            index,
            rels,
            preds,
            nodes: c.nodes,
            node_free: c.node_free,
            root,
            free,
            slots: c.slots,
            memo: HashMap::new(),
            _structure: std::marker::PhantomData,
        })
    }

    /// Free variables in slot order.
    pub fn free_vars(&self) -> Vec<Var> {
        self.free.keys().cloned().collect()
    }

    pub fn elements(&self) -> &[VertexId] {
        &self.elems
    }

    pub fn eval(&mut self, a: &Assignment) -> Result<bool> {
        let mut env = vec![0u8; self.slots];
        for (v, &slot) in &self.free {
            let e = a
                .get(v)
                .ok_or_else(|| Error::Evaluation(format!("free variable {v} is not assigned")))?;
            env[slot] = *self.index.get(e).ok_or(Error::UnknownVertex(*e))?;
        }
        Ok(self.run(self.root, &mut env))
    }

    /// Evaluation with free variables given as element positions, in the
    /// order of [`Evaluator::free_vars`].
    pub fn eval_positions(&mut self, values: &[usize]) -> bool {
        let mut env = vec![0u8; self.slots];
        for (slot, &v) in values.iter().enumerate() {
            env[slot] = v as u8;
        }
        self.run(self.root, &mut env)
    }

    fn memo_key(&self, node: usize, env: &[u8]) -> Option<(u32, u64)> {
        let free = &self.node_free[node];
        if free.len() > 8 {
            return None;
        }
        let packed = free.iter().fold(0u64, |acc, &s| acc << 8 | env[s] as u64);
        Some((node as u32, packed))
    }

    fn run(&mut self, node: usize, env: &mut [u8]) -> bool {
        match self.nodes[node].clone() {
            Node::Const(b) => b,
            Node::Eq(a, b) => env[a] == env[b],
            Node::Rel(r, a, b) => self.rels[r][env[a] as usize].get(env[b] as usize),
            Node::Pred(p, a) => self.preds[p].get(env[a] as usize),
            Node::Not(a) => !self.run(a, env),
            Node::And(a, b) => self.run(a, env) && self.run(b, env),
            Node::Or(a, b) => self.run(a, env) || self.run(b, env),
            Node::Implies(a, b) => !self.run(a, env) || self.run(b, env),
            Node::Iff(a, b) => self.run(a, env) == self.run(b, env),
            Node::Exists(slot, body) | Node::Forall(slot, body) => {
                let key = self.memo_key(node, env);
                if let Some(&hit) = key.as_ref().and_then(|k| self.memo.get(k)) {
                    return hit;
                }
                let want = matches!(self.nodes[node], Node::Exists(..));
                let saved = env[slot];
                let mut out = !want;
                for e in 0..self.elems.len() {
                    env[slot] = e as u8;
                    if self.run(body, env) == want {
                        out = want;
                        break;
                    }
                }
                env[slot] = saved;
                if let Some(k) = key {
                    self.memo.insert(k, out);
                }
                out
            }
        }
    }
}

/// `s ⊨ phi[a]`.
pub fn evaluate(s: &BinaryStructure, phi: &Formula, a: &Assignment) -> Result<bool> {
    evaluate_with(s, phi, a, Limits::default())
}

pub fn evaluate_with(
    s: &BinaryStructure,
    phi: &Formula,
    a: &Assignment,
    limits: Limits,
) -> Result<bool> {
    Evaluator::new(s, phi, limits)?.eval(a)
}

/// The elements satisfying a formula with one free variable `x`.
pub fn satisfying_set(
    s: &BinaryStructure,
    phi: &Formula,
    x: &str,
    limits: Limits,
) -> Result<BTreeSet<VertexId>> {
    let t = table(s, phi, &[x], limits)?;
    Ok(t.into_iter()
        .filter(|(_, b)| *b)
        .map(|(v, _)| v[0])
        .collect())
}

/// Truth values of `phi` on every tuple of elements for `vars`, which must
/// be exactly the free variables of `phi`.
pub fn table(
    s: &BinaryStructure,
    phi: &Formula,
    vars: &[&str],
    limits: Limits,
) -> Result<Vec<(Vec<VertexId>, bool)>> {
    let mut ev = Evaluator::new(s, phi, limits)?;
    let free = ev.free_vars();
    let wanted: BTreeSet<&str> = vars.iter().copied().collect();
    if wanted.len() != vars.len()
        || free.iter().map(String::as_str).collect::<BTreeSet<_>>() != wanted
    {
        return Err(Error::Evaluation(format!(
            "variables {vars:?} must be exactly the free variables {free:?}"
        )));
    }
    // position of each requested variable among the evaluator's slots
    let order: Vec<usize> = vars
        .iter()
        .map(|v| free.iter().position(|f| f == v).expect("checked"))
        .collect();
    let n = ev.elements().len();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; vars.len()];
    loop {
        let mut slots = vec![0usize; vars.len()];
        for (i, &o) in order.iter().enumerate() {
            slots[o] = tuple[i];
        }
        let ids = tuple.iter().map(|&i| ev.elements()[i]).collect();
        out.push((ids, ev.eval_positions(&slots)));
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
        if n == 0 {
            return Ok(out);
        }
    }
}
