//! Brute-force ladders and independence witnesses for a partitioned formula
//! `phi(x; y)` with one variable per side.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ast::{Assignment, Formula};
use super::eval::{Evaluator, Limits};
use super::library::permutation_vocabulary;
use super::parser::parse_formula;
use crate::error::{Error, Result};
use crate::families::permutation_graph;
use crate::graph::VertexId;
use crate::structures::BinaryStructure;

pub const MAX_LADDER_CAP: usize = 8;
pub const MAX_INDEPENDENCE_N: usize = 3;

/// Truth table of `phi` over all pairs of elements, rows indexed by the
/// `x` element and columns by the `y` element, both in domain order.
pub fn pair_table(
    s: &BinaryStructure,
    phi: &Formula,
    x: &str,
    y: &str,
    limits: Limits,
) -> Result<Vec<Vec<bool>>> {
    if x == y {
        return Err(Error::Precondition(
            "the two sides need distinct variables".into(),
        ));
    }
    let extra: Vec<_> = phi
        .free_vars()
        .into_iter()
        .filter(|v| v != x && v != y)
        .collect();
    if !extra.is_empty() {
        return Err(Error::Evaluation(format!(
            "free variables {extra:?} are not on either side"
        )));
    }
    let mut ev = Evaluator::new(s, phi, limits)?;
    let elems = ev.elements().to_vec();
    let mut rows = Vec::with_capacity(elems.len());
    for &a in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for &b in &elems {
            let asg = Assignment::from([(x.to_string(), a), (y.to_string(), b)]);
            row.push(ev.eval(&asg)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// A longest ladder of length at most `cap`, lexicographically least among
/// the longest: `phi(a_i, b_j)` holds iff `i ≤ j`.
pub fn ladder_witness(
    s: &BinaryStructure,
    phi: &Formula,
    x: &str,
    y: &str,
    cap: usize,
) -> Result<Vec<(VertexId, VertexId)>> {
    if cap > MAX_LADDER_CAP {
        return Err(Error::Capacity {
            what: "ladder cap",
            got: cap,
            limit: MAX_LADDER_CAP,
        });
    }
    let t = pair_table(s, phi, x, y, Limits::default())?;
    let elems: Vec<VertexId> = s.domain().iter().copied().collect();
    let mut best = Vec::new();
    extend_ladder(&t, cap, &mut Vec::new(), &mut best);
    Ok(best
        .into_iter()
        .map(|(a, b)| (elems[a], elems[b]))
        .collect())
}

pub fn ladder_index(
    s: &BinaryStructure,
    phi: &Formula,
    x: &str,
    y: &str,
    cap: usize,
) -> Result<usize> {
    Ok(ladder_witness(s, phi, x, y, cap)?.len())
}

// Every prefix of a ladder is a ladder, so growing prefixes is exhaustive.
fn extend_ladder(
    t: &[Vec<bool>],
    cap: usize,
    cur: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
) -> bool {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() == cap {
        return true;
    }
    let n = t.len();
    for a in 0..n {
        if cur.iter().any(|&(p, _)| p == a) || cur.iter().any(|&(_, q)| t[a][q]) {
            continue;
        }
        for b in 0..n {
            if !t[a][b] || cur.iter().any(|&(p, q)| q == b || !t[p][b]) {
                continue;
            }
            cur.push((a, b));
            let done = extend_ladder(t, cap, cur, best);
            cur.pop();
            if done {
                return true;
            }
        }
    }
    false
}

/// Elements `a_1..a_n` and one `b_J` per subset `J` of `1..=n` with
/// `phi(a_i, b_J)` iff `i ∈ J`. Bit `i-1` of the index into `b` encodes
/// membership of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceWitness {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
}

/// The lexicographically least witness, or `None` when no choice of
/// pairwise distinct `a_i` is shattered.
pub fn independence_witness(
    s: &BinaryStructure,
    phi: &Formula,
    x: &str,
    y: &str,
    n: usize,
) -> Result<Option<IndependenceWitness>> {
    if n > MAX_INDEPENDENCE_N {
        return Err(Error::Capacity {
            what: "independence witness size",
            got: n,
            limit: MAX_INDEPENDENCE_N,
        });
    }
    let t = pair_table(s, phi, x, y, Limits::default())?;
    let elems: Vec<VertexId> = s.domain().iter().copied().collect();
    let m = elems.len();
    if m < n {
        return Ok(None);
    }
    for a in ordered_tuples(m, n) {
        // pattern of each candidate b against the chosen a's
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        let pattern = |b: usize| {
            a.iter()
                .enumerate()
                .fold(0, |acc, (i, &ai)| acc | (usize::from(t[ai][b]) << i))
        };
        for b in 0..m {
            first.entry(pattern(b)).or_insert(b);
        }
        if first.len() == 1 << n {
            return Ok(Some(IndependenceWitness {
                a: a.iter().map(|&i| elems[i]).collect(),
                b: first.values().map(|&i| elems[i]).collect(),
            }));
        }
    }
    Ok(None)
}

/// All tuples of `n` distinct indices below `m`, in lexicographic order.
fn ordered_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..m {
            if !cur.contains(&i) {
                cur.push(i);
                go(m, n, cur, out);
                cur.pop();
            }
        }
    }
    go(m, n, &mut cur, &mut out);
    out
}

/// Encodes `sigma` (one-line, values `1..=n`) as the permutation graph of
/// `σ̂(2i+1) = σ(i)`, `σ̂(2i) = n+i` over positions `2..=2n+1`, marks the
/// odd positions `A` and the even ones `B`, reads two orders on `A` off
/// the formulas `lt1` and `lt2`, and checks that they give back `sigma`.
pub fn permutation_roundtrip(sigma: &[usize]) -> Result<bool> {
    let n = sigma.len();
    if n == 0 {
        return Err(Error::Domain("permutation_roundtrip needs n ≥ 1".into()));
    }
    permutation_graph(sigma)?;
    // vertex q of the permutation graph sits at position q+1
    let hat: Vec<usize> = (2..=2 * n + 1)
        .map(|p| {
            if p % 2 == 1 {
                sigma[(p - 1) / 2 - 1]
            } else {
                n + p / 2
            }
        })
        .collect();
    let g = permutation_graph(&hat)?;
    let mut s = BinaryStructure::from_graph(&g);
    let side = |odd: bool| {
        (1..=2 * n as u32)
            .filter(move |q| (q + 1) % 2 == u32::from(odd))
            .map(VertexId)
    };
    s.add_predicate("A", side(true))?;
    s.add_predicate("B", side(false))?;

    let vocab = permutation_vocabulary()?;
    let lt1 = parse_formula("lt1(x,y)", &vocab)?;
    let lt2 = parse_formula("lt2(x,y)", &vocab)?;
    let a: Vec<VertexId> = side(true).collect();
    let rank = |f: &Formula| -> Result<Vec<usize>> {
        let t = pair_table(&s, f, "x", "y", Limits::default())?;
        let pos = |v: VertexId| v.0 as usize - 1;
        // rank = number of strict predecessors + 1
        Ok(a.iter()
            .map(|&u| a.iter().filter(|&&w| w != u && t[pos(w)][pos(u)]).count() + 1)
            .collect())
    };
    let first = rank(&lt1)?;
    let second = rank(&lt2)?;
    let mut recovered = vec![0; n];
    for (r1, r2) in first.into_iter().zip(second) {
        if r1 > n || recovered[r1 - 1] != 0 {
            return Ok(false);
        }
        recovered[r1 - 1] = r2;
    }
    Ok(recovered == sigma)
}
