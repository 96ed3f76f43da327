//! Exhaustive certifiers for flip-flatness and flip-breakability on graphs
//! with at most eight vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flips::{apply_flip, Flip};
use crate::graph::{Distance, Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipCaps {
    pub max_order: usize,
    pub max_k: usize,
}

impl Default for FlipCaps {
    fn default() -> Self {
        FlipCaps {
            max_order: 8,
            max_k: 2,
        }
    }
}

/// The flip reaching the optimum and the sets it separates: one set for
/// scattering, two for breaking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessWitness {
    pub value: usize,
    #[serde(with = "flip_text")]
    pub flip: Flip,
    pub sets: Vec<VertexSet>,
}

mod flip_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::flips::Flip;

    pub fn serialize<S: Serializer>(f: &Flip, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Flip, D::Error> {
        let text = String::deserialize(d)?;
        Flip::from_text(&text).map_err(serde::de::Error::custom)
    }
}

fn check(g: &Graph, a: &VertexSet, k: usize, caps: FlipCaps) -> Result<Vec<usize>> {
    if g.order() > caps.max_order {
        return Err(Error::Capacity {
            what: "graph order for flip search",
            got: g.order(),
            limit: caps.max_order,
        });
    }
    if k > caps.max_k {
        return Err(Error::Capacity {
            what: "flip class count",
            got: k,
            limit: caps.max_k,
        });
    }
    if k == 0 {
        return Err(Error::Domain("a flip needs at least one class".into()));
    }
    a.iter().map(|&v| g.slot(v)).collect()
}

/// Every `k`-flip on the vertices of `g`: all class maps and all symmetric
/// `τ`, in a fixed order.
fn all_flips(g: &Graph, k: usize) -> Result<Vec<Flip>> {
    let n = g.order();
    let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for code in 0..k.pow(n as u32) {
        let mut c = code;
        let iota: BTreeMap<VertexId, usize> = g
            .vertices()
            .iter()
            .map(|&v| {
                let class = c % k + 1;
                c /= k;
                (v, class)
            })
            .collect();
        for t in 0..1u32 << pairs.len() {
            let ones = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| t >> b & 1 == 1)
                .map(|(_, &p)| p);
            out.push(Flip::new(k, iota.clone(), ones)?);
        }
    }
    Ok(out)
}

/// `far[x][y]`: distance in `g ⊕ f` between the `x`-th and `y`-th vertex
/// of `a` satisfies `pred`.
fn relation_on(
    g: &Graph,
    f: &Flip,
    a: &VertexSet,
    pred: impl Fn(Distance) -> bool,
) -> Result<Vec<Vec<bool>>> {
    let d = apply_flip(g, f)?.distances();
    let a: Vec<VertexId> = a.iter().copied().collect();
    Ok(a.iter()
        .map(|&u| a.iter().map(|&v| u != v && pred(d.get(u, v))).collect())
        .collect())
}

fn at_least(r: usize) -> impl Fn(Distance) -> bool {
    move |d| d.finite().is_none_or(|x| x as usize >= r)
}

fn more_than(r: usize) -> impl Fn(Distance) -> bool {
    move |d| d.finite().is_none_or(|x| x as usize > r)
}

fn subset(a: &[VertexId], mask: u32) -> VertexSet {
    a.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

pub fn flip_scatter_max(g: &Graph, a: &VertexSet, r: usize, k: usize) -> Result<usize> {
    Ok(flip_scatter_witness(g, a, r, k, FlipCaps::default())?.value)
}

/// The largest `S ⊆ a` that some `k`-flip makes pairwise at distance `≥ r`.
pub fn flip_scatter_witness(
    g: &Graph,
    a: &VertexSet,
    r: usize,
    k: usize,
    caps: FlipCaps,
) -> Result<FlatnessWitness> {
    check(g, a, k, caps)?;
    let ids: Vec<VertexId> = a.iter().copied().collect();
    let mut best: Option<FlatnessWitness> = None;
    for f in all_flips(g, k)? {
        let far = relation_on(g, &f, a, at_least(r))?;
        for mask in 0u32..1 << ids.len() {
            let m = mask.count_ones() as usize;
            if best.as_ref().is_some_and(|b| b.value >= m) {
                continue;
            }
            let members: Vec<usize> = (0..ids.len()).filter(|i| mask >> i & 1 == 1).collect();
            if members
                .iter()
                .all(|&x| members.iter().all(|&y| x == y || far[x][y]))
            {
                best = Some(FlatnessWitness {
                    value: m,
                    flip: f.clone(),
                    sets: vec![subset(&ids, mask)],
                });
            }
        }
        if best.as_ref().is_some_and(|b| b.value == ids.len()) {
            break;
        }
    }
    Ok(best.expect("the empty set always scatters"))
}

pub fn flip_break_max(g: &Graph, a: &VertexSet, r: usize, k: usize) -> Result<usize> {
    Ok(flip_break_witness(g, a, r, k, FlipCaps::default())?.value)
}

/// The largest `m` with disjoint `A_1, A_2 ⊆ a` of size `m` such that some
/// `k`-flip puts every vertex of `A_1` at distance `> r` from every vertex
/// of `A_2`.
pub fn flip_break_witness(
    g: &Graph,
    a: &VertexSet,
    r: usize,
    k: usize,
    caps: FlipCaps,
) -> Result<FlatnessWitness> {
    check(g, a, k, caps)?;
    let ids: Vec<VertexId> = a.iter().copied().collect();
    let n = ids.len();
    let mut best: Option<FlatnessWitness> = None;
    for f in all_flips(g, k)? {
        let far = relation_on(g, &f, a, more_than(r))?;
        for mask in 0u32..1 << n {
            let m = mask.count_ones() as usize;
            if best.as_ref().is_some_and(|b| b.value >= m) {
                continue;
            }
            // vertices outside A_1 that are far from all of A_1
            let common: Vec<usize> = (0..n)
                .filter(|&y| mask >> y & 1 == 0 && (0..n).all(|x| mask >> x & 1 == 0 || far[x][y]))
                .collect();
            if common.len() >= m {
                let second = common[..m].iter().fold(0u32, |acc, &y| acc | 1 << y);
                best = Some(FlatnessWitness {
                    value: m,
                    flip: f.clone(),
                    sets: vec![subset(&ids, mask), subset(&ids, second)],
                });
            }
        }
        if best.as_ref().is_some_and(|b| b.value == n / 2) {
            break;
        }
    }
    Ok(best.expect("two empty sets are always far apart"))
}
