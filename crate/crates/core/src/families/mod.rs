//! Generators for the graph families: half-graphs, permutation graphs,
//! comparability grids, r-crossings, ordered-matching graphs, subdivisions
//! and split interval graphs.
//!
//! Every generator has a `_labeled` variant that also names each vertex by
//! its role (`a3`, `b1`, `p1,2,1`, ...).

mod interval;

pub use interval::*;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flips::{apply_flip, Flip};
use crate::graph::{Graph, VertexId};
use crate::vminor::SubdivisionMap;

/// A graph together with a role name for each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeled {
    pub graph: Graph,
    pub labels: BTreeMap<VertexId, String>,
}

impl Labeled {
    /// The vertex carrying `label`, if any.
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .find(|(_, l)| *l == label)
            .map(|(&v, _)| v)
    }

    /// Sidecar text: one `id label` line per vertex.
    pub fn labels_to_text(&self) -> String {
        self.labels
            .iter()
            .map(|(v, l)| format!("{v} {l}\n"))
            .collect()
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("{what} must be positive")));
    }
    Ok(())
}

fn build(labels: BTreeMap<VertexId, String>, edges: Vec<(VertexId, VertexId)>) -> Result<Labeled> {
    let graph = Graph::new(labels.keys().copied(), edges)?;
    Ok(Labeled { graph, labels })
}

/// `a_i = i−1`, `b_j = n+j−1`; `a_i b_j` is an edge iff `i ≤ j`.
pub fn half_graph_labeled(n: usize) -> Result<Labeled> {
    require_positive(n, "half-graph order")?;
    let a = |i: usize| VertexId((i - 1) as u32);
    let b = |j: usize| VertexId((n + j - 1) as u32);
    let mut labels = BTreeMap::new();
    let mut edges = Vec::new();
    for i in 1..=n {
        labels.insert(a(i), format!("a{i}"));
        labels.insert(b(i), format!("b{i}"));
        for j in i..=n {
            edges.push((a(i), b(j)));
        }
    }
    build(labels, edges)
}

pub fn half_graph(n: usize) -> Result<Graph> {
    Ok(half_graph_labeled(n)?.graph)
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let seen: BTreeSet<usize> = sigma.iter().copied().collect();
    if seen.len() != n || seen.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::Domain(format!(
            "{sigma:?} is not a permutation of 1..={n}"
        )));
    }
    Ok(())
}

/// Vertices `1..=n`; `ij` is an edge iff it is an inversion of `sigma`
/// (one-line notation, 1-based values).
pub fn permutation_graph(sigma: &[usize]) -> Result<Graph> {
    check_permutation(sigma)?;
    let n = sigma.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if sigma[i] > sigma[j] {
                edges.push((VertexId(i as u32 + 1), VertexId(j as u32 + 1)));
            }
        }
    }
    Graph::new((1..=n as u32).map(VertexId), edges)
}

/// `a_{i,j}` has id `(i−1)·n + (j−1)`.
pub fn comparability_grid_labeled(n: usize) -> Result<Labeled> {
    require_positive(n, "grid order")?;
    let id = |i: usize, j: usize| VertexId(((i - 1) * n + (j - 1)) as u32);
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let labels = cells
        .iter()
        .map(|&(i, j)| (id(i, j), format!("a{i},{j}")))
        .collect();
    let mut edges = Vec::new();
    for (x, &(i, j)) in cells.iter().enumerate() {
        for &(i2, j2) in &cells[x + 1..] {
            if i == i2 || j == j2 || (i < j) == (i2 < j2) {
                edges.push((id(i, j), id(i2, j2)));
            }
        }
    }
    build(labels, edges)
}

pub fn comparability_grid(n: usize) -> Result<Graph> {
    Ok(comparability_grid_labeled(n)?.graph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    Star,
    Clique,
    Half,
}

impl FromStr for CrossingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(CrossingKind::Star),
            "clique" => Ok(CrossingKind::Clique),
            "half" => Ok(CrossingKind::Half),
            _ => Err(Error::Domain(format!("unknown crossing kind {s:?}"))),
        }
    }
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingKind::Star => "star",
            CrossingKind::Clique => "clique",
            CrossingKind::Half => "half",
        })
    }
}

/// Vertex ids of an r-crossing of order n: `a_i = i−1`, `b_j = n+j−1` and
/// `p_{i,j,k} = 2n + ((i−1)n + (j−1))·r + (k−1)` for `1 ≤ k ≤ r`.
#[derive(Clone, Copy, Debug)]
pub struct CrossingIds {
    pub r: usize,
    pub n: usize,
}

impl CrossingIds {
    pub fn a(&self, i: usize) -> VertexId {
        VertexId((i - 1) as u32)
    }

    pub fn b(&self, j: usize) -> VertexId {
        VertexId((self.n + j - 1) as u32)
    }

    /// `p_{i,j,k}` for `0 ≤ k ≤ r+1`, with the endpoints shared.
    pub fn p(&self, i: usize, j: usize, k: usize) -> VertexId {
        let (r, n) = (self.r, self.n);
        match k {
            0 => self.a(i),
            k if k == r + 1 => self.b(j),
            k => VertexId((2 * n + ((i - 1) * n + (j - 1)) * r + (k - 1)) as u32),
        }
    }

    /// The flip part (layer) of a vertex, as a class index `k+1`.
    pub fn layer_flip(&self, tau: &[Vec<u8>]) -> Result<Flip> {
        let (r, n) = (self.r, self.n);
        let mut iota = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 0..=r + 1 {
                    iota.insert(self.p(i, j, k), k + 1);
                }
            }
        }
        Flip::from_matrix(iota, tau)
    }
}

/// Star, clique or half-graph r-crossing of order `n`, optionally flipped by
/// the `(r+2)×(r+2)` matrix `flip_tau` over the layers.
pub fn crossing_labeled(
    kind: CrossingKind,
    r: usize,
    n: usize,
    flip_tau: Option<&[Vec<u8>]>,
) -> Result<Labeled> {
    require_positive(r, "crossing depth r")?;
    require_positive(n, "crossing order")?;
    let ids = CrossingIds { r, n };
    let mut labels = BTreeMap::new();
    let mut edges = BTreeSet::new();
    let mut add = |u: VertexId, v: VertexId| {
        edges.insert((u.min(v), u.max(v)));
    };
    for i in 1..=n {
        labels.insert(ids.a(i), format!("a{i}"));
        labels.insert(ids.b(i), format!("b{i}"));
        for j in 1..=n {
            for k in 1..=r {
                labels.insert(ids.p(i, j, k), format!("p{i},{j},{k}"));
            }
            for k in 0..=r {
                add(ids.p(i, j, k), ids.p(i, j, k + 1));
            }
        }
    }
    match kind {
        CrossingKind::Star => {}
        CrossingKind::Clique => {
            for x in 1..=n {
                for y in 1..=n {
                    for z in y + 1..=n {
                        add(ids.p(x, y, 1), ids.p(x, z, 1));
                        add(ids.p(y, x, r), ids.p(z, x, r));
                    }
                }
            }
        }
        CrossingKind::Half => {
            for i in 1..=n {
                for i2 in i..=n {
                    for j in 1..=n {
                        add(ids.a(i), ids.p(i2, j, 1));
                        add(ids.b(i), ids.p(j, i2, r));
                    }
                }
            }
        }
    }
    let mut out = build(labels, edges.into_iter().collect())?;
    if let Some(tau) = flip_tau {
        if tau.len() != r + 2 {
            return Err(Error::Domain(format!("flip matrix must be {0}×{0}", r + 2)));
        }
        out.graph = apply_flip(&out.graph, &ids.layer_flip(tau)?)?;
    }
    Ok(out)
}

pub fn crossing(
    kind: CrossingKind,
    r: usize,
    n: usize,
    flip_tau: Option<&[Vec<u8>]>,
) -> Result<Graph> {
    Ok(crossing_labeled(kind, r, n, flip_tau)?.graph)
}

/// A perfect matching on `[n]×[n]`; the first coordinate is the a-side index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pairs: BTreeSet<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        let n = pairs.len();
        let left: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let right: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        let full: BTreeSet<usize> = (1..=n).collect();
        if left != full || right != full {
            return Err(Error::Domain(format!(
                "{pairs:?} is not a perfect matching on [{n}]×[{n}]"
            )));
        }
        Ok(Matching { pairs })
    }

    /// The matching `{(i, σ(i))}`.
    pub fn from_permutation(sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma)?;
        Matching::new(sigma.iter().enumerate().map(|(i, &s)| (i + 1, s)))
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }
}

/// Ids of an ordered-matching graph of order `n`: `a_i = i−1`, `b_j = n+j−1`
/// and the pair `(k,ℓ)` at `2n + k − 1`.
#[derive(Clone, Copy, Debug)]
pub struct MatchingIds {
    pub n: usize,
}

impl MatchingIds {
    pub fn a(&self, i: usize) -> VertexId {
        VertexId((i - 1) as u32)
    }

    pub fn b(&self, j: usize) -> VertexId {
        VertexId((self.n + j - 1) as u32)
    }

    pub fn pair(&self, k: usize) -> VertexId {
        VertexId((2 * self.n + k - 1) as u32)
    }
}

/// `(k,ℓ) ~ a_i` iff `i ≤ k`, `(k,ℓ) ~ b_j` iff `j ≤ ℓ`.
pub fn ordered_matching_graph_labeled(m: &Matching) -> Result<Labeled> {
    let n = m.n();
    require_positive(n, "matching size")?;
    let ids = MatchingIds { n };
    let mut labels = BTreeMap::new();
    let mut edges = Vec::new();
    for i in 1..=n {
        labels.insert(ids.a(i), format!("a{i}"));
        labels.insert(ids.b(i), format!("b{i}"));
    }
    for &(k, l) in m.pairs() {
        let x = ids.pair(k);
        labels.insert(x, format!("m{k},{l}"));
        edges.extend((1..=k).map(|i| (ids.a(i), x)));
        edges.extend((1..=l).map(|j| (ids.b(j), x)));
    }
    build(labels, edges)
}

pub fn ordered_matching_graph(m: &Matching) -> Result<Graph> {
    Ok(ordered_matching_graph_labeled(m)?.graph)
}

/// Replaces each edge `uv` (`u < v`, in edge order) by a path with `r`
/// internal vertices, numbered consecutively from one past the largest id.
pub fn subdivision(h: &Graph, r: usize) -> Result<(Graph, SubdivisionMap)> {
    let mut next = h.vertices().last().map_or(0, |v| v.0 + 1);
    let mut vertices: Vec<VertexId> = h.vertices().to_vec();
    let mut edges = Vec::new();
    let mut paths = BTreeMap::new();
    for (u, v) in h.edges() {
        let path: Vec<VertexId> = (0..r)
            .map(|_| {
                next += 1;
                VertexId(next - 1)
            })
            .collect();
        let mut walk = vec![u];
        walk.extend(&path);
        walk.push(v);
        edges.extend(walk.windows(2).map(|w| (w[0], w[1])));
        vertices.extend(&path);
        paths.insert((u, v), path);
    }
    Ok((Graph::new(vertices, edges)?, SubdivisionMap { paths }))
}

#[cfg(test)]
mod tests;
