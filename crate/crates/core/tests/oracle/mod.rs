//! Brute-force reference implementations used by the acceptance target.
//! They work on a plain boolean matrix and share no code with the library
//! beyond reading graphs and flips through their public accessors.

pub mod logic;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use vmlab::flips::Flip;
use vmlab::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adj {
    pub ids: Vec<VertexId>,
    pub m: Vec<Vec<bool>>,
}

impl Adj {
    pub fn of(g: &Graph) -> Adj {
        let ids = g.vertices().to_vec();
        let m = ids
            .iter()
            .map(|&u| ids.iter().map(|&v| u != v && g.adjacent(u, v)).collect())
            .collect();
        Adj { ids, m }
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for a in 0..self.ids.len() {
            for b in a + 1..self.ids.len() {
                if self.m[a][b] {
                    edges.push((self.ids[a], self.ids[b]));
                }
            }
        }
        Graph::new(self.ids.iter().copied(), edges).expect("ids are distinct")
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn index(&self, v: VertexId) -> usize {
        self.ids.iter().position(|&u| u == v).expect("known vertex")
    }

    fn indices(&self, s: &VertexSet) -> Vec<usize> {
        s.iter().map(|&v| self.index(v)).collect()
    }

    pub fn independent(&self, s: &VertexSet) -> bool {
        let ix = self.indices(s);
        ix.iter().all(|&a| ix.iter().all(|&b| !self.m[a][b]))
    }

    fn set(&mut self, a: usize, b: usize, value: bool) {
        self.m[a][b] = value;
        self.m[b][a] = value;
    }

    pub fn delete(&self, d: &VertexSet) -> Adj {
        let keep: Vec<usize> = (0..self.n())
            .filter(|&a| !d.contains(&self.ids[a]))
            .collect();
        Adj {
            ids: keep.iter().map(|&a| self.ids[a]).collect(),
            m: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.m[a][b]).collect())
                .collect(),
        }
    }

    /// All-pairs BFS distances, `None` for disconnected pairs.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n())
            .map(|s| {
                let mut d = vec![None; self.n()];
                d[s] = Some(0);
                let mut q = VecDeque::from([s]);
                while let Some(x) = q.pop_front() {
                    for y in 0..self.n() {
                        if self.m[x][y] && d[y].is_none() {
                            d[y] = Some(d[x].unwrap() + 1);
                            q.push_back(y);
                        }
                    }
                }
                d
            })
            .collect()
    }
}

/// `E(u,v) + τ(ι u, ι v)` for `u ≠ v`.
pub fn flip(g: &Adj, f: &Flip) -> Adj {
    let mut out = g.clone();
    for a in 0..g.n() {
        for b in 0..g.n() {
            if a != b {
                let (ca, cb) = (f.class_of(g.ids[a]).unwrap(), f.class_of(g.ids[b]).unwrap());
                out.m[a][b] = g.m[a][b] ^ f.tau(ca, cb);
            }
        }
    }
    out
}

/// `G ∗ v`: complement the neighbourhood of `v`.
pub fn lc(g: &Adj, v: VertexId) -> Adj {
    let z = g.index(v);
    let mut out = g.clone();
    for a in 0..g.n() {
        for b in 0..g.n() {
            if a != b && g.m[a][z] && g.m[z][b] {
                out.m[a][b] = !g.m[a][b];
            }
        }
    }
    out
}

/// `E(u,v) + Σ_{z∈I} E(u,z)E(z,v)`; `None` when `I` is not independent.
pub fn lc_set(g: &Adj, i: &VertexSet) -> Option<Adj> {
    if !g.independent(i) {
        return None;
    }
    let zs = g.indices(i);
    let mut out = g.clone();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let parity = zs.iter().filter(|&&z| g.m[a][z] && g.m[z][b]).count() % 2 == 1;
            out.set(a, b, g.m[a][b] ^ parity);
        }
    }
    Some(out)
}

/// Replays `G ∗ I_1 ∗ … ∗ I_p`, counting sets that were not independent
/// when reached; those are applied vertex by vertex so replay can continue.
pub fn replay(g: &Adj, parts: &[VertexSet]) -> (Adj, usize) {
    let mut cur = g.clone();
    let mut faulty = 0;
    for p in parts {
        cur = match lc_set(&cur, p) {
            Some(next) => next,
            None => {
                faulty += 1;
                p.iter().fold(cur, |h, &v| lc(&h, v))
            }
        };
    }
    (cur, faulty)
}

/// Classes of `f` met by `x`, as a partition of `x`.
pub fn traces(f: &Flip, x: &VertexSet) -> BTreeSet<VertexSet> {
    let mut by_class: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for &v in x {
        by_class
            .entry(f.class_of(v).unwrap())
            .or_default()
            .insert(v);
    }
    by_class.into_values().collect()
}

pub fn compatible(f1: &Flip, f2: &Flip, x: &VertexSet) -> bool {
    traces(f1, x) == traces(f2, x)
}

/// Adjacency inside `x` is a function of the pair of classes.
pub fn homogeneous(g: &Adj, f: &Flip, x: &VertexSet) -> bool {
    let mut seen: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for &u in x {
        for &v in x {
            if u < v {
                let (cu, cv) = (f.class_of(u).unwrap(), f.class_of(v).unwrap());
                let key = (cu.min(cv), cu.max(cv));
                let e = g.m[g.index(u)][g.index(v)];
                if *seen.entry(key).or_insert(e) != e {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether some flip with at most two classes turns `a` into `b`.
pub fn two_class_flip_exists(a: &Adj, b: &Adj) -> bool {
    let n = a.n();
    let d: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| a.m[x][y] ^ b.m[x][y]).collect())
        .collect();
    (0u32..1 << n.saturating_sub(1)).any(|mask| {
        let side = |x: usize| x > 0 && mask >> (x - 1) & 1 == 1;
        let mut tau: BTreeMap<(bool, bool), bool> = BTreeMap::new();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                let key = (side(x).min(side(y)), side(x).max(side(y)));
                *tau.entry(key).or_insert(d[x][y]) == d[x][y]
            })
        })
    })
}

/// Ordered-matching graph on `a_i = i−1`, `b_j = n+j−1` and `(k,ℓ) = 2n+k−1`,
/// straight from its definition.
pub fn ordered_matching(n: usize, pairs: &[(usize, usize)]) -> Adj {
    let total = 3 * n;
    let mut g = Adj {
        ids: (0..total as u32).map(VertexId).collect(),
        m: vec![vec![false; total]; total],
    };
    for &(k, l) in pairs {
        let p = 2 * n + k - 1;
        for i in 1..=k {
            g.set(i - 1, p, true);
        }
        for j in 1..=l {
            g.set(n + j - 1, p, true);
        }
    }
    g
}
