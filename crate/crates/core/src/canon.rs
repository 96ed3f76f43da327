//! Exact canonical forms for small graphs.
//!
//! Vertices are first split into cells by color refinement (iterated degree
//! signatures, relabeled canonically). The certificate is then the
//! lexicographically largest strict-upper-triangle adjacency string over all
//! vertex orders that list the cells in color order. The search fixes one
//! position at a time, cuts branches whose prefix is already smaller than the
//! best string, and tries only one vertex out of each twin pair per position.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const DEFAULT_CANON_CAP: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A certificate together with the vertex order that realizes it.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    pub order: Vec<VertexId>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g, cap)?.form)
}

pub fn canonical_labeling(g: &Graph, cap: usize) -> Result<CanonicalLabeling> {
    let n = g.order();
    if n > cap {
        return Err(Error::Capacity {
            what: "graph order for canonicalization",
            got: n,
            limit: cap,
        });
    }
    let colors = refine(g);
    let mut cell_colors = colors.clone();
    cell_colors.sort_unstable();

    let mut search = Search {
        g,
        colors: &colors,
        cell_colors: &cell_colors,
        placed: vec![false; n],
        perm: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run(false);
    let (bits, perm) = search.best.unwrap_or_default();

    let mut bytes = (n as u32).to_le_bytes().to_vec();
    for chunk in bits.chunks(8) {
        bytes.push(
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << i)),
        );
    }
    Ok(CanonicalLabeling {
        form: CanonicalForm(bytes),
        order: perm.into_iter().map(|s| g.id_at(s)).collect(),
    })
}

/// An isomorphism `g -> h`, if one exists.
pub fn isomorphism(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<Option<BTreeMap<VertexId, VertexId>>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, ch) = (canonical_labeling(g, cap)?, canonical_labeling(h, cap)?);
    if cg.form != ch.form {
        return Ok(None);
    }
    Ok(Some(cg.order.into_iter().zip(ch.order).collect()))
}

fn refine(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let mut colors = vec![0u32; n];
    let mut classes = usize::from(n > 0);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|a| {
                let mut nb: Vec<u32> = g.row(a).ones().map(|b| colors[b]).collect();
                nb.sort_unstable();
                (colors[a], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u32)
            .collect();
        let grew = distinct.len() > classes;
        classes = distinct.len();
        colors = next;
        if !grew {
            return colors;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    cell_colors: &'a [u32],
    placed: Vec<bool>,
    perm: Vec<usize>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Search<'_> {
    /// `ahead` is true once the current prefix is strictly larger than the
    /// best string's prefix.
    fn run(&mut self, ahead: bool) {
        let p = self.perm.len();
        let n = self.placed.len();
        if p == n {
            if ahead || self.best.is_none() {
                self.best = Some((self.bits.clone(), self.perm.clone()));
            }
            return;
        }
        let want = self.cell_colors[p];
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.placed[v] || self.colors[v] != want {
                continue;
            }
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);

            let start = self.bits.len();
            for q in 0..p {
                self.bits.push(self.g.adj_slots(v, self.perm[q]));
            }
            let next_ahead = if ahead {
                true
            } else if let Some((best, _)) = &self.best {
                match self.bits[start..].cmp(&best[start..start + p]) {
                    std::cmp::Ordering::Less => {
                        self.bits.truncate(start);
                        continue;
                    }
                    std::cmp::Ordering::Equal => false,
                    std::cmp::Ordering::Greater => true,
                }
            } else {
                false
            };
            self.placed[v] = true;
            self.perm.push(v);
            self.run(next_ahead);
            self.perm.pop();
            self.placed[v] = false;
            self.bits.truncate(start);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let mut ru = self.g.row(u).clone();
        let mut rv = self.g.row(v).clone();
        ru.set(v, false);
        rv.set(u, false);
        ru == rv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_triangle_matches() {
        let a = Graph::complete(3);
        let b = Graph::new(
            [VertexId(5), VertexId(9), VertexId(2)],
            [
                (VertexId(5), VertexId(9)),
                (VertexId(9), VertexId(2)),
                (VertexId(2), VertexId(5)),
            ],
        )
        .unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn p4_and_claw_differ() {
        let p4 = Graph::path(4);
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&claw).unwrap());
    }

    #[test]
    fn c6_and_two_triangles_differ() {
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&tt).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::from_edges(11, &[]).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::Capacity { .. })));
        assert!(canonical_form_with_cap(&g, 11).is_ok());
    }

    #[test]
    fn isomorphism_map_is_an_isomorphism() {
        let g = Graph::path(5);
        let h = g
            .relabel(
                &(0..5)
                    .map(|i| (VertexId(i), VertexId(10 + (i * 3) % 5)))
                    .collect(),
            )
            .unwrap();
        let map = isomorphism(&g, &h, 10).unwrap().unwrap();
        assert_eq!(g.relabel(&map).unwrap(), h);
        assert!(isomorphism(&g, &Graph::cycle(5), 10).unwrap().is_none());
        let empty = Graph::edgeless([]).unwrap();
        assert!(isomorphism(&empty, &empty, 10).unwrap().is_some());
    }
}
