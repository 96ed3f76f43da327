//! Local complementation and shallow vertex minors.
//!
//! A depth-`c` witness is kept in normal form `G ∗ I_1 ∗ … ∗ I_c − D`: every
//! deletion is postponed to the end, and each `I_j` must be independent in
//! the deletion-free graph `G ∗ I_1 ∗ … ∗ I_{j−1}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flips::{apply_flip, Flip};
use crate::graph::{Graph, VertexId, VertexSet};

/// `G ∗ v`: complements adjacency between distinct neighbors of `v`.
pub fn local_complement(g: &Graph, v: VertexId) -> Result<Graph> {
    let s = g.slot(v)?;
    let nb: Vec<usize> = g.row(s).ones().collect();
    let mut out = g.clone();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            out.toggle_slots(a, b);
        }
    }
    Ok(out)
}

/// `G ∧ uv = G ∗ u ∗ v ∗ u` for an edge `uv`.
pub fn pivot(g: &Graph, u: VertexId, v: VertexId) -> Result<Graph> {
    if !g.try_adjacent(u, v)? {
        return Err(Error::Precondition(format!(
            "pivot needs an edge, {u}{v} is not one"
        )));
    }
    let h = local_complement(g, u)?;
    let h = local_complement(&h, v)?;
    local_complement(&h, u)
}

/// `G ∗ I` for an independent set `I`. A non-independent `I` is rejected
/// with [`Error::FaultyComplementation`].
pub fn local_complement_set(g: &Graph, i: &VertexSet) -> Result<Graph> {
    complement_set_at(g, i, None)
}

fn complement_set_at(g: &Graph, i: &VertexSet, step: Option<usize>) -> Result<Graph> {
    if let Some((u, v)) = g.first_edge_inside(i)? {
        return Err(Error::FaultyComplementation {
            step,
            relation: None,
            u,
            v,
        });
    }
    // Members of an independent set are never neighbors of each other, so
    // their neighborhoods do not change along the way.
    let mut out = g.clone();
    for &v in i {
        out = local_complement(&out, v)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VMinorWitness {
    pub steps: Vec<VertexSet>,
    pub deletions: VertexSet,
}

impl VMinorWitness {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// One `step` line per independent set, then one `delete` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str("step");
            for v in s {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out.push_str("delete");
        for v in &self.deletions {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut w = VMinorWitness::default();
        let mut seen_delete = false;
        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or_default();
            let ids: VertexSet = toks
                .map(|t| {
                    t.parse::<u32>()
                        .map(VertexId)
                        .map_err(|_| Error::parse(ln, 1, format!("bad vertex id `{t}`")))
                })
                .collect::<Result<_>>()?;
            match head {
                "step" if !seen_delete => w.steps.push(ids),
                "delete" if !seen_delete => {
                    w.deletions = ids;
                    seen_delete = true;
                }
                _ => return Err(Error::parse(ln, 1, format!("unexpected line `{line}`"))),
            }
        }
        Ok(w)
    }
}

/// `G ∗ I_1 ∗ … ∗ I_c − D`.
pub fn apply_witness(g: &Graph, w: &VMinorWitness) -> Result<Graph> {
    let mut h = g.clone();
    for (idx, step) in w.steps.iter().enumerate() {
        h = complement_set_at(&h, step, Some(idx))?;
    }
    h.delete(&w.deletions)
}

/// How a graph `G` subdivides a graph `H`: for each edge `uv` of `H`
/// (stored with `u < v`), the internal path vertices listed from `u` to `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub paths: BTreeMap<(VertexId, VertexId), Vec<VertexId>>,
}

impl SubdivisionMap {
    pub fn max_subdivisions(&self) -> usize {
        self.paths.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn internal_vertices(&self) -> VertexSet {
        self.paths.values().flatten().copied().collect()
    }
}

/// `⌈log₂(r+1)⌉`.
pub fn unsubdivision_depth(r: usize) -> usize {
    let mut depth = 0;
    while (1usize << depth) < r + 1 {
        depth += 1;
    }
    depth
}

/// A witness recovering `H` from its subdivision `G`.
///
/// Each round takes, on every path that still has internal vertices, the
/// ones at odd positions (1st, 3rd, …; `⌈k/2⌉` of `k`), complements them and
/// schedules them for deletion, which halves (rounding down) every path's
/// internal count. The depth is therefore `⌈log₂(r+1)⌉` for `r` the largest
/// subdivision count.
pub fn unsubdivide(g: &Graph, map: &SubdivisionMap) -> Result<VMinorWitness> {
    let internal = map.internal_vertices();
    let total: usize = map.paths.values().map(Vec::len).sum();
    if internal.len() != total {
        return Err(Error::Validation(
            "a vertex lies on two subdivision paths".into(),
        ));
    }
    let mut expected_edges = BTreeSet::new();
    for (&(u, v), path) in &map.paths {
        if u >= v {
            return Err(Error::Validation(format!(
                "edge key ({u},{v}) must be ordered"
            )));
        }
        for x in [u, v] {
            if !g.contains(x) || internal.contains(&x) {
                return Err(Error::Validation(format!(
                    "{x} is not a branch vertex of G"
                )));
            }
        }
        let mut walk = vec![u];
        walk.extend(path);
        walk.push(v);
        for w in walk.windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            expected_edges.insert((a, b));
        }
    }
    for &x in &internal {
        g.slot(x)
            .map_err(|_| Error::Validation(format!("path vertex {x} is not in G")))?;
    }
    let actual: BTreeSet<_> = g.edges().into_iter().collect();
    if actual != expected_edges {
        return Err(Error::Validation(
            "edges of G are not exactly the subdivision paths".into(),
        ));
    }

    let mut paths: Vec<Vec<VertexId>> = map.paths.values().cloned().collect();
    let mut w = VMinorWitness::default();
    while paths.iter().any(|p| !p.is_empty()) {
        let mut step = VertexSet::new();
        for p in &mut paths {
            step.extend(p.iter().step_by(2).copied());
            *p = p.iter().skip(1).step_by(2).copied().collect();
        }
        w.deletions.extend(step.iter().copied());
        w.steps.push(step);
    }

    let branch: VertexSet = g
        .vertices()
        .iter()
        .copied()
        .filter(|v| !internal.contains(v))
        .collect();
    let h = Graph::new(branch, map.paths.keys().copied())?;
    if apply_witness(g, &w)? != h {
        return Err(Error::InternalInvariant(
            "unsubdivision witness does not yield H".into(),
        ));
    }
    if w.depth() != unsubdivision_depth(map.max_subdivisions()) {
        return Err(Error::InternalInvariant(format!(
            "unsubdivision depth {} differs from ⌈log₂(r+1)⌉ = {}",
            w.depth(),
            unsubdivision_depth(map.max_subdivisions())
        )));
    }
    Ok(w)
}

/// Local complementations `z_1, …, z_p` from `I` that undo the flip `F`
/// away from `N_G[I]`: `(G ⊕ F) ∗ z_1 ∗ … ∗ z_p − N_G[I] = G − N_G[I]`.
///
/// `I` must be independent in `G` and hold exactly one vertex of each of
/// the `k` classes. Classes are eliminated one or two at a time: a class
/// `a` with `τ(a,a) = 1` costs one complementation, otherwise the smallest
/// active `a` and smallest `b` with `τ(a,b) = 1` cost a pivot `z z′ z`.
/// So `p ≤ ⌊3k/2⌋` and no vertex is used more than twice.
pub fn reduce_flip_by_pivots(g: &Graph, f: &Flip, i: &VertexSet) -> Result<Vec<VertexId>> {
    if let Some((u, v)) = g.first_edge_inside(i)? {
        return Err(Error::Precondition(format!(
            "I is not independent: {u}{v} is an edge"
        )));
    }
    let k = f.k();
    let mut rep: BTreeMap<usize, VertexId> = BTreeMap::new();
    for &z in i {
        let c = f.class_checked(z)?;
        if rep.insert(c, z).is_some() {
            return Err(Error::Precondition(format!(
                "class {c} holds two elements of I"
            )));
        }
    }
    if rep.len() != k {
        return Err(Error::Precondition(format!(
            "I meets {} of the {k} classes; it must meet every class once",
            rep.len()
        )));
    }

    let mut tau: Vec<Vec<bool>> = (1..=k)
        .map(|a| (1..=k).map(|b| f.tau(a, b)).collect())
        .collect();
    let mut seq = Vec::new();
    loop {
        let active: Vec<usize> = (0..k).filter(|&a| tau[a].iter().any(|&t| t)).collect();
        let Some(&first) = active.first() else { break };
        if let Some(&a) = active.iter().find(|&&a| tau[a][a]) {
            seq.push(rep[&(a + 1)]);
            let col: Vec<bool> = (0..k).map(|x| tau[x][a]).collect();
            for x in 0..k {
                for y in 0..k {
                    tau[x][y] ^= col[x] & col[y];
                }
            }
        } else {
            let a = first;
            let b = (0..k).find(|&b| tau[a][b]).expect("a is active");
            let (z, z2) = (rep[&(a + 1)], rep[&(b + 1)]);
            seq.extend([z, z2, z]);
            let ca: Vec<bool> = (0..k).map(|x| tau[x][a]).collect();
            let cb: Vec<bool> = (0..k).map(|x| tau[x][b]).collect();
            for x in 0..k {
                for y in 0..k {
                    tau[x][y] ^= (ca[x] & cb[y]) ^ (cb[x] & ca[y]);
                }
            }
        }
    }

    let bound = 3 * k / 2;
    if seq.len() > bound {
        return Err(Error::InternalInvariant(format!(
            "{} complementations exceed ⌊3k/2⌋ = {bound}",
            seq.len()
        )));
    }
    let mut uses: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &z in &seq {
        *uses.entry(z).or_default() += 1;
    }
    if let Some((z, n)) = uses.iter().find(|(_, &n)| n > 2) {
        return Err(Error::InternalInvariant(format!("{z} used {n} times")));
    }
    let mut h = apply_flip(g, f)?;
    for &z in &seq {
        h = local_complement(&h, z)?;
    }
    let closed = g.closed_neighborhood(i)?;
    if h.delete(&closed)? != g.delete(&closed)? {
        return Err(Error::InternalInvariant(
            "flip not undone outside the closed neighborhood of I".into(),
        ));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn triangle_loses_opposite_edge() {
        let h = local_complement(&Graph::complete(3), v(0)).unwrap();
        assert_eq!(h, Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());
    }

    #[test]
    fn path_center_makes_triangle() {
        let h = local_complement(&Graph::path(3), v(1)).unwrap();
        assert_eq!(h, Graph::complete(3));
    }

    #[test]
    fn star_center_makes_k4() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(local_complement(&star, v(0)).unwrap(), Graph::complete(4));
    }

    #[test]
    fn pivot_on_k2_and_non_edge() {
        let k2 = Graph::complete(2);
        assert_eq!(pivot(&k2, v(0), v(1)).unwrap(), k2);
        let p = Graph::path(3);
        assert!(matches!(pivot(&p, v(0), v(2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn pivot_on_p3_matches_closed_formula() {
        // E'(x,y) = E(x,y) + E(x,u)E(y,v) + E(x,v)E(y,u), x,y ∉ {u,v}
        let g = Graph::path(3);
        let h = pivot(&g, v(0), v(1)).unwrap();
        // only one external vertex, so just the exchange of u and v shows up
        assert_eq!(h, Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());
    }

    #[test]
    fn complement_set_rejects_edges() {
        let g = Graph::path(3);
        assert!(matches!(
            local_complement_set(&g, &vset([0, 1])),
            Err(Error::FaultyComplementation { step: None, .. })
        ));
        assert_eq!(local_complement_set(&g, &VertexSet::new()).unwrap(), g);
    }

    #[test]
    fn c4_diagonal_complementation_is_identity() {
        let c4 = Graph::cycle(4);
        assert_eq!(local_complement_set(&c4, &vset([0, 2])).unwrap(), c4);
    }

    #[test]
    fn witness_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(apply_witness(&k3, &VMinorWitness::default()).unwrap(), k3);
        let w = VMinorWitness {
            steps: vec![vset([0])],
            deletions: VertexSet::new(),
        };
        assert_eq!(
            apply_witness(&k3, &w).unwrap(),
            local_complement(&k3, v(0)).unwrap()
        );

        let c6 = Graph::cycle(6);
        let alt = vset([1, 3, 5]);
        let w = VMinorWitness {
            steps: vec![alt.clone()],
            deletions: alt,
        };
        let c3 = apply_witness(&c6, &w).unwrap();
        assert_eq!(
            c3,
            Graph::from_edges(6, &[(0, 2), (2, 4), (0, 4)])
                .unwrap()
                .delete(&vset([1, 3, 5]))
                .unwrap()
        );
    }

    #[test]
    fn faulty_step_is_reported_with_index() {
        let w = VMinorWitness {
            steps: vec![vset([0]), vset([1, 2])],
            deletions: VertexSet::new(),
        };
        // after ∗0 on P3 0-1-2 nothing changes (0 has a single neighbor)
        let err = apply_witness(&Graph::path(3), &w).unwrap_err();
        assert!(matches!(
            err,
            Error::FaultyComplementation { step: Some(1), .. }
        ));
    }

    #[test]
    fn witness_text_round_trip() {
        let w = VMinorWitness {
            steps: vec![vset([1, 3]), VertexSet::new(), vset([2])],
            deletions: vset([1, 2, 3]),
        };
        assert_eq!(VMinorWitness::from_text(&w.to_text()).unwrap(), w);
        assert!(VMinorWitness::from_text("step x\n").is_err());
    }

    fn c6_as_subdivided_triangle() -> SubdivisionMap {
        SubdivisionMap {
            paths: [
                ((v(0), v(2)), vec![v(1)]),
                ((v(2), v(4)), vec![v(3)]),
                ((v(0), v(4)), vec![v(5)]),
            ]
            .into_iter()
            .collect(),
        }
    }

    #[test]
    fn unsubdivide_c6() {
        let w = unsubdivide(&Graph::cycle(6), &c6_as_subdivided_triangle()).unwrap();
        assert_eq!(w.depth(), 1);
        assert_eq!(w.steps[0], vset([1, 3, 5]));
    }

    #[test]
    fn unsubdivide_without_subdivisions_is_empty() {
        let k3 = Graph::complete(3);
        let map = SubdivisionMap {
            paths: k3.edges().into_iter().map(|e| (e, vec![])).collect(),
        };
        assert_eq!(unsubdivide(&k3, &map).unwrap(), VMinorWitness::default());
    }

    #[test]
    fn unsubdivide_rejects_inconsistent_map() {
        let mut map = c6_as_subdivided_triangle();
        map.paths.insert((v(0), v(2)), vec![v(3)]);
        assert!(matches!(
            unsubdivide(&Graph::cycle(6), &map),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn depth_formula() {
        let got: Vec<usize> = (0..=8).map(unsubdivision_depth).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn pivot_elimination_examples() {
        let g = Graph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        let one = Flip::single_class(g.vertices(), false);
        assert!(reduce_flip_by_pivots(&g, &one, &vset([0]))
            .unwrap()
            .is_empty());

        let full = Flip::single_class(g.vertices(), true);
        assert_eq!(
            reduce_flip_by_pivots(&g, &full, &vset([0])).unwrap(),
            vec![v(0)]
        );

        let iota = [(0, 1), (1, 2), (2, 1), (3, 2), (4, 1)]
            .into_iter()
            .map(|(a, c)| (v(a), c))
            .collect();
        let f = Flip::new(2, iota, [(1, 2)]).unwrap();
        assert_eq!(
            reduce_flip_by_pivots(&g, &f, &vset([0, 3])).unwrap(),
            vec![v(0), v(3), v(0)]
        );
        assert!(matches!(
            reduce_flip_by_pivots(&g, &f, &vset([0, 2])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            reduce_flip_by_pivots(&g, &f, &vset([1, 2])),
            Err(Error::Precondition(_))
        ));
    }
}
