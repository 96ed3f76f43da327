use std::collections::BTreeMap;

use super::{depth1_vm_structure, lc_structure_set, BinaryStructure, RelationKind, Signature};
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};

/// Clone `(e, c)` of element `e` in copy `c ∈ 1..=k` has id `e·k + c − 1`.
#[derive(Clone, Copy, Debug)]
pub struct CloneIds {
    pub k: usize,
}

impl CloneIds {
    pub fn clone_of(&self, e: VertexId, copy: usize) -> VertexId {
        VertexId(e.0 * self.k as u32 + copy as u32 - 1)
    }

    /// `(element, copy)` of a clone id.
    pub fn element(&self, id: VertexId) -> (VertexId, usize) {
        let k = self.k as u32;
        (VertexId(id.0 / k), (id.0 % k) as usize + 1)
    }
}

/// Name of the mark of copy `c`.
pub fn copy_mark(c: usize) -> String {
    format!("P{c}")
}

/// The colored graph `f_X(M)`: `k` copies of the domain, one per relation,
/// with `P_c` marking copy `c`. Inside copy `c` the edge relation `E` is
/// `R_c`; clones of one element in distinct copies are joined by `E`.
/// Predicates of `M` hold on every clone. `E` is symmetric when every `R_c`
/// is, and arbitrary otherwise.
pub fn transduction_x(m: &BinaryStructure) -> Result<BinaryStructure> {
    let k = m.relations.len();
    if k == 0 {
        return Err(Error::Domain(
            "the encoding needs at least one relation".into(),
        ));
    }
    if m.domain
        .iter()
        .any(|e| (e.0 as u64 + 1) * k as u64 > u32::MAX as u64)
    {
        return Err(Error::Domain("element ids too large to clone".into()));
    }
    for c in 1..=k {
        if m.predicates.contains_key(&copy_mark(c)) {
            return Err(Error::Domain(format!(
                "predicate name {} is reserved",
                copy_mark(c)
            )));
        }
    }
    let ids = CloneIds { k };
    let mut out = BinaryStructure::new(
        m.domain
            .iter()
            .flat_map(|&e| (1..=k).map(move |c| ids.clone_of(e, c))),
    );
    let kind = if m
        .relations
        .iter()
        .all(|r| r.kind == RelationKind::Symmetric)
    {
        RelationKind::Symmetric
    } else {
        RelationKind::Arbitrary
    };
    let mut edges = Vec::new();
    for (c, rel) in m.relations.iter().enumerate() {
        for &(u, v) in &rel.pairs {
            edges.push((ids.clone_of(u, c + 1), ids.clone_of(v, c + 1)));
            if kind == RelationKind::Arbitrary && rel.kind == RelationKind::Symmetric {
                edges.push((ids.clone_of(v, c + 1), ids.clone_of(u, c + 1)));
            }
        }
    }
    for &e in &m.domain {
        for c in 1..=k {
            for d in 1..=k {
                if c != d && (kind == RelationKind::Arbitrary || c < d) {
                    edges.push((ids.clone_of(e, c), ids.clone_of(e, d)));
                }
            }
        }
    }
    out.add_relation("E", kind, edges)?;
    for c in 1..=k {
        out.add_predicate(&copy_mark(c), m.domain.iter().map(|&e| ids.clone_of(e, c)))?;
    }
    for (name, members) in &m.predicates {
        let clones = members
            .iter()
            .flat_map(|&e| (1..=k).map(move |c| ids.clone_of(e, c)));
        out.add_predicate(name, clones)?;
    }
    Ok(out)
}

/// Decodes a colored graph into a structure over `signature`: the domain is
/// the `P_1`-marked vertices (renamed to their element ids), `R_1 = E` there,
/// and `R_i(x,y)` holds iff some `P_i`-marked `x′, y′` have `E(x,x′)`,
/// `E(y,y′)` and `E(x′,y′)`.
pub fn interpretation_k(g: &BinaryStructure, signature: &Signature) -> Result<BinaryStructure> {
    let k = signature.relations.len();
    if k == 0 {
        return Err(Error::Domain("the signature has no relation".into()));
    }
    let e = g
        .relation_index("E")
        .ok_or_else(|| Error::UnknownSymbol("E".into()))?;
    let e = &g.relations[e];
    let marked = |c: usize| -> Result<&VertexSet> {
        g.predicate(&copy_mark(c))
            .ok_or_else(|| Error::UnknownSymbol(copy_mark(c)))
    };
    let ids = CloneIds { k };
    let base = marked(1)?;
    let name: BTreeMap<VertexId, VertexId> = base.iter().map(|&x| (x, ids.element(x).0)).collect();
    let mut out = BinaryStructure::new(name.values().copied());
    for (c, (rel_name, kind)) in signature.relations.iter().enumerate() {
        let mut pairs = Vec::new();
        let copy = marked(c + 1)?;
        for &x in base {
            for &y in base {
                let holds = if c == 0 {
                    e.holds(x, y)
                } else {
                    copy.iter().any(|&x2| {
                        e.holds(x, x2) && copy.iter().any(|&y2| e.holds(y, y2) && e.holds(x2, y2))
                    })
                };
                let keep = *kind == RelationKind::Arbitrary || x < y;
                if holds && keep {
                    pairs.push((name[&x], name[&y]));
                }
            }
        }
        out.add_relation(rel_name, *kind, pairs)?;
    }
    for p in &signature.predicates {
        let members = g
            .predicate(p)
            .ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
        out.add_predicate(
            p,
            members.iter().filter(|x| base.contains(x)).map(|x| name[x]),
        )?;
    }
    Ok(out)
}

/// Replays a depth-1 structure minor `M ∗^{R_1} I_1 ∗ … − D` inside the
/// encoding, complementing the copy-`c` clones of `I_c` in `f_X(M)` and
/// deleting every clone of `D`, and reports whether the result is
/// `f_X(M ∗^{R_1} I_1 ∗ … − D)`.
///
/// This holds for one relation. With two or more, complementing a clone
/// also toggles pairs between its copy neighbors and its other clones, and
/// the replay generally differs.
pub fn encoding_compatible(
    m: &BinaryStructure,
    sets: &BTreeMap<usize, VertexSet>,
    deletions: &VertexSet,
) -> Result<bool> {
    let k = m.relations.len();
    let ids = CloneIds { k };
    let target = transduction_x(&depth1_vm_structure(m, sets, deletions)?)?;
    let mut cur = transduction_x(m)?;
    let e = cur.relation_index("E").expect("encoding has E");
    for (&rel, i) in sets {
        let clones: VertexSet = i.iter().map(|&v| ids.clone_of(v, rel + 1)).collect();
        cur = match lc_structure_set(&cur, e, &clones) {
            Ok(next) => next,
            Err(Error::FaultyComplementation { .. }) => return Ok(false),
            Err(err) => return Err(err),
        };
    }
    let dead: VertexSet = deletions
        .iter()
        .flat_map(|&v| (1..=k).map(move |c| ids.clone_of(v, c)))
        .collect();
    Ok(cur.delete(&dead) == target)
}
