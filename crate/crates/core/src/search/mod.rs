//! Brute-force oracles at toy scale.

mod flatness;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with_cap, isomorphism, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::vminor::{apply_witness, local_complement_set, VMinorWitness};

pub use flatness::{
    flip_break_max, flip_break_witness, flip_scatter_max, flip_scatter_witness, FlatnessWitness,
    FlipCaps,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentCaps {
    pub max_order: usize,
    pub max_depth: usize,
}

impl Default for ContainmentCaps {
    fn default() -> Self {
        ContainmentCaps {
            max_order: 10,
            max_depth: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub dedup_hits: usize,
}

/// On success, `map` sends each vertex of `h` to the vertex of
/// `apply_witness(g, witness)` playing its role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentResult {
    pub found: bool,
    pub witness: Option<VMinorWitness>,
    pub map: Option<BTreeMap<VertexId, VertexId>>,
    pub stats: SearchStats,
}

pub fn is_depth_r_vminor(g: &Graph, h: &Graph, r: usize) -> Result<ContainmentResult> {
    is_depth_r_vminor_with(g, h, r, ContainmentCaps::default())
}

/// Decides whether `h` is isomorphic to a depth-`r` vertex minor of `g`.
///
/// Level `c` holds the graphs `g ∗ I_1 ∗ … ∗ I_c` up to isomorphism, each
/// kept with the first labeled copy reached. Deletions only happen at the
/// end, as an induced-subgraph test against `h`.
pub fn is_depth_r_vminor_with(
    g: &Graph,
    h: &Graph,
    r: usize,
    caps: ContainmentCaps,
) -> Result<ContainmentResult> {
    if g.order() > caps.max_order {
        return Err(Error::Capacity {
            what: "host order for containment",
            got: g.order(),
            limit: caps.max_order,
        });
    }
    if r > caps.max_depth {
        return Err(Error::Capacity {
            what: "containment depth",
            got: r,
            limit: caps.max_depth,
        });
    }
    let mut stats = SearchStats::default();
    let none = |stats| ContainmentResult {
        found: false,
        witness: None,
        map: None,
        stats,
    };
    if h.order() > g.order() {
        return Ok(none(stats));
    }
    let cap = caps.max_order;
    let h_form = canonical_form_with_cap(h, cap)?;

    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    seen.insert(canonical_form_with_cap(g, cap)?);
    let mut frontier: Vec<(Graph, Vec<VertexSet>)> = vec![(g.clone(), Vec::new())];
    stats.nodes = 1;
    for level in 0..=r {
        for (cur, steps) in &frontier {
            if let Some(keep) = induced_copy(cur, h, &h_form, cap)? {
                let deletions = cur.vertex_set().difference(&keep).copied().collect();
                let witness = VMinorWitness {
                    steps: steps.clone(),
                    deletions,
                };
                let result = apply_witness(g, &witness)?;
                let map = isomorphism(h, &result, cap)?.ok_or_else(|| {
                    Error::InternalInvariant("containment witness does not replay".into())
                })?;
                if result.relabel(&map.iter().map(|(&a, &b)| (b, a)).collect())? != *h {
                    return Err(Error::InternalInvariant(
                        "containment map is not an isomorphism".into(),
                    ));
                }
                return Ok(ContainmentResult {
                    found: true,
                    witness: Some(witness),
                    map: Some(map),
                    stats,
                });
            }
        }
        if level == r {
            break;
        }
        let mut next = Vec::new();
        for (cur, steps) in &frontier {
            for set in independent_sets(cur)? {
                let succ = local_complement_set(cur, &set)?;
                if !seen.insert(canonical_form_with_cap(&succ, cap)?) {
                    stats.dedup_hits += 1;
                    continue;
                }
                stats.nodes += 1;
                let mut s = steps.clone();
                s.push(set);
                next.push((succ, s));
            }
        }
        frontier = next;
    }
    Ok(none(stats))
}

/// Nonempty independent sets, by increasing size and then lexicographically.
fn independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let ids = g.vertices();
    let mut out = Vec::new();
    for mask in 1u32..1 << ids.len() {
        let set: VertexSet = (0..ids.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| ids[i])
            .collect();
        if g.is_independent(&set)? {
            out.push(set);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(out)
}

/// The lexicographically least vertex set of `g` inducing a copy of `h`.
fn induced_copy(
    g: &Graph,
    h: &Graph,
    h_form: &CanonicalForm,
    cap: usize,
) -> Result<Option<VertexSet>> {
    struct Target<'a> {
        g: &'a Graph,
        k: usize,
        edges: usize,
        form: &'a CanonicalForm,
        cap: usize,
    }
    fn go(t: &Target<'_>, start: usize, chosen: &mut Vec<VertexId>) -> Result<Option<VertexSet>> {
        if chosen.len() == t.k {
            let set: VertexSet = chosen.iter().copied().collect();
            let sub = t.g.induced_subgraph(&set)?;
            let hit =
                sub.edge_count() == t.edges && canonical_form_with_cap(&sub, t.cap)? == *t.form;
            return Ok(hit.then_some(set));
        }
        let ids = t.g.vertices();
        for i in start..ids.len() {
            if ids.len() - i < t.k - chosen.len() {
                break;
            }
            chosen.push(ids[i]);
            let hit = go(t, i + 1, chosen)?;
            chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
    let target = Target {
        g,
        k: h.order(),
        edges: h.edge_count(),
        form: h_form,
        cap,
    };
    go(&target, 0, &mut Vec::with_capacity(target.k))
}
