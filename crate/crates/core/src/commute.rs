//! Rewriting a flip followed by local complementations as local
//! complementations followed by a flip, and vice versa.
//!
//! Every construction here checks its own equality claim on the instance it
//! was called with and reports [`Error::InternalInvariant`] if it fails.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flips::{
    apply_flip, clean_flip, flip_classes_of, is_compatible_on, is_homogeneous, Flip,
};
use crate::graph::{Distance, Graph, VertexId, VertexSet};
use crate::vminor::{apply_witness, local_complement_set, VMinorWitness};

/// Largest class count accepted by [`commute0`]; its label space has
/// `k·2^k` entries.
pub const COMMUTE0_MAX_CLASSES: usize = 32;

/// Label of the composite class `(class, ς-vector)` in a `k·2^k`-flip.
/// Bit `j−1` of `sigma` holds `ς(·, j)`.
pub fn commute0_label(class: usize, sigma: u64, k: usize) -> usize {
    (class - 1) * (1usize << k) + sigma as usize + 1
}

fn require_independent(g: &Graph, i: &VertexSet, what: &str) -> Result<()> {
    match g.first_edge_inside(i)? {
        Some((u, v)) => Err(Error::Precondition(format!(
            "I must be independent in {what}, but {u}{v} is an edge"
        ))),
        None => Ok(()),
    }
}

/// A `k·2^k`-flip `F′` with `(G ∗ I) ⊕ F′ = (G ⊕ F) ∗ I`, for `I` independent
/// in both `G` and `G ⊕ F`.
///
/// With `ζ(i,j) = Σ_{z∈I} τ(i,ι z)·τ(j,ι z)` and
/// `ς(u,i) = Σ_{z∈I} E(u,z)·τ(i,ι z)`, vertex `v` goes to class
/// `(ι v, ς(v,·))` and `τ′((i,α),(j,β)) = τ(i,j) + ζ(i,j) + α(j) + β(i)`.
/// `ς` is only materialized on occupied classes and `τ′` only on occupied
/// labels; both are zero elsewhere.
pub fn commute0(g: &Graph, f: &Flip, i: &VertexSet) -> Result<Flip> {
    let k = f.k();
    if k > COMMUTE0_MAX_CLASSES {
        return Err(Error::Capacity {
            what: "flip classes for commute0",
            got: k,
            limit: COMMUTE0_MAX_CLASSES,
        });
    }
    require_independent(g, i, "G")?;
    let flipped = apply_flip(g, f)?;
    require_independent(&flipped, i, "G ⊕ F")?;

    let class: BTreeMap<VertexId, usize> = g
        .vertices()
        .iter()
        .map(|&v| Ok((v, f.class_checked(v)?)))
        .collect::<Result<_>>()?;
    let occupied: Vec<usize> = {
        let mut c: Vec<usize> = class.values().copied().collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let i_classes: Vec<(VertexId, usize)> = i.iter().map(|&z| (z, class[&z])).collect();

    let zeta = |a: usize, b: usize| -> bool {
        i_classes
            .iter()
            .fold(false, |acc, &(_, cz)| acc ^ (f.tau(a, cz) & f.tau(b, cz)))
    };
    let sigma = |u: VertexId| -> u64 {
        let mut bits = 0u64;
        for &j in &occupied {
            let s = i_classes.iter().fold(false, |acc, &(z, cz)| {
                acc ^ (g.adjacent(u, z) & f.tau(j, cz))
            });
            if s {
                bits |= 1 << (j - 1);
            }
        }
        bits
    };

    // A vertex z of I with τ(ι z, ι z) = 1 would pick up a spurious term
    // τ(ι z, ι z)·E_{G⊕F}(z, v) from the diagonal of the sum over I, so it
    // gets a private class with row τ(ι z, ·). Such a z is the only member
    // of I in its class.
    let self_flipped = |v: VertexId| i.contains(&v) && f.tau(class[&v], class[&v]);
    let base = k << k;
    let mut labels: BTreeMap<usize, (usize, Option<u64>)> = BTreeMap::new();
    let mut iota = BTreeMap::new();
    for &v in g.vertices() {
        let c = class[&v];
        let (label, s) = if self_flipped(v) {
            (base + c, None)
        } else {
            let s = sigma(v);
            (commute0_label(c, s, k), Some(s))
        };
        labels.insert(label, (c, s));
        iota.insert(v, label);
    }
    let mut ones = Vec::new();
    let labels: Vec<(usize, (usize, Option<u64>))> = labels.into_iter().collect();
    for (x, &(la, (ca, alpha))) in labels.iter().enumerate() {
        for &(lb, (cb, beta)) in &labels[x..] {
            let bit = match (alpha, beta) {
                (Some(alpha), Some(beta)) => {
                    f.tau(ca, cb)
                        ^ zeta(ca, cb)
                        ^ (alpha >> (cb - 1) & 1 == 1)
                        ^ (beta >> (ca - 1) & 1 == 1)
                }
                _ => f.tau(ca, cb),
            };
            if bit {
                ones.push((la, lb));
            }
        }
    }
    let declared = if labels.iter().any(|(_, (_, s))| s.is_none()) {
        base + k
    } else {
        base
    };
    let out = Flip::new(declared, iota, ones)?;

    let lhs = apply_flip(&local_complement_set(g, i)?, &out)?;
    let rhs = local_complement_set(&flipped, i)?;
    if lhs != rhs {
        return Err(Error::InternalInvariant(
            "commute0: (G∗I)⊕F′ ≠ (G⊕F)∗I".into(),
        ));
    }
    Ok(out)
}

/// Result of [`commute0b`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commute0b {
    pub flip: Flip,
    /// Whether `F′` leaves the same traces as `F` on all of `I`. This can
    /// only fail when `J` is a single vertex `a`, its class `C` in `I` has
    /// other members, and either `C` is a clique in `G` or `τ(ι a, ι a) = 1`:
    /// then `a` and `C ∖ {a}` need different rows in `F′`.
    pub i_compatible: bool,
}

/// [`commute0`] applied to `J ⊆ I`, where `I` is `F`-homogeneous in `G` and
/// `J` lies in one `F`-class. Also checks that `F′` is `J`-compatible with
/// `F`, that `I ∖ J` is `F′`-homogeneous in `G ∗ J`, and `I`-compatibility
/// outside the degenerate case described on [`Commute0b::i_compatible`].
pub fn commute0b(g: &Graph, f: &Flip, i: &VertexSet, j: &VertexSet) -> Result<Commute0b> {
    if j.is_empty() {
        return Err(Error::Precondition("J must be nonempty".into()));
    }
    if !j.is_subset(i) {
        return Err(Error::Precondition("J must be a subset of I".into()));
    }
    for &v in i {
        g.slot(v)?;
    }
    if !is_homogeneous(g, f, i)? {
        return Err(Error::Precondition("I is not F-homogeneous in G".into()));
    }
    let j_class = {
        let traces = flip_classes_of(f, j)?;
        if traces.len() != 1 {
            return Err(Error::Precondition(
                "J must lie inside a single F-class".into(),
            ));
        }
        f.class_checked(*j.iter().next().expect("nonempty"))?
    };
    let out = commute0(g, f, j)?;

    if !is_compatible_on(f, &out, j)? {
        return Err(Error::InternalInvariant(
            "commute0b: F′ is not J-compatible with F".into(),
        ));
    }
    let rest: VertexSet = i.difference(j).copied().collect();
    if !is_homogeneous(&local_complement_set(g, j)?, &out, &rest)? {
        return Err(Error::InternalInvariant(
            "commute0b: I∖J is not F′-homogeneous in G∗J".into(),
        ));
    }
    let i_compatible = is_compatible_on(f, &out, i)?;
    let class_trace: VertexSet = i
        .iter()
        .copied()
        .filter(|&v| f.class_of(v) == Some(j_class))
        .collect();
    let degenerate = j.len() == 1
        && class_trace.len() >= 2
        && (f.tau(j_class, j_class) || !g.is_independent(&class_trace)?);
    if !i_compatible && !degenerate {
        return Err(Error::InternalInvariant(
            "commute0b: F′ is not I-compatible with F".into(),
        ));
    }
    Ok(Commute0b {
        flip: out,
        i_compatible,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteResult {
    /// `J_1, …, J_p` in application order.
    pub partition: Vec<VertexSet>,
    #[serde(with = "flip_text")]
    pub flip: Flip,
    pub actual_class_count: usize,
}

impl CommuteResult {
    pub fn as_witness(&self) -> VMinorWitness {
        VMinorWitness {
            steps: self.partition.clone(),
            deletions: VertexSet::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("partition\n");
        for part in &self.partition {
            let ids: Vec<String> = part.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("part {}\n", ids.join(" ")));
        }
        out.push_str(&format!(
            "actual_class_count {}\nflip\n",
            self.actual_class_count
        ));
        out.push_str(&self.flip.to_text());
        out
    }
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

fn replay(g: &Graph, parts: &[VertexSet]) -> Result<Graph> {
    apply_witness(
        g,
        &VMinorWitness {
            steps: parts.to_vec(),
            deletions: VertexSet::new(),
        },
    )
}

/// A partition `J_1, …, J_p` of `I` (`p ≤ 2k` for `k` the number of
/// `F`-classes met by `I`) and a flip `F′` with
/// `(G ∗ I) ⊕ F′ = (G ⊕ F) ∗ J_1 ∗ … ∗ J_p`.
///
/// Classes of `I` are handled in ascending index. A class that is
/// independent in the current `G ⊕ F` is emitted whole; otherwise it is a
/// clique there, and its minimum vertex is emitted first, then the rest.
/// Intermediate flips are compacted to their occupied classes, so the
/// returned flip records its actual class count rather than the tower bound.
pub fn commute_general(g: &Graph, f: &Flip, i: &VertexSet) -> Result<CommuteResult> {
    require_independent(g, i, "G")?;
    let traces = flip_classes_of(f, i)?;
    let mut cur_g = g.clone();
    let mut cur_f = f.restrict(&g.vertex_set()).compact();
    let mut rest = i.clone();
    let mut partition = Vec::new();

    for class in &traces {
        let flipped = apply_flip(&cur_g, &cur_f)?;
        if flipped.is_independent(class)? {
            let step = commute0b(&cur_g, &cur_f, &rest, class)?;
            cur_f = step.flip.compact();
            cur_g = local_complement_set(&cur_g, class)?;
            partition.push(class.clone());
        } else {
            if !flipped.is_clique(class)? {
                return Err(Error::InternalInvariant(
                    "commute: an I-class is neither independent nor a clique in G⊕F".into(),
                ));
            }
            let a = *class.iter().next().expect("classes are nonempty");
            let head: VertexSet = [a].into();
            let tail: VertexSet = class.iter().copied().skip(1).collect();

            let step = commute0b(&cur_g, &cur_f, &rest, &head)?;
            cur_f = step.flip.compact();
            cur_g = local_complement_set(&cur_g, &head)?;
            rest.remove(&a);

            let step = commute0b(&cur_g, &cur_f, &rest, &tail)?;
            cur_f = step.flip.compact();
            cur_g = local_complement_set(&cur_g, &tail)?;
            partition.push(head);
            partition.push(tail);
        }
        rest.retain(|v| !class.contains(v));
    }

    if partition.len() > 2 * traces.len() {
        return Err(Error::InternalInvariant(format!(
            "commute: {} parts exceed 2k = {}",
            partition.len(),
            2 * traces.len()
        )));
    }
    let lhs = apply_flip(&local_complement_set(g, i)?, &cur_f)?;
    let rhs = replay(&apply_flip(g, f)?, &partition)?;
    if lhs != rhs {
        return Err(Error::InternalInvariant(
            "commute: (G∗I)⊕F′ ≠ (G⊕F)∗J_1∗…∗J_p".into(),
        ));
    }
    Ok(CommuteResult {
        actual_class_count: cur_f.actual_class_count(),
        flip: cur_f,
        partition,
    })
}

/// For `I` independent in `G ⊕ F`: a partition `I_1, …, I_p` of `I` and
/// `F′` with `(G ∗ I_1 ∗ … ∗ I_p) ⊕ F′ = (G ⊕ F) ∗ I`.
pub fn commute_corollary_fwd(g: &Graph, f: &Flip, i: &VertexSet) -> Result<CommuteResult> {
    let flipped = apply_flip(g, f)?;
    require_independent(&flipped, i, "G ⊕ F")?;
    let res = commute_general(&flipped, f, i)?;
    let lhs = apply_flip(&replay(g, &res.partition)?, &res.flip)?;
    if lhs != local_complement_set(&flipped, i)? {
        return Err(Error::InternalInvariant(
            "commute (forward corollary): equality fails".into(),
        ));
    }
    Ok(res)
}

/// For `I` independent in `G`: a partition `I_1, …, I_p` of `I` and `F′`
/// with `(G ⊕ F′) ∗ I_p ∗ … ∗ I_1 = (G ∗ I) ⊕ F`. Note the reversed order.
pub fn commute_corollary_bwd(g: &Graph, f: &Flip, i: &VertexSet) -> Result<CommuteResult> {
    require_independent(g, i, "G")?;
    let gi = local_complement_set(g, i)?;
    let res = commute_general(&gi, f, i)?;
    let reversed: Vec<VertexSet> = res.partition.iter().rev().cloned().collect();
    let lhs = replay(&apply_flip(g, &res.flip)?, &reversed)?;
    if lhs != apply_flip(&gi, f)? {
        return Err(Error::InternalInvariant(
            "commute (backward corollary): equality fails".into(),
        ));
    }
    Ok(res)
}

/// `⌈d/2⌉`, with the infinite distance mapped to itself.
pub fn half_ceil(d: Distance) -> Distance {
    match d {
        Distance::Finite(x) => Distance::Finite(x.div_ceil(2)),
        Distance::Infinite => Distance::Infinite,
    }
}

/// A `2k·2^{2k}`-flip `F′` with `dist_{(G∗I)⊕F′}(x,y) ≥ ½·dist_{G⊕F}(x,y)`
/// for all pairs: the clean flip of `F` on `I`, commuted past `∗I`.
pub fn spread_flip(g: &Graph, f: &Flip, i: &VertexSet) -> Result<Flip> {
    require_independent(g, i, "G")?;
    let cleaned = clean_flip(g, f, i)?;
    let out = commute0(g, &cleaned, i)?;

    let before = apply_flip(g, f)?.distances();
    let after = apply_flip(&local_complement_set(g, i)?, &out)?.distances();
    for &x in g.vertices() {
        for &y in g.vertices() {
            if after.get(x, y) < half_ceil(before.get(x, y)) {
                return Err(Error::InternalInvariant(format!(
                    "spread: dist({x},{y}) dropped from {} to {}",
                    before.get(x, y),
                    after.get(x, y)
                )));
            }
        }
    }
    Ok(out)
}
