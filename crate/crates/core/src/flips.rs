//! k-flips `F = (ι, τ)`: a class map into `1..=k` and a symmetric GF(2)
//! table on class pairs. `G ⊕ F` adds `τ(ι(x), ι(y))` to every pair of
//! distinct vertices.
//!
//! `τ` is stored sparsely as its set of one-entries `(i, j)` with `i <= j`.
//! Class indices are 1-based and kept verbatim; classes may be empty, so
//! `k` is a declared class count, not the number of occupied classes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gf2::BitRow;
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flip {
    k: usize,
    iota: BTreeMap<VertexId, usize>,
    tau: BTreeSet<(usize, usize)>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Flip {
    pub fn new<T>(k: usize, iota: BTreeMap<VertexId, usize>, tau_ones: T) -> Result<Self>
    where
        T: IntoIterator<Item = (usize, usize)>,
    {
        if k == 0 {
            return Err(Error::Domain("a flip needs at least one class".into()));
        }
        if let Some((v, c)) = iota.iter().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::Domain(format!(
                "class {c} of vertex {v} outside 1..={k}"
            )));
        }
        let mut tau = BTreeSet::new();
        for (i, j) in tau_ones {
            if i == 0 || j == 0 || i > k || j > k {
                return Err(Error::Domain(format!("τ index ({i},{j}) outside 1..={k}")));
            }
            tau.insert(ordered(i, j));
        }
        Ok(Flip { k, iota, tau })
    }

    /// Builds a flip from a full `k × k` table, which must be symmetric.
    pub fn from_matrix(iota: BTreeMap<VertexId, usize>, tau: &[Vec<u8>]) -> Result<Self> {
        let k = tau.len();
        let mut ones = Vec::new();
        for (i, row) in tau.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Domain("τ must be square".into()));
            }
            for (j, &bit) in row.iter().enumerate() {
                if bit > 1 {
                    return Err(Error::Domain(format!("τ entry {bit} is not a GF(2) value")));
                }
                if bit != tau[j][i] {
                    return Err(Error::Domain(format!(
                        "τ not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                if bit == 1 && i <= j {
                    ones.push((i + 1, j + 1));
                }
            }
        }
        Flip::new(k, iota, ones)
    }

    /// One class holding all of `vertices`; `complement` sets `τ(1,1)`.
    pub fn single_class<'a, I>(vertices: I, complement: bool) -> Flip
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let iota = vertices.into_iter().map(|&v| (v, 1)).collect();
        let tau = if complement { vec![(1, 1)] } else { vec![] };
        Flip::new(1, iota, tau).expect("valid single-class flip")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn iota(&self) -> &BTreeMap<VertexId, usize> {
        &self.iota
    }

    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        self.iota.get(&v).copied()
    }

    pub(crate) fn class_checked(&self, v: VertexId) -> Result<usize> {
        self.class_of(v)
            .ok_or_else(|| Error::Domain(format!("vertex {v} outside the flip's class map")))
    }

    pub fn tau(&self, i: usize, j: usize) -> bool {
        self.tau.contains(&ordered(i, j))
    }

    /// One-entries of `τ` with `i <= j`.
    pub fn tau_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tau.iter().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.tau.is_empty()
    }

    /// Classes with at least one member, ascending.
    pub fn occupied_classes(&self) -> BTreeSet<usize> {
        self.iota.values().copied().collect()
    }

    /// Number of occupied classes.
    pub fn actual_class_count(&self) -> usize {
        self.occupied_classes().len()
    }

    /// Same flip with `ι` restricted to `vertices`.
    pub fn restrict(&self, vertices: &VertexSet) -> Flip {
        Flip {
            k: self.k,
            iota: self
                .iota
                .iter()
                .filter(|(v, _)| vertices.contains(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
            tau: self.tau.clone(),
        }
    }

    /// Renumbers the occupied classes to `1..=m` in ascending order and drops
    /// `τ` entries on empty classes. The action on the domain is unchanged.
    pub fn compact(&self) -> Flip {
        let occupied: Vec<usize> = self.occupied_classes().into_iter().collect();
        let index: BTreeMap<usize, usize> = occupied
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i + 1))
            .collect();
        let tau = self
            .tau
            .iter()
            .filter_map(|(i, j)| Some(ordered(*index.get(i)?, *index.get(j)?)))
            .collect();
        Flip {
            k: occupied.len().max(1),
            iota: self.iota.iter().map(|(&v, c)| (v, index[c])).collect(),
            tau,
        }
    }

    /// Merges occupied classes `a`, `b` whenever `τ(a,a) = τ(b,b) = τ(a,b)`
    /// and their rows agree on every other occupied class, then compacts.
    /// The merged flip acts identically on every graph over the same vertices.
    pub fn coarsen(&self) -> Flip {
        let mut cur = self.compact();
        'outer: loop {
            let k = cur.k;
            let occupied = cur.occupied_classes();
            for a in 1..=k {
                for b in a + 1..=k {
                    if !occupied.contains(&a) || !occupied.contains(&b) {
                        continue;
                    }
                    let same = cur.tau(a, a) == cur.tau(b, b)
                        && cur.tau(a, b) == cur.tau(a, a)
                        && occupied
                            .iter()
                            .filter(|&&c| c != a && c != b)
                            .all(|&c| cur.tau(a, c) == cur.tau(b, c));
                    if same {
                        for c in cur.iota.values_mut() {
                            if *c == b {
                                *c = a;
                            }
                        }
                        cur = cur.compact();
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// Text form: `k <k>`, an `iota` block of `id class` lines, then a `tau`
    /// block holding the upper triangle, row `i` listing `τ(i,i..=k)`.
    pub fn to_text(&self) -> String {
        let mut out = format!("k {}\niota\n", self.k);
        for (v, c) in &self.iota {
            out.push_str(&format!("{v} {c}\n"));
        }
        out.push_str("tau\n");
        for i in 1..=self.k {
            let row: Vec<&str> = (i..=self.k)
                .map(|j| if self.tau(i, j) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Flip> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty flip"))?;
        let k: usize = head
            .strip_prefix('k')
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::parse(ln, 1, "expected `k <count>`"))?;
        match lines.next() {
            Some((_, "iota")) => {}
            Some((ln, _)) => return Err(Error::parse(ln, 1, "expected `iota`")),
            None => return Err(Error::parse(ln + 1, 1, "expected `iota`")),
        }
        let mut iota = BTreeMap::new();
        let mut tau = Vec::new();
        let mut row = 0usize;
        let mut in_tau = false;
        for (ln, l) in lines {
            if l == "tau" {
                in_tau = true;
                continue;
            }
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(ln, 1, format!("bad number `{t}`")))
                })
                .collect::<Result<_>>()?;
            if in_tau {
                row += 1;
                if row > k || nums.len() != k - row + 1 {
                    return Err(Error::parse(ln, 1, "τ row has the wrong length"));
                }
                for (off, &bit) in nums.iter().enumerate() {
                    match bit {
                        0 => {}
                        1 => tau.push((row, row + off)),
                        _ => return Err(Error::parse(ln, 1, "τ entries must be 0 or 1")),
                    }
                }
            } else {
                let [v, c] = nums[..] else {
                    return Err(Error::parse(ln, 1, "ι line must be `id class`"));
                };
                iota.insert(VertexId(v as u32), c);
            }
        }
        if row != k {
            return Err(Error::parse(
                0,
                0,
                format!("expected {k} τ rows, found {row}"),
            ));
        }
        Flip::new(k, iota, tau)
    }
}

/// `G ⊕ F`.
pub fn apply_flip(g: &Graph, f: &Flip) -> Result<Graph> {
    let n = g.order();
    let classes: Vec<usize> = g
        .vertices()
        .iter()
        .map(|&v| f.class_checked(v))
        .collect::<Result<_>>()?;
    let mut masks: BTreeMap<usize, BitRow> = BTreeMap::new();
    for (slot, &c) in classes.iter().enumerate() {
        masks
            .entry(c)
            .or_insert_with(|| BitRow::zeros(n))
            .set(slot, true);
    }
    let mut flip_rows: BTreeMap<usize, BitRow> = BTreeMap::new();
    for &c in masks.keys() {
        let mut row = BitRow::zeros(n);
        for (&d, mask) in &masks {
            if f.tau(c, d) {
                row.xor_assign(mask);
            }
        }
        flip_rows.insert(c, row);
    }
    let mut out = g.clone();
    for (slot, c) in classes.iter().enumerate() {
        let mut delta = flip_rows[c].clone();
        delta.set(slot, false);
        for other in delta.ones().filter(|&o| o > slot) {
            out.toggle_slots(slot, other);
        }
    }
    Ok(out)
}

/// Nonempty traces `ι⁻¹(i) ∩ X`, by ascending class index.
pub fn flip_classes_of(f: &Flip, x: &VertexSet) -> Result<Vec<VertexSet>> {
    let mut parts: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for &v in x {
        parts.entry(f.class_checked(v)?).or_default().insert(v);
    }
    Ok(parts.into_values().collect())
}

/// Whether adjacency between distinct members of `x` is a function of the
/// class pair.
pub fn is_homogeneous(g: &Graph, f: &Flip, x: &VertexSet) -> Result<bool> {
    let members: Vec<(VertexId, usize)> = x
        .iter()
        .map(|&v| Ok((v, f.class_checked(v)?)))
        .collect::<Result<_>>()?;
    let mut seen: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for (i, &(u, cu)) in members.iter().enumerate() {
        for &(v, cv) in &members[i + 1..] {
            let e = g.try_adjacent(u, v)?;
            if *seen.entry(ordered(cu, cv)).or_insert(e) != e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the nonempty traces of the two partitions on `x` coincide as
/// set families. Class indices are ignored.
pub fn is_compatible_on(f1: &Flip, f2: &Flip, x: &VertexSet) -> Result<bool> {
    let a: BTreeSet<VertexSet> = flip_classes_of(f1, x)?.into_iter().collect();
    let b: BTreeSet<VertexSet> = flip_classes_of(f2, x)?.into_iter().collect();
    Ok(a == b)
}

/// A `2k`-flip `F′` such that `G ⊕ F′` is `G ⊕ F` with every edge inside
/// the independent set `i` removed. Class `(c, 0)` is numbered `c`, class
/// `(c, 1)` (members of `i`) is numbered `k + c`.
pub fn clean_flip(g: &Graph, f: &Flip, i: &VertexSet) -> Result<Flip> {
    if let Some((u, v)) = g.first_edge_inside(i)? {
        return Err(Error::Precondition(format!(
            "clean_flip needs an independent set, but {u}{v} is an edge"
        )));
    }
    let k = f.k();
    let mut iota = BTreeMap::new();
    for &v in g.vertices() {
        let c = f.class_checked(v)?;
        iota.insert(v, if i.contains(&v) { k + c } else { c });
    }
    let mut ones = Vec::new();
    for (a, b) in f.tau_ones() {
        // (a,0)(b,0), (a,0)(b,1), (a,1)(b,0) keep τ(a,b); (a,1)(b,1) is zeroed.
        ones.push((a, b));
        ones.push((a, k + b));
        ones.push((k + a, b));
    }
    let out = Flip::new(2 * k, iota, ones)?;

    let expected = {
        let mut h = apply_flip(g, f)?;
        let slots = g.slots_of(i)?;
        for (x, &a) in slots.iter().enumerate() {
            for &b in &slots[x + 1..] {
                h.set_slots(a, b, false);
            }
        }
        h
    };
    if apply_flip(g, &out)? != expected {
        return Err(Error::InternalInvariant(
            "clean flip does not match G ⊕ F with I-internal edges removed".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn iota(pairs: &[(u32, usize)]) -> BTreeMap<VertexId, usize> {
        pairs.iter().map(|&(v, c)| (VertexId(v), c)).collect()
    }

    /// half_graph(2) with a1=0, a2=1, b1=2, b2=3.
    fn half2() -> Graph {
        Graph::from_edges(4, &[(0, 2), (0, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn full_complement_of_triangle() {
        let g = Graph::complete(3);
        let f = Flip::single_class(g.vertices(), true);
        assert_eq!(
            apply_flip(&g, &f).unwrap(),
            Graph::from_edges(3, &[]).unwrap()
        );
        let zero = Flip::single_class(g.vertices(), false);
        assert_eq!(apply_flip(&g, &zero).unwrap(), g);
    }

    #[test]
    fn bipartition_flip_of_half_graph() {
        let f = Flip::new(2, iota(&[(0, 1), (1, 1), (2, 2), (3, 2)]), [(1, 2)]).unwrap();
        let h = apply_flip(&half2(), &f).unwrap();
        // only a2b1 survives
        assert_eq!(h.edges(), vec![(VertexId(1), VertexId(2))]);
    }

    #[test]
    fn vertex_outside_domain_is_an_error() {
        let f = Flip::new(1, iota(&[(0, 1)]), []).unwrap();
        assert!(matches!(apply_flip(&half2(), &f), Err(Error::Domain(_))));
    }

    #[test]
    fn classes_of_subset() {
        let f = Flip::new(2, iota(&[(0, 1), (1, 2), (2, 1)]), []).unwrap();
        assert_eq!(
            flip_classes_of(&f, &vset([0, 1, 2])).unwrap(),
            vec![vset([0, 2]), vset([1])]
        );
        assert!(flip_classes_of(&f, &VertexSet::new()).unwrap().is_empty());
        let one = Flip::new(2, iota(&[(0, 1), (1, 1)]), []).unwrap();
        assert_eq!(flip_classes_of(&one, &vset([0, 1])).unwrap().len(), 1);
    }

    #[test]
    fn homogeneity() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let f = Flip::single_class(g.vertices(), false);
        assert!(!is_homogeneous(&g, &f, &vset([0, 1, 2])).unwrap());
        assert!(is_homogeneous(&g, &f, &vset([0, 2])).unwrap());
        let bip = Flip::new(2, iota(&[(0, 1), (1, 1), (2, 2), (3, 2)]), [(1, 2)]).unwrap();
        assert!(!is_homogeneous(&half2(), &bip, &vset([0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn compatibility_ignores_indices() {
        let x = vset([0, 1]);
        let f1 = Flip::new(2, iota(&[(0, 1), (1, 2)]), []).unwrap();
        let f2 = Flip::new(3, iota(&[(0, 3), (1, 1)]), [(1, 1)]).unwrap();
        assert!(is_compatible_on(&f1, &f1, &x).unwrap());
        assert!(is_compatible_on(&f1, &f2, &x).unwrap());
        let single = Flip::new(1, iota(&[(0, 1), (1, 1)]), []).unwrap();
        assert!(!is_compatible_on(&single, &f1, &x).unwrap());
    }

    #[test]
    fn clean_flip_examples() {
        // identity flip stays identity
        let g = Graph::path(4);
        let id = Flip::single_class(g.vertices(), false);
        let c = clean_flip(&g, &id, &vset([0, 2])).unwrap();
        assert_eq!(apply_flip(&g, &c).unwrap(), g);
        assert_eq!(c.k(), 2);

        // edgeless g, full complement, i = {0,1}: everything but 01 flips
        let e = Graph::from_edges(4, &[]).unwrap();
        let full = Flip::single_class(e.vertices(), true);
        let c = clean_flip(&e, &full, &vset([0, 1])).unwrap();
        let h = apply_flip(&e, &c).unwrap();
        assert!(!h.adjacent(VertexId(0), VertexId(1)));
        assert_eq!(h.edge_count(), 5);

        // empty i leaves the action unchanged
        let c = clean_flip(&e, &full, &VertexSet::new()).unwrap();
        assert_eq!(apply_flip(&e, &c).unwrap(), apply_flip(&e, &full).unwrap());

        assert!(matches!(
            clean_flip(&g, &id, &vset([0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let f = Flip::new(3, iota(&[(0, 1), (4, 3), (9, 2)]), [(1, 1), (2, 3)]).unwrap();
        assert_eq!(Flip::from_text(&f.to_text()).unwrap(), f);
        assert!(f.to_text().contains("tau\n1 0 0\n0 1\n0\n"));
        assert!(Flip::from_text("k 2\niota\n0 1\ntau\n1 0\n").is_err());
    }

    #[test]
    fn compact_preserves_action() {
        let g = Graph::cycle(5);
        let f = Flip::new(
            9,
            iota(&[(0, 9), (1, 4), (2, 9), (3, 1), (4, 4)]),
            [(4, 9), (1, 1), (2, 2)],
        )
        .unwrap();
        let c = f.compact();
        assert_eq!(c.k(), 3);
        assert_eq!(apply_flip(&g, &c).unwrap(), apply_flip(&g, &f).unwrap());
    }

    #[test]
    fn coarsen_merges_twin_classes() {
        let g = Graph::path(4);
        let f = Flip::new(3, iota(&[(0, 1), (1, 2), (2, 3), (3, 3)]), [(1, 2), (1, 3)]).unwrap();
        let c = f.coarsen();
        assert_eq!(c.k(), 2);
        assert_eq!(apply_flip(&g, &c).unwrap(), apply_flip(&g, &f).unwrap());
        assert_eq!(Flip::single_class(g.vertices(), true).coarsen().k(), 1);
    }
}
