//! Labeled simple graphs with GF(2) adjacency.
//!
//! Vertex ids are external and never renumbered. Internally each graph keeps
//! its ids sorted; the position of an id in that table is its slot, and the
//! adjacency of a vertex is a [`BitRow`] over slots.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitRow;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Builds a vertex set from raw ids.
pub fn vset<I: IntoIterator<Item = u32>>(ids: I) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

/// Shortest-path length, with an explicit sentinel for disconnected pairs.
/// `Finite(_) < Infinite`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<VertexId>,
    rows: Vec<BitRow>,
}

impl Graph {
    /// Edgeless graph on the given ids.
    pub fn edgeless<I: IntoIterator<Item = VertexId>>(ids: I) -> Result<Self> {
        let mut ids: Vec<VertexId> = ids.into_iter().collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate vertex id {}", w[0])));
        }
        let n = ids.len();
        Ok(Graph {
            ids,
            rows: vec![BitRow::zeros(n); n],
        })
    }

    pub fn new<I, E>(ids: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::edgeless(ids)?;
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("self-loop at {u}")));
            }
            let (a, b) = (g.slot(u)?, g.slot(v)?);
            g.set_slots(a, b, true);
        }
        Ok(g)
    }

    /// Graph on ids `0..n` with the given edge list.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        Graph::new(
            (0..n).map(VertexId),
            edges.iter().map(|&(u, v)| (VertexId(u), VertexId(v))),
        )
    }

    pub fn complete(n: u32) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn path(n: u32) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn slot(&self, v: VertexId) -> Result<usize> {
        self.ids
            .binary_search(&v)
            .map_err(|_| Error::UnknownVertex(v))
    }

    pub(crate) fn id_at(&self, slot: usize) -> VertexId {
        self.ids[slot]
    }

    pub(crate) fn row(&self, slot: usize) -> &BitRow {
        &self.rows[slot]
    }

    #[inline]
    pub(crate) fn adj_slots(&self, a: usize, b: usize) -> bool {
        self.rows[a].get(b)
    }

    pub(crate) fn set_slots(&mut self, a: usize, b: usize, value: bool) {
        debug_assert_ne!(a, b);
        self.rows[a].set(b, value);
        self.rows[b].set(a, value);
    }

    pub(crate) fn toggle_slots(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.rows[a].toggle(b);
        self.rows[b].toggle(a);
    }

    /// Adjacency of two vertices.
    ///
    /// Panics if either id is not a vertex; use [`Graph::try_adjacent`] for a
    /// checked variant.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.try_adjacent(u, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_adjacent(&self, u: VertexId, v: VertexId) -> Result<bool> {
        let (a, b) = (self.slot(u)?, self.slot(v)?);
        Ok(a != b && self.adj_slots(a, b))
    }

    /// `E(u,v)` as a GF(2) value.
    pub fn e(&self, u: VertexId, v: VertexId) -> u8 {
        self.adjacent(u, v) as u8
    }

    pub fn neighbors(&self, v: VertexId) -> Result<VertexSet> {
        let s = self.slot(v)?;
        Ok(self.rows[s].ones().map(|t| self.ids[t]).collect())
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.rows[self.slot(v)?].count_ones())
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.ones().filter(|&b| b > a) {
                out.push((self.ids[a], self.ids[b]));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitRow::count_ones).sum::<usize>() / 2
    }

    pub(crate) fn slots_of(&self, s: &VertexSet) -> Result<Vec<usize>> {
        s.iter().map(|&v| self.slot(v)).collect()
    }

    pub(crate) fn mask_of(&self, s: &VertexSet) -> Result<BitRow> {
        let mut m = BitRow::zeros(self.order());
        for slot in self.slots_of(s)? {
            m.set(slot, true);
        }
        Ok(m)
    }

    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        let slots = self.slots_of(keep)?;
        let n = slots.len();
        let mut rows = vec![BitRow::zeros(n); n];
        for (i, &a) in slots.iter().enumerate() {
            for (j, &b) in slots.iter().enumerate().skip(i + 1) {
                if self.adj_slots(a, b) {
                    rows[i].set(j, true);
                    rows[j].set(i, true);
                }
            }
        }
        Ok(Graph {
            ids: keep.iter().copied().collect(),
            rows,
        })
    }

    /// `G - D`.
    pub fn delete(&self, remove: &VertexSet) -> Result<Graph> {
        for &v in remove {
            self.slot(v)?;
        }
        let keep: VertexSet = self
            .ids
            .iter()
            .copied()
            .filter(|v| !remove.contains(v))
            .collect();
        self.induced_subgraph(&keep)
    }

    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.first_edge_inside(s)?.is_none())
    }

    /// Some edge with both ends in `s`, if any.
    pub fn first_edge_inside(&self, s: &VertexSet) -> Result<Option<(VertexId, VertexId)>> {
        let mask = self.mask_of(s)?;
        for a in mask.ones() {
            if let Some(b) = self.rows[a].and(&mask).ones().find(|&b| b > a) {
                return Ok(Some((self.ids[a], self.ids[b])));
            }
        }
        Ok(None)
    }

    pub fn is_clique(&self, s: &VertexSet) -> Result<bool> {
        let slots = self.slots_of(s)?;
        Ok(slots
            .iter()
            .enumerate()
            .all(|(i, &a)| slots[i + 1..].iter().all(|&b| self.adj_slots(a, b))))
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut mask = self.mask_of(s)?;
        for a in self.slots_of(s)? {
            mask.or_assign(&self.rows[a]);
        }
        Ok(mask.ones().map(|t| self.ids[t]).collect())
    }

    fn bfs_from(&self, src: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.order()];
        dist[src] = Distance::Finite(0);
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            let Distance::Finite(d) = dist[a] else {
                unreachable!()
            };
            for b in self.rows[a].ones() {
                if dist[b] == Distance::Infinite {
                    dist[b] = Distance::Finite(d + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Distance> {
        let (a, b) = (self.slot(u)?, self.slot(v)?);
        Ok(self.bfs_from(a)[b])
    }

    /// All-pairs distances.
    pub fn distances(&self) -> DistanceMatrix {
        DistanceMatrix {
            ids: self.ids.clone(),
            rows: (0..self.order()).map(|a| self.bfs_from(a)).collect(),
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for a in 0..g.order() {
            for b in a + 1..g.order() {
                g.toggle_slots(a, b);
            }
        }
        g
    }

    /// Renames vertices along an injective map defined on every vertex.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Graph> {
        let ids: Vec<VertexId> = self
            .ids
            .iter()
            .map(|v| map.get(v).copied().ok_or(Error::UnknownVertex(*v)))
            .collect::<Result<_>>()?;
        let edges = self.edges().into_iter().map(|(u, v)| (map[&u], map[&v]));
        Graph::new(ids, edges)
    }

    /// Text format: a header `n m`, an optional `ids ...` line when the
    /// vertex ids are not exactly `0..n`, then `m` lines `u v`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.edge_count());
        let dense = self.ids.iter().enumerate().all(|(i, v)| v.0 as usize == i);
        if !dense {
            out.push_str("ids");
            for v in &self.ids {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `n m` header"))?;
        let nums = parse_numbers(ln, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::parse(ln, 1, "header must be `n m`"));
        };
        let mut rest = lines.peekable();
        let ids: Vec<VertexId> = match rest.peek() {
            Some((ln, l)) if l.starts_with("ids") => {
                let ln = *ln;
                let ids: Vec<VertexId> = parse_numbers(ln, &l[3..])?
                    .into_iter()
                    .map(VertexId)
                    .collect();
                rest.next();
                if ids.len() != n as usize {
                    return Err(Error::parse(ln, 1, "ids line length differs from n"));
                }
                ids
            }
            _ => (0..n).map(VertexId).collect(),
        };
        let mut edges = Vec::new();
        for (ln, l) in rest {
            let nums = parse_numbers(ln, l)?;
            let [u, v] = nums[..] else {
                return Err(Error::parse(ln, 1, "edge line must be `u v`"));
            };
            edges.push((VertexId(u), VertexId(v)));
        }
        if edges.len() != m as usize {
            return Err(Error::parse(
                1,
                1,
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        Graph::new(ids, edges)
    }

    pub fn to_dot(&self, labels: Option<&BTreeMap<VertexId, String>>) -> String {
        let mut out = String::from("graph G {\n");
        for v in &self.ids {
            match labels.and_then(|l| l.get(v)) {
                Some(name) => out.push_str(&format!("  {v} [label=\"{name}\"];\n")),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::parse(line, 1, format!("expected an integer, got `{t}`")))
        })
        .collect()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ V: {:?}, E: {:?} }}", self.ids, self.edges())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    ids: Vec<VertexId>,
    rows: Vec<Vec<Distance>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: VertexId, v: VertexId) -> Distance {
        let a = self.ids.binary_search(&u).expect("unknown vertex");
        let b = self.ids.binary_search(&v).expect("unknown vertex");
        self.rows[a][b]
    }
}
