use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use super::{build, ordered_matching_graph, Labeled, Matching, MatchingIds};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::vminor::local_complement;

pub type Pos = Ratio<i64>;

/// A split interval representation: singleton stable points and a family of
/// pairwise intersecting closed intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel {
    pub points: Vec<(VertexId, Pos)>,
    /// `(id, left, right)`.
    pub intervals: Vec<(VertexId, Pos, Pos)>,
}

impl IntervalModel {
    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        let all = self
            .points
            .iter()
            .map(|p| p.0)
            .chain(self.intervals.iter().map(|i| i.0));
        for v in all {
            if !ids.insert(v) {
                return Err(Error::Validation(format!("id {v} is used twice")));
            }
        }
        let positions: BTreeSet<Pos> = self.points.iter().map(|p| p.1).collect();
        if positions.len() != self.points.len() {
            return Err(Error::Validation(
                "stable points must be pairwise distinct".into(),
            ));
        }
        for &(v, l, r) in &self.intervals {
            if l > r {
                return Err(Error::Validation(format!(
                    "interval {v} has left end after right end"
                )));
            }
        }
        let max_left = self.intervals.iter().map(|i| i.1).max();
        let min_right = self.intervals.iter().map(|i| i.2).min();
        if let (Some(l), Some(r)) = (max_left, min_right) {
            if l > r {
                return Err(Error::Validation(
                    "clique intervals do not pairwise intersect".into(),
                ));
            }
        }
        Ok(())
    }

    /// The intersection graph: intervals pairwise adjacent, a point adjacent
    /// to the intervals containing it.
    pub fn graph(&self) -> Result<Graph> {
        self.validate()?;
        let mut edges = Vec::new();
        for (x, &(u, _, _)) in self.intervals.iter().enumerate() {
            for &(v, _, _) in &self.intervals[x + 1..] {
                edges.push((u, v));
            }
            let (_, l, r) = self.intervals[x];
            for &(p, at) in &self.points {
                if l <= at && at <= r {
                    edges.push((u, p));
                }
            }
        }
        let vertices = self
            .points
            .iter()
            .map(|p| p.0)
            .chain(self.intervals.iter().map(|i| i.0));
        Graph::new(vertices, edges)
    }
}

pub fn split_interval_graph(model: &IntervalModel) -> Result<Graph> {
    model.graph()
}

fn int(x: i64) -> Pos {
    Ratio::from_integer(x)
}

/// Ids of the power-set construction of order `n`. Stable points use their
/// position as id: `a_i = 2(i−1)`, `a_i′ = 2i−1`, and `b_J = 2n + (2^n−1−J)`
/// with `J` a bitmask (bit `i−1` for `i`), so `b_[n]` comes first and `b_∅`
/// last. Intervals follow: `I_0` from `a_1` to `a_n′`, then for each `i` and
/// each `J ∋ i` (in the same subset order) the interval from `a_i` to `b_J`.
#[derive(Clone, Copy, Debug)]
pub struct PowerIds {
    pub n: usize,
}

impl PowerIds {
    pub fn a(&self, i: usize) -> VertexId {
        VertexId(2 * (i as u32 - 1))
    }

    pub fn a_prime(&self, i: usize) -> VertexId {
        VertexId(2 * i as u32 - 1)
    }

    pub fn b(&self, mask: u32) -> VertexId {
        VertexId(2 * self.n as u32 + ((1u32 << self.n) - 1 - mask))
    }

    pub fn stable_count(&self) -> usize {
        2 * self.n + (1 << self.n)
    }

    /// Subsets in the order used for the `b` points, as bitmasks.
    pub fn subsets(&self) -> impl Iterator<Item = u32> {
        (0..1u32 << self.n).rev()
    }
}

pub fn subset_label(n: usize, mask: u32) -> String {
    let items: Vec<String> = (1..=n)
        .filter(|i| mask >> (i - 1) & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// The split interval graph encoding the power-set relation `i ∈ J`.
pub fn power_split_interval(n: usize) -> Result<(IntervalModel, Labeled)> {
    if n < 2 {
        return Err(Error::Domain(
            "the power-set construction needs n ≥ 2".into(),
        ));
    }
    if n > 16 {
        return Err(Error::Domain(
            "the power-set construction is limited to n ≤ 16".into(),
        ));
    }
    let ids = PowerIds { n };
    let pos = |v: VertexId| int(v.0 as i64);
    let mut labels = BTreeMap::new();
    let mut points = Vec::new();
    for i in 1..=n {
        labels.insert(ids.a(i), format!("a{i}"));
        labels.insert(ids.a_prime(i), format!("a{i}'"));
    }
    for mask in ids.subsets() {
        labels.insert(ids.b(mask), format!("b{}", subset_label(n, mask)));
    }
    for &v in labels.keys() {
        points.push((v, pos(v)));
    }
    let mut next = ids.stable_count() as u32;
    let mut intervals = vec![(VertexId(next), pos(ids.a(1)), pos(ids.a_prime(n)))];
    labels.insert(VertexId(next), "I0".into());
    for i in 1..=n {
        for mask in ids.subsets().filter(|m| m >> (i - 1) & 1 == 1) {
            next += 1;
            intervals.push((VertexId(next), pos(ids.a(i)), pos(ids.b(mask))));
            labels.insert(VertexId(next), format!("I{i};{}", subset_label(n, mask)));
        }
    }
    let model = IntervalModel { points, intervals };
    let graph = model.graph()?;
    Ok((model, Labeled { graph, labels }))
}

/// Stable points `c < a_1 < … < a_n` and intervals `B_j = [c, a_j]`. With
/// `a_i = i−1`, `B_j = n+j−1` and `c = 2n`, complementing at `c` and deleting
/// it gives `half_graph(n)` with identical ids.
pub fn half_graph_host(n: usize) -> Result<IntervalModel> {
    if n == 0 {
        return Err(Error::Domain("half-graph order must be positive".into()));
    }
    let c = VertexId(2 * n as u32);
    let mut points = vec![(c, int(0))];
    let mut intervals = Vec::new();
    for i in 1..=n {
        points.push((VertexId(i as u32 - 1), int(i as i64)));
        intervals.push((VertexId((n + i - 1) as u32), int(0), int(i as i64)));
    }
    Ok(IntervalModel { points, intervals })
}

/// A split interval graph certified as an induced subgraph of
/// `ordered_matching_graph(matching) ∗ a1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMatchingEmbedding {
    pub matching: Matching,
    pub a1: VertexId,
    /// Model vertex to ordered-matching-graph vertex.
    pub embedding: BTreeMap<VertexId, VertexId>,
}

/// Augments the model until every stable point is the leftmost or rightmost
/// incidence of exactly one interval and all intervals share the point `a_1`,
/// then reads off the matching.
///
/// Positions are first compressed to ranks spaced `s` apart. Original
/// intervals, in `(left, right)` order, are widened by distinct offsets
/// below `s/2` and get fresh end points; `a_1` sits just right of the
/// largest left end; every original point gets a new interval reaching
/// across `a_1` to a fresh point beyond all others.
pub fn split_interval_to_ordered_matching(
    model: &IntervalModel,
) -> Result<OrderedMatchingEmbedding> {
    let h = model.graph()?;
    let mut coords: Vec<Pos> = model.points.iter().map(|p| p.1).collect();
    coords.extend(model.intervals.iter().flat_map(|i| [i.1, i.2]));
    coords.sort();
    coords.dedup();
    let spacing = 4 * (model.points.len() + model.intervals.len() + 4) as i64;
    let x = |p: Pos| coords.binary_search(&p).expect("collected") as i64 * spacing;
    let far = (coords.len() as i64 + 1) * spacing;

    let mut ivs = model.intervals.clone();
    ivs.sort_by_key(|&(v, l, r)| (l, r, v));
    let c = ivs.iter().map(|i| x(i.1)).max().unwrap_or(0);
    let a1 = c + 1;

    // (coordinate, original id)
    let mut stable: Vec<(i64, Option<VertexId>)> = vec![(a1, None)];
    let mut finals: Vec<(i64, i64, Option<VertexId>)> = Vec::new();
    for (t, &(v, l, r)) in ivs.iter().enumerate() {
        let eps = 2 + t as i64;
        let (lo, hi) = (x(l) - eps, x(r) + eps);
        stable.extend([(lo, None), (hi, None)]);
        finals.push((lo, hi, Some(v)));
    }
    let mut fresh = 0;
    let mut outer = |right: bool| {
        fresh += 1;
        if right {
            far + fresh
        } else {
            -spacing - fresh
        }
    };
    let tip = outer(true);
    stable.push((tip, None));
    finals.push((a1, tip, None));
    for &(q, at) in &model.points {
        let xq = x(at);
        stable.push((xq, Some(q)));
        if xq < a1 {
            let end = outer(true);
            stable.push((end, None));
            finals.push((xq, end, None));
        } else {
            let end = outer(false);
            stable.push((end, None));
            finals.push((end, xq, None));
        }
    }
    stable.sort();

    let m = finals.len();
    if stable.len() != 2 * m || stable.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InternalInvariant(
            "om2si: augmented points are not distinct".into(),
        ));
    }
    let index_of = |coord: i64| stable.binary_search_by_key(&coord, |s| s.0).ok();
    let mids = MatchingIds { n: m };
    let mut used = vec![false; 2 * m];
    let mut pairs = Vec::new();
    let mut embedding = BTreeMap::new();
    for &(lo, hi, orig) in &finals {
        let (p, q) = match (index_of(lo), index_of(hi)) {
            (Some(p), Some(q)) if p < m && q >= m => (p, q),
            _ => {
                return Err(Error::InternalInvariant(
                    "om2si: interval incidences misplaced".into(),
                ))
            }
        };
        if std::mem::replace(&mut used[p], true) || std::mem::replace(&mut used[q], true) {
            return Err(Error::InternalInvariant(
                "om2si: a point is the end of two intervals".into(),
            ));
        }
        let (k, l) = (m - p, q - m + 1);
        pairs.push((k, l));
        if let Some(v) = orig {
            embedding.insert(v, mids.pair(k));
        }
    }
    for (p, &(_, orig)) in stable.iter().enumerate() {
        if let Some(v) = orig {
            let w = if p < m {
                mids.a(m - p)
            } else {
                mids.b(p - m + 1)
            };
            embedding.insert(v, w);
        }
    }
    let matching = Matching::new(pairs)?;

    let host = local_complement(&ordered_matching_graph(&matching)?, mids.a(1))?;
    let image = embedding.values().copied().collect();
    if h.relabel(&embedding)? != host.induced_subgraph(&image)? {
        return Err(Error::InternalInvariant(
            "om2si: embedding is not induced".into(),
        ));
    }
    Ok(OrderedMatchingEmbedding {
        matching,
        a1: mids.a(1),
        embedding,
    })
}

/// Builds a labeled graph from a model, naming points `s<id>` and intervals
/// `i<id>`.
pub fn split_interval_labeled(model: &IntervalModel) -> Result<Labeled> {
    let graph = model.graph()?;
    let mut labels: BTreeMap<VertexId, String> = BTreeMap::new();
    for &(v, _) in &model.points {
        labels.insert(v, format!("s{v}"));
    }
    for &(v, _, _) in &model.intervals {
        labels.insert(v, format!("i{v}"));
    }
    let out = build(labels, graph.edges())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::vminor::{apply_witness, VMinorWitness};

    fn model(points: &[(u32, i64)], intervals: &[(u32, i64, i64)]) -> IntervalModel {
        IntervalModel {
            points: points.iter().map(|&(v, p)| (VertexId(v), int(p))).collect(),
            intervals: intervals
                .iter()
                .map(|&(v, l, r)| (VertexId(v), int(l), int(r)))
                .collect(),
        }
    }

    #[test]
    fn power_graph_n2() {
        let (m, g) = power_split_interval(2).unwrap();
        assert_eq!(m.points.len(), 8);
        assert_eq!(m.intervals.len(), 5);
        let stable: VertexSet = m.points.iter().map(|p| p.0).collect();
        let clique: VertexSet = m.intervals.iter().map(|p| p.0).collect();
        assert!(g.graph.is_independent(&stable).unwrap());
        assert!(g.graph.is_clique(&clique).unwrap());
        let i1 = g.vertex("I1;{1}").unwrap();
        assert!(g.graph.adjacent(i1, g.vertex("b{1,2}").unwrap()));
        assert!(!g.graph.adjacent(i1, g.vertex("b{}").unwrap()));
        let order: Vec<&str> = (0..8).map(|i| g.labels[&VertexId(i)].as_str()).collect();
        assert_eq!(
            order,
            ["a1", "a1'", "a2", "a2'", "b{1,2}", "b{2}", "b{1}", "b{}"]
        );
        assert!(power_split_interval(1).is_err());
        assert_eq!(
            power_split_interval(4).unwrap().1.graph.order(),
            8 + 16 + 1 + 4 * 8
        );
    }

    #[test]
    fn half_graph_host_replays() {
        for n in 1..=4 {
            let host = half_graph_host(n).unwrap().graph().unwrap();
            let c = VertexId(2 * n as u32);
            let w = VMinorWitness {
                steps: vec![[c].into()],
                deletions: [c].into(),
            };
            assert_eq!(
                apply_witness(&host, &w).unwrap(),
                super::super::half_graph(n).unwrap()
            );
        }
    }

    #[test]
    fn invalid_models() {
        assert!(matches!(
            model(&[(0, 1), (1, 1)], &[]).validate(),
            Err(Error::Validation(_))
        ));
        assert!(model(&[(0, 1)], &[(1, 0, 1), (2, 2, 3)])
            .validate()
            .is_err());
        assert!(model(&[(0, 1)], &[(0, 0, 1)]).validate().is_err());
        assert!(split_interval_to_ordered_matching(&model(&[], &[(1, 3, 2)])).is_err());
    }

    #[test]
    fn om2si_single_interval() {
        let m = model(&[(0, 0), (1, 5)], &[(2, 0, 5)]);
        let out = split_interval_to_ordered_matching(&m).unwrap();
        assert_eq!(out.embedding.len(), 3);
        assert_eq!(out.a1, VertexId(0));
    }

    #[test]
    fn om2si_nested_intervals() {
        let m = model(&[(0, 0), (1, 2), (2, 4), (3, 6)], &[(4, 0, 6), (5, 2, 4)]);
        let out = split_interval_to_ordered_matching(&m).unwrap();
        assert!(out.matching.n() > 2);
    }

    #[test]
    fn om2si_edge_cases() {
        assert!(split_interval_to_ordered_matching(&model(&[], &[])).is_ok());
        assert!(split_interval_to_ordered_matching(&model(&[(0, 3)], &[])).is_ok());
        assert!(split_interval_to_ordered_matching(&model(&[], &[(0, 1, 1), (1, 1, 2)])).is_ok());
        let (pm, _) = power_split_interval(2).unwrap();
        assert!(split_interval_to_ordered_matching(&pm).is_ok());
    }

    #[test]
    fn om2si_random_models() {
        for t in 0..100 {
            let mut rng = crate::random::trial_rng(11, t);
            let m = crate::random::random_interval_model(&mut rng, 8, 10);
            split_interval_to_ordered_matching(&m).unwrap();
        }
    }

    #[test]
    fn labeled_model() {
        let l = split_interval_labeled(&model(&[(0, 0)], &[(1, 0, 0)])).unwrap();
        assert_eq!(l.vertex("i1"), Some(VertexId(1)));
    }
}
