//! Random instances for property checks. Every generator is driven by a
//! caller-supplied RNG; [`trial_rng`] derives the per-trial stream from a
//! suite seed so runs replay exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::families::IntervalModel;
use crate::flips::Flip;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::structures::{BinaryStructure, RelationKind};

/// RNG for trial `trial` of a suite seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `G(n, p)` on ids `0..n`.
pub fn random_graph<R: Rng>(rng: &mut R, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid random graph")
}

/// A uniformly random class map into `1..=k` and a uniformly random
/// symmetric `τ`.
pub fn random_flip<R: Rng>(rng: &mut R, vertices: &[VertexId], k: usize) -> Flip {
    let iota: BTreeMap<VertexId, usize> = vertices
        .iter()
        .map(|&v| (v, rng.gen_range(1..=k)))
        .collect();
    let mut ones = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            if rng.gen_bool(0.5) {
                ones.push((i, j));
            }
        }
    }
    Flip::new(k, iota, ones).expect("valid random flip")
}

/// A random independent set: vertices are visited in random order and kept
/// with probability `keep` when not adjacent to anything kept so far.
pub fn random_independent_set<R: Rng>(rng: &mut R, g: &Graph, keep: f64) -> VertexSet {
    let mut order: Vec<VertexId> = g.vertices().to_vec();
    order.shuffle(rng);
    let mut out = VertexSet::new();
    for v in order {
        if rng.gen_bool(keep) && out.iter().all(|&u| !g.adjacent(u, v)) {
            out.insert(v);
        }
    }
    out
}

pub fn random_subset<R: Rng>(rng: &mut R, items: &[VertexId], p: f64) -> VertexSet {
    items.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// A random permutation of `1..=n` in one-line notation.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    p
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut BTreeSet<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for x in left.clone() {
            left.remove(&x);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// A split interval model with up to `max_intervals` intervals and
/// `max_points` stable points at half-integer positions in `[−5, 5]`. All
/// intervals contain 0, so they pairwise intersect.
pub fn random_interval_model<R: Rng>(
    rng: &mut R,
    max_intervals: usize,
    max_points: usize,
) -> IntervalModel {
    let half = |x: i64| Ratio::new(x, 2);
    let mut slots: Vec<i64> = (-10..=10).collect();
    slots.shuffle(rng);
    let np = rng.gen_range(0..=max_points.min(slots.len()));
    let points: Vec<_> = slots[..np]
        .iter()
        .enumerate()
        .map(|(x, &s)| (VertexId(x as u32), half(s)))
        .collect();
    let ni = rng.gen_range(0..=max_intervals);
    let intervals = (0..ni)
        .map(|x| {
            let l = rng.gen_range(-10..=0);
            let r = rng.gen_range(0..=10);
            (VertexId((np + x) as u32), half(l), half(r))
        })
        .collect();
    IntervalModel { points, intervals }
}

/// A structure on `0..n` with `k` relations `R1..Rk`, each symmetric or
/// arbitrary with equal odds and each pair present with probability `p`,
/// plus one random predicate `Q`.
pub fn random_structure<R: Rng>(rng: &mut R, n: u32, k: usize, p: f64) -> BinaryStructure {
    let mut s = BinaryStructure::new((0..n).map(VertexId));
    for c in 1..=k {
        let kind = if rng.gen_bool(0.5) {
            RelationKind::Symmetric
        } else {
            RelationKind::Arbitrary
        };
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let wanted = match kind {
                    RelationKind::Symmetric => u < v,
                    RelationKind::Arbitrary => true,
                };
                if wanted && rng.gen_bool(p) {
                    pairs.push((VertexId(u), VertexId(v)));
                }
            }
        }
        s.add_relation(&format!("R{c}"), kind, pairs)
            .expect("fresh name");
    }
    let members: Vec<VertexId> = (0..n).filter(|_| rng.gen_bool(0.5)).map(VertexId).collect();
    s.add_predicate("Q", members).expect("fresh name");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, 3).gen();
        let b: u64 = trial_rng(7, 3).gen();
        let c: u64 = trial_rng(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn independent_sets_are_independent() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 8, 0.5);
            let i = random_independent_set(&mut rng, &g, 0.7);
            assert!(g.is_independent(&i).unwrap());
        }
    }

    #[test]
    fn interval_models_are_valid() {
        let mut rng = trial_rng(2, 0);
        for _ in 0..50 {
            random_interval_model(&mut rng, 8, 10).validate().unwrap();
        }
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
    }
}
