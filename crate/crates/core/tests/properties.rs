use std::collections::BTreeMap;

use proptest::prelude::*;
use vmlab::canon::canonical_form;
use vmlab::flips::{apply_flip, Flip};
use vmlab::vminor::{apply_witness, local_complement, VMinorWitness};
use vmlab::{Distance, Graph, VertexId, VertexSet};

fn graph() -> impl Strategy<Value = Graph> {
    (1u32..=9).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_flip() -> impl Strategy<Value = (Graph, Flip)> {
    (graph(), 1usize..=3).prop_flat_map(|(g, k)| {
        let n = g.order();
        (
            Just(g),
            proptest::collection::vec(1..=k, n),
            proptest::collection::vec(any::<bool>(), k * (k + 1) / 2),
        )
            .prop_map(move |(g, classes, bits)| {
                let iota: BTreeMap<VertexId, usize> =
                    g.vertices().iter().copied().zip(classes).collect();
                let ones = (1..=k).flat_map(|i| (i..=k).map(move |j| (i, j)));
                let tau: Vec<(usize, usize)> =
                    ones.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
                let f = Flip::new(k, iota, tau).unwrap();
                (g, f)
            })
    })
}

proptest! {
    #[test]
    fn flips_are_involutions((g, f) in graph_and_flip()) {
        prop_assert_eq!(apply_flip(&apply_flip(&g, &f).unwrap(), &f).unwrap(), g);
    }

    #[test]
    fn coarsening_keeps_the_action((g, f) in graph_and_flip()) {
        let c = f.coarsen();
        prop_assert!(c.actual_class_count() <= f.actual_class_count());
        prop_assert_eq!(apply_flip(&g, &c).unwrap(), apply_flip(&g, &f).unwrap());
    }

    #[test]
    fn text_formats_roundtrip((g, f) in graph_and_flip()) {
        prop_assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        prop_assert_eq!(Flip::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn deletion_commutes_with_complementation(g in graph(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (*a.get(g.vertices()), *b.get(g.vertices()));
        prop_assume!(u != v);
        let del: VertexSet = [u].into();
        let lhs = local_complement(&g.delete(&del).unwrap(), v).unwrap();
        let rhs = local_complement(&g, v).unwrap().delete(&del).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(), shift in 0u32..50) {
        let n = g.order() as u32;
        let map: BTreeMap<VertexId, VertexId> = g
            .vertices()
            .iter()
            .map(|v| (*v, VertexId((n - 1 - v.0) * 3 + shift)))
            .collect();
        let h = g.relabel(&map).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn one_round_at_most_halves_distances(g in graph(), keep in proptest::collection::vec(any::<bool>(), 9)) {
        let mut i = VertexSet::new();
        for (&v, &k) in g.vertices().iter().zip(&keep) {
            if k && i.iter().all(|&u| !g.adjacent(u, v)) {
                i.insert(v);
            }
        }
        let w = VMinorWitness { steps: vec![i], deletions: VertexSet::new() };
        let h = apply_witness(&g, &w).unwrap();
        let (before, after) = (g.distances(), h.distances());
        for &x in g.vertices() {
            for &y in g.vertices() {
                match (before.get(x, y), after.get(x, y)) {
                    (Distance::Finite(b), Distance::Finite(a)) => prop_assert!(2 * a >= b),
                    (Distance::Infinite, a) => prop_assert_eq!(a, Distance::Infinite),
                    _ => {}
                }
            }
        }
    }
}
