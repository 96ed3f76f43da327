use super::*;
use crate::canon::isomorphism;
use crate::graph::VertexSet;
use crate::vminor::{apply_witness, unsubdivide};

fn edge_set(g: &Graph) -> BTreeSet<(u32, u32)> {
    g.edges().into_iter().map(|(u, v)| (u.0, v.0)).collect()
}

#[test]
fn half_graphs() {
    assert_eq!(edge_set(&half_graph(1).unwrap()), [(0, 1)].into());
    let h2 = half_graph_labeled(2).unwrap();
    let a1 = h2.vertex("a1").unwrap();
    let b2 = h2.vertex("b2").unwrap();
    assert!(h2.graph.adjacent(a1, b2));
    assert!(!h2
        .graph
        .adjacent(h2.vertex("a2").unwrap(), h2.vertex("b1").unwrap()));
    assert_eq!(h2.graph.edge_count(), 3);

    let h3 = half_graph(3).unwrap();
    assert_eq!(h3.edge_count(), 6);
    let degs: Vec<usize> = h3
        .vertices()
        .iter()
        .map(|&v| h3.degree(v).unwrap())
        .collect();
    assert_eq!(degs, vec![3, 2, 1, 1, 2, 3]);
    for n in 1..8 {
        assert_eq!(half_graph(n).unwrap().edge_count(), n * (n + 1) / 2);
    }
    assert!(matches!(half_graph(0), Err(Error::Domain(_))));
}

#[test]
fn permutation_graphs() {
    assert_eq!(permutation_graph(&[1, 2, 3, 4]).unwrap().edge_count(), 0);
    let k3 = permutation_graph(&[3, 2, 1]).unwrap();
    assert_eq!(k3.edge_count(), 3);
    assert_eq!(
        edge_set(&permutation_graph(&[2, 1, 3]).unwrap()),
        [(1, 2)].into()
    );
    assert!(matches!(
        permutation_graph(&[1, 1, 3]),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        permutation_graph(&[1, 4, 2]),
        Err(Error::Domain(_))
    ));
}

#[test]
fn comparability_grids() {
    assert_eq!(comparability_grid(1).unwrap().order(), 1);
    let g = comparability_grid_labeled(2).unwrap();
    assert_eq!(g.graph.edge_count(), 5);
    let (x, y) = (g.vertex("a1,2").unwrap(), g.vertex("a2,1").unwrap());
    assert!(!g.graph.adjacent(x, y));
    let g3 = comparability_grid_labeled(3).unwrap();
    for i in 1..=3 {
        let row: VertexSet = (1..=3)
            .map(|j| g3.vertex(&format!("a{i},{j}")).unwrap())
            .collect();
        let col: VertexSet = (1..=3)
            .map(|j| g3.vertex(&format!("a{j},{i}")).unwrap())
            .collect();
        assert!(g3.graph.is_clique(&row).unwrap());
        assert!(g3.graph.is_clique(&col).unwrap());
    }
}

#[test]
fn star_crossing_counts() {
    let p3 = crossing(CrossingKind::Star, 1, 1, None).unwrap();
    assert!(isomorphism(&p3, &Graph::path(3), 10).unwrap().is_some());
    for r in 1..4 {
        for n in 1..4 {
            let g = crossing(CrossingKind::Star, r, n, None).unwrap();
            assert_eq!(g.order(), 2 * n + r * n * n);
            assert_eq!(g.edge_count(), (r + 1) * n * n);
        }
    }
}

#[test]
fn clique_and_half_crossings() {
    let ids = CrossingIds { r: 1, n: 2 };
    let c = crossing(CrossingKind::Clique, 1, 2, None).unwrap();
    // 8 path edges plus one clique edge per principal vertex
    assert_eq!(c.edge_count(), 8 + 4);
    assert!(c.adjacent(ids.p(1, 1, 1), ids.p(1, 2, 1)));
    assert!(c.adjacent(ids.p(1, 2, 1), ids.p(2, 2, 1)));

    let h = crossing(CrossingKind::Half, 1, 2, None).unwrap();
    assert!(h.adjacent(ids.a(1), ids.p(2, 1, 1)));
    assert!(!h.adjacent(ids.a(2), ids.p(1, 1, 1)));
    assert!(h.adjacent(ids.b(1), ids.p(1, 2, 1)));
    assert!(!h.adjacent(ids.b(2), ids.p(1, 1, 1)));
    // a1 and b1 each gain two edges
    assert_eq!(h.edge_count(), 8 + 4);
}

#[test]
fn flipped_crossing_applies_layer_flip() {
    let tau = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]];
    let g = crossing(CrossingKind::Star, 1, 3, Some(&tau)).unwrap();
    let ids = CrossingIds { r: 1, n: 3 };
    assert!(g
        .is_clique(&[1, 2, 3].iter().map(|&i| ids.a(i)).collect())
        .unwrap());
    let plain = crossing(CrossingKind::Star, 1, 3, None).unwrap();
    assert_eq!(g.edge_count(), plain.edge_count() + 3);
    assert!(matches!(
        crossing(CrossingKind::Star, 1, 3, Some(&tau[..2])),
        Err(Error::Domain(_))
    ));
}

#[test]
fn ordered_matching_graphs() {
    let m = Matching::new([(1, 1)]).unwrap();
    let g = ordered_matching_graph(&m).unwrap();
    assert!(isomorphism(&g, &Graph::path(3), 10).unwrap().is_some());
    assert_eq!(g.degree(VertexId(2)).unwrap(), 2);

    let fig = Matching::new([(1, 5), (2, 3), (3, 6), (4, 1), (5, 4), (6, 2)]).unwrap();
    let g = ordered_matching_graph_labeled(&fig).unwrap();
    assert_eq!(g.graph.order(), 18);
    let (a1, b1) = (g.vertex("a1").unwrap(), g.vertex("b1").unwrap());
    assert_eq!(g.graph.degree(a1).unwrap(), 6);
    assert_eq!(g.graph.degree(b1).unwrap(), 6);
    let m35 = g.vertex("m3,6").unwrap();
    assert_eq!(g.graph.degree(m35).unwrap(), 3 + 6);
    let pairs: VertexSet = (13..18).map(VertexId).chain([VertexId(12)]).collect();
    assert!(g.graph.is_independent(&pairs).unwrap());
    assert!(Matching::new([(1, 1), (1, 2)]).is_err());
}

#[test]
fn subdivisions() {
    let k3 = Graph::complete(3);
    let (g, _) = subdivision(&k3, 0).unwrap();
    assert_eq!(g, k3);
    let (c6, _) = subdivision(&k3, 1).unwrap();
    assert!(isomorphism(&c6, &Graph::cycle(6), 10).unwrap().is_some());
    let (g, map) = subdivision(&Graph::complete(4), 3).unwrap();
    assert_eq!(g.order(), 22);
    let w = unsubdivide(&g, &map).unwrap();
    assert_eq!(w.depth(), 2);
    assert_eq!(apply_witness(&g, &w).unwrap(), Graph::complete(4));
    assert_eq!(map.internal_vertices().len(), 18);
}
