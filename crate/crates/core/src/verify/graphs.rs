//! Suites over graph operations. Each check recomputes the claimed graph
//! from the defining adjacency formulas rather than trusting the operation
//! under test.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Map, Value};

use super::Recorder;
use crate::commute::{
    commute0 as commute0_op, commute0b as commute0b_op, commute_corollary_bwd,
    commute_corollary_fwd, commute_general, spread_flip,
};
use crate::error::{Error, Result};
use crate::families::{ordered_matching_graph, split_interval_to_ordered_matching, subdivision};
use crate::flips::{
    apply_flip, clean_flip, flip_classes_of, is_compatible_on, is_homogeneous, Flip,
};
use crate::graph::{Distance, Graph, VertexId, VertexSet};
use crate::random::{
    all_permutations, random_flip, random_graph, random_interval_model, trial_rng,
};
use crate::search::is_depth_r_vminor;
use crate::vminor::{
    apply_witness, local_complement, pivot as pivot_op, reduce_flip_by_pivots, unsubdivide,
};

pub(crate) fn instance(g: &Graph, f: Option<&Flip>, sets: &[(&str, &VertexSet)]) -> Value {
    let mut m = Map::new();
    m.insert("graph".into(), json!(g.to_text()));
    if let Some(f) = f {
        m.insert("flip".into(), json!(f.to_text()));
    }
    for (name, s) in sets {
        m.insert(
            (*name).into(),
            json!(s.iter().map(|v| v.0).collect::<Vec<_>>()),
        );
    }
    Value::Object(m)
}

fn mismatch(what: &str) -> Error {
    Error::InternalInvariant(format!("{what}: graphs differ"))
}

fn expect_eq(a: &Graph, b: &Graph, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(mismatch(what))
    }
}

/// `E_{G⊕F}(u,v) = E_G(u,v) + τ(ι u, ι v)` for `u ≠ v`.
fn flip_by_definition(g: &Graph, f: &Flip) -> Result<Graph> {
    let mut edges = Vec::new();
    for (a, &u) in g.vertices().iter().enumerate() {
        for &v in &g.vertices()[a + 1..] {
            let t = f.tau(class(f, u)?, class(f, v)?);
            if g.adjacent(u, v) ^ t {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.vertices().iter().copied(), edges)
}

fn class(f: &Flip, v: VertexId) -> Result<usize> {
    f.class_of(v).ok_or(Error::UnknownVertex(v))
}

/// `E_{G∗I}(u,v) = E_G(u,v) + Σ_{z∈I} E(u,z)E(z,v)` for `u ≠ v`, with `I`
/// independent.
fn lc_set_by_definition(g: &Graph, i: &VertexSet) -> Result<Graph> {
    if !g.is_independent(i)? {
        return Err(Error::Precondition("set is not independent".into()));
    }
    let mut edges = Vec::new();
    for (a, &u) in g.vertices().iter().enumerate() {
        for &v in &g.vertices()[a + 1..] {
            let common = i
                .iter()
                .filter(|&&z| g.adjacent(u, z) && g.adjacent(z, v))
                .count();
            if g.adjacent(u, v) ^ (common % 2 == 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.vertices().iter().copied(), edges)
}

/// Vertices kept at random when independent in every graph of `gs`.
fn independent_in<R: Rng>(rng: &mut R, gs: &[&Graph], keep: f64) -> VertexSet {
    let mut order = gs[0].vertices().to_vec();
    order.shuffle(rng);
    let mut out = VertexSet::new();
    for v in order {
        if rng.gen_bool(keep) && out.iter().all(|&u| gs.iter().all(|g| !g.adjacent(u, v))) {
            out.insert(v);
        }
    }
    out
}

fn random_instance<R: Rng>(rng: &mut R, max_n: u32, max_k: usize) -> (Graph, Flip) {
    let n = rng.gen_range(2..=max_n);
    let p = rng.gen_range(0.15..0.7);
    let g = random_graph(rng, n, p);
    let k = rng.gen_range(1..=max_k);
    let f = random_flip(rng, g.vertices(), k);
    (g, f)
}

/// Classes the coarsest equivalent flip needs.
fn class_count(f: &Flip) -> usize {
    f.coarsen().actual_class_count()
}

pub(super) fn flip_involution(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (g, f) = random_instance(&mut rng, 12, 4);
        let inst = instance(&g, Some(&f), &[]);
        rec.check(t, &inst, |_| {
            let once = apply_flip(&g, &f)?;
            expect_eq(&once, &flip_by_definition(&g, &f)?, "G ⊕ F")?;
            expect_eq(&apply_flip(&once, &f)?, &g, "(G ⊕ F) ⊕ F")
        });
    }
}

pub(super) fn lc_involution(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (n, p) = (rng.gen_range(1..=12), rng.gen_range(0.15..0.7));
        let g = random_graph(&mut rng, n, p);
        let v = *g.vertices().choose(&mut rng).expect("nonempty");
        let inst = instance(&g, None, &[("v", &[v].into())]);
        rec.check(t, &inst, |_| {
            let once = local_complement(&g, v)?;
            expect_eq(&once, &lc_set_by_definition(&g, &[v].into())?, "G ∗ v")?;
            expect_eq(&local_complement(&once, v)?, &g, "G ∗ v ∗ v")
        });
        // one trial in five also permutes the order inside a small set
        if t % 5 == 0 {
            let mut i = independent_in(&mut rng, &[&g], 0.6);
            while i.len() > 4 {
                let drop = *i.iter().next().expect("nonempty");
                i.remove(&drop);
            }
            let inst = instance(&g, None, &[("I", &i)]);
            rec.check(t, &inst, |_| {
                let expected = lc_set_by_definition(&g, &i)?;
                let items: Vec<VertexId> = i.iter().copied().collect();
                for perm in all_permutations(items.len()) {
                    let mut h = g.clone();
                    for p in perm {
                        h = local_complement(&h, items[p - 1])?;
                    }
                    expect_eq(&h, &expected, "ordering of G ∗ I")?;
                }
                Ok(())
            });
        }
    }
}

pub(super) fn pivot(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (n, p) = (rng.gen_range(2..=12), rng.gen_range(0.2..0.7));
        let mut g = random_graph(&mut rng, n, p);
        if g.edge_count() == 0 {
            g = Graph::from_edges(g.order() as u32, &[(0, 1)]).expect("valid");
        }
        let (u, v) = *g.edges().choose(&mut rng).expect("has an edge");
        let inst = instance(&g, None, &[("uv", &[u, v].into())]);
        rec.check(t, &inst, |_| {
            let lc = |h: &Graph, x| local_complement(h, x);
            let uvu = lc(&lc(&lc(&g, u)?, v)?, u)?;
            let vuv = lc(&lc(&lc(&g, v)?, u)?, v)?;
            expect_eq(&uvu, &vuv, "G∗u∗v∗u vs G∗v∗u∗v")?;
            let p = pivot_op(&g, u, v)?;
            expect_eq(&p, &uvu, "pivot")?;
            // external pairs toggle exactly between distinct classes of
            // N(u)∖N(v), N(v)∖N(u) and N(u)∩N(v)
            let part = |x: VertexId| match (g.adjacent(x, u), g.adjacent(x, v)) {
                (true, false) => Some(0),
                (false, true) => Some(1),
                (true, true) => Some(2),
                (false, false) => None,
            };
            for &x in g.vertices() {
                for &y in g.vertices() {
                    if x >= y || [u, v].contains(&x) || [u, v].contains(&y) {
                        continue;
                    }
                    let toggled = matches!((part(x), part(y)), (Some(a), Some(b)) if a != b);
                    if p.adjacent(x, y) != (g.adjacent(x, y) ^ toggled) {
                        return Err(Error::InternalInvariant(format!(
                            "pivot formula fails on {x}{y}"
                        )));
                    }
                }
            }
            Ok(())
        });
    }
}

pub(super) fn commute0(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (g, f) = random_instance(&mut rng, 12, 4);
        let gf = apply_flip(&g, &f).expect("total flip");
        let i = independent_in(&mut rng, &[&g, &gf], 0.5);
        let inst = instance(&g, Some(&f), &[("I", &i)]);
        let k = f.k();
        rec.check(t, &inst, |rec| {
            let out = commute0_op(&g, &f, &i)?;
            let lhs = flip_by_definition(&lc_set_by_definition(&g, &i)?, &out)?;
            let rhs = lc_set_by_definition(&flip_by_definition(&g, &f)?, &i)?;
            expect_eq(&lhs, &rhs, "(G∗I)⊕F′ vs (G⊕F)∗I")?;
            rec.bound(
                "commute0 classes",
                "k·2^k",
                class_count(&out),
                k << k,
                t,
                &inst,
            );
            Ok(())
        });
    }
}

pub(super) fn commute0b(rec: &mut Recorder, seed: u64, trials: usize) {
    let mut t = 0u64;
    let mut done = 0;
    while done < trials {
        let mut rng = trial_rng(seed, t);
        t += 1;
        let (g, f) = random_instance(&mut rng, 10, 3);
        // an independent I is homogeneous for every flip
        let i = independent_in(&mut rng, &[&g], 0.7);
        let Ok(traces) = flip_classes_of(&f, &i) else {
            continue;
        };
        let Some(trace) = traces.choose(&mut rng) else {
            continue;
        };
        let gf = apply_flip(&g, &f).expect("total flip");
        let mut j: VertexSet = trace
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        if j.is_empty() {
            j.insert(*trace.iter().next().expect("nonempty"));
        }
        if !gf.is_independent(&j).expect("known ids") {
            j = [*j.iter().next().expect("nonempty")].into();
        }
        done += 1;
        let inst = instance(&g, Some(&f), &[("I", &i), ("J", &j)]);
        rec.check(t - 1, &inst, |_| {
            let out = commute0b_op(&g, &f, &i, &j)?;
            let lhs = flip_by_definition(&lc_set_by_definition(&g, &j)?, &out.flip)?;
            let rhs = lc_set_by_definition(&gf, &j)?;
            expect_eq(&lhs, &rhs, "(G∗J)⊕F′ vs (G⊕F)∗J")?;
            if !is_compatible_on(&f, &out.flip, &j)? {
                return Err(Error::InternalInvariant(
                    "F′ is not J-compatible with F".into(),
                ));
            }
            let rest: VertexSet = i.difference(&j).copied().collect();
            if !is_homogeneous(&lc_set_by_definition(&g, &j)?, &out.flip, &rest)? {
                return Err(Error::InternalInvariant(
                    "I∖J is not F′-homogeneous in G∗J".into(),
                ));
            }
            if !is_compatible_on(&f, &out.flip, &i)? {
                return Err(Error::InternalInvariant(
                    "F′ is not I-compatible with F".into(),
                ));
            }
            Ok(())
        });
    }
}

fn check_partition(parts: &[VertexSet], i: &VertexSet, k: usize) -> Result<()> {
    let total: usize = parts.iter().map(VertexSet::len).sum();
    let union: VertexSet = parts.iter().flatten().copied().collect();
    if parts.iter().any(VertexSet::is_empty) || total != union.len() || union != *i {
        return Err(Error::InternalInvariant("parts do not partition I".into()));
    }
    if parts.len() > 2 * k {
        return Err(Error::InternalInvariant(format!(
            "{} parts exceed 2k = {}",
            parts.len(),
            2 * k
        )));
    }
    Ok(())
}

fn replay(g: &Graph, parts: &[VertexSet]) -> Result<Graph> {
    let mut h = g.clone();
    for (step, p) in parts.iter().enumerate() {
        if let Some((u, v)) = h.first_edge_inside(p)? {
            return Err(Error::FaultyComplementation {
                step: Some(step),
                relation: None,
                u,
                v,
            });
        }
        h = lc_set_by_definition(&h, p)?;
    }
    Ok(h)
}

pub(super) fn commute(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (g, f) = random_instance(&mut rng, 10, 3);
        let gf = apply_flip(&g, &f).expect("total flip");
        let i = independent_in(&mut rng, &[&g], 0.6);
        let i2 = independent_in(&mut rng, &[&gf], 0.6);
        let inst = instance(&g, Some(&f), &[("I", &i), ("I_fwd", &i2)]);
        rec.check(t, &inst, |_| {
            let k = flip_classes_of(&f, &i)?.len();
            let res = commute_general(&g, &f, &i)?;
            check_partition(&res.partition, &i, k)?;
            let lhs = flip_by_definition(&lc_set_by_definition(&g, &i)?, &res.flip)?;
            expect_eq(&lhs, &replay(&gf, &res.partition)?, "commute")?;

            let k2 = flip_classes_of(&f, &i2)?.len();
            let fwd = commute_corollary_fwd(&g, &f, &i2)?;
            check_partition(&fwd.partition, &i2, k2)?;
            let lhs = flip_by_definition(&replay(&g, &fwd.partition)?, &fwd.flip)?;
            expect_eq(&lhs, &lc_set_by_definition(&gf, &i2)?, "forward corollary")?;

            let bwd = commute_corollary_bwd(&g, &f, &i)?;
            check_partition(&bwd.partition, &i, k)?;
            let rev: Vec<VertexSet> = bwd.partition.iter().rev().cloned().collect();
            let lhs = replay(&flip_by_definition(&g, &bwd.flip)?, &rev)?;
            expect_eq(
                &lhs,
                &flip_by_definition(&lc_set_by_definition(&g, &i)?, &f)?,
                "backward corollary",
            )
        });
    }
}

pub(super) fn clean(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (g, f) = random_instance(&mut rng, 12, 4);
        let i = independent_in(&mut rng, &[&g], 0.6);
        let inst = instance(&g, Some(&f), &[("I", &i)]);
        rec.check(t, &inst, |rec| {
            let out = clean_flip(&g, &f, &i)?;
            let got = flip_by_definition(&g, &out)?;
            let before = flip_by_definition(&g, &f)?;
            let kept: Vec<(VertexId, VertexId)> = before
                .edges()
                .into_iter()
                .filter(|(u, v)| !(i.contains(u) && i.contains(v)))
                .collect();
            expect_eq(
                &got,
                &Graph::new(g.vertices().iter().copied(), kept)?,
                "clean",
            )?;
            rec.bound(
                "clean classes",
                "2k",
                class_count(&out),
                2 * f.k(),
                t,
                &inst,
            );
            Ok(())
        });
    }
}

pub(super) fn spread(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (g, f) = random_instance(&mut rng, 12, 3);
        let i = independent_in(&mut rng, &[&g], 0.5);
        let inst = instance(&g, Some(&f), &[("I", &i)]);
        let k = f.k();
        rec.check(t, &inst, |rec| {
            let out = spread_flip(&g, &f, &i)?;
            let before = flip_by_definition(&g, &f)?.distances();
            let after = flip_by_definition(&lc_set_by_definition(&g, &i)?, &out)?.distances();
            for &x in g.vertices() {
                for &y in g.vertices() {
                    let ok = match (before.get(x, y), after.get(x, y)) {
                        (Distance::Infinite, a) => a == Distance::Infinite,
                        (_, Distance::Infinite) => true,
                        (Distance::Finite(b), Distance::Finite(a)) => 2 * a >= b,
                    };
                    if !ok {
                        return Err(Error::InternalInvariant(format!(
                            "distance {x}{y} shrank more than half"
                        )));
                    }
                }
            }
            rec.bound(
                "spread classes",
                "2k·2^{2k}",
                class_count(&out),
                (2 * k) << (2 * k),
                t,
                &inst,
            );
            Ok(())
        });
    }
}

pub(super) fn svm_flip(rec: &mut Recorder, seed: u64, trials: usize) {
    let mut t = 0u64;
    let mut done = 0;
    while done < trials {
        let mut rng = trial_rng(seed, t);
        t += 1;
        let (g, f) = random_instance(&mut rng, 12, 4);
        let k = f.k();
        // one vertex per class, pairwise nonadjacent
        let mut order = g.vertices().to_vec();
        order.shuffle(&mut rng);
        let mut i = VertexSet::new();
        for v in order {
            let c = f.class_of(v);
            if i.iter().all(|&u| f.class_of(u) != c && !g.adjacent(u, v)) {
                i.insert(v);
            }
        }
        if i.len() != k {
            continue;
        }
        done += 1;
        let inst = instance(&g, Some(&f), &[("I", &i)]);
        rec.check(t - 1, &inst, |rec| {
            let seq = reduce_flip_by_pivots(&g, &f, &i)?;
            rec.bound(
                "complementations",
                "⌊3k/2⌋",
                seq.len(),
                3 * k / 2,
                t - 1,
                &inst,
            );
            for z in &i {
                let uses = seq.iter().filter(|&&x| x == *z).count();
                rec.bound("uses per vertex", "2", uses, 2, t - 1, &inst);
            }
            let mut h = flip_by_definition(&g, &f)?;
            for &z in &seq {
                h = lc_set_by_definition(&h, &[z].into())?;
            }
            let closed = g.closed_neighborhood(&i)?;
            expect_eq(
                &h.delete(&closed)?,
                &g.delete(&closed)?,
                "reduced flip outside N[I]",
            )
        });
    }
}

/// `⌈log₂(r+1)⌉` as the bit length of `r`.
fn log_depth(r: usize) -> usize {
    (usize::BITS - r.leading_zeros()) as usize
}

pub(super) fn unsub(rec: &mut Recorder, seed: u64, trials: usize, only_r: Option<usize>) {
    let rs: Vec<usize> = only_r.map_or((0..=7).collect(), |r| vec![r]);
    let mut deepest = 0;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let (n, p) = (rng.gen_range(1..=6), rng.gen_range(0.2..0.7));
        let h = random_graph(&mut rng, n, p);
        for &r in &rs {
            let inst = json!({ "graph": h.to_text(), "r": r });
            let mut depth = 0;
            rec.check(t, &inst, |_| {
                let (g, map) = subdivision(&h, r)?;
                let w = unsubdivide(&g, &map)?;
                depth = w.depth();
                let want = if h.edge_count() == 0 { 0 } else { log_depth(r) };
                if depth != want {
                    return Err(Error::InternalInvariant(format!(
                        "depth {depth}, expected {want}"
                    )));
                }
                expect_eq(&apply_witness(&g, &w)?, &h, "unsubdivision replay")?;
                if g.order() <= 10 && depth <= 3 {
                    let found = is_depth_r_vminor(&g, &h, depth)?;
                    if !found.found {
                        return Err(Error::InternalInvariant(
                            "containment search misses the witness".into(),
                        ));
                    }
                }
                Ok(())
            });
            deepest = deepest.max(depth);
        }
    }
    rec.observe("max_depth", json!(deepest));
}

pub(super) fn om2si(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let model = random_interval_model(&mut rng, 8, 8);
        let inst = json!({
            "points": model.points.iter().map(|(v, p)| json!([v.0, p.to_string()])).collect::<Vec<_>>(),
            "intervals": model.intervals.iter().map(|(v, l, r)| json!([v.0, l.to_string(), r.to_string()])).collect::<Vec<_>>(),
        });
        rec.check(t, &inst, |_| {
            let h = model.graph()?;
            let e = split_interval_to_ordered_matching(&model)?;
            let om = local_complement(&ordered_matching_graph(&e.matching)?, e.a1)?;
            let image: VertexSet = e.embedding.values().copied().collect();
            if image.len() != e.embedding.len() || e.embedding.len() != h.order() {
                return Err(Error::InternalInvariant(
                    "embedding is not injective and total".into(),
                ));
            }
            for &u in h.vertices() {
                for &v in h.vertices() {
                    if u < v && h.adjacent(u, v) != om.adjacent(e.embedding[&u], e.embedding[&v]) {
                        return Err(Error::InternalInvariant(format!(
                            "embedding breaks pair {u}{v}"
                        )));
                    }
                }
            }
            Ok(())
        });
    }
}
