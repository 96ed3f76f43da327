//! Suites over structures and formulas.

use std::collections::BTreeSet;

use rand::Rng;
use serde_json::json;

use super::Recorder;
use crate::error::{Error, Result};
use crate::families::{power_split_interval, PowerIds};
use crate::graph::VertexId;
use crate::logic::library::{instantiate, split_interval_vocabulary};
use crate::logic::{permutation_roundtrip, satisfying_set, table, Limits};
use crate::random::{all_permutations, random_structure, trial_rng};
use crate::structures::{interpretation_k, transduction_x, BinaryStructure};

pub(super) fn roundtrip_xk(rec: &mut Recorder, seed: u64, trials: usize) {
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=3);
        let p = rng.gen_range(0.1..0.6);
        let s = random_structure(&mut rng, n, k, p);
        let inst = json!({ "structure": s.to_text() });
        rec.check(t, &inst, |_| {
            let back = interpretation_k(&transduction_x(&s)?, &s.signature())?;
            if back != s {
                return Err(Error::InternalInvariant("K(X(M)) differs from M".into()));
            }
            Ok(())
        });
    }
}

/// Largest power construction the evaluator is run on.
const MAX_EXAMPLE_N: usize = 4;

pub(super) fn example_si(rec: &mut Recorder, n: Option<usize>, extended: bool) -> Result<()> {
    let ns: Vec<usize> = match n {
        Some(n) if n > MAX_EXAMPLE_N => {
            return Err(Error::Capacity {
                what: "power construction size",
                got: n,
                limit: MAX_EXAMPLE_N,
            })
        }
        Some(n) => vec![n],
        None if extended => vec![2, 3, 4],
        None => vec![2, 3],
    };
    let vocab = split_interval_vocabulary()?;
    let nu = instantiate(&vocab, "nu", &["x"])?;
    let eta = instantiate(&vocab, "eta", &["x"])?;
    let phi = instantiate(&vocab, "phi", &["x", "y"])?;
    for n in ns {
        let (_, lab) = power_split_interval(n)?;
        let s = BinaryStructure::from_graph(&lab.graph);
        let limits = Limits {
            max_domain: s.domain().len().max(Limits::default().max_domain),
            ..Limits::default()
        };
        let inst = json!({ "n": n });
        rec.check(n as u64, &inst, |_| {
            let ids = PowerIds { n };
            let a_side: BTreeSet<VertexId> =
                (1..=n).flat_map(|i| [ids.a(i), ids.a_prime(i)]).collect();
            let b_side: BTreeSet<VertexId> = ids.subsets().map(|m| ids.b(m)).collect();
            if satisfying_set(&s, &nu, "x", limits)? != a_side {
                return Err(Error::InternalInvariant(
                    "nu does not pick out the a-vertices".into(),
                ));
            }
            if satisfying_set(&s, &eta, "x", limits)? != b_side {
                return Err(Error::InternalInvariant(
                    "eta does not pick out the b-vertices".into(),
                ));
            }
            let rows = table(&s, &phi, &["x", "y"], limits)?;
            for i in 1..=n {
                for m in ids.subsets() {
                    let pair = vec![ids.a(i), ids.b(m)];
                    let holds = rows
                        .iter()
                        .find(|(p, _)| *p == pair)
                        .is_some_and(|(_, h)| *h);
                    if holds != (m >> (i - 1) & 1 == 1) {
                        return Err(Error::InternalInvariant(format!(
                            "phi(a{i}, b{}) is {holds}",
                            crate::families::subset_label(n, m)
                        )));
                    }
                }
            }
            Ok(())
        });
    }
    Ok(())
}

pub(super) fn footnote_perm(rec: &mut Recorder, n: Option<usize>) {
    for size in 1..=n.unwrap_or(4) {
        for sigma in all_permutations(size) {
            let inst = json!({ "sigma": sigma });
            rec.check(size as u64, &inst, |_| {
                if permutation_roundtrip(&sigma)? {
                    Ok(())
                } else {
                    Err(Error::InternalInvariant("permutation not recovered".into()))
                }
            });
        }
    }
}
