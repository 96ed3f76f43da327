use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use vmlab::logic::Formula;
use vmlab::structures::BinaryStructure;
use vmlab::VertexId;

/// Tarski semantics by direct recursion, no compilation and no memo.
pub fn eval(s: &BinaryStructure, phi: &Formula, env: &mut BTreeMap<String, VertexId>) -> bool {
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Eq(x, y) => env[x] == env[y],
        Formula::Rel(r, x, y) => {
            let idx = s.relation_index(r).expect("known relation");
            s.relations()[idx].holds(env[x], env[y])
        }
        Formula::Pred(p, x) => s.predicate(p).is_some_and(|set| set.contains(&env[x])),
        Formula::Not(a) => !eval(s, a, env),
        Formula::And(a, b) => eval(s, a, env) && eval(s, b, env),
        Formula::Or(a, b) => eval(s, a, env) || eval(s, b, env),
        Formula::Implies(a, b) => !eval(s, a, env) || eval(s, b, env),
        Formula::Iff(a, b) => eval(s, a, env) == eval(s, b, env),
        Formula::Exists(x, a) | Formula::Forall(x, a) => {
            let want = matches!(phi, Formula::Exists(..));
            let saved = env.get(x).copied();
            let mut result = !want;
            for &v in s.domain() {
                env.insert(x.clone(), v);
                if eval(s, a, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(v) => env.insert(x.clone(), v),
                None => env.remove(x),
            };
            result
        }
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// A random formula over the relations and predicates of `s`, with
/// quantifier rank at most `rank`.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    s: &BinaryStructure,
    depth: usize,
    rank: usize,
) -> Formula {
    let var = |rng: &mut R| VARS.choose(rng).unwrap().to_string();
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..5) {
            0 => Formula::Eq(var(rng), var(rng)),
            1 if !s.predicates().is_empty() => {
                let p = s
                    .predicates()
                    .keys()
                    .cloned()
                    .collect::<Vec<_>>()
                    .choose(rng)
                    .unwrap()
                    .clone();
                Formula::Pred(p, var(rng))
            }
            _ if !s.relations().is_empty() => {
                let r = s.relations().choose(rng).unwrap().name.clone();
                Formula::Rel(r, var(rng), var(rng))
            }
            _ => Formula::True,
        };
    }
    let sub = |rng: &mut R, rank| Box::new(random_formula(rng, s, depth - 1, rank));
    match rng.gen_range(0..7) {
        0 => Formula::Not(sub(rng, rank)),
        1 => Formula::And(sub(rng, rank), sub(rng, rank)),
        2 => Formula::Or(sub(rng, rank), sub(rng, rank)),
        3 => Formula::Implies(sub(rng, rank), sub(rng, rank)),
        4 => Formula::Iff(sub(rng, rank), sub(rng, rank)),
        5 if rank > 0 => Formula::Exists(var(rng), sub(rng, rank - 1)),
        6 if rank > 0 => Formula::Forall(var(rng), sub(rng, rank - 1)),
        _ => Formula::Not(sub(rng, rank)),
    }
}
