use std::collections::BTreeMap;
use std::path::Path;

use vmlab::families::{
    comparability_grid_labeled, crossing_labeled, half_graph_host, half_graph_labeled,
    ordered_matching_graph_labeled, permutation_graph, power_split_interval,
    split_interval_labeled, CrossingKind, Labeled, Matching,
};
use vmlab::random::{random_graph, trial_rng};
use vmlab::{Graph, VertexId};

use crate::io::{emit, parse_num, read, sidecar, usage, write, CliResult};
use crate::{Cli, Format};

pub const FAMILIES: [&str; 13] = [
    "half-graph",
    "comparability-grid",
    "permutation",
    "star-crossing",
    "clique-crossing",
    "half-crossing",
    "ordered-matching",
    "power-split-interval",
    "half-graph-host",
    "path",
    "cycle",
    "complete",
    "random",
];

fn unlabeled(graph: Graph) -> Labeled {
    let labels = graph
        .vertices()
        .iter()
        .map(|v| (*v, v.to_string()))
        .collect();
    Labeled { graph, labels }
}

fn one(family: &str, params: &[String]) -> CliResult<usize> {
    match params {
        [n] => parse_num(family, n),
        _ => Err(usage(format!("{family} takes one parameter"))),
    }
}

fn two(family: &str, params: &[String]) -> CliResult<(usize, usize)> {
    match params {
        [a, b] => Ok((parse_num(family, a)?, parse_num(family, b)?)),
        _ => Err(usage(format!("{family} takes two parameters"))),
    }
}

fn sequence(family: &str, params: &[String]) -> CliResult<Vec<usize>> {
    params.iter().map(|p| parse_num(family, p)).collect()
}

/// Rows of whitespace-separated 0/1 entries.
fn read_matrix(path: &Path) -> CliResult<Vec<Vec<u8>>> {
    read(path)?
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| parse_num("layer matrix entry", t))
                .collect()
        })
        .collect()
}

fn generate(
    cli: &Cli,
    family: &str,
    params: &[String],
    layer_tau: Option<&Path>,
) -> CliResult<Labeled> {
    let tau = layer_tau.map(read_matrix).transpose()?;
    if tau.is_some() && !family.ends_with("-crossing") {
        return Err(usage("--layer-tau only applies to crossings"));
    }
    let small = |n: usize| -> CliResult<u32> {
        u32::try_from(n).map_err(|_| usage(format!("{family}: {n} is too large")))
    };
    Ok(match family {
        "half-graph" => half_graph_labeled(one(family, params)?)?,
        "comparability-grid" => comparability_grid_labeled(one(family, params)?)?,
        "permutation" => unlabeled(permutation_graph(&sequence(family, params)?)?),
        "star-crossing" | "clique-crossing" | "half-crossing" => {
            let kind: CrossingKind = family.trim_end_matches("-crossing").parse()?;
            let (r, n) = two(family, params)?;
            crossing_labeled(kind, r, n, tau.as_deref())?
        }
        "ordered-matching" => ordered_matching_graph_labeled(&Matching::from_permutation(
            &sequence(family, params)?,
        )?)?,
        "power-split-interval" => power_split_interval(one(family, params)?)?.1,
        "half-graph-host" => split_interval_labeled(&half_graph_host(one(family, params)?)?)?,
        "path" => unlabeled(Graph::path(small(one(family, params)?)?)),
        "cycle" => unlabeled(Graph::cycle(small(one(family, params)?)?)),
        "complete" => unlabeled(Graph::complete(small(one(family, params)?)?)),
        "random" => {
            let [n, p] = params else {
                return Err(usage("random takes an order and an edge probability"));
            };
            let p: f64 = parse_num(family, p)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(usage("edge probability must lie in [0, 1]"));
            }
            unlabeled(random_graph(
                &mut trial_rng(cli.seed, 0),
                small(parse_num(family, n)?)?,
                p,
            ))
        }
        _ => {
            return Err(usage(format!(
                "unknown family {family:?}; expected one of {}",
                FAMILIES.join(", ")
            )))
        }
    })
}

pub fn run(
    cli: &Cli,
    family: &str,
    params: &[String],
    layer_tau: Option<&Path>,
    out: Option<&Path>,
) -> CliResult<u8> {
    let lab = generate(cli, family, params, layer_tau)?;
    let text = match cli.format {
        Format::Dot => lab.graph.to_dot(Some(&lab.labels)),
        Format::Text => lab.graph.to_text(),
        Format::JsonWitness => {
            let labels: BTreeMap<VertexId, &str> =
                lab.labels.iter().map(|(v, l)| (*v, l.as_str())).collect();
            let json = serde_json::json!({
                "family": family,
                "params": params,
                "graph": lab.graph.to_text(),
                "labels": labels,
            });
            format!("{json:#}\n")
        }
    };
    emit(out, &text)?;
    if let Some(out) = out {
        write(&sidecar(out), &lab.labels_to_text())?;
    }
    Ok(0)
}
