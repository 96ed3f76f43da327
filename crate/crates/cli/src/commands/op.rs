use std::path::Path;

use vmlab::flips::{apply_flip, Flip};
use vmlab::vminor::{apply_witness, local_complement, local_complement_set, pivot, VMinorWitness};
use vmlab::{Graph, VertexId, VertexSet};

use crate::io::{emit, parse_num, read, read_graph, usage, CliResult};
use crate::{Cli, Format};

pub const OPS: [&str; 8] = [
    "lc",
    "lc-set",
    "pivot",
    "flip",
    "delete",
    "induced",
    "complement",
    "apply-witness",
];

fn vertex(s: &str) -> CliResult<VertexId> {
    Ok(VertexId(parse_num("vertex", s)?))
}

fn vertices(args: &[String]) -> CliResult<VertexSet> {
    args.iter().map(|a| vertex(a)).collect()
}

fn apply(name: &str, g: &Graph, args: &[String]) -> CliResult<Graph> {
    let arity = |n: usize| -> CliResult<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(usage(format!(
                "op {name} takes {n} argument(s), got {}",
                args.len()
            )))
        }
    };
    Ok(match name {
        "lc" => {
            arity(1)?;
            local_complement(g, vertex(&args[0])?)?
        }
        "lc-set" => local_complement_set(g, &vertices(args)?)?,
        "pivot" => {
            arity(2)?;
            pivot(g, vertex(&args[0])?, vertex(&args[1])?)?
        }
        "flip" => {
            arity(1)?;
            apply_flip(g, &Flip::from_text(&read(Path::new(&args[0]))?)?)?
        }
        "delete" => g.delete(&vertices(args)?)?,
        "induced" => g.induced_subgraph(&vertices(args)?)?,
        "complement" => {
            arity(0)?;
            g.complement()
        }
        "apply-witness" => {
            arity(1)?;
            apply_witness(g, &VMinorWitness::from_text(&read(Path::new(&args[0]))?)?)?
        }
        _ => {
            return Err(usage(format!(
                "unknown op {name:?}; expected one of {}",
                OPS.join(", ")
            )))
        }
    })
}

pub fn run(
    cli: &Cli,
    name: &str,
    graph: &Path,
    args: &[String],
    out: Option<&Path>,
) -> CliResult<u8> {
    let g = read_graph(graph)?;
    let result = apply(name, &g, args)?;
    let text = match cli.format {
        Format::Text => result.to_text(),
        Format::Dot => result.to_dot(None),
        Format::JsonWitness => {
            let json = serde_json::json!({
                "op": name,
                "input": graph.display().to_string(),
                "args": args,
                "graph": result.to_text(),
            });
            format!("{json:#}\n")
        }
    };
    emit(out, &text)?;
    Ok(0)
}
