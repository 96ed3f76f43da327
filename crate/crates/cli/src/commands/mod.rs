mod gen;
mod op;

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::json;
use vmlab::logic::{
    evaluate_with, parse_definitions, parse_formula, table, Assignment, Limits, Vocabulary,
};
use vmlab::search::{is_depth_r_vminor_with, ContainmentCaps};
use vmlab::structures::BinaryStructure;
use vmlab::verify::{run_suite, VerifyOptions, SUITES};
use vmlab::vminor::apply_witness;
use vmlab::VertexId;

use crate::io::{parse_num, read, read_graph, usage, write, CliResult};
use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Gen {
            family,
            params,
            layer_tau,
            out,
        } => gen::run(cli, family, params, layer_tau.as_deref(), out.as_deref()),
        Command::Verify {
            suite,
            n,
            r,
            extended,
            report,
        } => verify(cli, suite, *n, *r, *extended, report.as_deref()),
        Command::Op {
            name,
            graph,
            args,
            out,
        } => op::run(cli, name, graph, args, out.as_deref()),
        Command::Contains { g, h, r } => contains(cli, g, h, *r),
        Command::Eval {
            structure,
            formula,
            assignment,
            defs,
        } => eval(cli, structure, formula, assignment, defs.as_deref()),
    }
}

fn verify(
    cli: &Cli,
    suite: &str,
    n: Option<usize>,
    r: Option<usize>,
    extended: bool,
    out: Option<&Path>,
) -> CliResult<u8> {
    if !SUITES.contains(&suite) {
        return Err(usage(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let options = VerifyOptions {
        seed: cli.seed,
        trials: cli.trials,
        n,
        r,
        extended,
    };
    let report = run_suite(suite, &options)?;
    let command: Vec<String> = std::env::args().collect();
    let full = json!({ "command": command, "report": report });
    if let Some(out) = out {
        write(out, &format!("{full:#}\n"))?;
    }
    match cli.format {
        Format::JsonWitness => println!("{full:#}"),
        _ => print!("{}", report.summary()),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn contains(cli: &Cli, g_path: &Path, h_path: &Path, r: usize) -> CliResult<u8> {
    let g = read_graph(g_path)?;
    let h = read_graph(h_path)?;
    let defaults = ContainmentCaps::default();
    let caps = ContainmentCaps {
        max_order: cli.cap_n.unwrap_or(defaults.max_order),
        max_depth: cli.cap_depth.unwrap_or(defaults.max_depth),
    };
    let res = is_depth_r_vminor_with(&g, &h, r, caps)?;
    match cli.format {
        Format::JsonWitness => {
            let json = json!({
                "g": g_path.display().to_string(),
                "h": h_path.display().to_string(),
                "r": r,
                "caps": caps,
                "result": res,
            });
            println!("{json:#}");
        }
        Format::Dot => {
            if let (Some(w), Some(map)) = (&res.witness, &res.map) {
                let labels: BTreeMap<VertexId, String> =
                    map.iter().map(|(hv, gv)| (*gv, format!("h{hv}"))).collect();
                print!("{}", apply_witness(&g, w)?.to_dot(Some(&labels)));
            }
        }
        Format::Text => {
            match (&res.witness, &res.map) {
                (Some(w), Some(map)) => {
                    println!("found at depth {}", w.depth());
                    print!("{}", w.to_text());
                    let pairs: Vec<String> =
                        map.iter().map(|(hv, gv)| format!("{hv}->{gv}")).collect();
                    println!("map {}", pairs.join(" "));
                }
                _ => println!("refuted at depth {r}"),
            }
            println!(
                "nodes {} dedup_hits {}",
                res.stats.nodes, res.stats.dedup_hits
            );
        }
    }
    Ok(if res.found { 0 } else { 1 })
}

fn parse_assignment(items: &[String]) -> CliResult<Assignment> {
    items
        .iter()
        .map(|item| {
            let (var, id) = item
                .split_once('=')
                .ok_or_else(|| usage(format!("assignment {item:?} is not `var=id`")))?;
            Ok((var.to_string(), VertexId(parse_num("element", id)?)))
        })
        .collect()
}

/// With an assignment, prints the truth value and exits 1 when false.
/// Without one, prints every satisfying tuple of the free variables.
fn eval(
    cli: &Cli,
    structure: &Path,
    formula: &Path,
    assignment: &[String],
    defs: Option<&Path>,
) -> CliResult<u8> {
    let s = BinaryStructure::from_text(&read(structure)?)?;
    let mut vocab = Vocabulary::of(&s);
    if let Some(defs) = defs {
        vocab = parse_definitions(&read(defs)?, &vocab)?;
    }
    let phi = parse_formula(&read(formula)?, &vocab)?;
    let limits = Limits {
        max_domain: cli.cap_n.unwrap_or(Limits::default().max_domain),
        ..Limits::default()
    };
    let free = phi.free_vars();
    if assignment.is_empty() && !free.is_empty() {
        let vars: Vec<&str> = free.iter().map(String::as_str).collect();
        let rows = table(&s, &phi, &vars, limits)?;
        println!("{}", vars.join(" "));
        for (tuple, _) in rows.iter().filter(|(_, holds)| *holds) {
            let ids: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
            println!("{}", ids.join(" "));
        }
        return Ok(0);
    }
    let holds = evaluate_with(&s, &phi, &parse_assignment(assignment)?, limits)?;
    println!("{holds}");
    Ok(if holds { 0 } else { 1 })
}
