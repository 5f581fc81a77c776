use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use index_coding::{
    algorithm1_cover, compare_methods, construction2, converted_graph, cover_code_length,
    eldg_cover, ldg_cover, minrank_exact, parse_instance, partition_multicast_length,
    reduce_pipeline, serialize_instance, theorem4_convert, verify_decodable, Error, IndexCode,
    Instance, SideInfoGraph, SolverConfig,
};

/// Index coding toolkit: conversion, reduction, covers, minrank and codes.
#[derive(Parser, Debug)]
#[command(name = "icsolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Instance file (.icp groupcast problem or .icg unicast graph).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Largest free-cell count searched per component by `minrank`.
    #[arg(long, global = true, default_value = "24")]
    budget: NonZeroUsize,

    /// Largest strongly connected component for the acyclic bound.
    #[arg(long = "mais-limit", global = true, default_value = "20")]
    mais_limit: NonZeroUsize,

    /// Largest message count for the partition multicast search.
    #[arg(long = "pm-limit", global = true, default_value = "12")]
    pm_limit: NonZeroUsize,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<NonZeroUsize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the single-unicast problem obtained by intersecting side information.
    Convert,
    /// Print the side-information graph of the converted problem.
    Graph,
    /// Run the reduction pipeline and print the audit and reduced graph.
    Reduce,
    /// Print the clique cover found by the Hadamard heuristic.
    Cover,
    /// Compute exact minrank with bounds and a certificate.
    Minrank,
    /// Build, lift and verify a code for the instance.
    Construct,
    /// Verify a code against the instance.
    Verify {
        /// Code file, one symbol per line such as `x1+x2`.
        #[arg(long)]
        code: PathBuf,
    },
    /// Partition multicast length and field size.
    PmBaseline,
    /// Compare the constructed code with partition multicast.
    Compare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn graph_of(instance: &Instance) -> SideInfoGraph {
    match instance {
        Instance::Graph(g) => g.clone(),
        Instance::Groupcast(p) => converted_graph(p),
    }
}

fn bits(row: &index_coding::Gf2Vector) -> String {
    (0..row.len())
        .map(|j| if row.get(j) { '1' } else { '0' })
        .collect()
}

/// Runs a command; returns its output and whether it succeeded.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure("missing --input <path>".into()))?;
    let parsed = parse_instance(&read(path)?)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let instance = parsed.instance;
    let cfg = SolverConfig {
        free_cell_budget: cli.budget.get(),
        mais_limit: cli.mais_limit.get(),
        partition_limit: cli.pm_limit.get(),
    };
    let mut out = String::new();
    let mut ok = true;
    match &cli.command {
        Command::Convert => {
            let p = theorem4_convert(&instance.to_problem());
            out.push_str(&serialize_instance(&Instance::Groupcast(p)));
        }
        Command::Graph => {
            out.push_str(&serialize_instance(&Instance::Graph(graph_of(&instance))));
        }
        Command::Reduce => {
            let r = reduce_pipeline(&graph_of(&instance))?;
            for e in &r.audit {
                writeln!(out, "{e}").unwrap();
            }
            let red = &r.reduced;
            for i in 0..red.origin.len() {
                let members: Vec<String> = red.origin[i]
                    .members()
                    .iter()
                    .map(|v| (v + 1).to_string())
                    .collect();
                writeln!(out, "vertex {} := {}", red.name(i), members.join(" ")).unwrap();
            }
            for (a, b) in red.graph.edges() {
                writeln!(out, "edge {} {}", red.name(a), red.name(b)).unwrap();
            }
            writeln!(out, "vertices={}", red.origin.len()).unwrap();
            writeln!(out, "exact={}", r.exact).unwrap();
        }
        Command::Cover => {
            let g = graph_of(&instance);
            let cover = algorithm1_cover(&g);
            out.push_str(&cover.render());
            writeln!(out, "length={}", cover_code_length(&cover)).unwrap();
            writeln!(out, "ldg_length={}", cover_code_length(&ldg_cover(&g))).unwrap();
            writeln!(out, "eldg_length={}", cover_code_length(&eldg_cover(&g))).unwrap();
        }
        Command::Minrank => {
            let r = minrank_exact(&graph_of(&instance), &cfg)?;
            writeln!(out, "minrank={}", r.value).unwrap();
            match r.mais_lower {
                Some(m) => writeln!(out, "mais={m}").unwrap(),
                None => writeln!(out, "mais=unknown").unwrap(),
            }
            writeln!(out, "cover_upper={}", r.cover_upper).unwrap();
            for e in &r.reductions {
                writeln!(out, "{e}").unwrap();
            }
            for row in r.certificate.rows() {
                writeln!(out, "row {}", bits(row)).unwrap();
            }
        }
        Command::Construct => {
            let c = construction2(&instance.to_problem())?;
            for w in &c.warnings {
                eprintln!("warning: {w}");
            }
            for line in &c.audit {
                writeln!(out, "{line}").unwrap();
            }
            out.push_str(&c.code.render());
            writeln!(out, "length={}", c.code.len()).unwrap();
            writeln!(out, "fallback={}", c.fallback).unwrap();
            out.push_str(&c.report.render());
            ok = c.report.overall;
        }
        Command::Verify { code } => {
            let p = instance.to_problem();
            let code = IndexCode::parse(&read(code)?, p.k())?;
            for i in code.duplicates() {
                eprintln!("warning: symbol {} repeats an earlier symbol", i + 1);
            }
            let report = verify_decodable(&code, &p)?;
            writeln!(out, "length={}", code.len()).unwrap();
            out.push_str(&report.render());
            ok = report.overall;
        }
        Command::PmBaseline => {
            let plan = partition_multicast_length(&instance.to_problem(), &cfg)?;
            for i in 0..plan.parts.len() {
                let members: Vec<String> = plan.parts[i]
                    .iter()
                    .map(|m| format!("x{}", m + 1))
                    .collect();
                let kappa = plan.kappa[i].map_or("none".to_string(), |k| k.to_string());
                writeln!(
                    out,
                    "part {} kappa={} cost={} field={}",
                    members.join(" "),
                    kappa,
                    plan.cost(i),
                    plan.field_size(i)
                )
                .unwrap();
            }
            writeln!(
                out,
                "length={} field={}",
                plan.total_length, plan.min_field_size
            )
            .unwrap();
        }
        Command::Compare => {
            let cmp = compare_methods(&instance.to_problem(), &cfg)?;
            match cli.format {
                Format::Machine => out.push_str(&cmp.render_machine()),
                Format::Text => out.push_str(&cmp.render_table()),
            }
            ok = cmp.construction.report.overall;
        }
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
