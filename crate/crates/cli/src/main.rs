//! `arcorient`: batch front-end for orientations, lifting graphs, decompositions, exhaustion
//! simulations and the property corpora.
//!
//! Exit codes: 0 all checks pass, 1 input or usage error, 2 a check failed.

mod report;

use anyhow::{bail, Context};
use arcorient_core::connectivity::{arc_connectivity_violation, edge_connectivity_violation};
use arcorient_core::corpus::{run_suite, CorpusOptions, Suite};
use arcorient_core::infinite::{
    decompose_with, run_simulation, DecomposeOptions, Generator, LazyGraph, SimulationOptions,
};
use arcorient_core::lifting::{
    check_hypotheses, classify, enumerate_dangerous_sets_bounded, frank_matching,
    lifting_graph_unchecked, LiftingClass, TargetFunction, DEFAULT_DANGEROUS_BOUND,
};
use arcorient_core::multigraph::{to_dot, to_dot_oriented};
use arcorient_core::orientation::{k_arc_orientation_with, verify_well_balanced, ExtensionOptions};
use arcorient_core::{Error, GraphDocument, Multigraph, VertexId, VertexSet};
use clap::{Parser, Subcommand};
use report::{Check, RunReport};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "arcorient", version, about = "k-arc-connected orientations and their certificates")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Vertex bound for corpus instances.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Edge bound for corpus instances.
    #[arg(long, global = true)]
    max_m: Option<usize>,
    /// Depth cap for decomposition certificates.
    #[arg(long, global = true, default_value_t = 64)]
    depth_cap: u32,
    /// Directory to write DOT renderings into.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Include wall-clock timings (reports are then no longer byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orient a 2k-edge-connected multigraph k-arc-connectedly.
    Orient {
        graph: PathBuf,
        #[arg(long, short)]
        k: u32,
    },
    /// Check an oriented graph for k-arc-connectivity and well-balancedness.
    Verify {
        graph: PathBuf,
        #[arg(long, short)]
        k: u32,
    },
    /// Lifting graph at s for the target level on the terminals.
    LiftingGraph {
        graph: PathBuf,
        #[arg(long)]
        s: u64,
        /// Comma-separated terminal ids.
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<u64>,
        #[arg(long)]
        level: u32,
    },
    /// Finite set around the given vertices whose complement splits into boundary-linked
    /// components.
    Decompose {
        #[arg(long, short)]
        generator: Generator,
        /// Comma-separated vertex ids (default: the root).
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<u64>,
    },
    /// Grow a nested sequence of oriented finite subgraphs.
    Simulate {
        #[arg(long, short)]
        generator: Generator,
        #[arg(long, short)]
        k: u32,
        #[arg(long, short, default_value_t = 3)]
        rounds: usize,
    },
    /// Run one of the property corpora.
    Corpus {
        suite: Suite,
        /// Instances to draw (default depends on the suite).
        #[arg(long)]
        instances: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let pass = report.pass();
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(if pass { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, report: &RunReport) -> anyhow::Result<()> {
    let text = report.to_json();
    match &cli.json {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            eprintln!("{}", report.summary());
        }
        None => {
            use std::io::Write;
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    Ok(())
}

fn read_document(path: &Path) -> anyhow::Result<(String, GraphDocument)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = GraphDocument::parse(&text)?;
    Ok((text, doc))
}

fn write_dot(cli: &Cli, name: &str, body: &str) -> anyhow::Result<()> {
    if let Some(dir) = &cli.dot {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<RunReport> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Orient { graph, k } => orient(cli, graph, *k)?,
        Command::Verify { graph, k } => verify(cli, graph, *k)?,
        Command::LiftingGraph {
            graph,
            s,
            terminals,
            level,
        } => lifting(cli, graph, VertexId(*s), terminals, *level)?,
        Command::Decompose { generator, vertices } => decompose(cli, generator, vertices)?,
        Command::Simulate {
            generator,
            k,
            rounds,
        } => simulate(cli, generator, *k, *rounds)?,
        Command::Corpus { suite, instances } => corpus(cli, *suite, *instances),
    };
    if cli.timings {
        report.timings.insert("total_ms".into(), start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn orient(cli: &Cli, path: &Path, k: u32) -> anyhow::Result<RunReport> {
    let (text, doc) = read_document(path)?;
    let g = doc.to_graph()?;
    let mut report = RunReport::new("orient", &[&text, &k.to_string(), &cli.seed.to_string()]);
    if k == 0 {
        bail!("k must be positive");
    }
    let opts = ExtensionOptions {
        seed: cli.seed,
        ..ExtensionOptions::default()
    };
    match k_arc_orientation_with(&g, k, opts) {
        Ok(d) => {
            let vertices: Vec<VertexId> = g.vertices().collect();
            let violation = arc_connectivity_violation(&d, &vertices, k);
            let wb = verify_well_balanced(&d);
            report.push(Check::new("k-arc-connected", violation.is_none(), violation.map(|v| json!(v))));
            report.push(Check::new("well-balanced", wb.holds, (!wb.holds).then(|| json!(wb.worst))));
            report.result = json!({
                "k": k,
                "orientation": GraphDocument::from_orientation(&d),
                "well_balanced": wb,
            });
            write_dot(cli, "orientation.dot", &to_dot_oriented(&d))?;
        }
        Err(Error::NotEdgeConnected { required, found, side }) => {
            eprintln!("not {required}-edge-connected: cut of size {found} around {side:?}");
            report.push(Check::new(
                "2k-edge-connected",
                false,
                Some(json!({ "required": required, "found": found, "side": side })),
            ));
        }
        Err(e) => {
            report.push(Check::new("orientation", false, Some(json!(e.to_string()))));
        }
    }
    Ok(report)
}

fn verify(cli: &Cli, path: &Path, k: u32) -> anyhow::Result<RunReport> {
    let (text, doc) = read_document(path)?;
    let d = doc.to_orientation()?;
    let mut report = RunReport::new("verify", &[&text, &k.to_string()]);
    let g = d.base();
    let missing: Vec<u64> = d.unassigned().map(|e| e.0).collect();
    report.push(Check::new(
        "total",
        missing.is_empty(),
        (!missing.is_empty()).then(|| json!({ "unoriented": missing })),
    ));
    let vertices: Vec<VertexId> = g.vertices().collect();
    let violation = arc_connectivity_violation(&d, &vertices, k);
    report.push(Check::new(
        "k-arc-connected",
        violation.is_none(),
        violation.map(|(x, y, a)| json!({ "x": x, "y": y, "alpha": a, "k": k, "orientation": doc })),
    ));
    let wb = verify_well_balanced(&d);
    report.push(Check::new(
        "well-balanced",
        wb.holds,
        (!wb.holds).then(|| json!({ "worst": wb.worst, "orientation": doc })),
    ));
    let cut = edge_connectivity_violation(g, 2 * k);
    report.result = json!({
        "k": k,
        "well_balanced": wb,
        "underlying_2k_edge_connected": cut.is_none(),
    });
    write_dot(cli, "verify.dot", &to_dot_oriented(&d))?;
    Ok(report)
}

fn lifting(cli: &Cli, path: &Path, s: VertexId, terminals: &[u64], level: u32) -> anyhow::Result<RunReport> {
    let (text, doc) = read_document(path)?;
    let g = doc.to_graph()?;
    let mut report = RunReport::new(
        "lifting-graph",
        &[&text, &s.to_string(), &format!("{terminals:?}"), &level.to_string()],
    );
    let a: VertexSet = terminals.iter().map(|&t| VertexId(t)).collect();
    let tau = TargetFunction::new(&g, a, level)?;
    let hypotheses = check_hypotheses(&g, &tau, s);
    report.push(Check::new(
        "hypotheses",
        true,
        hypotheses.as_ref().err().map(|e| json!(e.to_string())),
    ));
    let lg = lifting_graph_unchecked(&g, &tau, s)?;
    let class = classify(&lg);
    let other = matches!(class, LiftingClass::Other { .. });
    let odd_ok = !matches!(class, LiftingClass::IsolatedPlusBalancedBipartite { .. }) || lg.len() % 2 == 1;
    let in_scope = hypotheses.is_ok() && lg.len() > 3 && level % 2 == 0;
    report.push(Check::new(
        "structure",
        !in_scope || (!other && odd_ok),
        (in_scope && (other || !odd_ok)).then(|| json!({ "class": class, "graph": doc, "s": s, "terminals": terminals, "level": level })),
    ));
    let frank = frank_matching(&g, &lg);
    let frank_value = match &frank {
        Ok(pairs) => json!(pairs),
        Err(e) => json!(e.to_string()),
    };
    if let Err(Error::Hypothesis(msg)) = &frank {
        if msg.contains("maximum matching") {
            report.push(Check::new("frank-matching", false, Some(json!({ "detail": msg, "graph": doc, "s": s }))));
        }
    }
    let census = match enumerate_dangerous_sets_bounded(&g, &tau, s, DEFAULT_DANGEROUS_BOUND) {
        Ok(sets) => json!(sets),
        Err(e) => json!(e.to_string()),
    };
    let pairs: Vec<_> = lg.pairs();
    report.result = json!({
        "s": s,
        "nodes": lg.nodes(),
        "admissible_pairs": pairs,
        "class": class,
        "frank_matching": frank_value,
        "dangerous_sets": census,
    });
    if cli.dot.is_some() {
        let mut m = Multigraph::new();
        for e in lg.nodes() {
            m.insert_vertex(VertexId(e.0), Some(format!("e{}", e.0)))?;
        }
        for (e1, e2) in &pairs {
            m.add_edge(VertexId(e1.0), VertexId(e2.0))?;
        }
        write_dot(cli, "lifting-graph.dot", &to_dot(&m))?;
    }
    Ok(report)
}

fn decompose(cli: &Cli, g: &Generator, vertices: &[u64]) -> anyhow::Result<RunReport> {
    let mut report = RunReport::new(
        "decompose",
        &[&g.to_string(), &format!("{vertices:?}"), &cli.depth_cap.to_string()],
    );
    let a: VertexSet = if vertices.is_empty() {
        [g.root()].into()
    } else {
        vertices.iter().map(|&v| VertexId(v)).collect()
    };
    let opts = DecomposeOptions {
        depth_cap: cli.depth_cap,
        ..DecomposeOptions::default()
    };
    match decompose_with(g, &a, opts) {
        Ok(d) => {
            let consistent = d.components.iter().all(|c| c.certificate_is_consistent());
            report.push(Check::new("certificates", consistent, None));
            report.result = json!({
                "generator": g.to_string(),
                "a": d.a,
                "iterations": d.iterations,
                "work_depth": d.work_depth,
                "certificate_depth": d.truncation.depth,
                "components": d.summaries(),
            });
            write_dot(cli, "decomposition-a.dot", &to_dot(&d.truncation.graph.induced(&d.a)))?;
        }
        Err(e @ (Error::Certificate(_) | Error::BoundExceeded { .. })) => {
            report.push(Check::new("decomposition", false, Some(json!(e.to_string()))));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn simulate(cli: &Cli, g: &Generator, k: u32, rounds: usize) -> anyhow::Result<RunReport> {
    let mut report = RunReport::new(
        "simulate",
        &[&g.to_string(), &k.to_string(), &rounds.to_string(), &cli.depth_cap.to_string(), &cli.seed.to_string()],
    );
    let mut opts = SimulationOptions::default();
    opts.decompose.depth_cap = cli.depth_cap;
    opts.extension.seed = cli.seed;
    match run_simulation(g, k, rounds, opts) {
        Ok(run) => {
            for c in &run.certificates {
                report.push(Check::new(&format!("stage-{}", c.stage), c.holds(), (!c.holds()).then(|| json!(c))));
            }
            for st in &run.stages {
                write_dot(cli, &format!("stage-{}.dot", st.n), &to_dot_oriented(&st.w))?;
            }
            report.result = json!({
                "generator": g.to_string(),
                "k": k,
                "rounds": rounds,
                "certificates": run.certificates,
                "final_state": run.stages.last().map(|s| s.snapshot()),
            });
        }
        Err(e @ Error::NotEdgeConnected { .. }) => {
            report.push(Check::new("connectivity-gate", false, Some(json!(e.to_string()))));
        }
        Err(e @ (Error::Invariant { .. } | Error::Certificate(_) | Error::PairingExhausted)) => {
            report.push(Check::new("simulation", false, Some(json!(e.to_string()))));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn corpus(cli: &Cli, suite: Suite, instances: Option<usize>) -> RunReport {
    let d = suite.defaults();
    let opts = CorpusOptions {
        seed: cli.seed,
        instances: instances.unwrap_or(d.instances),
        max_n: cli.max_n.unwrap_or(d.max_n),
        max_m: cli.max_m.unwrap_or(d.max_m),
    };
    let mut report = RunReport::new("corpus", &[suite.name(), &serde_json::to_string(&opts).unwrap_or_default()]);
    let r = run_suite(suite, opts);
    for f in &r.failures {
        report.push(Check::new(
            &format!("{}:{}", f.check, f.digest),
            false,
            Some(json!({ "detail": f.detail, "instance": f.witness })),
        ));
    }
    report.push(Check::new(suite.name(), r.holds(), None));
    report.result = json!({
        "suite": suite,
        "options": opts,
        "admitted": r.admitted,
        "passed": r.passed,
        "failed": r.failures.len(),
        "tally": r.tally,
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["arcorient", "corpus", "frank", "--seed", "9", "--max-n", "5"]).unwrap();
        assert_eq!(cli.seed, 9);
        assert_eq!(cli.max_n, Some(5));
        assert!(matches!(cli.command, Command::Corpus { suite: Suite::Frank, .. }));
    }

    #[test]
    fn generator_names_parse() {
        let cli = Cli::try_parse_from(["arcorient", "simulate", "-g", "doubled-grid", "-k", "2"]).unwrap();
        match cli.command {
            Command::Simulate { generator, rounds, .. } => {
                assert_eq!(generator.to_string(), "grid:2");
                assert_eq!(rounds, 3);
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["arcorient", "simulate", "-g", "torus", "-k", "2"]).is_err());
    }
}
