//! Command-line front end. Every subcommand prints human-readable text and,
//! with `--json`, a machine artifact carrying a [`RunManifest`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::DiscreteComplex;
use crate::error::{Error, Result};
use crate::graph::{check_subdivision, check_tree_conditions, parse_graph, subdivide_for, OrderedGraph};
use crate::io::{artifact, parse_assignment, parse_presentation, read_input, write_file};
use crate::manifest::RunManifest;
use crate::morse::{minimal_presentation, morse_presentation, DEFAULT_MAX_STEPS};
use crate::oracle::oracle_presentation;
use crate::physical::{parse_loops, solve_physical_presentation, PhysicalPresentation};
use crate::presentation::{homology_h1, FPGroup};
use crate::representations::{locally_abelian_solve, solve_representation, verify_representation, SolveOptions};
use crate::stability::stability_report;

#[derive(Debug, Parser)]
#[command(name = "braidforge", version, about = "Graph braid group presentations via discrete Morse theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON artifact to PATH, or print it instead of text when no PATH is given.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    pub json: Option<Option<PathBuf>>,

    /// Step bound for each boundary-word rewrite.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file (JSON).
    pub graph: String,
    #[arg(short = 'n', long = "particles")]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Insert degree-2 vertices until the graph is sufficient for n particles.
    Subdivide(GraphArgs),
    /// Critical cells and the Morse matching summary.
    Cells {
        #[command(flatten)]
        g: GraphArgs,
        /// Only this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Morse presentation from critical cells.
    Present(GraphArgs),
    /// Tietze-minimized presentation.
    Minimal(GraphArgs),
    /// Presentation in terms of exchange loops.
    Physical {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        loops: String,
    },
    /// First homology from the Morse presentation.
    H1(GraphArgs),
    /// Generator and relator counts across particle numbers.
    Stabilize {
        graph: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Check a unitary assignment against a presentation.
    RepVerify {
        presentation: String,
        assignment: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Search numerically for a unitary representation.
    RepSolve {
        presentation: String,
        #[arg(short = 'k', long = "dimension", default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
    },
    /// Phase constraints when Y-loops act by scalars.
    LocallyAbelian {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        loops: String,
        #[arg(short = 'k', long = "dimension", default_value_t = 1)]
        k: usize,
    },
    /// Brute-force presentation from the whole 2-skeleton, compared with the Morse one.
    Oracle(GraphArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Subdivide(_) => "subdivide",
            Command::Cells { .. } => "cells",
            Command::Present(_) => "present",
            Command::Minimal(_) => "minimal",
            Command::Physical { .. } => "physical",
            Command::H1(_) => "h1",
            Command::Stabilize { .. } => "stabilize",
            Command::RepVerify { .. } => "rep-verify",
            Command::RepSolve { .. } => "rep-solve",
            Command::LocallyAbelian { .. } => "locally-abelian",
            Command::Oracle(_) => "oracle",
        }
    }
}

/// Text for stdout, JSON payload for the artifact, and the exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn load_graph(path: &str, m: &mut RunManifest) -> Result<crate::graph::Graph> {
    parse_graph(&read_input(path, m)?)
}

fn load_ordered(path: &str, m: &mut RunManifest) -> Result<Arc<OrderedGraph>> {
    Ok(Arc::new(OrderedGraph::new(&load_graph(path, m)?)?))
}

fn load_complex(g: &GraphArgs, m: &mut RunManifest) -> Result<DiscreteComplex> {
    m.param("n", g.n);
    DiscreteComplex::new(load_ordered(&g.graph, m)?, g.n)
}

fn presentation_json(p: &FPGroup) -> Value {
    let w = p.to_json();
    json!({ "generators": w.generators, "relators": w.relators, "provenance": p.provenance })
}

pub fn execute(cli: &Cli, m: &mut RunManifest) -> Result<Output> {
    let steps = cli.max_steps;
    match &cli.command {
        Command::Subdivide(g) => {
            m.param("n", g.n);
            let graph = load_graph(&g.graph, m)?;
            let before = check_subdivision(&graph, g.n);
            let out = subdivide_for(&graph, g.n);
            let file = out.to_file();
            let mut text = format!(
                "{} vertices -> {} vertices ({} path and {} cycle violations fixed)\n",
                graph.vertices().len(),
                out.vertices().len(),
                before.path_violations.len(),
                before.cycle_violations.len()
            );
            text.push_str(&serde_json::to_string(&file)?);
            text.push('\n');
            Ok(Output::ok(text, json!({ "report": before, "graph": file })))
        }
        Command::Cells { g, dim } => {
            let c = load_complex(g, m)?;
            let summary = c.validate_matching()?;
            let dims: Vec<usize> = match dim {
                Some(d) => vec![*d],
                None => (0..=c.particles().min(2)).collect(),
            };
            let mut text = String::new();
            let mut listed = serde_json::Map::new();
            for d in dims {
                let crit = c.critical_cells(d);
                let total = c.enumerate(d).len();
                writeln!(text, "dim {d}: {} critical of {total}", crit.len()).unwrap();
                for cell in &crit {
                    writeln!(text, "  {cell}").unwrap();
                }
                let names: Vec<String> = crit.iter().map(|x| x.to_string()).collect();
                listed.insert(d.to_string(), json!({ "total": total, "critical": names }));
            }
            Ok(Output::ok(text, json!({ "cells": listed, "matching": summary })))
        }
        Command::Present(g) => {
            let c = load_complex(g, m)?;
            let p = morse_presentation(&c, steps)?.to_fp_group(&c);
            Ok(Output::ok(format!("{p}\n"), presentation_json(&p)))
        }
        Command::Minimal(g) => {
            let c = load_complex(g, m)?;
            let mm = minimal_presentation(&c, steps)?;
            let tree = check_tree_conditions(c.graph());
            let mut text = format!("{}\n", mm.group());
            let mut eliminated = Vec::new();
            for e in &mm.tietze.log {
                let cell = &mm.morse.generators[e.generator];
                let expr = mm.group().named(mm.expression(cell).expect("generator of the presentation"));
                writeln!(text, "  {cell} = {expr}").unwrap();
                eliminated.push(json!({ "generator": cell.to_string(), "expression": expr.to_string(), "relator": e.relator_source }));
            }
            let reached = mm.tietze.target_reached();
            writeln!(
                text,
                "target {} generators: {}",
                mm.tietze.target.unwrap_or(0),
                if reached == Some(true) { "reached" } else { "not reached" }
            )
            .unwrap();
            writeln!(
                text,
                "tree conditions: T1 {}, T2 {}, T3 unverified",
                if tree.t1 { "ok" } else { "fails" },
                if tree.t2 { "ok" } else { "fails" }
            )
            .unwrap();
            let mut j = presentation_json(mm.group());
            j["eliminated"] = json!(eliminated);
            j["target"] = json!(mm.tietze.target);
            j["target_reached"] = json!(reached);
            j["tree_conditions"] = to_value(&tree)?;
            Ok(Output::ok(text, j))
        }
        Command::Physical { g, loops } => {
            let (c, pp) = physical(g, loops, steps, m)?;
            let _ = c;
            Ok(Output::ok(physical_text(&pp), physical_json(&pp)?))
        }
        Command::H1(g) => {
            let c = load_complex(g, m)?;
            let h = homology_h1(&morse_presentation(&c, steps)?.to_fp_group(&c));
            Ok(Output::ok(format!("{h}\n"), json!({ "h1": h.to_string(), "class": h })))
        }
        Command::Stabilize { graph, from, to } => {
            m.param("from", *from);
            m.param("to", *to);
            let r = stability_report(load_ordered(graph, m)?, *from, *to, steps)?;
            let mut text = String::from("N  crit1  crit2  gens  rels  new  lifting  generators\n");
            for (i, row) in r.rows.iter().enumerate() {
                let lift = if i == 0 { "-".to_string() } else { format!("pass {}", row.lifted) };
                let corr = match row.generators_correspond {
                    None => "-",
                    Some(true) => "correspond",
                    Some(false) => "differ",
                };
                writeln!(
                    text,
                    "{:<2} {:>5}  {:>5}  {:>4}  {:>4}  {:>3}  {lift:<7}  {corr}",
                    row.n,
                    row.critical_one_cells,
                    row.critical_two_cells,
                    row.minimal_generators,
                    row.minimal_relators,
                    row.new_relators.len()
                )
                .unwrap();
            }
            if !r.two_connected {
                text.push_str("warning: graph is not 2-connected; counts need not stabilize\n");
            }
            Ok(Output::ok(text, to_value(&r)?))
        }
        Command::RepVerify { presentation, assignment, tol } => {
            m.param("tol", *tol);
            let p = parse_presentation(&read_input(presentation, m)?)?;
            let a = parse_assignment(&read_input(assignment, m)?)?;
            let r = verify_representation(&p, &a, *tol)?;
            let mut text = String::new();
            for (i, d) in r.deviations.iter().enumerate() {
                writeln!(text, "R{}: {d:.3e}", i + 1).unwrap();
            }
            writeln!(text, "{} (max {:.3e}, tol {:.1e})", if r.pass { "PASS" } else { "FAIL" }, r.max_deviation, tol).unwrap();
            Ok(Output { text, json: to_value(&r)?, code: if r.pass { 0 } else { 3 } })
        }
        Command::RepSolve { presentation, k, seed, tol, restarts } => {
            m.param("k", *k);
            m.param("seed", *seed);
            m.param("tol", *tol);
            m.param("restarts", *restarts);
            let p = parse_presentation(&read_input(presentation, m)?)?;
            let opts = SolveOptions { seed: *seed, restarts: *restarts, tol: *tol, ..SolveOptions::default() };
            let out = solve_representation(&p, *k, &opts)?;
            let text = format!(
                "found k={k} representation, max residual {:.3e} (seed {seed}, restart {} of {})\n",
                out.report.max_deviation, out.restart, out.restarts_run
            );
            let j = json!({
                "assignment": out.assignment.to_json(),
                "report": out.report,
                "seed": out.seed,
                "restart": out.restart,
                "restarts_run": out.restarts_run,
            });
            Ok(Output::ok(text, j))
        }
        Command::LocallyAbelian { g, loops, k } => {
            m.param("k", *k);
            let (_, pp) = physical(g, loops, steps, m)?;
            let la = locally_abelian_solve(&pp, *k)?;
            let mut text = format!("scalar loops: {}\n", la.phase_loops.join(", "));
            text.push_str("constraints:\n");
            for c in &la.constraints {
                writeln!(text, "  {c}").unwrap();
            }
            for &i in &la.trivial_relators {
                writeln!(text, "  R{} is satisfied identically", i + 1).unwrap();
            }
            for e in &la.residual_equations {
                writeln!(text, "  R{}: {} = scalar", e.relator + 1, e.word).unwrap();
            }
            writeln!(text, "unconstrained: {}", la.unconstrained().join(", ")).unwrap();
            let mut j = to_value(&la)?;
            j["constraint_text"] = json!(la.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            j["unconstrained"] = json!(la.unconstrained());
            Ok(Output::ok(text, j))
        }
        Command::Oracle(g) => {
            let c = load_complex(g, m)?;
            let o = oracle_presentation(&c)?;
            let morse = homology_h1(&morse_presentation(&c, steps)?.to_fp_group(&c));
            let brute = homology_h1(&o);
            let agree = morse == brute;
            let text = format!(
                "oracle: {} generators, {} relators\nH1 oracle {brute}, Morse {morse}: {}\n",
                o.generators.len(),
                o.relators.len(),
                if agree { "agree" } else { "DIFFER" }
            );
            let j = json!({
                "generators": o.generators.len(),
                "relators": o.relators.len(),
                "h1_oracle": brute.to_string(),
                "h1_morse": morse.to_string(),
                "agree": agree,
            });
            Ok(Output { text, json: j, code: if agree { 0 } else { 3 } })
        }
    }
}

fn physical(g: &GraphArgs, loops: &str, steps: usize, m: &mut RunManifest) -> Result<(DiscreteComplex, PhysicalPresentation)> {
    let c = load_complex(g, m)?;
    let specs = parse_loops(&read_input(loops, m)?)?;
    let mm = minimal_presentation(&c, steps)?;
    let pp = solve_physical_presentation(&c, &mm, &specs, steps)?;
    Ok((c, pp))
}

fn physical_text(pp: &PhysicalPresentation) -> String {
    let mut t = String::from("loops:\n");
    for l in &pp.loops {
        writeln!(t, "  {} = {}", l.name, l.word).unwrap();
    }
    t.push_str("dictionary:\n");
    for (cell, w) in &pp.dictionary {
        writeln!(t, "  {cell} = {}", pp.named(w)).unwrap();
    }
    writeln!(t, "{}", pp.group()).unwrap();
    for (i, r) in pp.relators.iter().enumerate() {
        writeln!(t, "  R{}: {} = 1   ({})", i + 1, pp.named(&r.word), r.origin).unwrap();
    }
    t
}

fn physical_json(pp: &PhysicalPresentation) -> Result<Value> {
    let mut j = presentation_json(&pp.group());
    j["loops"] = json!(pp
        .loops
        .iter()
        .map(|l| json!({ "name": l.name, "kind": l.kind, "word": l.word.to_string(), "image": l.image.to_string() }))
        .collect::<Vec<_>>());
    j["dictionary"] = json!(pp
        .dictionary
        .iter()
        .map(|(c, w)| json!({ "cell": c.to_string(), "word": pp.named(w).to_string() }))
        .collect::<Vec<_>>());
    Ok(j)
}

fn emit(cli: &Cli, m: &RunManifest, o: &Output, out: &mut dyn Write) -> Result<()> {
    match &cli.json {
        Some(None) => out.write_all(artifact(m, &o.json)?.as_bytes())?,
        Some(Some(path)) => {
            write_file(path, &artifact(m, &o.json)?)?;
            out.write_all(o.text.as_bytes())?;
        }
        None => out.write_all(o.text.as_bytes())?,
    }
    Ok(())
}

/// Parses `argv` (program name first) and runs it. Exit codes: 0 success,
/// 1 usage, 2 invalid input, 3 computation failure.
pub fn run(argv: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut m = RunManifest::new(cli.command.name());
    m.param("max_steps", cli.max_steps);
    let result = execute(&cli, &mut m).and_then(|o| emit(&cli, &m, &o, out).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Unsolved { suggestions, .. } = &e {
                for s in suggestions {
                    let _ = writeln!(err, "  try adding: {s}");
                }
            }
            e.exit_code()
        }
    }
}

/// Caps rayon's pool at `BRAIDFORGE_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("BRAIDFORGE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("braidforge").chain(args.iter().copied()).map(String::from);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&[]).0, 1);
        assert_eq!(run_args(&["present"]).0, 1);
        assert_eq!(run_args(&["frobnicate", "x"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_args(&["h1", "/nonexistent.json", "-n", "2"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: invalid input"), "{err}");
    }
}
