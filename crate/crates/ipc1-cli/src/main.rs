//! Command-line front end for the `ipc1` library.
//!
//! Every verb maps to one library operation chain: `normalize` and `valid`
//! work on formula text, `check` and `model-index` on Kripke models loaded
//! from JSON, `canonical` prints ladder models, and `reduce`, `apath`,
//! `gen-slice-graph`, and `bench` handle alternating slice graphs. Boolean
//! answers are printed as `true`/`false` and mirrored in the exit code —
//! 0 for `true` (or any non-boolean answer), 1 for `false`, 2 for input
//! errors — so shell pipelines can branch without parsing output.

#![forbid(unsafe_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ipc1::formula::{length, parse, Formula, FormulaDag, DEFAULT_RANK_CAP};
use ipc1::kripke::{canonical, check_brute, check_fast, model_index, KripkeModel};
use ipc1::lattice::{rn_index, RNIndex};
use ipc1::reduction::{apath, gen_slice_graph, mc_instance, SliceGraph};
use ipc1::superint::{admissible, allowed_indices, classes, is_valid_in, Logic};

/// Decide, normalize, and model-check one-variable intuitionistic logic.
#[derive(Parser)]
#[command(name = "ipc1", version, about)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

/// Which model-checking engine to run.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Normalize the formula, then look the answer up by model index.
    Fast,
    /// Fill the full satisfaction table over the shared-subterm graph.
    Brute,
    /// Run both engines and fail if they ever disagree.
    Both,
}

/// Output encoding for structured results.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Line-oriented human-readable text.
    Text,
    /// The JSON interchange form accepted by the matching loader.
    Json,
    /// Graphviz DOT.
    Dot,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the equivalence-class name of a formula (bot, top, phi<k>, psi<k>)
    Normalize {
        /// Formula text, e.g. "~a | ~~a"
        formula: String,
    },
    /// Decide whether a formula is valid (intuitionistically, or in --logic)
    Valid {
        /// Formula text
        formula: String,
        /// Logic to decide in: ipc, kc, psi:<k>, or phi:<k>
        #[arg(long, default_value = "ipc")]
        logic: String,
    },
    /// Check a formula at a state of a Kripke model
    Check {
        /// Formula text
        formula: String,
        /// Path to a model JSON file
        #[arg(long)]
        model: PathBuf,
        /// State name within the model
        #[arg(long)]
        state: String,
        /// Engine to use
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        /// Require the model to be admissible for this logic first
        #[arg(long)]
        logic: Option<String>,
    },
    /// Print the n-th canonical ladder model
    Canonical {
        /// Model number (states {1, …, n−2} ∪ {n})
        n: u64,
        /// Output encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the model index h of a state
    ModelIndex {
        /// Path to a model JSON file
        #[arg(long)]
        model: PathBuf,
        /// State name within the model
        #[arg(long)]
        state: String,
    },
    /// Turn a slice graph into an equivalent model-checking instance
    Reduce {
        /// Path to a slice-graph JSON file
        #[arg(long)]
        graph: PathBuf,
        /// Output encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Largest formula rank the instance may use
        #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
        rank_cap: u32,
    },
    /// Decide alternating reachability from s to t in a slice graph
    Apath {
        /// Path to a slice-graph JSON file
        #[arg(long)]
        graph: PathBuf,
    },
    /// Generate a random alternating slice graph
    GenSliceGraph {
        /// Number of slices (even, at least 2)
        #[arg(long)]
        slices: usize,
        /// Nodes per slice
        #[arg(long, default_value_t = 3)]
        width: usize,
        /// Edge probability in [0, 1]
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Time the fast engine against the brute-force engine on random instances
    Bench {
        /// Number of slices per generated graph (even, at least 2)
        #[arg(long)]
        slices: usize,
        /// Nodes per slice
        #[arg(long, default_value_t = 3)]
        width: usize,
        /// Edge probability in [0, 1]
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Number of generated instances
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Base random seed; trial i uses seed + i
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest formula rank the instances may use
        #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
        rank_cap: u32,
    },
    /// List the equivalence classes of a logic with finitely many of them
    Classes {
        /// Logic to classify: kc, psi:<k>, or phi:<k>
        #[arg(long)]
        logic: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.verb {
        Verb::Normalize { formula } => {
            let f = parse(&formula)?;
            println!("{}", rn_index(&f));
            Ok(true)
        }
        Verb::Valid { formula, logic } => {
            let f = parse(&formula)?;
            let logic: Logic = logic.parse()?;
            let answer = is_valid_in(&logic, &f);
            println!("{answer}");
            Ok(answer)
        }
        Verb::Check {
            formula,
            model,
            state,
            engine,
            logic,
        } => {
            let f = parse(&formula)?;
            let m = load_model(&model)?;
            if let Some(text) = logic {
                let logic: Logic = text.parse()?;
                if !admissible(&logic, &m)? {
                    bail!("model is not admissible for logic {logic}");
                }
            }
            let answer = run_engines(engine, &m, &state, &f)?;
            println!("{answer}");
            Ok(answer)
        }
        Verb::Canonical { n, format } => {
            if n == 0 {
                bail!("canonical models are numbered from 1");
            }
            let m = canonical(n);
            match format {
                OutputFormat::Json => println!("{}", m.to_json()),
                OutputFormat::Dot => print!("{}", m.to_dot(true)),
                OutputFormat::Text => print!("{}", model_text(&m)?),
            }
            Ok(true)
        }
        Verb::ModelIndex { model, state } => {
            let m = load_model(&model)?;
            println!("{}", model_index(&m, &state)?);
            Ok(true)
        }
        Verb::Reduce {
            graph,
            format,
            rank_cap,
        } => {
            let g = load_graph(&graph)?;
            let (_, m, state) = mc_instance(&g, rank_cap)?;
            // The instance formula is psi of rank 4m − 2 by construction;
            // naming it via the rank avoids refolding a deep shared tree.
            let rank = u32::try_from(4 * g.slices().len() - 2)
                .context("formula rank exceeds the index range")?;
            let idx = RNIndex::Psi(rank);
            match format {
                OutputFormat::Text => {
                    println!("formula: {idx}");
                    println!("state: {state}");
                    println!("states: {}", m.len());
                }
                OutputFormat::Json => {
                    let model: serde_json::Value = serde_json::from_str(&m.to_json())?;
                    let doc = serde_json::json!({
                        "formula": idx.to_string(),
                        "state": state,
                        "model": model,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                OutputFormat::Dot => print!("{}", m.to_dot(true)),
            }
            Ok(true)
        }
        Verb::Apath { graph } => {
            let g = load_graph(&graph)?;
            let answer = apath(&g, g.s(), g.t())?;
            println!("{answer}");
            Ok(answer)
        }
        Verb::GenSliceGraph {
            slices,
            width,
            density,
            seed,
            format,
        } => {
            let g = gen_slice_graph(slices, width, density, seed)?;
            match format {
                OutputFormat::Json => println!("{}", g.to_json()),
                OutputFormat::Dot => print!("{}", g.to_dot()),
                OutputFormat::Text => print!("{}", graph_text(&g)),
            }
            Ok(true)
        }
        Verb::Bench {
            slices,
            width,
            density,
            trials,
            seed,
            rank_cap,
        } => bench(slices, width, density, trials, seed, rank_cap),
        Verb::Classes { logic } => {
            let logic: Logic = logic.parse()?;
            let table = classes(&logic)?;
            println!("logic: {logic}");
            println!("allowed indices: {}", allowed_indices(&logic));
            println!("classes: {}", table.len());
            let pat_w = table
                .first()
                .map_or(0, |class| class.pattern.len())
                .max("pattern".len());
            let rep_w = table
                .iter()
                .map(|class| class.representative.to_string().len())
                .max()
                .unwrap_or(0)
                .max("representative".len());
            println!(
                "{:<pat_w$}  {:<rep_w$}  members",
                "pattern", "representative"
            );
            for class in &table {
                let pattern: String = class
                    .pattern
                    .iter()
                    .map(|&b| if b { 'T' } else { 'F' })
                    .collect();
                let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
                println!(
                    "{:<pat_w$}  {:<rep_w$}  {}",
                    pattern,
                    class.representative.to_string(),
                    members.join(" "),
                );
            }
            Ok(true)
        }
    }
}

/// Runs the chosen engine(s); `Both` fails loudly on any disagreement.
fn run_engines(engine: Engine, m: &KripkeModel, state: &str, f: &Formula) -> Result<bool> {
    match engine {
        Engine::Fast => Ok(check_fast(m, state, f)?),
        Engine::Brute => Ok(check_brute(m, state, f)?),
        Engine::Both => {
            let fast = check_fast(m, state, f)?;
            let brute = check_brute(m, state, f)?;
            if fast != brute {
                bail!(
                    "engines disagree at state {state}: fast says {fast}, \
                     brute-force says {brute}"
                );
            }
            Ok(fast)
        }
    }
}

/// Generates `trials` slice graphs, times both engines on each reduced
/// instance, and reports wall time plus node-visit counts per trial.
fn bench(
    slices: usize,
    width: usize,
    density: f64,
    trials: u64,
    seed: u64,
    rank_cap: u32,
) -> Result<bool> {
    if trials == 0 {
        bail!("trials must be at least 1");
    }
    println!(
        "bench: slices={slices} width={width} density={density} \
         trials={trials} seed={seed}"
    );
    println!(
        "{:>5}  {:>6}  {:>10}  {:>10}  {:>11}  {:>11}  {:<6}  agree",
        "trial", "states", "fast-us", "brute-us", "fast-visits", "brute-cells", "answer",
    );
    let mut fast_total = 0.0_f64;
    let mut brute_total = 0.0_f64;
    let mut disagreements = 0_u64;
    for trial in 0..trials {
        let g = gen_slice_graph(slices, width, density, seed.wrapping_add(trial))?;
        let (f, m, state) = mc_instance(&g, rank_cap)?;

        let started = Instant::now();
        let fast = check_fast(&m, &state, &f)?;
        let fast_us = started.elapsed().as_secs_f64() * 1e6;

        let started = Instant::now();
        let brute = check_brute(&m, &state, &f)?;
        let brute_us = started.elapsed().as_secs_f64() * 1e6;

        // The fast engine folds the formula tree once (one visit per tree
        // node); the brute engine fills one table cell per shared-subterm
        // node and state.
        let fast_visits = length(&f);
        let brute_cells = FormulaDag::from_tree(&f).len() as u64 * m.len() as u64;

        let agree = fast == brute;
        if !agree {
            disagreements += 1;
        }
        println!(
            "{:>5}  {:>6}  {:>10.1}  {:>10.1}  {:>11}  {:>11}  {:<6}  {}",
            trial,
            m.len(),
            fast_us,
            brute_us,
            fast_visits,
            brute_cells,
            fast,
            if agree { "yes" } else { "NO" },
        );
        fast_total += fast_us;
        brute_total += brute_us;
    }
    println!(
        "totals: fast {:.3} ms, brute {:.3} ms",
        fast_total / 1e3,
        brute_total / 1e3,
    );
    println!("agreement: {}/{trials}", trials - disagreements);
    if disagreements > 0 {
        bail!("engines disagreed on {disagreements} of {trials} trials");
    }
    Ok(true)
}

fn load_model(path: &Path) -> Result<KripkeModel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(KripkeModel::from_json(&text)?)
}

fn load_graph(path: &Path) -> Result<SliceGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SliceGraph::from_json(&text)?)
}

/// Line-oriented rendering of a model: states, marked states, then the
/// nonreflexive pairs of the order.
fn model_text(m: &KripkeModel) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "states: {}", m.states().join(" "))?;
    let marked: Vec<&str> = m
        .states()
        .iter()
        .filter(|w| m.in_valuation(w).unwrap_or(false))
        .map(String::as_str)
        .collect();
    writeln!(
        out,
        "a-states: {}",
        if marked.is_empty() {
            "(none)".to_string()
        } else {
            marked.join(" ")
        }
    )?;
    writeln!(out, "order (nonreflexive):")?;
    for u in m.states() {
        for v in m.states() {
            if u != v && m.related(u, v)? {
                writeln!(out, "  {u} -> {v}")?;
            }
        }
    }
    Ok(out)
}

/// Line-oriented rendering of a slice graph, top slice first.
fn graph_text(g: &SliceGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "slices: {}", g.slices().len());
    for (i, slice) in g.slices().iter().enumerate().rev() {
        let kind = if i % 2 == 1 {
            "existential"
        } else {
            "universal"
        };
        let _ = writeln!(out, "slice {i} ({kind}): {}", slice.join(" "));
    }
    let _ = writeln!(out, "s: {}", g.s());
    let _ = writeln!(out, "t: {}", g.t());
    let _ = writeln!(out, "edges: {}", g.edges().len());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -> {v}");
    }
    out
}
