//! The `rotorgraph` command line. JSON goes to stdout, a one-line human
//! summary to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use rotorgraph::corpus::rotations::{all_rotation_systems, sample_rotation_systems, MAX_ROTATION_SYSTEMS};
use rotorgraph::corpus::{builtins, run_corpus, CheckKind, CorpusSpec};
use rotorgraph::ribbon::{faces, genus, separation, spanning_trees, DirectedCycle, RibbonGraph, SpanningTree};
use rotorgraph::rotor::is_reversible;
use rotorgraph::sandpile::{act_generator_traced, group_structure, Divisor};
use rotorgraph::{GraphError, RotorError, SandpileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rotor(#[from] RotorError),
    #[error(transparent)]
    Sandpile(#[from] SandpileError),
}

#[derive(Parser, Debug)]
#[command(name = "rotorgraph", version, about = "Rotor-routing and the sandpile torsor on ribbon graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Faces, genus, spanning-tree count and sandpile group of a graph.
    Inspect {
        /// Graph JSON file, or `builtin:NAME`.
        graph: String,
    },
    /// Applies a degree-0 divisor to a spanning tree at a root.
    Act {
        graph: String,
        #[arg(long)]
        root: String,
        /// Divisor as JSON, e.g. `{"a": 1, "b": -1}`.
        #[arg(long)]
        divisor: String,
        /// Edge ids, comma separated or as a JSON array.
        #[arg(long)]
        tree: String,
        /// Writes the rotor-routing steps as JSON lines to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Whether a directed cycle is reversible.
    Reversible {
        graph: String,
        /// Darts or edges in order, e.g. `e1@a,e2`.
        #[arg(long)]
        cycle: String,
    },
    /// Whether a directed cycle separates, with a witness path if not.
    Separating {
        graph: String,
        #[arg(long)]
        cycle: String,
    },
    /// Runs the corpus checks.
    Check {
        /// A corpus JSON file, or `builtin`.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Comma-separated subset of checks; an empty string runs none.
        #[arg(long)]
        checks: Option<String>,
    },
    /// Emits rotation systems of a base graph as JSON lines.
    GenRotations {
        graph: String,
        /// Draw this many systems instead of listing all of them.
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Output of a command: JSON for stdout, a summary line for stderr, and
/// the exit code.
pub struct Outcome {
    pub stdout: String,
    pub summary: String,
    pub code: i32,
}

pub fn load_graph(arg: &str) -> Result<RibbonGraph, CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtins::by_name(name).ok_or_else(|| CliError::Usage(format!("unknown builtin graph {name}")));
    }
    let text = read(Path::new(arg))?;
    RibbonGraph::parse_json(&text).map_err(CliError::from)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_tree(g: &RibbonGraph, arg: &str) -> Result<SpanningTree, CliError> {
    let trimmed = arg.trim();
    let ids: Vec<String> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| CliError::Usage(format!("--tree: {e}")))?
    } else {
        trimmed.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
    };
    Ok(SpanningTree::from_ids(g, &ids)?)
}

fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Inspect { graph } => inspect(&load_graph(&graph)?),
        Command::Act {
            graph,
            root,
            divisor,
            tree,
            trace,
        } => act(&load_graph(&graph)?, &root, &divisor, &tree, trace.as_deref()),
        Command::Reversible { graph, cycle } => reversible(&load_graph(&graph)?, &cycle),
        Command::Separating { graph, cycle } => separating(&load_graph(&graph)?, &cycle),
        Command::Check {
            corpus,
            seed,
            jobs,
            checks,
        } => check(&corpus, seed, jobs, checks.as_deref()),
        Command::GenRotations { graph, sample, seed } => gen_rotations(&load_graph(&graph)?, sample, seed),
    }
}

fn inspect(g: &RibbonGraph) -> Result<Outcome, CliError> {
    let face_list: Vec<Vec<String>> = faces(g)
        .iter()
        .map(|f| f.iter().map(|&d| g.dart_name(d)).collect())
        .collect();
    let genus = genus(g)?;
    let trees = spanning_trees(g)?.len();
    let group = group_structure(g);
    let report = json!({
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "faces": face_list.len(),
        "face_boundaries": face_list,
        "genus": genus,
        "planar": genus == 0,
        "tree_count": trees,
        "group": group.invariant_factors,
    });
    let group_text = if group.invariant_factors.is_empty() {
        "trivial".to_string()
    } else {
        group
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    };
    Ok(Outcome {
        stdout: pretty(&report),
        summary: format!("genus {genus}, {trees} spanning trees, sandpile group {group_text}"),
        code: EXIT_OK,
    })
}

/// Routes each generator `(v - r)` of `D` through the rotors directly.
/// A negative coefficient `n` is replaced by `n mod |Pic^0|`, which acts
/// the same since the group order kills every element.
fn act(g: &RibbonGraph, root: &str, divisor: &str, tree: &str, trace: Option<&Path>) -> Result<Outcome, CliError> {
    let r = g
        .vertex(root)
        .ok_or_else(|| GraphError::UnknownVertex(root.to_string()))?;
    let d = Divisor::parse_json(g, divisor)?;
    d.require_degree(0)?;
    let mut t = parse_tree(g, tree)?;
    let order = group_structure(g).order() as i64;
    let mut lines = String::new();
    let mut steps = 0;
    for (v, n) in d.iter().filter(|&(v, _)| v != r) {
        for _ in 0..n.rem_euclid(order) {
            let (next, record) = act_generator_traced(g, r, v, &t)?;
            steps += record.len();
            lines.push_str(&record.to_json_lines(g));
            t = next;
        }
    }
    if let Some(path) = trace {
        fs::write(path, &lines).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let ids = t.ids(g);
    Ok(Outcome {
        stdout: pretty(&json!({ "tree": ids })),
        summary: format!("tree {} after {steps} rotor-routing steps", ids.join(",")),
        code: EXIT_OK,
    })
}

fn reversible(g: &RibbonGraph, cycle: &str) -> Result<Outcome, CliError> {
    let c = DirectedCycle::parse(g, cycle)?;
    let rev = is_reversible(g, &c)?;
    Ok(Outcome {
        stdout: pretty(&json!({"cycle": c.display(g), "reversible": rev})),
        summary: format!("cycle {} is {}", c.display(g).join(","), if rev { "reversible" } else { "not reversible" }),
        code: EXIT_OK,
    })
}

fn separating(g: &RibbonGraph, cycle: &str) -> Result<Outcome, CliError> {
    let c = DirectedCycle::parse(g, cycle)?;
    let sep = separation(g, &c)?;
    let witness = sep
        .witness()
        .map(|p| p.darts().iter().map(|&d| g.dart_name(d)).collect::<Vec<_>>());
    let report = json!({
        "cycle": c.display(g),
        "separating": sep.is_separating(),
        "witness": witness,
    });
    let summary = match &witness {
        None => format!("cycle {} is separating", c.display(g).join(",")),
        Some(w) => format!("cycle {} is not separating, witness {}", c.display(g).join(","), w.join(",")),
    };
    Ok(Outcome {
        stdout: pretty(&report),
        summary,
        code: EXIT_OK,
    })
}

fn check(corpus: &str, seed: u64, jobs: usize, checks: Option<&str>) -> Result<Outcome, CliError> {
    let mut spec = if corpus == "builtin" {
        CorpusSpec::builtin(seed)
    } else {
        let path = Path::new(corpus);
        let base = path.parent().unwrap_or(Path::new("."));
        CorpusSpec::parse(&read(path)?, base)?
    };
    if let Some(list) = checks {
        spec.checks = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<CheckKind>().map_err(|_| CliError::Usage(format!("unknown check {s}"))))
            .collect::<Result<_, _>>()?;
    }
    let summary = run_corpus(&spec, jobs)?;
    let pass = summary.pass();
    let failed: usize = summary.totals.values().map(|t| t.fail).sum();
    let text = format!(
        "{} graphs, {} failed checks, {} planarity/basepoint mismatches",
        summary.graphs.len(),
        failed,
        summary.basepoint_mismatches
    );
    Ok(Outcome {
        stdout: pretty(&summary),
        summary: text,
        code: if pass { EXIT_OK } else { EXIT_PROPERTY_FAILURE },
    })
}

fn gen_rotations(g: &RibbonGraph, sample: Option<usize>, seed: Option<u64>) -> Result<Outcome, CliError> {
    let graphs: Vec<RibbonGraph> = match (sample, seed) {
        (Some(n), Some(seed)) => sample_rotation_systems(g, n, seed)?,
        (None, _) => all_rotation_systems(g, MAX_ROTATION_SYSTEMS as usize)?.collect(),
        (Some(_), None) => return Err(CliError::Usage("--sample needs --seed".into())),
    };
    let mut out = String::new();
    for h in &graphs {
        out.push_str(&serde_json::to_string(&h.to_json()).expect("graph serializes"));
        out.push('\n');
    }
    Ok(Outcome {
        stdout: out,
        summary: format!("{} rotation systems", graphs.len()),
        code: EXIT_OK,
    })
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            eprintln!("{}", outcome.summary);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}
