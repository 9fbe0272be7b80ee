//! Runs the property checks over every rotation system of a list of base
//! graphs and collects a deterministic JSON summary.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::builtins;
use super::rotations::{all_rotation_systems, rotation_system, sample_rotation_indices, MAX_ROTATION_SYSTEMS};
use crate::error::GraphError;
use crate::ribbon::{all_cycles, is_planar, separation, RibbonGraph};
use crate::rotor::{all_unicycles, is_reversible, is_reversible_from, run_cycle_period, Unicycle};
use crate::sandpile::{basepoint_counterexample, check_geodesic_identities, verify_torsor, TorsorTable};

/// Exhaustive unicycle checks above this many unicycles switch to sampling.
pub const MAX_EXHAUSTIVE_UNICYCLES: usize = 10_000;
pub const UNICYCLE_SAMPLES: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Periodicity,
    Torsor,
    ReversibilityWelldef,
    SeparatingReversible,
    GeodesicIdentities,
    Basepoint,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Periodicity,
        CheckKind::Torsor,
        CheckKind::ReversibilityWelldef,
        CheckKind::SeparatingReversible,
        CheckKind::GeodesicIdentities,
        CheckKind::Basepoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Periodicity => "periodicity",
            CheckKind::Torsor => "torsor",
            CheckKind::ReversibilityWelldef => "reversibility-welldef",
            CheckKind::SeparatingReversible => "separating-reversible",
            CheckKind::GeodesicIdentities => "geodesic-identities",
            CheckKind::Basepoint => "basepoint",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GraphError::Internal(format!("unknown check {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationMode {
    /// Only the base graph with its own rotation.
    Given,
    All,
    Sample { n: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct BaseSpec {
    pub name: String,
    pub graph: RibbonGraph,
    pub mode: RotationMode,
}

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub bases: Vec<BaseSpec>,
    pub checks: Vec<CheckKind>,
    /// Seeds unicycle sampling on graphs with too many unicycles.
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    bases: Vec<BaseFile>,
    checks: Option<Vec<String>>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFile {
    builtin: Option<String>,
    file: Option<String>,
    #[serde(default)]
    rotations: RotationsFile,
}

#[derive(Deserialize, Default)]
#[serde(untagged)]
enum RotationsFile {
    #[default]
    Unset,
    Named(String),
    Sample { sample: usize, seed: u64 },
}

impl CorpusSpec {
    /// The shipped corpus: every rotation system of each base, except `K5`
    /// which is sampled.
    pub fn builtin(seed: u64) -> CorpusSpec {
        let all = ["P2", "B2", "B3", "B4", "B5", "B6", "C3", "theta", "K4"];
        let sampled = [("K5", 50)];
        let mut bases: Vec<BaseSpec> = all
            .iter()
            .map(|&name| BaseSpec {
                name: name.into(),
                graph: builtins::by_name(name).expect("known builtin"),
                mode: RotationMode::All,
            })
            .collect();
        bases.extend(sampled.iter().map(|&(name, n)| BaseSpec {
            name: name.into(),
            graph: builtins::by_name(name).expect("known builtin"),
            mode: RotationMode::Sample { n, seed },
        }));
        CorpusSpec {
            bases,
            checks: CheckKind::ALL.to_vec(),
            seed,
        }
    }

    /// Reads a corpus file. Graph files are resolved relative to `base_dir`.
    ///
    /// ```json
    /// {"bases": [{"builtin": "K4", "rotations": "all"},
    ///            {"file": "g.json", "rotations": {"sample": 20, "seed": 7}}],
    ///  "checks": ["basepoint"]}
    /// ```
    pub fn parse(text: &str, base_dir: &Path) -> Result<CorpusSpec, GraphError> {
        let file: CorpusFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut bases = Vec::new();
        for b in file.bases {
            let (name, graph) = match (b.builtin, b.file) {
                (Some(name), None) => {
                    let g = builtins::by_name(&name).ok_or_else(|| GraphError::Internal(format!("unknown builtin {name}")))?;
                    (name, g)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(base_dir.join(&path))
                        .map_err(|e| GraphError::Internal(format!("{path}: {e}")))?;
                    (path, RibbonGraph::parse_json(&text)?)
                }
                _ => return Err(GraphError::Internal("each base needs exactly one of builtin or file".into())),
            };
            let mode = match b.rotations {
                RotationsFile::Named(s) if s == "all" => RotationMode::All,
                RotationsFile::Named(s) if s == "given" => RotationMode::Given,
                RotationsFile::Unset => RotationMode::Given,
                RotationsFile::Named(s) => return Err(GraphError::Internal(format!("unknown rotation mode {s}"))),
                RotationsFile::Sample { sample, seed } => RotationMode::Sample { n: sample, seed },
            };
            bases.push(BaseSpec { name, graph, mode });
        }
        let checks = match file.checks {
            None => CheckKind::ALL.to_vec(),
            Some(names) => names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?,
        };
        Ok(CorpusSpec {
            bases,
            checks,
            seed: file.seed.unwrap_or(1),
        })
    }

    /// Every graph of the corpus, named `base[index]` by rotation index.
    pub fn expand(&self) -> Result<Vec<(String, RibbonGraph)>, GraphError> {
        let mut out = Vec::new();
        for b in &self.bases {
            match b.mode {
                RotationMode::All => {
                    for (i, g) in all_rotation_systems(&b.graph, MAX_ROTATION_SYSTEMS as usize)?.enumerate() {
                        out.push((format!("{}[{i}]", b.name), g));
                    }
                }
                RotationMode::Given => out.push((b.name.clone(), b.graph.clone())),
                RotationMode::Sample { n, seed } => {
                    for i in sample_rotation_indices(&b.graph, n, seed)? {
                        out.push((format!("{}[{i}]", b.name), rotation_system(&b.graph, i)?));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckOutcome {
    fn ok() -> Self {
        CheckOutcome { pass: true, witness: None }
    }

    fn fail(witness: Value) -> Self {
        CheckOutcome {
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSummary {
    pub graph: String,
    pub planar: bool,
    pub basepoint_independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub checks: BTreeMap<String, CheckOutcome>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckTotals {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub graphs: Vec<GraphSummary>,
    pub totals: BTreeMap<String, CheckTotals>,
    pub basepoint_mismatches: usize,
}

impl CorpusSummary {
    pub fn pass(&self) -> bool {
        self.totals.values().all(|t| t.fail == 0)
    }
}

/// Runs `spec` on `jobs` worker threads. The summary lists graphs in corpus
/// order whatever the thread count.
pub fn run_corpus(spec: &CorpusSpec, jobs: usize) -> Result<CorpusSummary, GraphError> {
    if spec.checks.is_empty() {
        return Ok(CorpusSummary::default());
    }
    let graphs = spec.expand()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| GraphError::Internal(e.to_string()))?;
    let graphs: Vec<GraphSummary> = pool.install(|| {
        graphs
            .par_iter()
            .map(|(name, g)| check_graph(name, g, &spec.checks, spec.seed))
            .collect::<Result<_, _>>()
    })?;
    let mut totals: BTreeMap<String, CheckTotals> = BTreeMap::new();
    for s in &graphs {
        for (name, outcome) in &s.checks {
            let t = totals.entry(name.clone()).or_default();
            if outcome.pass {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
    }
    let basepoint_mismatches = graphs.iter().filter(|s| s.planar != s.basepoint_independent).count();
    Ok(CorpusSummary {
        graphs,
        totals,
        basepoint_mismatches,
    })
}

/// Runs the requested checks on one graph.
pub fn check_graph(name: &str, g: &RibbonGraph, checks: &[CheckKind], seed: u64) -> Result<GraphSummary, GraphError> {
    let planar = is_planar(g)?;
    let table = TorsorTable::new(g).map_err(|e| GraphError::Internal(e.to_string()))?;
    let cx = basepoint_counterexample(g, &table);
    let counterexample = cx.as_ref().map(|c| c.to_json(g, &table));
    let mut out = BTreeMap::new();
    for &check in checks {
        let outcome = match check {
            CheckKind::Periodicity => check_periodicity(g, seed),
            CheckKind::Torsor => check_torsor(g, &table),
            CheckKind::ReversibilityWelldef => check_welldef(g, seed),
            CheckKind::SeparatingReversible => check_separating(g, planar),
            CheckKind::GeodesicIdentities => check_geodesic(g, &table),
            CheckKind::Basepoint => Ok(if planar == cx.is_none() {
                CheckOutcome::ok()
            } else {
                CheckOutcome::fail(json!({"planar": planar, "counterexample": counterexample}))
            }),
        };
        let outcome = outcome.unwrap_or_else(|e| CheckOutcome::fail(json!({ "error": e })));
        out.insert(check.name().to_string(), outcome);
    }
    Ok(GraphSummary {
        graph: name.to_string(),
        planar,
        basepoint_independent: cx.is_none(),
        counterexample,
        checks: out,
    })
}

/// All unicycles, or a seeded sample when there are too many.
pub fn unicycles_for_checks(g: &RibbonGraph, seed: u64) -> Result<Vec<Unicycle>, String> {
    let mut all = all_unicycles(g).map_err(|e| e.to_string())?;
    if all.len() <= MAX_EXHAUSTIVE_UNICYCLES {
        return Ok(all);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, all.len(), UNICYCLE_SAMPLES).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().rev().map(|i| all.swap_remove(i)).rev().collect())
}

fn unicycle_json(g: &RibbonGraph, u: &Unicycle) -> Value {
    json!({"rotors": u.config().display(g), "chip": g.vertex_id(u.chip())})
}

fn check_periodicity(g: &RibbonGraph, seed: u64) -> Result<CheckOutcome, String> {
    for u in unicycles_for_checks(g, seed)? {
        if let Err(e) = run_cycle_period(g, &u) {
            return Ok(CheckOutcome::fail(json!({"unicycle": unicycle_json(g, &u), "error": e.to_string()})));
        }
    }
    Ok(CheckOutcome::ok())
}

fn check_torsor(g: &RibbonGraph, table: &TorsorTable) -> Result<CheckOutcome, String> {
    for r in g.vertices() {
        let rep = verify_torsor(g, table, r).map_err(|e| e.to_string())?;
        if !rep.pass() {
            return Ok(CheckOutcome::fail(serde_json::to_value(&rep).map_err(|e| e.to_string())?));
        }
    }
    Ok(CheckOutcome::ok())
}

fn check_welldef(g: &RibbonGraph, seed: u64) -> Result<CheckOutcome, String> {
    let mut reference = BTreeMap::new();
    for u in unicycles_for_checks(g, seed)? {
        let c = u.cycle().clone();
        let expected = match reference.get(&c) {
            Some(&r) => r,
            None => {
                let r = is_reversible(g, &c).map_err(|e| e.to_string())?;
                reference.insert(c.clone(), r);
                r
            }
        };
        let got = is_reversible_from(g, &u).map_err(|e| e.to_string())?;
        if got != expected {
            return Ok(CheckOutcome::fail(json!({
                "cycle": c.display(g),
                "unicycle": unicycle_json(g, &u),
                "reversible_here": got,
                "reversible_reference": expected,
            })));
        }
    }
    Ok(CheckOutcome::ok())
}

/// Separating cycles are reversible, reversible cycles have no witness of
/// length two or more, and the graph is planar iff every cycle is
/// reversible.
fn check_separating(g: &RibbonGraph, planar: bool) -> Result<CheckOutcome, String> {
    let mut all_reversible = true;
    for c in all_cycles(g) {
        let sep = separation(g, &c).map_err(|e| e.to_string())?;
        let rev = is_reversible(g, &c).map_err(|e| e.to_string())?;
        all_reversible &= rev;
        if sep.is_separating() && !rev {
            return Ok(CheckOutcome::fail(json!({"cycle": c.display(g), "separating": true, "reversible": false})));
        }
        if rev {
            if let Some(p) = &sep.long_witness {
                let path: Vec<String> = p.darts().iter().map(|&d| g.dart_name(d)).collect();
                return Ok(CheckOutcome::fail(json!({"cycle": c.display(g), "reversible": true, "long_witness": path})));
            }
        }
    }
    if planar != all_reversible {
        return Ok(CheckOutcome::fail(json!({"planar": planar, "all_reversible": all_reversible})));
    }
    Ok(CheckOutcome::ok())
}

fn check_geodesic(g: &RibbonGraph, table: &TorsorTable) -> Result<CheckOutcome, String> {
    let rep = check_geodesic_identities(g, table).map_err(|e| e.to_string())?;
    if rep.pass() {
        Ok(CheckOutcome::ok())
    } else {
        Ok(CheckOutcome::fail(serde_json::to_value(&rep).map_err(|e| e.to_string())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in CheckKind::ALL {
            assert_eq!(c.name().parse::<CheckKind>().unwrap(), c);
        }
        assert!("nope".parse::<CheckKind>().is_err());
    }

    #[test]
    fn empty_check_list_gives_empty_summary() {
        let spec = CorpusSpec {
            checks: vec![],
            ..CorpusSpec::builtin(1)
        };
        let s = run_corpus(&spec, 1).unwrap();
        assert!(s.graphs.is_empty() && s.totals.is_empty() && s.pass());
    }

    #[test]
    fn corpus_file_parsing() {
        let spec = CorpusSpec::parse(
            r#"{"bases": [{"builtin": "B3", "rotations": "all"}, {"builtin": "K5", "rotations": {"sample": 3, "seed": 1}}],
                "checks": ["basepoint", "torsor"]}"#,
            Path::new("."),
        )
        .unwrap();
        assert_eq!(spec.checks, vec![CheckKind::Basepoint, CheckKind::Torsor]);
        let graphs = spec.expand().unwrap();
        assert_eq!(graphs.len(), 7);
        assert_eq!(graphs[0].0, "B3[0]");
        assert!(CorpusSpec::parse(r#"{"bases": [{"builtin": "X9"}]}"#, Path::new(".")).is_err());
        assert!(CorpusSpec::parse(r#"{"bases": [], "checks": ["bogus"]}"#, Path::new(".")).is_err());
    }

    #[test]
    fn all_mode_refuses_large_bases() {
        let spec = CorpusSpec {
            bases: vec![BaseSpec {
                name: "K6".into(),
                graph: builtins::complete(6),
                mode: RotationMode::All,
            }],
            checks: vec![CheckKind::Basepoint],
            seed: 1,
        };
        assert!(matches!(spec.expand(), Err(GraphError::TooLarge { .. })));
    }

    #[test]
    fn small_corpus_passes_and_is_deterministic() {
        let spec = CorpusSpec::parse(
            r#"{"bases": [{"builtin": "B3", "rotations": "all"}, {"builtin": "theta", "rotations": "all"}]}"#,
            Path::new("."),
        )
        .unwrap();
        let one = run_corpus(&spec, 1).unwrap();
        let four = run_corpus(&spec, 4).unwrap();
        assert!(one.pass(), "{one:?}");
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
        for g in &one.graphs {
            assert_eq!(g.planar, g.counterexample.is_none());
        }
    }
}
