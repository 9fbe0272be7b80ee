//! Builtin graphs, rotation-system generation and the corpus check runner.

pub mod builtins;
pub mod rotations;
mod runner;

pub use runner::{
    check_graph, run_corpus, unicycles_for_checks, BaseSpec, CheckKind, CheckOutcome, CheckTotals, CorpusSpec,
    CorpusSummary, GraphSummary, RotationMode, MAX_EXHAUSTIVE_UNICYCLES, UNICYCLE_SAMPLES,
};
