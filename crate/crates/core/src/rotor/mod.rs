//! The rotor-routing process on a ribbon graph.

mod config;
mod reversal;
mod routing;

pub use config::{all_unicycles, config_count, RotorConfig, State, Unicycle, MAX_CONFIGS};
pub use reversal::{
    is_reversible, is_reversible_from, lcrc_from_trace, lcrc_partition, maximal_reversal, reversal_trace,
    reverse_on_cycle, unicycle_for_cycle, SidePartition,
};
pub use routing::{
    advance, route_first_arrival, route_to_root, route_to_rotor_state, run_cycle_period, run_until, step,
    TraceRecord, TraceStep,
};
