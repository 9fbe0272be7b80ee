//! Cycle reversal and reversibility.
//!
//! A cycle `C` is reversible when some unicycle `(rho, v)` with cycle `C`
//! reaches `(rho-bar, v)`, where `rho-bar` reverses the rotors along `C`.
//! Periodicity bounds the search to one period of `2m` steps.

use std::collections::VecDeque;

use super::config::{RotorConfig, State, Unicycle};
use super::routing::{run_until, TraceRecord};
use crate::error::RotorError;
use crate::ribbon::{classify_side, extend_to_tree, DirectedCycle, RibbonGraph, Side, Vertex};

/// `rho` with the rotors along its cycle `c` reversed.
pub fn reverse_on_cycle(g: &RibbonGraph, rho: &RotorConfig, c: &DirectedCycle) -> Result<RotorConfig, RotorError> {
    if rho.unique_cycle(g).ok().as_ref() != Some(c) {
        return Err(RotorError::CycleMismatch);
    }
    let mut out = rho.clone();
    for x in c.vertices(g) {
        out.set(x, c.in_dart(g, x));
    }
    Ok(out)
}

/// A deterministic unicycle realizing `c`: the path `c` minus its first
/// dart, extended to a spanning tree in edge order and oriented toward the
/// first dart's tail, plus that dart. The chip sits on the first dart's tail.
pub fn unicycle_for_cycle(g: &RibbonGraph, c: &DirectedCycle) -> Result<Unicycle, RotorError> {
    let first = c.darts()[0];
    let seed: Vec<_> = c.darts()[1..].iter().map(|d| d.edge()).collect();
    let tree = extend_to_tree(g, &seed)?;
    let config = RotorConfig::from_tree_and_dart(g, &tree, first);
    let u = Unicycle::new(g, config, g.tail(first))?;
    debug_assert_eq!(u.cycle(), c);
    Ok(u)
}

/// Trace from `(rho, v)` to the first later occurrence of `(rho-bar, v)`
/// within one period, if any.
pub fn reversal_trace(g: &RibbonGraph, u: &Unicycle) -> Result<Option<TraceRecord>, RotorError> {
    let target = State {
        config: reverse_on_cycle(g, u.config(), u.cycle())?,
        chip: u.chip(),
    };
    run_until(g, u.state(), g.num_darts(), false, |s| *s == target)
}

/// Whether `(rho, v) <~> (rho-bar, v)` for this particular unicycle.
pub fn is_reversible_from(g: &RibbonGraph, u: &Unicycle) -> Result<bool, RotorError> {
    Ok(reversal_trace(g, u)?.is_some())
}

pub fn is_reversible(g: &RibbonGraph, c: &DirectedCycle) -> Result<bool, RotorError> {
    is_reversible_from(g, &unicycle_for_cycle(g, c)?)
}

/// First state `(sigma, w)` in the period with `w` on the cycle and
/// `sigma[w]` equal to the reversed cycle's dart at `w`.
pub fn maximal_reversal(g: &RibbonGraph, u: &Unicycle) -> Result<(RotorConfig, Vertex, TraceRecord), RotorError> {
    let c = u.cycle().clone();
    let trace = run_until(g, u.state(), g.num_darts(), true, |s| {
        c.in_dart(g, s.chip).is_some_and(|back| s.config.get(s.chip) == Some(back))
    })?
    .ok_or_else(|| RotorError::NotReached("maximal reversal".into()))?;
    let state = trace.final_state.clone();
    Ok((state.config, state.chip, trace))
}

/// Off-cycle vertices split by the side of the cycle they hang from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePartition {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

/// Seeds each side with the off-cycle ends of edges leaving the cycle on
/// that side, then closes under adjacency in `G - V(C)`.
pub fn lcrc_partition(g: &RibbonGraph, c: &DirectedCycle) -> Result<SidePartition, RotorError> {
    let n = g.num_vertices();
    let mut on_cycle = vec![false; n];
    for v in c.vertices(g) {
        on_cycle[v.0] = true;
    }
    let closure = |side: Side| -> Result<Vec<bool>, RotorError> {
        let mut member = vec![false; n];
        let mut queue = VecDeque::new();
        for x in c.vertices(g) {
            for &d in g.rotation_at(x) {
                let y = g.head(d);
                if !on_cycle[y.0] && !member[y.0] && classify_side(g, c, d)? == side {
                    member[y.0] = true;
                    queue.push_back(y);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for &d in g.rotation_at(v) {
                let w = g.head(d);
                if !on_cycle[w.0] && !member[w.0] {
                    member[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok(member)
    };
    let left = closure(Side::Left)?;
    let right = closure(Side::Right)?;
    if let Some(v) = g.vertices().find(|v| left[v.0] && right[v.0]) {
        return Err(RotorError::NotPartitionable(g.vertex_id(v).to_string()));
    }
    Ok(SidePartition {
        left: g.vertices().filter(|v| left[v.0]).collect(),
        right: g.vertices().filter(|v| right[v.0]).collect(),
    })
}

/// The partition read off a reversal trace: off-cycle vertices never
/// visited go left, those visited `deg` times go right.
pub fn lcrc_from_trace(g: &RibbonGraph, c: &DirectedCycle, trace: &TraceRecord) -> Result<SidePartition, RotorError> {
    let visits = trace.departures(g.num_vertices());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for v in g.vertices().filter(|&v| !c.contains_vertex(g, v)) {
        match visits[v.0] {
            0 => left.push(v),
            k if k == g.degree(v) => right.push(v),
            _ => return Err(RotorError::NotPartitionable(g.vertex_id(v).to_string())),
        }
    }
    Ok(SidePartition { left, right })
}
