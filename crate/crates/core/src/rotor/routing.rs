use std::collections::HashSet;

use serde::Serialize;

use super::config::{RotorConfig, State, Unicycle};
use crate::error::RotorError;
use crate::ribbon::{Dart, RibbonGraph, Vertex};

/// One rotor-routing step: the chip at `at` advanced its rotor to `rotor`
/// and moved to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub at: Vertex,
    pub rotor: Dart,
    pub to: Vertex,
}

#[derive(Serialize)]
struct StepJson<'a> {
    at: &'a str,
    rotor: String,
    to: &'a str,
}

/// Full log of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub initial: State,
    pub steps: Vec<TraceStep>,
    pub final_state: State,
}

impl TraceRecord {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-executes the steps from `initial`, checking each against the log.
    pub fn replay(&self, g: &RibbonGraph) -> Result<State, RotorError> {
        let mut state = self.initial.clone();
        for (i, logged) in self.steps.iter().enumerate() {
            let s = advance(g, &mut state)?;
            if s != *logged {
                return Err(RotorError::PeriodViolation(format!("replay diverges at step {i}")));
            }
        }
        Ok(state)
    }

    pub fn is_consistent(&self, g: &RibbonGraph) -> bool {
        self.replay(g).is_ok_and(|s| s == self.final_state)
    }

    /// Darts traversed, in order.
    pub fn traversed(&self) -> impl Iterator<Item = Dart> + '_ {
        self.steps.iter().map(|s| s.rotor)
    }

    /// Sorted set of darts traversed.
    pub fn traversed_set(&self) -> Vec<Dart> {
        let mut out: Vec<Dart> = self.traversed().collect();
        out.sort();
        out.dedup();
        out
    }

    /// How many times the chip left each vertex.
    pub fn departures(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for s in &self.steps {
            out[s.at.0] += 1;
        }
        out
    }

    /// How many times the chip arrived at each vertex.
    pub fn arrivals(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for s in &self.steps {
            out[s.to.0] += 1;
        }
        out
    }

    /// Chip positions: the initial vertex followed by each arrival.
    pub fn positions(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.initial.chip).chain(self.steps.iter().map(|s| s.to))
    }

    /// One JSON object per step: `{"at":vertex,"rotor":dart,"to":vertex}`.
    pub fn to_json_lines(&self, g: &RibbonGraph) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let line = StepJson {
                at: g.vertex_id(s.at),
                rotor: g.dart_name(s.rotor),
                to: g.vertex_id(s.to),
            };
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

/// Advances the rotor at the chip and moves the chip along it.
pub fn advance(g: &RibbonGraph, state: &mut State) -> Result<TraceStep, RotorError> {
    let x = state.chip;
    let current = state
        .config
        .get(x)
        .ok_or_else(|| RotorError::ChipAtExcludedRoot(g.vertex_id(x).to_string()))?;
    let next = g.rotate(current);
    state.config.set(x, Some(next));
    let y = g.head(next);
    state.chip = y;
    Ok(TraceStep { at: x, rotor: next, to: y })
}

/// Single step from `(config, x)`.
pub fn step(g: &RibbonGraph, config: &RotorConfig, x: Vertex) -> Result<(RotorConfig, Vertex, TraceStep), RotorError> {
    let mut state = State {
        config: config.clone(),
        chip: x,
    };
    let s = advance(g, &mut state)?;
    Ok((state.config, state.chip, s))
}

/// Runs from `start` until `stop` holds, checking the start state itself
/// only when `check_start` is set. Gives up after `limit` steps.
pub fn run_until<F>(
    g: &RibbonGraph,
    start: &State,
    limit: usize,
    check_start: bool,
    mut stop: F,
) -> Result<Option<TraceRecord>, RotorError>
where
    F: FnMut(&State) -> bool,
{
    let mut state = start.clone();
    let mut steps = Vec::new();
    if check_start && stop(&state) {
        return Ok(Some(TraceRecord {
            initial: start.clone(),
            steps,
            final_state: state,
        }));
    }
    for _ in 0..limit {
        steps.push(advance(g, &mut state)?);
        if stop(&state) {
            return Ok(Some(TraceRecord {
                initial: start.clone(),
                steps,
                final_state: state,
            }));
        }
    }
    Ok(None)
}

/// Runs a unicycle for exactly `2m` steps and checks that the chip
/// traversed every dart once, each rotor made one full turn, and the run
/// returned to its initial state.
pub fn run_cycle_period(g: &RibbonGraph, u: &Unicycle) -> Result<TraceRecord, RotorError> {
    let period = g.num_darts();
    let mut state = u.state().clone();
    let mut steps = Vec::with_capacity(period);
    for _ in 0..period {
        steps.push(advance(g, &mut state)?);
    }
    let trace = TraceRecord {
        initial: u.state().clone(),
        steps,
        final_state: state,
    };
    if trace.final_state != trace.initial {
        return Err(RotorError::PeriodViolation("final state differs from initial".into()));
    }
    let mut seen = vec![0usize; g.num_darts()];
    for d in trace.traversed() {
        seen[d.0] += 1;
    }
    if let Some(d) = seen.iter().position(|&c| c != 1) {
        return Err(RotorError::PeriodViolation(format!(
            "dart {} traversed {} times",
            g.dart_name(Dart(d)),
            seen[d]
        )));
    }
    let turns = trace.departures(g.num_vertices());
    if let Some(v) = g.vertices().find(|&v| turns[v.0] != g.degree(v)) {
        return Err(RotorError::PeriodViolation(format!(
            "rotor at {} advanced {} times, degree {}",
            g.vertex_id(v),
            turns[v.0],
            g.degree(v)
        )));
    }
    Ok(trace)
}

/// `(rho, x) ~>_y (sigma, y)`: stops the first time the chip is at `y`.
pub fn route_first_arrival(g: &RibbonGraph, u: &Unicycle, y: Vertex) -> Result<(RotorConfig, TraceRecord), RotorError> {
    let trace = run_until(g, u.state(), g.num_darts(), true, |s| s.chip == y)?
        .ok_or_else(|| RotorError::NotReached(g.vertex_id(y).to_string()))?;
    Ok((trace.final_state.config.clone(), trace))
}

/// `(rho, x) ~>_{y,e} (sigma, y)`: the state in the period with the chip at
/// `y` and the rotor at `y` equal to `e`.
pub fn route_to_rotor_state(
    g: &RibbonGraph,
    u: &Unicycle,
    y: Vertex,
    e: Dart,
) -> Result<(RotorConfig, TraceRecord), RotorError> {
    if g.tail(e) != y {
        return Err(RotorError::BadRotor(format!("{} does not leave {}", g.dart_name(e), g.vertex_id(y))));
    }
    let trace = run_until(g, u.state(), g.num_darts() - 1, true, |s| {
        s.chip == y && s.config.get(y) == Some(e)
    })?
    .ok_or_else(|| RotorError::NotReached(g.dart_name(e)))?;
    Ok((trace.final_state.config.clone(), trace))
}

/// Runs a rooted configuration until the chip first reaches the excluded
/// root. Errors if a state repeats, which would mean the run never ends.
pub fn route_to_root(g: &RibbonGraph, config: &RotorConfig, chip: Vertex) -> Result<TraceRecord, RotorError> {
    let root = config
        .excluded_root()
        .ok_or_else(|| RotorError::BadRotor("configuration has no root".into()))?;
    let start = State {
        config: config.clone(),
        chip,
    };
    let mut state = start.clone();
    let mut steps = Vec::new();
    // states are only remembered once the run is suspiciously long
    let quiet = g.num_darts() * g.num_vertices();
    let mut seen = HashSet::new();
    while state.chip != root {
        steps.push(advance(g, &mut state)?);
        if steps.len() > quiet && !seen.insert(state.clone()) {
            return Err(RotorError::Looping(g.vertex_id(root).to_string()));
        }
    }
    Ok(TraceRecord {
        initial: start,
        steps,
        final_state: state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtins;
    use crate::rotor::config::all_unicycles;

    fn dart(g: &RibbonGraph, name: &str) -> Dart {
        g.parse_dart(name).unwrap()
    }

    #[test]
    fn degree_one_step() {
        let g = builtins::path2();
        let d = dart(&g, "e1@a");
        let config = RotorConfig::total(&g, vec![d, d.reverse()]).unwrap();
        let (next, y, s) = step(&g, &config, Vertex(0)).unwrap();
        assert_eq!(next, config);
        assert_eq!(y, Vertex(1));
        assert_eq!(s.rotor, d);
    }

    #[test]
    fn banana_step() {
        let g = builtins::banana(3, true);
        let config = RotorConfig::total(&g, vec![dart(&g, "e1@a"), dart(&g, "e1@b")]).unwrap();
        let (next, y, _) = step(&g, &config, Vertex(0)).unwrap();
        assert_eq!(next.get(Vertex(0)), Some(dart(&g, "e2@a")));
        assert_eq!(next.get(Vertex(1)), Some(dart(&g, "e1@b")));
        assert_eq!(y, Vertex(1));
    }

    #[test]
    fn excluded_root_step_fails() {
        let g = builtins::path2();
        let config = RotorConfig::new(&g, vec![None, Some(dart(&g, "e1@b"))]).unwrap();
        assert!(matches!(step(&g, &config, Vertex(0)), Err(RotorError::ChipAtExcludedRoot(_))));
    }

    #[test]
    fn b2_unicycle() {
        let g = builtins::banana(2, true);
        let config = RotorConfig::total(&g, vec![dart(&g, "e1@a"), dart(&g, "e2@b")]).unwrap();
        let u = Unicycle::new(&g, config, Vertex(0)).unwrap();
        let (c, y, _) = step(&g, u.config(), u.chip()).unwrap();
        assert_eq!(c.get(Vertex(0)), Some(dart(&g, "e2@a")));
        assert_eq!(y, Vertex(1));

        let trace = run_cycle_period(&g, &u).unwrap();
        assert_eq!(trace.len(), 4);
        assert_eq!(trace.traversed_set().len(), 4);
        // golden trace
        assert_eq!(
            trace.to_json_lines(&g),
            concat!(
                "{\"at\":\"a\",\"rotor\":\"e2@a\",\"to\":\"b\"}\n",
                "{\"at\":\"b\",\"rotor\":\"e1@b\",\"to\":\"a\"}\n",
                "{\"at\":\"a\",\"rotor\":\"e1@a\",\"to\":\"b\"}\n",
                "{\"at\":\"b\",\"rotor\":\"e2@b\",\"to\":\"a\"}\n",
            )
        );
        assert!(trace.is_consistent(&g));

        // both darts at b occur once each as the rotor state with the chip at b
        let (s1, _) = route_to_rotor_state(&g, &u, Vertex(1), dart(&g, "e1@b")).unwrap();
        let (s2, _) = route_to_rotor_state(&g, &u, Vertex(1), dart(&g, "e2@b")).unwrap();
        assert_ne!(s1, s2);
    }

    #[test]
    fn triangle_period() {
        let g = builtins::cycle(3);
        let forward: Vec<Dart> = g.vertices().map(|v| g.rotation_at(v)[0]).collect();
        let config = RotorConfig::total(&g, forward).unwrap();
        for chip in g.vertices() {
            if let Ok(u) = Unicycle::new(&g, config.clone(), chip) {
                assert_eq!(run_cycle_period(&g, &u).unwrap().len(), 6);
            }
        }
    }

    #[test]
    fn first_arrival() {
        let g = builtins::banana(3, false);
        for u in all_unicycles(&g).unwrap() {
            let (same, t) = route_first_arrival(&g, &u, u.chip()).unwrap();
            assert!(t.is_empty());
            assert_eq!(&same, u.config());
            let other = Vertex(1 - u.chip().0);
            let (sigma, t) = route_first_arrival(&g, &u, other).unwrap();
            assert_eq!(sigma.get(other), u.config().get(other));
            assert!(t.len() <= g.num_darts());
            // the arrival matches the first visit in the full period
            let period = run_cycle_period(&g, &u).unwrap();
            let first = period.positions().position(|v| v == other).unwrap();
            assert_eq!(first, t.len());
            assert_eq!(&period.steps[..first], &t.steps[..]);
        }
    }

    #[test]
    fn rotor_state_is_unique_in_period() {
        let g = builtins::complete(4);
        for u in all_unicycles(&g).unwrap().iter().step_by(7) {
            let period = run_cycle_period(&g, u).unwrap();
            let mut states = vec![period.initial.clone()];
            let mut s = period.initial.clone();
            for _ in 0..period.len() - 1 {
                advance(&g, &mut s).unwrap();
                states.push(s.clone());
            }
            for y in g.vertices() {
                for &e in g.rotation_at(y) {
                    let hits = states
                        .iter()
                        .filter(|s| s.chip == y && s.config.get(y) == Some(e))
                        .count();
                    assert_eq!(hits, 1);
                    let (sigma, _) = route_to_rotor_state(&g, u, y, e).unwrap();
                    assert_eq!(sigma.get(y), Some(e));
                }
                // e = rho[y] agrees with first arrival
                let rho_y = u.config().get(y).unwrap();
                assert_eq!(
                    route_to_rotor_state(&g, u, y, rho_y).unwrap().0,
                    route_first_arrival(&g, u, y).unwrap().0
                );
            }
        }
    }

    #[test]
    fn closed_traces_conserve_visits() {
        let g = builtins::theta();
        for u in all_unicycles(&g).unwrap() {
            let t = run_cycle_period(&g, &u).unwrap();
            assert_eq!(t.departures(4), t.arrivals(4));
        }
    }
}
