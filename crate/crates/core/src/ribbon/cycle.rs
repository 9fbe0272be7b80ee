use std::collections::BTreeSet;

use super::graph::{Dart, RibbonGraph, Vertex};
use crate::error::GraphError;

/// An edge-injective walk. May be empty (a path from a vertex to itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedPath {
    darts: Vec<Dart>,
}

impl DirectedPath {
    pub fn new(g: &RibbonGraph, darts: Vec<Dart>) -> Result<Self, GraphError> {
        for w in darts.windows(2) {
            if g.head(w[0]) != g.tail(w[1]) {
                return Err(GraphError::BadPath(format!(
                    "{} does not continue {}",
                    g.dart_name(w[1]),
                    g.dart_name(w[0])
                )));
            }
        }
        let edges: BTreeSet<_> = darts.iter().map(|d| d.edge()).collect();
        if edges.len() != darts.len() {
            return Err(GraphError::BadPath("edge used twice".into()));
        }
        Ok(DirectedPath { darts })
    }

    pub fn empty() -> Self {
        DirectedPath { darts: Vec::new() }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices visited, in order. Empty for the empty path.
    pub fn vertices(&self, g: &RibbonGraph) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.darts.iter().map(|&d| g.tail(d)).collect();
        if let Some(&last) = self.darts.last() {
            out.push(g.head(last));
        }
        out
    }

    pub fn reversed(&self) -> Self {
        DirectedPath {
            darts: self.darts.iter().rev().map(|d| d.reverse()).collect(),
        }
    }
}

/// A vertex-injective closed walk, stored starting at its smallest dart.
///
/// Orientation is part of the value: a cycle and its reversal are distinct.
/// The length-2 cycle `e, reverse(e)` is admitted as a degenerate cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedCycle {
    darts: Vec<Dart>,
}

impl DirectedCycle {
    pub fn new(g: &RibbonGraph, mut darts: Vec<Dart>) -> Result<Self, GraphError> {
        let k = darts.len();
        if k < 2 {
            return Err(GraphError::BadCycle("fewer than two darts".into()));
        }
        for i in 0..k {
            if g.head(darts[i]) != g.tail(darts[(i + 1) % k]) {
                return Err(GraphError::BadCycle(format!(
                    "{} does not continue {}",
                    g.dart_name(darts[(i + 1) % k]),
                    g.dart_name(darts[i])
                )));
            }
        }
        let tails: BTreeSet<_> = darts.iter().map(|&d| g.tail(d)).collect();
        if tails.len() != k {
            return Err(GraphError::BadCycle("vertex repeated".into()));
        }
        let start = (0..k).min_by_key(|&i| darts[i]).unwrap_or(0);
        darts.rotate_left(start);
        Ok(DirectedCycle { darts })
    }

    /// The degenerate cycle `d, reverse(d)`.
    pub fn trivial(d: Dart) -> Self {
        let mut darts = vec![d, d.reverse()];
        darts.sort();
        DirectedCycle { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_degenerate(&self) -> bool {
        self.darts.len() == 2 && self.darts[0].reverse() == self.darts[1]
    }

    pub fn reversed(&self) -> Self {
        let mut darts: Vec<Dart> = self.darts.iter().rev().map(|d| d.reverse()).collect();
        let start = (0..darts.len()).min_by_key(|&i| darts[i]).unwrap_or(0);
        darts.rotate_left(start);
        DirectedCycle { darts }
    }

    pub fn vertices<'a>(&'a self, g: &'a RibbonGraph) -> impl Iterator<Item = Vertex> + 'a {
        self.darts.iter().map(move |&d| g.tail(d))
    }

    pub fn contains_vertex(&self, g: &RibbonGraph, v: Vertex) -> bool {
        self.darts.iter().any(|&d| g.tail(d) == v)
    }

    /// The cycle's dart leaving `v`.
    pub fn out_dart(&self, g: &RibbonGraph, v: Vertex) -> Option<Dart> {
        self.darts.iter().copied().find(|&d| g.tail(d) == v)
    }

    /// The dart at `v` of the edge by which the cycle enters `v`.
    pub fn in_dart(&self, g: &RibbonGraph, v: Vertex) -> Option<Dart> {
        self.darts.iter().copied().find(|&d| g.head(d) == v).map(Dart::reverse)
    }

    /// Parses a comma-separated list of edge ids (optionally `edge@tail`)
    /// walked in order.
    pub fn parse(g: &RibbonGraph, spec: &str) -> Result<Self, GraphError> {
        let tokens: Vec<&str> = spec.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        if tokens.len() < 2 {
            return Err(GraphError::BadCycle("need at least two edges".into()));
        }
        let edge_of = |t: &str| -> Result<_, GraphError> {
            let id = t.rsplit_once('@').map_or(t, |(e, _)| e);
            g.edge(id).ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
        };
        let first = if tokens[0].contains('@') {
            g.parse_dart(tokens[0])?
        } else {
            let e0 = edge_of(tokens[0])?;
            let e1 = edge_of(tokens[1])?;
            let [a, b] = g.ends(e0);
            let shared_b = g.ends(e1).contains(&b);
            let shared_a = g.ends(e1).contains(&a);
            if shared_b || !shared_a {
                e0.forward()
            } else {
                e0.forward().reverse()
            }
        };
        let mut darts = vec![first];
        for t in &tokens[1..] {
            let e = edge_of(t)?;
            let at = g.head(*darts.last().unwrap());
            let d = g
                .dart_from(e, at)
                .ok_or_else(|| GraphError::BadCycle(format!("edge {t} does not leave {}", g.vertex_id(at))))?;
            if t.contains('@') && g.parse_dart(t)? != d {
                return Err(GraphError::BadCycle(format!("{t} does not leave {}", g.vertex_id(at))));
            }
            darts.push(d);
        }
        Self::new(g, darts)
    }

    pub fn display(&self, g: &RibbonGraph) -> Vec<String> {
        self.darts.iter().map(|&d| g.dart_name(d)).collect()
    }
}

/// All edge-injective directed cycles of `g` (degenerate ones excluded),
/// sorted by canonical form.
pub fn all_cycles(g: &RibbonGraph) -> Vec<DirectedCycle> {
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.num_vertices()];
    for start in g.vertices() {
        on_path[start.0] = true;
        let mut stack = Vec::new();
        extend(g, start, start, &mut on_path, &mut stack, &mut found);
        on_path[start.0] = false;
    }
    found.into_iter().collect()
}

// Cycles whose smallest vertex is `start`; other vertices must exceed it.
fn extend(
    g: &RibbonGraph,
    start: Vertex,
    at: Vertex,
    on_path: &mut [bool],
    stack: &mut Vec<Dart>,
    found: &mut BTreeSet<DirectedCycle>,
) {
    for &d in g.rotation_at(at) {
        let w = g.head(d);
        if w == start {
            let closes_trivially = stack.len() == 1 && stack[0].reverse() == d;
            if !stack.is_empty() && !closes_trivially {
                let mut darts = stack.clone();
                darts.push(d);
                if let Ok(c) = DirectedCycle::new(g, darts) {
                    found.insert(c);
                }
            }
        } else if w > start && !on_path[w.0] {
            on_path[w.0] = true;
            stack.push(d);
            extend(g, start, w, on_path, stack, found);
            stack.pop();
            on_path[w.0] = false;
        }
    }
}
