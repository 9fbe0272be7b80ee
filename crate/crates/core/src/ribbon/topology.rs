//! Surface topology of a ribbon graph: faces, genus, and how a directed
//! cycle splits the darts around it.

use std::collections::VecDeque;

use serde::Serialize;

use super::cycle::{DirectedCycle, DirectedPath};
use super::graph::{Dart, RibbonGraph, Vertex};
use crate::error::GraphError;

/// Face permutation `d -> rotate(reverse(d))`.
pub fn face_successor(g: &RibbonGraph, d: Dart) -> Dart {
    g.rotate(d.reverse())
}

/// Orbits of the face permutation, each starting at its smallest dart,
/// ordered by that dart.
pub fn faces(g: &RibbonGraph) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; g.num_darts()];
    let mut out = Vec::new();
    for d in g.darts() {
        if seen[d.0] {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = d;
        while !seen[cur.0] {
            seen[cur.0] = true;
            face.push(cur);
            cur = face_successor(g, cur);
        }
        out.push(face);
    }
    out
}

pub fn euler_characteristic(g: &RibbonGraph) -> i64 {
    g.num_vertices() as i64 - g.num_edges() as i64 + faces(g).len() as i64
}

pub fn genus(g: &RibbonGraph) -> Result<usize, GraphError> {
    let chi = euler_characteristic(g);
    if chi > 2 || chi % 2 != 0 {
        return Err(GraphError::Internal(format!("Euler characteristic {chi} is impossible")));
    }
    Ok(((2 - chi) / 2) as usize)
}

pub fn is_planar(g: &RibbonGraph) -> Result<bool, GraphError> {
    Ok(genus(g)? == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    OnCycle,
    Left,
    Right,
}

/// Side of `c` on which the dart `d` leaves the cycle.
///
/// Right darts sit strictly after the out-dart and before the in-dart in the
/// rotation at `tail(d)`. On the degenerate cycle `e, reverse(e)` the two
/// coincide and every other dart counts as Right.
pub fn classify_side(g: &RibbonGraph, c: &DirectedCycle, d: Dart) -> Result<Side, GraphError> {
    let x = g.tail(d);
    let (out, inn) = match (c.out_dart(g, x), c.in_dart(g, x)) {
        (Some(o), Some(i)) => (o, i),
        _ => return Err(GraphError::VertexNotOnCycle(g.vertex_id(x).to_string())),
    };
    if d == out || d == inn {
        return Ok(Side::OnCycle);
    }
    let to_d = g.rotation_distance(out, d);
    let to_in = g.rotation_distance(out, inn);
    if to_in == 0 || to_d < to_in {
        Ok(Side::Right)
    } else {
        Ok(Side::Left)
    }
}

/// Number of Right darts at `x` plus one: how many times the rotor at `x`
/// turns while the cycle is reversed.
pub fn right_turns(g: &RibbonGraph, c: &DirectedCycle, x: Vertex) -> Result<usize, GraphError> {
    let mut n = 1;
    for &d in g.rotation_at(x) {
        if classify_side(g, c, d)? == Side::Right {
            n += 1;
        }
    }
    Ok(n)
}

/// Everything known about whether `c` separates the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Chords leaving `c` on its left and arriving on its right, oriented
    /// left to right.
    pub short_witnesses: Vec<DirectedPath>,
    /// A witness through off-cycle vertices, if any component of `G - V(C)`
    /// touches both sides.
    pub long_witness: Option<DirectedPath>,
}

impl Separation {
    pub fn is_separating(&self) -> bool {
        self.short_witnesses.is_empty() && self.long_witness.is_none()
    }

    pub fn witness(&self) -> Option<&DirectedPath> {
        self.short_witnesses.first().or(self.long_witness.as_ref())
    }
}

pub fn separation(g: &RibbonGraph, c: &DirectedCycle) -> Result<Separation, GraphError> {
    let mut on_cycle = vec![false; g.num_vertices()];
    for v in c.vertices(g) {
        on_cycle[v.0] = true;
    }

    let mut short = Vec::new();
    for x in c.vertices(g) {
        for &d in g.rotation_at(x) {
            let y = g.head(d);
            if !on_cycle[y.0] {
                continue;
            }
            if classify_side(g, c, d)? == Side::Left && classify_side(g, c, d.reverse())? == Side::Right {
                short.push(DirectedPath::new(g, vec![d])?);
            }
        }
    }
    short.sort_by_key(|p| p.darts().to_vec());

    // components of G - V(C), each with its first Left and Right attachment
    let mut comp = vec![usize::MAX; g.num_vertices()];
    let mut parent: Vec<Option<Dart>> = vec![None; g.num_vertices()];
    let mut long = None;
    let mut n_comp = 0;
    for root in g.vertices() {
        if on_cycle[root.0] || comp[root.0] != usize::MAX {
            continue;
        }
        let id = n_comp;
        n_comp += 1;
        comp[root.0] = id;
        let mut queue = VecDeque::from([root]);
        let mut members = Vec::new();
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &d in g.rotation_at(v) {
                let w = g.head(d);
                if !on_cycle[w.0] && comp[w.0] == usize::MAX {
                    comp[w.0] = id;
                    parent[w.0] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        let mut left = None;
        let mut right = None;
        for &v in &members {
            for &d in g.rotation_at(v) {
                if !on_cycle[g.head(d).0] {
                    continue;
                }
                // d goes from the component onto the cycle
                match classify_side(g, c, d.reverse())? {
                    Side::Left if left.is_none() => left = Some(d.reverse()),
                    Side::Right if right.is_none() => right = Some(d),
                    _ => {}
                }
            }
        }
        if long.is_none() {
            if let (Some(enter), Some(exit)) = (left, right) {
                let inner = tree_path(g, &parent, root, g.head(enter), g.tail(exit));
                let mut darts = vec![enter];
                darts.extend(inner);
                darts.push(exit);
                long = Some(DirectedPath::new(g, darts)?);
            }
        }
    }
    Ok(Separation {
        short_witnesses: short,
        long_witness: long,
    })
}

pub fn is_separating(g: &RibbonGraph, c: &DirectedCycle) -> Result<bool, GraphError> {
    Ok(separation(g, c)?.is_separating())
}

// Path from `from` to `to` inside a BFS tree rooted at `root`.
fn tree_path(g: &RibbonGraph, parent: &[Option<Dart>], root: Vertex, from: Vertex, to: Vertex) -> Vec<Dart> {
    let up = |mut v: Vertex| {
        let mut darts = Vec::new();
        while v != root {
            let d = parent[v.0].expect("bfs parent");
            darts.push(d.reverse());
            v = g.tail(d);
        }
        darts
    };
    let mut a = up(from);
    let mut b = up(to);
    // drop the shared segment near the root
    while let (Some(x), Some(y)) = (a.last(), b.last()) {
        if x == y {
            a.pop();
            b.pop();
        } else {
            break;
        }
    }
    a.extend(b.into_iter().rev().map(Dart::reverse));
    a
}
