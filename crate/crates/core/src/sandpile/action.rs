//! The sandpile torsor: `Div^0(G)` acting on spanning trees through
//! rotor-routing from a root.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::divisor::Divisor;
use super::laplacian::{group_structure, laplacian};
use crate::error::SandpileError;
use crate::ribbon::{spanning_trees, RibbonGraph, SpanningTree, Vertex};
use crate::rotor::{route_to_root, RotorConfig, TraceRecord};

/// A permutation of tree indices.
pub type Perm = Vec<u32>;

/// `(v - r)_r(T)`: orient `T` towards `r`, drop the chip on `v` and route
/// until it first reaches `r`.
pub fn act_generator(g: &RibbonGraph, r: Vertex, v: Vertex, tree: &SpanningTree) -> Result<SpanningTree, SandpileError> {
    Ok(act_generator_traced(g, r, v, tree)?.0)
}

pub fn act_generator_traced(
    g: &RibbonGraph,
    r: Vertex,
    v: Vertex,
    tree: &SpanningTree,
) -> Result<(SpanningTree, TraceRecord), SandpileError> {
    let config = RotorConfig::from_tree(g, tree, r);
    let trace = route_to_root(g, &config, v)?;
    let out = trace.final_state.config.tree(g)?;
    Ok((out, trace))
}

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `p` after `q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn power(p: &Perm, k: u64) -> Perm {
    let mut out = identity(p.len());
    for _ in 0..k {
        out = compose(p, &out);
    }
    out
}

/// Every generator `(v - r)_r` as a permutation of the enumerated trees.
#[derive(Clone, Debug)]
pub struct TorsorTable {
    trees: Vec<SpanningTree>,
    index: HashMap<SpanningTree, usize>,
    gens: Vec<Vec<Perm>>,
    invs: Vec<Vec<Perm>>,
}

impl TorsorTable {
    pub fn new(g: &RibbonGraph) -> Result<Self, SandpileError> {
        let trees = spanning_trees(g)?;
        let index: HashMap<SpanningTree, usize> = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut gens = Vec::with_capacity(g.num_vertices());
        for r in g.vertices() {
            let mut row = Vec::with_capacity(g.num_vertices());
            for v in g.vertices() {
                let mut perm = Vec::with_capacity(trees.len());
                for t in &trees {
                    let out = act_generator(g, r, v, t)?;
                    let j = index.get(&out).copied().ok_or_else(|| {
                        crate::error::GraphError::Internal("routing produced an unenumerated tree".into())
                    })?;
                    perm.push(j as u32);
                }
                row.push(perm);
            }
            gens.push(row);
        }
        let invs = gens.iter().map(|row| row.iter().map(inverse).collect()).collect();
        Ok(TorsorTable {
            trees,
            index,
            gens,
            invs,
        })
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, tree: &SpanningTree) -> Option<usize> {
        self.index.get(tree).copied()
    }

    pub fn generator(&self, r: Vertex, v: Vertex) -> &Perm {
        &self.gens[r.0][v.0]
    }

    /// `D_r` as a permutation. `D = sum n_v (v - r)`; negative coefficients
    /// use the inverse permutation.
    pub fn perm(&self, r: Vertex, d: &Divisor) -> Result<Perm, SandpileError> {
        d.require_degree(0)?;
        let mut out = identity(self.len());
        for (v, n) in d.iter().filter(|&(v, _)| v != r) {
            let p = if n >= 0 { &self.gens[r.0][v.0] } else { &self.invs[r.0][v.0] };
            out = compose(&power(p, n.unsigned_abs()), &out);
        }
        Ok(out)
    }

    /// `D_r` applied to the tree with index `i`.
    pub fn act_index(&self, r: Vertex, d: &Divisor, i: usize) -> Result<usize, SandpileError> {
        d.require_degree(0)?;
        let mut i = i as u32;
        for (v, n) in d.iter().filter(|&(v, _)| v != r) {
            let p = if n >= 0 { &self.gens[r.0][v.0] } else { &self.invs[r.0][v.0] };
            for _ in 0..n.unsigned_abs() {
                i = p[i as usize];
            }
        }
        Ok(i as usize)
    }

    /// `(v - w)_r` applied to tree `i`.
    pub fn act_difference(&self, r: Vertex, v: Vertex, w: Vertex, i: usize) -> usize {
        let i = self.invs[r.0][w.0][i] as usize;
        self.gens[r.0][v.0][i] as usize
    }

    pub fn act(&self, r: Vertex, d: &Divisor, tree: &SpanningTree) -> Result<SpanningTree, SandpileError> {
        let i = self
            .index_of(tree)
            .ok_or_else(|| crate::error::GraphError::NotATree("tree is not in the enumeration".into()))?;
        Ok(self.trees[self.act_index(r, d, i)?].clone())
    }

    /// Equivalence decided by the action: `D - D'` fixes a tree.
    pub fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool, SandpileError> {
        d2.require_degree(d1.degree())?;
        Ok(self.act_index(Vertex(0), &(d1 - d2), 0)? == 0)
    }
}

/// `D_r(T)` computed from a fresh table.
pub fn act_divisor(g: &RibbonGraph, r: Vertex, d: &Divisor, tree: &SpanningTree) -> Result<SpanningTree, SandpileError> {
    d.require_degree(0)?;
    TorsorTable::new(g)?.act(r, d, tree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsorReport {
    pub root: String,
    pub trees: usize,
    pub group_order: u64,
    pub well_defined: bool,
    pub commutative: bool,
    pub free: bool,
    pub transitive: bool,
    pub order_matches: bool,
}

impl TorsorReport {
    pub fn pass(&self) -> bool {
        self.well_defined && self.commutative && self.free && self.transitive && self.order_matches
    }
}

/// Checks that the action at `r` kills the Laplacian image, that its
/// generators commute, and that the generated group acts freely and
/// transitively with order `|Pic^0|`.
pub fn verify_torsor(g: &RibbonGraph, table: &TorsorTable, r: Vertex) -> Result<TorsorReport, SandpileError> {
    let n = table.len();
    let id = identity(n);
    let lap = laplacian(g);
    let mut well_defined = true;
    for w in g.vertices() {
        well_defined &= table.perm(r, &lap.column(w))? == id;
    }
    let gens: Vec<&Perm> = g.vertices().filter(|&v| v != r).map(|v| table.generator(r, v)).collect();
    let mut commutative = true;
    for p in &gens {
        for q in &gens {
            commutative &= compose(p, q) == compose(q, p);
        }
    }
    // closure of the generators, capped just past the expected size
    let mut group: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(p) = queue.pop_front() {
        if group.len() > n {
            break;
        }
        for gen in &gens {
            let q = compose(gen, &p);
            if group.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let free = group.iter().all(|p| *p == id || p.iter().enumerate().all(|(i, &j)| i as u32 != j));
    let orbit: HashSet<u32> = group.iter().map(|p| p[0]).collect();
    let transitive = n > 0 && orbit.len() == n;
    let group_order = group_structure(g).order();
    Ok(TorsorReport {
        root: g.vertex_id(r).to_string(),
        trees: n,
        group_order,
        well_defined,
        commutative,
        free,
        transitive,
        order_matches: group.len() == n && group_order == n as u64,
    })
}
