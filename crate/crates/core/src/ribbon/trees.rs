use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;

use super::cycle::{DirectedCycle, DirectedPath};
use super::graph::{Dart, Edge, RibbonGraph, Vertex};
use crate::error::GraphError;

/// Subset enumeration is exponential in the edge count.
pub const MAX_TREE_EDGES: usize = 24;

/// Spanning tree as a sorted list of edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn new(g: &RibbonGraph, mut edges: Vec<Edge>) -> Result<Self, GraphError> {
        edges.sort();
        edges.dedup();
        if edges.len() + 1 != g.num_vertices() {
            return Err(GraphError::NotATree(format!(
                "{} edges for {} vertices",
                edges.len(),
                g.num_vertices()
            )));
        }
        if edges.iter().any(|e| e.0 >= g.num_edges()) {
            return Err(GraphError::NotATree("edge out of range".into()));
        }
        if !is_acyclic(g, &edges) {
            return Err(GraphError::NotATree("edges contain a cycle".into()));
        }
        Ok(SpanningTree { edges })
    }

    /// Parses a list of edge ids.
    pub fn from_ids<S: AsRef<str>>(g: &RibbonGraph, ids: &[S]) -> Result<Self, GraphError> {
        let edges = ids
            .iter()
            .map(|id| g.edge(id.as_ref()).ok_or_else(|| GraphError::UnknownEdge(id.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn ids(&self, g: &RibbonGraph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_id(e).to_string()).collect()
    }

    /// For every vertex, the tree dart leading one step closer to `root`.
    /// The root itself gets `None`.
    pub fn orient_towards(&self, g: &RibbonGraph, root: Vertex) -> Vec<Option<Dart>> {
        let mut toward = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        seen[root.0] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &d in g.rotation_at(v) {
                let w = g.head(d);
                if !seen[w.0] && self.contains(d.edge()) {
                    seen[w.0] = true;
                    toward[w.0] = Some(d.reverse());
                    queue.push_back(w);
                }
            }
        }
        toward
    }

    /// The unique tree path from `x` to `y`.
    pub fn geodesic(&self, g: &RibbonGraph, x: Vertex, y: Vertex) -> DirectedPath {
        let toward = self.orient_towards(g, y);
        let mut darts = Vec::new();
        let mut v = x;
        while let Some(d) = toward[v.0] {
            darts.push(d);
            v = g.head(d);
        }
        DirectedPath::new(g, darts).expect("tree geodesic is a path")
    }

    /// The cycle formed by `e` (from y to x) and the tree path from x to y.
    pub fn fundamental_cycle(&self, g: &RibbonGraph, e: Dart) -> DirectedCycle {
        let (y, x) = (g.tail(e), g.head(e));
        if self.contains(e.edge()) {
            return DirectedCycle::trivial(e);
        }
        let mut darts = self.geodesic(g, x, y).darts().to_vec();
        darts.push(e);
        DirectedCycle::new(g, darts).expect("fundamental cycle is a cycle")
    }
}

fn is_acyclic(g: &RibbonGraph, edges: &[Edge]) -> bool {
    let mut uf = UnionFind::<usize>::new(g.num_vertices());
    edges.iter().all(|&e| {
        let [a, b] = g.ends(e);
        uf.union(a.0, b.0)
    })
}

/// All spanning trees in lexicographic order of their sorted edge lists.
pub fn spanning_trees(g: &RibbonGraph) -> Result<Vec<SpanningTree>, GraphError> {
    let m = g.num_edges();
    if m > MAX_TREE_EDGES {
        return Err(GraphError::TooLarge {
            what: "edge count",
            size: m,
            cap: MAX_TREE_EDGES,
        });
    }
    let k = g.num_vertices() - 1;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    if k > m {
        return Ok(out);
    }
    loop {
        let edges: Vec<Edge> = pick.iter().map(|&i| Edge(i)).collect();
        if is_acyclic(g, &edges) {
            out.push(SpanningTree { edges });
        }
        // next k-combination of 0..m
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pick[i] < m - k + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Greedy extension of an acyclic `seed` to a spanning tree, adding
/// further edges in index order.
pub fn extend_to_tree(g: &RibbonGraph, seed: &[Edge]) -> Result<SpanningTree, GraphError> {
    let mut uf = UnionFind::<usize>::new(g.num_vertices());
    let mut chosen = Vec::new();
    for &e in seed {
        let [a, b] = g.ends(e);
        if !uf.union(a.0, b.0) {
            return Err(GraphError::NotATree("seed edges contain a cycle".into()));
        }
        chosen.push(e);
    }
    for e in g.edges() {
        let [a, b] = g.ends(e);
        if uf.union(a.0, b.0) {
            chosen.push(e);
        }
    }
    SpanningTree::new(g, chosen)
}
