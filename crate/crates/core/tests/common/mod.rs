//! Reference computations written independently of the library internals:
//! determinants by fraction-free elimination and rotor-routing by direct
//! simulation on the rotation tables.

#![allow(dead_code)]

use std::collections::VecDeque;

use rotorgraph::ribbon::{Dart, RibbonGraph, SpanningTree, Vertex};

pub fn det_bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Determinant of the Laplacian with the first row and column removed,
/// counted straight from the edge list.
pub fn tree_count_oracle(g: &RibbonGraph) -> i128 {
    let n = g.num_vertices();
    let mut lap = vec![vec![0i128; n]; n];
    for e in g.edges() {
        let [a, b] = g.ends(e);
        lap[a.0][a.0] += 1;
        lap[b.0][b.0] += 1;
        lap[a.0][b.0] -= 1;
        lap[b.0][a.0] -= 1;
    }
    let reduced: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    det_bareiss(reduced).abs()
}

/// Rotor at each vertex pointing to its BFS parent towards `root`.
pub fn orient(g: &RibbonGraph, tree: &SpanningTree, root: Vertex) -> Vec<Option<Dart>> {
    let mut rotor = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[root.0] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for d in g.darts().filter(|&d| g.head(d) == v && tree.contains(d.edge())) {
            let w = g.tail(d);
            if !seen[w.0] {
                seen[w.0] = true;
                rotor[w.0] = Some(d);
                queue.push_back(w);
            }
        }
    }
    rotor
}

/// One rotor-routing step: turn the rotor at the chip, then follow it.
pub fn sim_step(g: &RibbonGraph, rotor: &mut [Option<Dart>], chip: Vertex) -> Vertex {
    let d = g.rotate(rotor[chip.0].expect("chip is not at the root"));
    rotor[chip.0] = Some(d);
    g.head(d)
}

/// `(v - r)_r(T)` by direct simulation, as sorted edge indices.
pub fn generator_oracle(g: &RibbonGraph, r: Vertex, v: Vertex, tree: &SpanningTree) -> Vec<usize> {
    let mut rotor = orient(g, tree, r);
    let mut chip = v;
    let mut steps = 0;
    while chip != r {
        chip = sim_step(g, &mut rotor, chip);
        steps += 1;
        assert!(steps < 1_000_000, "routing did not reach the root");
    }
    let mut edges: Vec<usize> = rotor.iter().flatten().map(|d| d.edge().0).collect();
    edges.sort_unstable();
    edges
}

pub fn edge_indices(tree: &SpanningTree) -> Vec<usize> {
    tree.edges().iter().map(|e| e.0).collect()
}
