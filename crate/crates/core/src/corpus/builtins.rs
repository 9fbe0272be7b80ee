//! Named base graphs. Vertices are `a, b, c, ...`, edges `e1, e2, ...`.

use crate::ribbon::RibbonGraph;

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: RibbonGraph,
}

fn vertex_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// Builds a graph whose rotation at each vertex lists incident edges in
/// index order.
fn from_edges(n: usize, edges: &[(usize, usize)]) -> RibbonGraph {
    let vertices: Vec<String> = (0..n).map(vertex_name).collect();
    let named: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{}", i + 1), vertices[a].clone(), vertices[b].clone()))
        .collect();
    let rotation: Vec<(String, Vec<String>)> = (0..n)
        .map(|v| {
            let list = named
                .iter()
                .filter(|(_, a, b)| *a == vertices[v] || *b == vertices[v])
                .map(|(id, _, _)| id.clone())
                .collect();
            (vertices[v].clone(), list)
        })
        .collect();
    RibbonGraph::build(&vertices, &named, &rotation).expect("builtin graphs are valid")
}

/// Single edge.
pub fn path2() -> RibbonGraph {
    from_edges(2, &[(0, 1)])
}

/// Two vertices joined by `n` parallel edges. With `planar`, the rotation at
/// `b` is the reverse of the one at `a`; otherwise both use the same order.
pub fn banana(n: usize, planar: bool) -> RibbonGraph {
    let g = from_edges(2, &vec![(0, 1); n]);
    if planar {
        let a = g.rotation_at(crate::ribbon::Vertex(0)).to_vec();
        let b: Vec<_> = g.rotation_at(crate::ribbon::Vertex(1)).iter().rev().copied().collect();
        g.with_rotation(vec![a, b]).expect("reversed rotation is valid")
    } else {
        g
    }
}

pub fn cycle(n: usize) -> RibbonGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_edges(n, &edges)
}

/// Two degree-3 vertices `a`, `b` joined by the edge `e1` and by the paths
/// `a-c-b` and `a-d-b`.
pub fn theta() -> RibbonGraph {
    from_edges(4, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)])
}

pub fn complete(n: usize) -> RibbonGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    from_edges(n, &edges)
}

/// Resolves `P2`, `Bn`, `Cn`, `Kn` and `theta`.
pub fn by_name(name: &str) -> Option<RibbonGraph> {
    let num = |s: &str| s.parse::<usize>().ok();
    match name {
        "P2" => Some(path2()),
        "theta" => Some(theta()),
        _ => {
            let (kind, rest) = name.split_at(name.char_indices().nth(1)?.0);
            let n = num(rest)?;
            match kind {
                "B" if (1..=24).contains(&n) => Some(banana(n, true)),
                "C" if (3..=24).contains(&n) => Some(cycle(n)),
                "K" if (2..=7).contains(&n) => Some(complete(n)),
                _ => None,
            }
        }
    }
}

/// The base graphs of the shipped corpus.
pub fn all_bases() -> Vec<NamedGraph> {
    ["P2", "B2", "B3", "B4", "B5", "B6", "C3", "theta", "K4", "K5"]
        .iter()
        .map(|&name| NamedGraph {
            name: name.to_string(),
            graph: by_name(name).expect("known builtin"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::genus;

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("K4").unwrap().num_edges(), 6);
        assert_eq!(by_name("B5").unwrap().num_edges(), 5);
        assert_eq!(by_name("C3").unwrap().num_vertices(), 3);
        assert!(by_name("K9").is_none());
        assert!(by_name("X").is_none());
        assert!(by_name("").is_none());
    }

    #[test]
    fn banana_rotations() {
        for n in 1..=6 {
            assert_eq!(genus(&banana(n, true)).unwrap(), 0);
        }
        assert_eq!(genus(&banana(3, false)).unwrap(), 1);
    }
}
