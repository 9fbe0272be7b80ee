use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::divisor::Divisor;
use super::snf::smith_normal_form;
use crate::error::SandpileError;
use crate::ribbon::{RibbonGraph, Vertex};

/// Graph Laplacian indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    entries: Vec<Vec<i64>>,
}

impl LaplacianMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, v: Vertex, w: Vertex) -> i64 {
        self.entries[v.0][w.0]
    }

    /// Drops the row and column of `root`.
    pub fn reduced(&self, root: Vertex) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != root.0)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != root.0)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect()
    }

    /// Image of the vertex `w`: the `w` column as a divisor.
    pub fn column(&self, w: Vertex) -> Divisor {
        Divisor::from_pairs(self.entries.iter().enumerate().map(|(i, row)| (Vertex(i), row[w.0])))
    }
}

pub fn laplacian(g: &RibbonGraph) -> LaplacianMatrix {
    let n = g.num_vertices();
    let mut entries = vec![vec![0i64; n]; n];
    for v in g.vertices() {
        for &d in g.rotation_at(v) {
            entries[v.0][v.0] += 1;
            entries[v.0][g.head(d).0] -= 1;
        }
    }
    LaplacianMatrix { entries }
}

pub fn reduced_laplacian(g: &RibbonGraph, root: Vertex) -> Vec<Vec<i64>> {
    laplacian(g).reduced(root)
}

/// Invariant factors of the sandpile group (entries equal to 1 dropped).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub invariant_factors: Vec<u64>,
}

impl GroupStructure {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

pub fn group_structure(g: &RibbonGraph) -> GroupStructure {
    let snf = smith_normal_form(&reduced_laplacian(g, Vertex(0)));
    GroupStructure {
        invariant_factors: snf
            .invariant_factors()
            .iter()
            .map(|d: &BigInt| d.to_u64().expect("desk-scale group order"))
            .collect(),
    }
}

/// `d1 - d2` lies in the image of the Laplacian, decided by integer
/// solvability against the Smith form of the reduced Laplacian.
pub fn divisors_equivalent(g: &RibbonGraph, d1: &Divisor, d2: &Divisor) -> Result<bool, SandpileError> {
    d2.require_degree(d1.degree())?;
    let diff = d1 - d2;
    // Div^0 coordinates relative to root 0 are the coefficients off the root
    let b: Vec<i64> = diff.dense(g.num_vertices())[1..].to_vec();
    let snf = smith_normal_form(&reduced_laplacian(g, Vertex(0)));
    Ok(snf.solvable(&b))
}
