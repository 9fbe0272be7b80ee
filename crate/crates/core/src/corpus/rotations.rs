//! Enumeration and sampling of all rotation systems on a base multigraph.
//!
//! At a vertex of degree `k` the smallest dart is pinned first and the other
//! `k - 1` darts are permuted, giving `(k - 1)!` cyclic orders. A rotation
//! system is addressed by a mixed-radix index with vertex 0 most significant
//! and each digit the lexicographic rank of the permutation at that vertex.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::ribbon::{Dart, RibbonGraph};

/// Cap on "all" mode.
pub const MAX_ROTATION_SYSTEMS: u128 = 20_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Total number of rotation systems, `prod (deg(v) - 1)!`.
pub fn rotation_system_count(g: &RibbonGraph) -> u128 {
    g.vertices().map(|v| factorial(g.degree(v).saturating_sub(1))).product()
}

/// The rotation system with the given index.
pub fn rotation_system(g: &RibbonGraph, mut idx: u128) -> Result<RibbonGraph, GraphError> {
    let total = rotation_system_count(g);
    if idx >= total {
        return Err(GraphError::Internal(format!("rotation index {idx} out of range {total}")));
    }
    let mut digits = vec![0u128; g.num_vertices()];
    for v in g.vertices().rev() {
        let radix = factorial(g.degree(v).saturating_sub(1));
        digits[v.0] = idx % radix;
        idx /= radix;
    }
    let lists = g
        .vertices()
        .map(|v| {
            let mut darts: Vec<Dart> = g.rotation_at(v).to_vec();
            darts.sort();
            let first = darts.remove(0);
            let mut out = vec![first];
            out.extend(nth_permutation(darts, digits[v.0]));
            out
        })
        .collect();
    g.with_rotation(lists)
}

fn nth_permutation(mut items: Vec<Dart>, mut rank: u128) -> Vec<Dart> {
    let mut out = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let block = factorial(items.len() - 1);
        let i = (rank / block) as usize;
        rank %= block;
        out.push(items.remove(i));
    }
    out
}

/// Every rotation system, in index order. Refuses more than `cap` (and
/// never more than [`MAX_ROTATION_SYSTEMS`]).
pub fn all_rotation_systems(
    g: &RibbonGraph,
    cap: usize,
) -> Result<impl Iterator<Item = RibbonGraph> + '_, GraphError> {
    let total = rotation_system_count(g);
    let cap = (cap as u128).min(MAX_ROTATION_SYSTEMS);
    if total > cap {
        return Err(GraphError::TooLarge {
            what: "rotation system count",
            size: total.min(usize::MAX as u128) as usize,
            cap: cap.min(usize::MAX as u128) as usize,
        });
    }
    Ok((0..total).map(move |i| rotation_system(g, i).expect("index in range")))
}

/// `n` distinct rotation systems drawn uniformly with a seeded generator,
/// returned in index order. Returns all of them when `n` covers the total.
pub fn sample_rotation_systems(g: &RibbonGraph, n: usize, seed: u64) -> Result<Vec<RibbonGraph>, GraphError> {
    sample_rotation_indices(g, n, seed)?
        .into_iter()
        .map(|i| rotation_system(g, i))
        .collect()
}

/// The indices picked by [`sample_rotation_systems`].
pub fn sample_rotation_indices(g: &RibbonGraph, n: usize, seed: u64) -> Result<Vec<u128>, GraphError> {
    let total = rotation_system_count(g);
    let indices: Vec<u128> = if (n as u128) >= total {
        (0..total).collect()
    } else if total <= usize::MAX as u128 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<u128> = index::sample(&mut rng, total as usize, n)
            .into_iter()
            .map(|i| i as u128)
            .collect();
        picked.sort_unstable();
        picked
    } else {
        return Err(GraphError::TooLarge {
            what: "rotation system count",
            size: usize::MAX,
            cap: usize::MAX,
        });
    };
    Ok(indices)
}
