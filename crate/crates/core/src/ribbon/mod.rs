//! Ribbon graphs: multigraphs with a cyclic order of darts at each vertex.

mod cycle;
mod graph;
mod topology;
mod trees;

pub use cycle::{all_cycles, DirectedCycle, DirectedPath};
pub use graph::{Dart, Edge, EdgeJson, GraphJson, RibbonGraph, Vertex};
pub use topology::{
    classify_side, euler_characteristic, face_successor, faces, genus, is_planar, is_separating, right_turns,
    separation, Separation, Side,
};
pub use trees::{extend_to_tree, spanning_trees, SpanningTree, MAX_TREE_EDGES};
