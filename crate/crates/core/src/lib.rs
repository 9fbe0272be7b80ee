//! Rotor-routing on ribbon graphs, and the sandpile group action on
//! spanning trees.

pub mod corpus;
pub mod error;
pub mod ribbon;
pub mod rotor;
pub mod sandpile;

pub use error::{GraphError, RotorError, SandpileError};
