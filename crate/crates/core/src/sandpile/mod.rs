//! Divisors, the Laplacian, the sandpile group and its action on spanning
//! trees.

mod action;
mod basepoint;
mod divisor;
mod geodesic;
mod laplacian;
mod snf;

pub use action::{
    act_divisor, act_generator, act_generator_traced, compose, identity, inverse, power, verify_torsor, Perm,
    TorsorReport, TorsorTable,
};
pub use basepoint::{basepoint_counterexample, is_basepoint_independent, Counterexample};
pub use divisor::Divisor;
pub use geodesic::{check_geodesic_identities, GeodesicReport, PartReport};
pub use laplacian::{divisors_equivalent, group_structure, laplacian, reduced_laplacian, GroupStructure, LaplacianMatrix};
pub use snf::{smith_normal_form, SmithForm};
