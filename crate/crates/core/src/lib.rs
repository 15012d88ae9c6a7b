//! Hyperelliptic metric graphs and tropical curves.
//!
//! The crate decides hyperellipticity of metric graphs two independent ways
//! (involutions with tree quotients, and a chip-firing divisor-rank search),
//! enumerates the moduli cells of (2-edge-connected) hyperelliptic tropical
//! curves with exact f-vectors, and runs the Newton-polygon pipeline from
//! unimodular triangulations to embedded plane tropical curves, their cores,
//! and standard-ladder certificates. All arithmetic is exact.

pub mod canon;
pub mod divisor;
pub mod graph;
pub mod harmonic;
pub mod json;
pub mod moduli;
pub mod newton;
pub mod rational;

pub use graph::{ConstrainedType, Graph, GraphError, Model};
pub use rational::{format_rat, parse_rat, rat, ratio, Rat};
