//! Sampling 3-orientations and Schnyder woods of planar triangulations.
//!
//! The crate is organised bottom-up:
//!
//! * [`triangulation`] holds the embedded planar triangulation (rotation
//!   system with a fixed outer face) together with constructors for the
//!   instance families used throughout the tests.
//! * [`orientation`] holds 3-orientations, their Schnyder colorings and
//!   face potentials.
//! * [`chain_fixed`] implements the triangle-reversing chain and the
//!   tower chain on the 3-orientations of one fixed triangulation.
//! * [`chain_flip`] implements the edge-flip chain on all 3-orientations of
//!   all triangulations with `n` internal vertices.
//! * [`dyck`] holds the bijection with pairs of non-crossing Dyck paths and
//!   the lattice-path chain.
//! * [`oracle`] is the exact verification engine: enumeration, transition
//!   matrices, total variation, diameter and conductance.
//! * [`cli`] wires everything to the `orient3` command line tool.

pub mod chain_fixed;
pub mod chain_flip;
pub mod cli;
pub mod dyck;
pub mod oracle;
pub mod orientation;
pub mod rng;
pub mod triangulation;

pub use chain_fixed::{FixedChain, Tower};
pub use chain_flip::{FlipMove, FlipState};
pub use dyck::{DyckPair, DyckPath};
pub use orientation::{Color, Orientation3, SchnyderWood};
pub use triangulation::{Face, Triangulation, VertexId};

/// Crate version, embedded in every artifact written by the CLI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
