//! Decompositions of planar triangulations into trees and forests.
//!
//! A triangulation is given as a rotation system: one counterclockwise
//! neighbor ring per vertex plus the counterclockwise outer boundary.
//! The main entry points split the edge set into two forests and a
//! connected spanning subgraph of bounded maximum degree:
//!
//! * [`decompose::four_connected`] for triangulations without separating
//!   triangles (third part is a spanning tree of degree at most 2, i.e.
//!   a Hamiltonian path),
//! * [`decompose::hamiltonian`] given a Hamiltonian cycle (degree at most 3),
//! * [`decompose::general`] for arbitrary triangulations (degree at most 4).
//!
//! Everything is deterministic. No IO lives here; serialization and the
//! command line front end are in the companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod assignment;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod oracle;
pub mod planemap;
pub mod separation;
pub mod tightness;
pub mod whitney;

pub use error::{Error, Result};
pub use planemap::PlaneMap;
