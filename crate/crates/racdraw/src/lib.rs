//! Simultaneous drawings of planar graphs on the integer grid where each
//! graph is drawn planar and all crossings between graphs are right angles.
//!
//! The crate provides graph class recognition, the spine orders and book
//! embeddings the constructions consume, the constructive layout algorithms
//! themselves, an exact-arithmetic geometric verifier, and file formats plus
//! instance generators for the command-line pipeline.

pub mod classes;
pub mod graph;

pub mod layout;
pub mod order;
pub mod planar;
pub mod verify;
