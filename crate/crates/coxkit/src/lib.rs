//! coxkit — exact computation with Coxeter groups, Artin words, and virtual
//! Artin words.
//!
//! The crate is organized around a [`graph::CoxeterGraph`] (a symmetric
//! labeled matrix over named vertices) and a [`coxeter::CoxeterSystem`] that
//! evaluates the canonical reflection representation exactly over a cyclotomic
//! ring chosen from the graph's labels. On top of that sit root-system
//! enumeration, the root graph construction with its filtration ordering,
//! word-level tools for Artin and virtual Artin generators, and brute-force
//! direct-product analysis of the finite Coxeter groups.

pub mod artin;
pub mod cli;
pub mod coxeter;
pub mod decomp;
pub mod graph;
pub mod hat;
pub mod linalg;
pub mod scalar;
pub mod va;

pub use graph::{CoxeterGraph, GraphError, GraphReport, Label};
pub use scalar::{CycScalar, ScalarContext, Sign};
