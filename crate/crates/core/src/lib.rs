//! Unitary reflection groups over imaginary quadratic and cyclotomic integers.

pub mod affine;
pub mod catalog;
pub mod cli;
pub mod diagrams;
pub mod group;
pub mod lattices;
pub mod presentations;
pub mod linalg;
pub mod rings;
pub mod weyl;
pub mod zlattice;
