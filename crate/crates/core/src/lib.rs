//! Exact Coxeter root systems, graph foldings and their projections.

pub mod affine;
pub mod error;
pub mod exactnum;
pub mod folding;
pub mod group;
pub mod lattice;
pub mod project;
pub mod rootsys;

pub use error::{Error, Result};
pub use exactnum::{GoldenNumber, Matrix, Rational, Vector};
