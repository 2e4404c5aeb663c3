//! Exact scalars: rationals and the golden field ℚ(τ).

pub mod golden;
pub mod linalg;
pub mod rational;

pub use golden::{GoldenNumber, TAU_F64};
pub use linalg::{Matrix, Vector};
pub use rational::Rational;
