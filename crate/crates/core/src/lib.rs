//! Exact computations on linear codes from Grassmannians and their linear
//! sections over finite fields.
//!
//! The crate builds the rational points of a variety inside a Plücker space,
//! turns them into the columns of a generator matrix, and computes minimum
//! distances, generalized Hamming weights and weight enumerators by
//! exhaustive search under explicit budgets. [`bounds`] compares those
//! numbers against known closed forms and inequalities.

pub mod bounds;
pub mod budget;
pub mod code;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod indices;
pub mod linalg;
mod parallel;
pub mod sections;
pub mod subspaces;

pub use budget::Budget;
pub use code::{build_code, LinearCode, Method, WeightProfile};
pub use error::{Error, Result};
pub use field::{Felt, Field};
pub use grassmann::{enumerate_grassmann_points, plucker_embed, ProjPoint, ProjSystem};
pub use indices::IndexTuple;
pub use linalg::Matrix;
pub use sections::{enumerate_variety, VarietyKind, VarietySpec};
