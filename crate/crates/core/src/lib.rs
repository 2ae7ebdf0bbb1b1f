//! Finite implicative-orthomodular lattices: classification, orthogonality
//! spaces, Sasaki projections, a registry of property checks and exhaustive
//! enumeration.

pub mod algebra;
pub mod check;
pub mod enumeration;
pub mod error;
pub mod io;
pub mod limits;
pub mod orthospace;
pub mod sasaki;
pub mod subset;
pub mod theorems;

pub use algebra::{check_axiom, classify, ClassLabel, ElementId, FiniteAlgebra};
pub use check::{CheckResult, Status};
pub use error::{Error, Result};
pub use limits::Limits;
pub use subset::Subset;
