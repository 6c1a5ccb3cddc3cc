//! Computable pieces of systolic geometry: exact integer homology of
//! simplicial complexes, large-girth regular graphs and the sleeve
//! construction built on them, abelian invariants of finite presentations,
//! Waring decompositions, and evaluators for the closed-form systolic-volume
//! inequalities.

pub mod bounds;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod genfun;
pub mod graphs;
pub mod groups;
pub mod homology;
pub mod ratio;
pub mod sleeve;
pub mod snf;
pub mod waring;

pub use error::{Error, Result};
