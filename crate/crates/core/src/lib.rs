//! Exact computations for monomial semigroup rings `k[[x^γ : γ ∈ Γ]]`.

pub mod conductor;
pub mod cone;
pub mod config;
pub mod corpus;
pub mod error;
pub mod explorer;
pub mod ideals;
pub mod ikeda;
pub mod lattice;
mod linalg;
pub mod normalization;
pub mod oracle;
pub mod predicates;
pub mod semigroup;
pub mod vector;

pub use config::Limits;
pub use error::{Error, Result};
pub use vector::ExponentVector;
