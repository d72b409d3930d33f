//! Exact computation of simple-minded collections, their mutations, simple
//! tilts, stability phase gaps and simple-minded reduction inside small,
//! concretely presented triangulated categories.

pub mod linalg;
pub mod rep;
pub mod heart;
pub mod derived;
pub mod models;
pub mod sm;
pub mod stability;
pub mod reduction;
