//! Transversal directions of a family of disjoint convex bodies.

pub mod family;
pub mod query;

pub use family::{Family, FamilyError, GreatCircleSet, SeparatingCircle};
pub use query::{
    geometric_permutation, line_body_distance, line_meets_all, DirectedLine, HellyWitness,
    QueryError,
};
