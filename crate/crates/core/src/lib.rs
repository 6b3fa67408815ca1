//! Transversal directions of pairwise disjoint convex bodies in space.

pub mod cli;
pub mod constructions;
pub mod convex;
pub mod path;
pub mod sphere;
pub mod tolerance;
pub mod transversal;

pub use tolerance::{DirectionClass, Tolerances};
pub use transversal::{DirectedLine, Family, FamilyError};
