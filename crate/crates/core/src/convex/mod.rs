//! Geometric primitives: vectors, bodies, projections, planar hulls, the
//! small LP solver and the depth and separator computations built on it.

pub mod body;
pub mod depth;
pub mod distance;
pub mod geom;
pub mod hull2d;
pub mod lp;
pub mod separator;

pub use body::{project, scene_diameter, BodyError, ConvexBody, DEFAULT_BALL_FACETS};
pub use depth::{common_depth, common_depth_seeded, DepthError, DepthResult};
pub use geom::{orthonormal_basis, Point2, UnitVec3, Vec3};
pub use hull2d::{convex_hull, intersect_convex, HalfPlane2, Poly2};
pub use separator::{strict_separator, Plane3, SeparatorError};
