//! Iterated rectification of convex polygons and polyhedra.
//!
//! A rectification replaces a convex body by the convex hull of its edge
//! midpoints. This crate provides robust 2D and 3D hulls, halfspace
//! intersection, rectification sequences with combinatorial checks, closed
//! forms for regular polygons, volume bookkeeping, and numerical probes built
//! on polar duality.

pub mod error;
pub mod geom;
pub mod hull;
pub mod io;
pub mod measure;
pub mod polar;
pub mod polygon;
pub mod polyhedron;
pub mod rectify;
pub mod seed;
pub mod tolerance;

pub use error::{Error, Result};
pub use geom::{Point2, Vec3};
pub use hull::{hull2, hull3, intersect_hrep, to_hrep, HRep, HalfSpace};
pub use polar::{polar_dual, ProbeResult, Verdict};
pub use polygon::{seed_polygon, Polygon, RegularPolygonSpec};
pub use polyhedron::{validate, FVector, Polyhedron, ValidationReport};
pub use rectify::{fvector_map, iterate, rectify_polygon, rectify_polyhedron, SequenceReport};
pub use seed::{seed_polyhedron, seed_shape, Shape};
pub use tolerance::TolerancePolicy;
