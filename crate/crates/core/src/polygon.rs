//! Convex polygons in the plane and the regular seed family.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{orient2, Point2};
use crate::tolerance::TolerancePolicy;

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Builds a polygon, checking strict convexity and counter-clockwise order.
    ///
    /// The turn test is scale-free: a vertex fails when its distance from the
    /// line through its neighbours is below `rel_eps * diameter`.
    pub fn new(vertices: Vec<Point2>, tol: TolerancePolicy) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "polygon vertex {i} is not finite"
            )));
        }
        let eps = tol.relative(diameter2(&vertices));
        for i in 0..n {
            let a = vertices[(i + n - 1) % n];
            let b = vertices[i];
            let c = vertices[(i + 1) % n];
            if a.distance(b) <= eps {
                return Err(Error::InvalidParameter(format!(
                    "polygon vertices {} and {i} coincide",
                    (i + n - 1) % n
                )));
            }
            let base = a.distance(c);
            if base == 0.0 || orient2(a, b, c) / base <= eps {
                return Err(Error::InvalidParameter(format!(
                    "polygon is not strictly convex and counter-clockwise at vertex {i}"
                )));
            }
        }
        // Local convexity holds everywhere; a total turning of 2π rules out a
        // multiply-wound star.
        let turning: f64 = (0..n)
            .map(|i| {
                let a = vertices[(i + n - 1) % n];
                let b = vertices[i];
                let c = vertices[(i + 1) % n];
                let u = b - a;
                let v = c - b;
                (u.x * v.y - u.y * v.x).atan2(u.x * v.x + u.y * v.y)
            })
            .sum();
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidParameter(
                "polygon winds more than once".to_string(),
            ));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs `(x_i, x_{i+1})`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.edges().map(|(a, b)| a.distance(b)).collect()
    }

    /// Mean of the vertices (not the area centroid).
    pub fn vertex_centroid(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point2::new(sx / n, sy / n)
    }

    /// Copy translated so the vertex centroid sits at the origin.
    pub fn centered(&self) -> Polygon {
        let c = self.vertex_centroid();
        Polygon {
            vertices: self.vertices.iter().map(|&p| p - c).collect(),
        }
    }

    pub fn diameter(&self) -> f64 {
        diameter2(&self.vertices)
    }

    /// Equal sides and concyclic vertices, both within `rel_eps`.
    pub fn is_regular(&self, tol: TolerancePolicy) -> bool {
        let sides = self.side_lengths();
        let mean_side = sides.iter().sum::<f64>() / sides.len() as f64;
        let c = self.vertex_centroid();
        let radii: Vec<f64> = self.vertices.iter().map(|p| p.distance(c)).collect();
        let mean_r = radii.iter().sum::<f64>() / radii.len() as f64;
        sides
            .iter()
            .all(|s| (s - mean_side).abs() <= tol.relative(mean_side))
            && radii
                .iter()
                .all(|r| (r - mean_r).abs() <= tol.relative(mean_r))
    }
}

pub(crate) fn shoelace_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    0.5 * twice
}

pub(crate) fn diameter2(pts: &[Point2]) -> f64 {
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in pts {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    (hi_x - lo_x).hypot(hi_y - lo_y)
}

/// Parameters of a regular n-gon of prescribed area.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegularPolygonSpec {
    pub n: usize,
    pub area: f64,
}

impl RegularPolygonSpec {
    pub fn new(n: usize, area: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "regular polygon needs n >= 3, got {n}"
            )));
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "polygon area must be positive, got {area}"
            )));
        }
        Ok(Self { n, area })
    }

    /// Area-1 n-gon.
    pub fn unit_area(n: usize) -> Result<Self> {
        Self::new(n, 1.0)
    }

    /// Squared side length from `area = n s^2 cot(π/n) / 4`.
    pub fn side_length_squared(&self) -> f64 {
        4.0 * self.area * (PI / self.n as f64).tan() / self.n as f64
    }

    pub fn side_length(&self) -> f64 {
        self.side_length_squared().sqrt()
    }

    /// Interior angle π(n − 2)/n.
    pub fn interior_angle(&self) -> f64 {
        interior_angle(self.n)
    }

    pub fn circumradius(&self) -> f64 {
        let n = self.n as f64;
        (2.0 * self.area / (n * (2.0 * PI / n).sin())).sqrt()
    }
}

/// Interior angle of the regular n-gon, π(n − 2)/n.
pub fn interior_angle(n: usize) -> f64 {
    PI * (n as f64 - 2.0) / n as f64
}

/// Regular n-gon of the given area, centred at the origin, first vertex on the +x axis.
pub fn seed_polygon(n: usize, area: f64) -> Result<Polygon> {
    let spec = RegularPolygonSpec::new(n, area)?;
    let r = spec.circumradius();
    let vertices = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            Point2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    Polygon::new(vertices, TolerancePolicy::default())
}
