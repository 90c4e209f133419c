//! Canonical seed solids.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::hull::hull3;
use crate::polygon::seed_polygon;
use crate::polyhedron::Polyhedron;
use crate::tolerance::TolerancePolicy;

/// Named seed shapes. Platonic solids have unit edge length; `Prism(n)` is the
/// area-1 regular n-gon times a unit interval. All are centred at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Tetrahedron,
    Cube,
    Octahedron,
    Icosahedron,
    Dodecahedron,
    Prism(usize),
}

impl Shape {
    pub const PLATONIC: [Shape; 5] = [
        Shape::Tetrahedron,
        Shape::Cube,
        Shape::Octahedron,
        Shape::Icosahedron,
        Shape::Dodecahedron,
    ];

    /// Resolves a shape name plus the optional prism side count.
    pub fn from_name(name: &str, param: Option<usize>) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let shape = match lower.as_str() {
            "tetrahedron" | "tetra" => Shape::Tetrahedron,
            "cube" | "hexahedron" => Shape::Cube,
            "octahedron" => Shape::Octahedron,
            "icosahedron" => Shape::Icosahedron,
            "dodecahedron" => Shape::Dodecahedron,
            "prism" => Shape::Prism(
                param.ok_or_else(|| Error::InvalidParameter("prism needs a side count".into()))?,
            ),
            other => {
                // prism5, prism:5, prism(5)
                let digits = other
                    .strip_prefix("prism")
                    .map(|r| r.trim_matches(|c| c == ':' || c == '(' || c == ')' || c == '-'))
                    .and_then(|r| r.parse::<usize>().ok());
                match digits {
                    Some(n) => Shape::Prism(n),
                    None => return Err(Error::InvalidParameter(format!("unknown shape {name:?}"))),
                }
            }
        };
        if let Shape::Prism(n) = shape {
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "prism needs n >= 3, got {n}"
                )));
            }
        }
        Ok(shape)
    }

    pub fn vertices(&self) -> Result<Vec<Vec3>> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let v = match *self {
            Shape::Tetrahedron => {
                let s = 1.0 / (2.0 * 2f64.sqrt());
                [
                    [1.0, 1.0, 1.0],
                    [1.0, -1.0, -1.0],
                    [-1.0, 1.0, -1.0],
                    [-1.0, -1.0, 1.0],
                ]
                .iter()
                .map(|&a| Vec3::from(a) * s)
                .collect()
            }
            Shape::Cube => signs3()
                .into_iter()
                .map(|[x, y, z]| Vec3::new(x, y, z) * 0.5)
                .collect(),
            Shape::Octahedron => {
                let r = 1.0 / 2f64.sqrt();
                (0..3)
                    .flat_map(|k| {
                        [1.0, -1.0].map(|s| {
                            let mut a = [0.0; 3];
                            a[k] = s * r;
                            Vec3::from(a)
                        })
                    })
                    .collect()
            }
            Shape::Icosahedron => cyclic(&[(0.0, 1.0, phi)], 0.5),
            Shape::Dodecahedron => {
                let mut v: Vec<Vec3> = signs3()
                    .into_iter()
                    .map(|a| Vec3::from(a) * (phi / 2.0))
                    .collect();
                v.extend(cyclic(&[(0.0, 1.0 / phi, phi)], phi / 2.0));
                v
            }
            Shape::Prism(n) => {
                let base = seed_polygon(n, 1.0)?;
                [-0.5, 0.5]
                    .iter()
                    .flat_map(|&z| base.vertices().iter().map(move |p| Vec3::new(p.x, p.y, z)))
                    .collect()
            }
        };
        Ok(v)
    }
}

fn signs3() -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(8);
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// All sign choices of `(a, b, c)` under cyclic coordinate permutation, scaled.
fn cyclic(base: &[(f64, f64, f64)], scale: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for &(a, b, c) in base {
        for [sa, sb, sc] in signs3() {
            let t = [a * sa, b * sb, c * sc];
            for r in 0..3 {
                let p = Vec3::new(t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]) * scale;
                if !out.iter().any(|q| q.distance(p) < 1e-12) {
                    out.push(p);
                }
            }
        }
    }
    out
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Shape::from_name(s, None)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Tetrahedron => f.write_str("tetrahedron"),
            Shape::Cube => f.write_str("cube"),
            Shape::Octahedron => f.write_str("octahedron"),
            Shape::Icosahedron => f.write_str("icosahedron"),
            Shape::Dodecahedron => f.write_str("dodecahedron"),
            Shape::Prism(n) => write!(f, "prism{n}"),
        }
    }
}

/// Builds the canonical solid for `name` (`prism` takes `param` as its side count).
pub fn seed_polyhedron(name: &str, param: Option<usize>) -> Result<Polyhedron> {
    seed_shape(Shape::from_name(name, param)?)
}

pub fn seed_shape(shape: Shape) -> Result<Polyhedron> {
    hull3(&shape.vertices()?, TolerancePolicy::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{centroid, volume};
    use crate::polyhedron::{validate, FVector};

    fn all_seeds() -> Vec<Shape> {
        let mut v = Shape::PLATONIC.to_vec();
        v.extend((3..=12).map(Shape::Prism));
        v
    }

    #[test]
    fn platonic_fvectors() {
        let expect = [
            (Shape::Tetrahedron, FVector::new(4, 6, 4)),
            (Shape::Cube, FVector::new(8, 12, 6)),
            (Shape::Octahedron, FVector::new(6, 12, 8)),
            (Shape::Icosahedron, FVector::new(12, 30, 20)),
            (Shape::Dodecahedron, FVector::new(20, 30, 12)),
        ];
        for (s, fv) in expect {
            assert_eq!(seed_shape(s).unwrap().fvector(), fv, "{s}");
        }
    }

    #[test]
    fn unit_edges() {
        for s in Shape::PLATONIC {
            let p = seed_shape(s).unwrap();
            for l in p.edge_lengths() {
                assert!((l - 1.0).abs() < 1e-12, "{s}: edge {l}");
            }
        }
    }

    #[test]
    fn seeds_validate_and_are_centred() {
        let tol = TolerancePolicy::default();
        for s in all_seeds() {
            let p = seed_shape(s).unwrap();
            let r = validate(&p, tol);
            assert!(r.valid, "{s}: {r:?}");
            assert_eq!(p.fvector().euler_characteristic(), 2);
            assert!(centroid(&p).norm() < tol.abs_eps, "{s}");
        }
    }

    #[test]
    fn prism4_is_unit_cube() {
        let p = seed_polyhedron("prism", Some(4)).unwrap();
        assert_eq!(p.fvector(), FVector::new(8, 12, 6));
        assert!((volume(&p, TolerancePolicy::default()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prism_volume_is_one() {
        for n in 3..=20 {
            let p = seed_shape(Shape::Prism(n)).unwrap();
            assert_eq!(p.fvector(), FVector::new(2 * n, 3 * n, n + 2));
            assert!((volume(&p, TolerancePolicy::default()).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn names() {
        assert_eq!("prism5".parse::<Shape>().unwrap(), Shape::Prism(5));
        assert_eq!("prism:7".parse::<Shape>().unwrap(), Shape::Prism(7));
        assert_eq!(Shape::from_name("prism", Some(6)).unwrap(), Shape::Prism(6));
        assert!(Shape::from_name("prism", None).is_err());
        assert!(Shape::from_name("prism", Some(2)).is_err());
        assert!(matches!(
            seed_polyhedron("torus", None),
            Err(Error::InvalidParameter(_))
        ));
        for s in all_seeds() {
            assert_eq!(s.to_string().parse::<Shape>().unwrap(), s);
        }
    }
}
