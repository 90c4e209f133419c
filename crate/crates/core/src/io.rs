//! OFF (read/write) and OBJ (write) mesh formats.
//!
//! Written OFF files are canonical: vertices sorted lexicographically, each face
//! rotated to start at its smallest index, faces sorted. Layout:
//!
//! ```text
//! OFF
//! <v> <f> <e>
//! <x> <y> <z>        (one line per vertex)
//! <k> <i1> ... <ik>  (one line per face)
//! ```
//!
//! Coordinates use Rust's shortest round-trip float formatting, so reading a
//! written file and writing it again is byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::polygon::Polygon;
use crate::polyhedron::Polyhedron;

pub fn to_off_string(p: &Polyhedron) -> String {
    let c = p.canonicalized();
    let fv = c.fvector();
    let mut s = String::new();
    s.push_str("OFF\n");
    let _ = writeln!(s, "{} {} {}", fv.v, fv.f, fv.e);
    for v in c.vertices() {
        let _ = writeln!(s, "{} {} {}", v.x, v.y, v.z);
    }
    for f in c.faces() {
        let _ = write!(s, "{}", f.len());
        for i in f {
            let _ = write!(s, " {i}");
        }
        s.push('\n');
    }
    s
}

/// Planar OFF listing of a polygon: z = 0 and a single face.
pub fn polygon_to_off_string(p: &Polygon) -> String {
    let n = p.len();
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{n} 1 {n}");
    for v in p.vertices() {
        let _ = writeln!(s, "{} {} 0", v.x, v.y);
    }
    let _ = write!(s, "{n}");
    for i in 0..n {
        let _ = write!(s, " {i}");
    }
    s.push('\n');
    s
}

/// Wavefront OBJ with `v` and 1-based `f` records.
pub fn to_obj_string(p: &Polyhedron) -> String {
    let c = p.canonicalized();
    let mut s = String::new();
    for v in c.vertices() {
        let _ = writeln!(s, "v {} {} {}", v.x, v.y, v.z);
    }
    for f in c.faces() {
        s.push('f');
        for i in f {
            let _ = write!(s, " {}", i + 1);
        }
        s.push('\n');
    }
    s
}

/// Parses OFF text. Blank lines and `#` comments are ignored; the edge count in
/// the header is not trusted and edges are rederived from the faces.
pub fn parse_off(text: &str) -> Result<Polyhedron> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: String| Error::Parse { line, message };

    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(err(hline, format!("expected OFF header, found {header:?}")));
    }
    // Counts may follow the header on the same line.
    let rest: Vec<&str> = header_tokens.collect();
    let (cline, counts) = if rest.is_empty() {
        let (l, c) = lines
            .next()
            .ok_or_else(|| err(hline, "missing counts line".into()))?;
        (l, c.split_whitespace().collect::<Vec<_>>())
    } else {
        (hline, rest)
    };
    if counts.len() < 2 {
        return Err(err(cline, "counts line needs at least `v f`".into()));
    }
    let parse_count = |tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| err(cline, format!("bad count {tok:?}")))
    };
    let nv = parse_count(counts[0])?;
    let nf = parse_count(counts[1])?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, line) = lines
            .next()
            .ok_or_else(|| err(cline, format!("expected {nv} vertex lines")))?;
        let coords = line
            .split_whitespace()
            .take(3)
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| err(l, format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if coords.len() != 3 {
            return Err(err(l, "vertex line needs three coordinates".into()));
        }
        vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
    }

    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, line) = lines
            .next()
            .ok_or_else(|| err(cline, format!("expected {nf} face lines")))?;
        let mut toks = line.split_whitespace();
        let k: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(l, "face line must start with its vertex count".into()))?;
        let idx = toks
            .by_ref()
            .take(k)
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&i| i < nv)
                    .ok_or_else(|| err(l, format!("bad vertex index {t:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if idx.len() != k {
            return Err(err(
                l,
                format!("face declares {k} vertices but lists {}", idx.len()),
            ));
        }
        faces.push(idx);
    }
    Ok(Polyhedron::new(vertices, faces))
}

pub fn read_off(path: impl AsRef<Path>) -> Result<Polyhedron> {
    parse_off(&std::fs::read_to_string(path)?)
}

pub fn write_off(path: impl AsRef<Path>, p: &Polyhedron) -> Result<()> {
    std::fs::write(path, to_off_string(p))?;
    Ok(())
}

pub fn write_obj(path: impl AsRef<Path>, p: &Polyhedron) -> Result<()> {
    std::fs::write(path, to_obj_string(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{seed_shape, Shape};

    #[test]
    fn tetra_layout() {
        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let s = to_off_string(&t);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "4 4 6");
        assert_eq!(lines.len(), 2 + 4 + 4);
        assert!(lines[6..].iter().all(|l| l.starts_with("3 ")));
    }

    #[test]
    fn write_read_write_is_stable() {
        for shape in [Shape::Cube, Shape::Icosahedron, Shape::Prism(5)] {
            let p = seed_shape(shape).unwrap();
            let first = to_off_string(&p);
            let back = parse_off(&first).unwrap();
            assert_eq!(to_off_string(&back), first, "{shape}");
            assert_eq!(back, p.canonicalized());
        }
    }

    #[test]
    fn tolerant_reader() {
        let text = "# a tetra\nOFF 4 4 0\n\n0 0 0\n1 0 0 # c\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
        let p = parse_off(text).unwrap();
        assert_eq!(p.fvector(), crate::FVector::new(4, 6, 4));
    }

    #[test]
    fn reader_errors() {
        assert!(matches!(parse_off(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_off("PLY\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_off("OFF\n1 0 0\n0 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 nan 0\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn obj_is_one_based() {
        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let s = to_obj_string(&t);
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert!(s
            .lines()
            .filter(|l| l.starts_with("f "))
            .all(|l| !l.contains(" 0")));
    }
}
