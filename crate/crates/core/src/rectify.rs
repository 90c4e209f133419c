//! Rectification of polygons and polyhedra and the sequences it generates.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::hull::{hull2, hull3};
use crate::measure::{raw_surface_area, volume};
use crate::polygon::Polygon;
use crate::polyhedron::{validate, FVector, Polyhedron};
use crate::tolerance::TolerancePolicy;

/// Hull of the midpoints of consecutive vertices.
pub fn rectify_polygon(p: &Polygon, tol: TolerancePolicy) -> Result<Polygon> {
    let mids: Vec<_> = p.edges().map(|(a, b)| a.midpoint(b)).collect();
    let out = hull2(&mids, tol)?;
    if out.len() != p.len() {
        return Err(Error::Degenerate {
            rank: 2,
            required: 2,
            detail: format!(
                "rectified polygon has {} vertices, expected {}",
                out.len(),
                p.len()
            ),
        });
    }
    Ok(out)
}

/// Hull of the midpoints of all edges.
pub fn rectify_polyhedron(p: &Polyhedron, tol: TolerancePolicy) -> Result<Polyhedron> {
    validate(p, tol).into_result()?;
    let mids: Vec<Vec3> = p
        .edges()
        .iter()
        .map(|&(a, b)| p.vertices()[a].midpoint(p.vertices()[b]))
        .collect();
    hull3(&mids, tol)
}

/// (v, e, f) ↦ (e, 2e, 2 + e).
pub fn fvector_map(fv: FVector) -> Result<FVector> {
    if !fv.satisfies_euler() {
        return Err(Error::InvalidParameter(format!(
            "f-vector {fv} violates Euler's relation (v - e + f = {})",
            fv.euler_characteristic()
        )));
    }
    Ok(FVector::new(fv.e, 2 * fv.e, 2 + fv.e))
}

/// Regular faces plus a uniform vertex configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiregularReport {
    pub semiregular: bool,
    /// Shared vertex configuration such as `3.4.3.4`, when all vertices agree.
    pub vertex_config: Option<String>,
    pub diagnosis: Option<String>,
}

/// Classifies `p` as semiregular: every face a regular polygon (equal edges and
/// concyclic vertices, both within `rel_eps`) and the cyclic sequence of face
/// degrees around every vertex identical up to rotation and reflection.
pub fn is_semiregular(p: &Polyhedron, tol: TolerancePolicy) -> SemiregularReport {
    let mut configs: Vec<Vec<usize>> = Vec::with_capacity(p.vertices().len());
    for v in 0..p.vertices().len() {
        match p.faces_around_vertex(v) {
            Some(ring) => {
                let degrees: Vec<usize> = ring.iter().map(|&f| p.faces()[f].len()).collect();
                configs.push(canonical_cycle(&degrees));
            }
            None => {
                return SemiregularReport {
                    semiregular: false,
                    vertex_config: None,
                    diagnosis: Some(format!("faces around vertex {v} do not form a disc")),
                }
            }
        }
    }
    let uniform = configs.windows(2).all(|w| w[0] == w[1]);
    let vertex_config = uniform
        .then(|| configs.first().map(|c| config_string(c)))
        .flatten();

    for f in 0..p.faces().len() {
        if let Some(why) = face_irregularity(p, f, tol) {
            return SemiregularReport {
                semiregular: false,
                vertex_config,
                diagnosis: Some(why),
            };
        }
    }
    if !uniform {
        let first = &configs[0];
        let (v, other) = configs
            .iter()
            .enumerate()
            .find(|(_, c)| *c != first)
            .expect("non-uniform");
        return SemiregularReport {
            semiregular: false,
            vertex_config: None,
            diagnosis: Some(format!(
                "vertex configuration differs: vertex 0 has {} but vertex {v} has {}",
                config_string(first),
                config_string(other)
            )),
        };
    }
    SemiregularReport {
        semiregular: true,
        vertex_config,
        diagnosis: None,
    }
}

fn config_string(c: &[usize]) -> String {
    c.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

/// Lexicographically smallest rotation of the cycle or of its reverse.
fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let mut best: Option<Vec<usize>> = None;
    let rev: Vec<usize> = c.iter().rev().copied().collect();
    for seq in [c.to_vec(), rev] {
        for r in 0..n {
            let cand: Vec<usize> = (0..n).map(|i| seq[(i + r) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn face_irregularity(p: &Polyhedron, f: usize, tol: TolerancePolicy) -> Option<String> {
    let pts: Vec<Vec3> = p.face_points(f).collect();
    let k = pts.len();
    let sides: Vec<f64> = (0..k).map(|i| pts[i].distance(pts[(i + 1) % k])).collect();
    let mean = sides.iter().sum::<f64>() / k as f64;
    let (lo, hi) = sides.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| {
        (lo.min(s), hi.max(s))
    });
    if hi - lo > tol.relative(mean) {
        let shape = if k == 4 && is_rectangle(&pts, tol) {
            " (non-square rectangle)"
        } else {
            ""
        };
        return Some(format!(
            "face {f} ({k}-gon) is not regular: edge lengths range {lo:.12} .. {hi:.12}{shape}"
        ));
    }
    let c = Vec3::mean(&pts);
    let radii: Vec<f64> = pts.iter().map(|q| q.distance(c)).collect();
    let rmean = radii.iter().sum::<f64>() / k as f64;
    if radii
        .iter()
        .any(|r| (r - rmean).abs() > tol.relative(rmean))
    {
        return Some(format!(
            "face {f} ({k}-gon) is equilateral but its vertices are not concyclic"
        ));
    }
    None
}

fn is_rectangle(pts: &[Vec3], tol: TolerancePolicy) -> bool {
    (0..4).all(|i| {
        let a = pts[(i + 3) % 4] - pts[i];
        let b = pts[(i + 1) % 4] - pts[i];
        a.dot(b).abs() <= tol.relative(a.norm() * b.norm())
    })
}

/// One member of a rectification sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceStep {
    pub k: usize,
    pub fvector: FVector,
    pub volume: f64,
    pub surface_area: f64,
    pub edge_min: f64,
    pub edge_max: f64,
    pub semiregular: bool,
    /// Face degree -> number of faces with that degree.
    pub face_degrees: BTreeMap<usize, usize>,
    pub vertex_config: Option<String>,
    pub diagnosis: Option<String>,
    /// Set on steps after the first non-semiregular one.
    pub after_purity_break: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceReport {
    pub steps: Vec<SequenceStep>,
    /// Number of leading semiregular steps.
    pub purity_length: usize,
    /// Iteration stopped early because edges shrank below `abs_eps`.
    pub truncated: bool,
    /// The last member computed.
    #[serde(skip)]
    pub last: Polyhedron,
}

/// Rectifies `p` up to `k` times, measuring every member R_0 = p, …, R_k.
///
/// Each step's f-vector must equal the prediction of [`fvector_map`]; a mismatch
/// (possible when some vertex figure is not planar) is an error.
pub fn iterate(p: &Polyhedron, k: usize, tol: TolerancePolicy) -> Result<SequenceReport> {
    let mut steps = Vec::with_capacity(k + 1);
    let mut cur = p.clone();
    let mut purity: Option<usize> = None;
    let mut truncated = false;
    for step in 0..=k {
        if step > 0 {
            let predicted = fvector_map(cur.fvector())?;
            let next = rectify_polyhedron(&cur, tol)?;
            if next.fvector() != predicted {
                return Err(Error::FVectorMismatch {
                    step,
                    expected: predicted,
                    actual: next.fvector(),
                });
            }
            cur = next;
        }
        let vol = volume(&cur, tol)?;
        let edges = cur.edge_lengths();
        let edge_min = edges.iter().copied().fold(f64::INFINITY, f64::min);
        let edge_max = edges.iter().copied().fold(0.0, f64::max);
        let sr = is_semiregular(&cur, tol);
        let mut face_degrees = BTreeMap::new();
        for f in cur.faces() {
            *face_degrees.entry(f.len()).or_insert(0) += 1;
        }
        let after_purity_break = purity.is_some();
        if !sr.semiregular && purity.is_none() {
            purity = Some(step);
        }
        steps.push(SequenceStep {
            k: step,
            fvector: cur.fvector(),
            volume: vol,
            surface_area: raw_surface_area(&cur),
            edge_min,
            edge_max,
            semiregular: sr.semiregular,
            face_degrees,
            vertex_config: sr.vertex_config,
            diagnosis: sr.diagnosis,
            after_purity_break,
        });
        if step < k && edge_min < tol.abs_eps {
            truncated = true;
            break;
        }
    }
    let purity_length = purity.unwrap_or(steps.len());
    Ok(SequenceReport {
        steps,
        purity_length,
        truncated,
        last: cur,
    })
}

impl SequenceReport {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>3} {:>14} {:>18} {:>18} {:>14} {:>14} {:>5} config",
            "k", "f-vector", "volume", "surface area", "edge min", "edge max", "semi"
        );
        for st in &self.steps {
            let _ = writeln!(
                s,
                "{:>3} {:>14} {:>18.12} {:>18.12} {:>14.10} {:>14.10} {:>5} {}",
                st.k,
                st.fvector.to_string(),
                st.volume,
                st.surface_area,
                st.edge_min,
                st.edge_max,
                if st.semiregular { "yes" } else { "no" },
                st.vertex_config.as_deref().unwrap_or("-")
            );
        }
        let _ = writeln!(s, "purity length: {}", self.purity_length);
        if let Some(d) = self.steps.iter().find_map(|st| st.diagnosis.as_ref()) {
            let _ = writeln!(s, "first failure: {d}");
        }
        if self.truncated {
            let _ = writeln!(s, "truncated: edges fell below the absolute tolerance");
        }
        s
    }
}

/// Outcome of comparing the edge counts of the two platonic chains.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisjointnessVerdict {
    pub max_power: u32,
    pub pairs_checked: u64,
    pub disjoint: bool,
    /// First `(k, x)` with 2^k·12 = 2^x·30, if any.
    pub collision: Option<(u32, u32)>,
    pub note: String,
}

/// Exact check that 2^k·12 ≠ 2^x·30 for all 0 ≤ k, x ≤ `max_power`.
///
/// 12·2^k and 30·2^x are the edge counts of the k-th members of the chains
/// started by the tetrahedron (after one step) and the icosahedron.
pub fn check_disjointness(max_power: u32) -> Result<DisjointnessVerdict> {
    if max_power < 1 {
        return Err(Error::InvalidParameter("max_power must be >= 1".into()));
    }
    let tetra_chain: HashSet<BigUint> =
        (0..=max_power).map(|k| BigUint::from(12u32) << k).collect();
    let mut collision = None;
    for x in 0..=max_power {
        let value = BigUint::from(30u32) << x;
        if tetra_chain.contains(&value) {
            let k = (0..=max_power)
                .find(|&k| BigUint::from(12u32) << k == value)
                .expect("present");
            collision = Some((k, x));
            break;
        }
    }
    let n = u64::from(max_power) + 1;
    Ok(DisjointnessVerdict {
        max_power,
        pairs_checked: n * n,
        disjoint: collision.is_none(),
        collision,
        note: "12·2^k has odd part 3 while 30·2^x has odd part 15, so no pair can collide; \
               equivalently k − x = log(5)/log(2) − 1, which is irrational"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;
    use crate::polygon::seed_polygon;
    use crate::seed::{seed_shape, Shape};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn square_rectifies_to_half() {
        let sq = seed_polygon(4, 1.0).unwrap();
        let r = rectify_polygon(&sq, tol()).unwrap();
        assert_eq!(r.len(), 4);
        assert!((r.area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn triangle_rectifies_to_quarter() {
        let t = seed_polygon(3, 1.0).unwrap();
        assert!((rectify_polygon(&t, tol()).unwrap().area() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn hexagon_rectifies_to_three_quarters() {
        let h = seed_polygon(6, 1.0).unwrap();
        let r = rectify_polygon(&h, tol()).unwrap();
        let expect = (1.0 - (2.0 * std::f64::consts::PI / 3.0).cos()) / 2.0;
        assert!((expect - 0.75).abs() < 1e-15);
        assert!((r.area() - expect).abs() < 1e-14);
    }

    #[test]
    fn polygon_rectification_keeps_centroid_and_regularity() {
        for n in 3..=20 {
            let p = seed_polygon(n, 1.0).unwrap();
            let r = rectify_polygon(&p, tol()).unwrap();
            assert_eq!(r.len(), n);
            assert!(r.vertex_centroid().distance(p.vertex_centroid()) < 1e-12);
            assert!(r.is_regular(tol()));
        }
        // irregular convex input keeps its vertex count and vertex mean
        let q = Polygon::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(3.0, 0.2),
                Point2::new(4.0, 2.0),
                Point2::new(1.0, 3.0),
                Point2::new(-0.5, 1.5),
            ],
            tol(),
        )
        .unwrap();
        let r = rectify_polygon(&q, tol()).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.vertex_centroid().distance(q.vertex_centroid()) < 1e-12);
    }

    #[test]
    fn platonic_rectifications() {
        let cases = [
            (Shape::Tetrahedron, FVector::new(6, 12, 8)),
            (Shape::Cube, FVector::new(12, 24, 14)),
            (Shape::Octahedron, FVector::new(12, 24, 14)),
            (Shape::Icosahedron, FVector::new(30, 60, 32)),
            (Shape::Dodecahedron, FVector::new(30, 60, 32)),
        ];
        for (s, fv) in cases {
            let r = rectify_polyhedron(&seed_shape(s).unwrap(), tol()).unwrap();
            assert_eq!(r.fvector(), fv, "{s}");
        }
    }

    #[test]
    fn fvector_map_examples() {
        assert_eq!(
            fvector_map(FVector::new(4, 6, 4)).unwrap(),
            FVector::new(6, 12, 8)
        );
        assert_eq!(
            fvector_map(FVector::new(12, 30, 20)).unwrap(),
            FVector::new(30, 60, 32)
        );
        assert_eq!(
            fvector_map(FVector::new(30, 60, 32)).unwrap(),
            FVector::new(60, 120, 62)
        );
        assert!(fvector_map(FVector::new(4, 6, 5)).is_err());
    }

    #[test]
    fn iterate_chains() {
        let rep = iterate(&seed_shape(Shape::Tetrahedron).unwrap(), 2, tol()).unwrap();
        let fvs: Vec<FVector> = rep.steps.iter().map(|s| s.fvector).collect();
        assert_eq!(
            fvs,
            vec![
                FVector::new(4, 6, 4),
                FVector::new(6, 12, 8),
                FVector::new(12, 24, 14)
            ]
        );

        let d = iterate(&seed_shape(Shape::Dodecahedron).unwrap(), 1, tol()).unwrap();
        let i = iterate(&seed_shape(Shape::Icosahedron).unwrap(), 1, tol()).unwrap();
        assert_eq!(d.steps[1].fvector, FVector::new(30, 60, 32));
        assert_eq!(d.steps[1].fvector, i.steps[1].fvector);

        let cube = seed_shape(Shape::Cube).unwrap();
        let c = iterate(&cube, 0, tol()).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.last, cube);
        assert_eq!(c.purity_length, 1);
    }

    #[test]
    fn semiregular_examples() {
        let cube = seed_shape(Shape::Cube).unwrap();
        let r = is_semiregular(&cube, tol());
        assert!(r.semiregular);
        assert_eq!(r.vertex_config.as_deref(), Some("4.4.4"));

        let co = rectify_polyhedron(&cube, tol()).unwrap();
        let r = is_semiregular(&co, tol());
        assert!(r.semiregular, "{r:?}");
        assert_eq!(r.vertex_config.as_deref(), Some("3.4.3.4"));

        let rco = rectify_polyhedron(&co, tol()).unwrap();
        let r = is_semiregular(&rco, tol());
        assert!(!r.semiregular);
        assert!(r.diagnosis.unwrap().contains("non-square rectangle"));

        let prism = seed_shape(Shape::Prism(5)).unwrap();
        let r = is_semiregular(&prism, tol());
        assert!(!r.semiregular);
        assert_eq!(r.vertex_config.as_deref(), Some("4.4.5"));
    }

    #[test]
    fn canonical_cycle_handles_reflection() {
        assert_eq!(canonical_cycle(&[4, 3, 4, 3]), vec![3, 4, 3, 4]);
        assert_eq!(canonical_cycle(&[5, 4, 3]), canonical_cycle(&[3, 4, 5]));
        assert_eq!(canonical_cycle(&[3, 3, 4, 3, 4]), vec![3, 3, 4, 3, 4]);
    }

    #[test]
    fn disjointness_examples() {
        for m in [1, 10, 60] {
            let v = check_disjointness(m).unwrap();
            assert!(v.disjoint);
            assert_eq!(v.pairs_checked, (u64::from(m) + 1).pow(2));
        }
        assert!(check_disjointness(0).is_err());
        // beyond u128
        assert!(check_disjointness(300).unwrap().disjoint);
    }

    #[test]
    fn disjointness_matches_brute_force() {
        // independent oracle: factor out powers of two from u128 values
        let odd = |mut v: u128| {
            while v.is_multiple_of(2) {
                v /= 2;
            }
            v
        };
        for k in 0..=10u32 {
            for x in 0..=10u32 {
                let a = 12u128 << k;
                let b = 30u128 << x;
                assert_ne!(a, b);
                assert_ne!(odd(a), odd(b));
            }
        }
    }
}
