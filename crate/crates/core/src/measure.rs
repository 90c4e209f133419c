//! Areas, perimeters, volumes and the closed-form series for regular polygons.
//!
//! Every closed form here has an independent measured counterpart: shoelace areas
//! of actual rectified polygons, divergence-theorem volumes of actual hulls, and
//! vertex-cap volumes of actual cap solids.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{newell_normal, Vec3};
use crate::hull::hull3;
use crate::polygon::{interior_angle, seed_polygon, RegularPolygonSpec};
use crate::polyhedron::{validate, Polyhedron};
use crate::rectify::{rectify_polygon, rectify_polyhedron};
use crate::seed::{seed_shape, Shape};
use crate::tolerance::TolerancePolicy;

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be >= 3, got {n}")));
    }
    Ok(())
}

/// Area of the k-th rectification of the area-1 regular n-gon: ((1 − cos θₙ)/2)^k.
pub fn polygon_area_closed(n: usize, k: usize) -> Result<f64> {
    check_n(n)?;
    let ratio = (1.0 - interior_angle(n).cos()) / 2.0;
    Ok(ratio.powi(k as i32))
}

/// Side length of the k-th rectification of the area-1 regular n-gon.
///
/// s_k² = tan(π/n) (1 − cos θₙ)^k / (2^(k−2) n).
pub fn polygon_side_closed(n: usize, k: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let s2 = (PI / nf).tan() / (2f64.powi(k as i32 - 2) * nf)
        * (1.0 - interior_angle(n).cos()).powi(k as i32);
    Ok(s2.sqrt())
}

/// Sum over all k of the areas: 2/(1 + cos θₙ).
///
/// This is the geometric-series sum of the member areas. The members are
/// nested, so the area of their union is just the seed's area (1).
pub fn polygon_area_total(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(2.0 / (1.0 + interior_angle(n).cos()))
}

/// Sum over all k of the perimeters: 2√(n tan(π/n)) / (1 − |cos(π/n)|).
pub fn polygon_perimeter_total(n: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok(2.0 * (nf * (PI / nf).tan()).sqrt() / (1.0 - (PI / nf).cos().abs()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonStep {
    pub k: usize,
    pub area_closed: f64,
    pub area_measured: f64,
    pub side_closed: f64,
    pub side_measured: f64,
    pub perimeter_closed: f64,
    pub perimeter_measured: f64,
    /// Largest relative deviation of measured from closed-form area and sides.
    pub deviation: f64,
}

/// Iterated rectification of the area-1 regular n-gon, closed form beside measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonSeries {
    pub n: usize,
    pub k_max: usize,
    pub steps: Vec<PolygonStep>,
    /// Series sum of member areas, 2/(1 + cos θₙ).
    pub area_inf: f64,
    /// Series sum of member perimeters.
    pub perimeter_inf: f64,
    pub area_partial_sum: f64,
    pub perimeter_partial_sum: f64,
    /// Area of the union of the (nested) members, for contrast with `area_inf`.
    pub union_area: f64,
    pub max_deviation: f64,
    pub note: &'static str,
}

pub const SERIES_NOTE: &str =
    "area_inf and perimeter_inf are geometric-series sums over the members; \
the members are nested, so the measure of their union equals the seed's (union_area)";

/// Rectifies the area-1 regular n-gon `k_max` times and records every step.
pub fn polygon_series(n: usize, k_max: usize, tol: TolerancePolicy) -> Result<PolygonSeries> {
    check_n(n)?;
    let mut poly = seed_polygon(n, 1.0)?;
    let mut steps = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            // Recentre so coordinates keep full relative precision as the
            // polygon shrinks towards a point.
            poly = rectify_polygon(&poly, tol)?.centered();
        }
        let area_closed = polygon_area_closed(n, k)?;
        let side_closed = polygon_side_closed(n, k)?;
        let sides = poly.side_lengths();
        let area_measured = poly.area();
        let side_measured = sides.iter().sum::<f64>() / sides.len() as f64;
        let side_dev = sides
            .iter()
            .map(|s| ((s - side_closed) / side_closed).abs())
            .fold(0.0, f64::max);
        let area_dev = ((area_measured - area_closed) / area_closed).abs();
        steps.push(PolygonStep {
            k,
            area_closed,
            area_measured,
            side_closed,
            side_measured,
            perimeter_closed: n as f64 * side_closed,
            perimeter_measured: poly.perimeter(),
            deviation: area_dev.max(side_dev),
        });
    }
    let max_deviation = steps.iter().map(|s| s.deviation).fold(0.0, f64::max);
    Ok(PolygonSeries {
        n,
        k_max,
        area_partial_sum: steps.iter().map(|s| s.area_measured).sum(),
        perimeter_partial_sum: steps.iter().map(|s| s.perimeter_measured).sum(),
        area_inf: polygon_area_total(n)?,
        perimeter_inf: polygon_perimeter_total(n)?,
        union_area: steps[0].area_measured,
        steps,
        max_deviation,
        note: SERIES_NOTE,
    })
}

impl PolygonSeries {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "regular {}-gon, area 1, {} rectifications",
            self.n, self.k_max
        );
        let _ = writeln!(
            s,
            "{:>4} {:>22} {:>22} {:>20} {:>20} {:>10}",
            "k", "area (closed)", "area (measured)", "side (closed)", "side (measured)", "max dev"
        );
        for st in &self.steps {
            let _ = writeln!(
                s,
                "{:>4} {:>22.15e} {:>22.15e} {:>20.12e} {:>20.12e} {:>10.2e}",
                st.k,
                st.area_closed,
                st.area_measured,
                st.side_closed,
                st.side_measured,
                st.deviation
            );
        }
        let _ = writeln!(s, "area_inf (series sum)      {:.15}", self.area_inf);
        let _ = writeln!(s, "perimeter_inf (series sum) {:.15}", self.perimeter_inf);
        let _ = writeln!(
            s,
            "measured partial sums      area {:.15}  perimeter {:.15}",
            self.area_partial_sum, self.perimeter_partial_sum
        );
        let _ = writeln!(s, "union area                 {:.15}", self.union_area);
        let _ = writeln!(s, "max deviation              {:.3e}", self.max_deviation);
        let _ = writeln!(s, "note: {}", self.note);
        s
    }
}

/// Signed divergence-theorem volume; positive for outward-oriented faces.
pub(crate) fn signed_volume(p: &Polyhedron) -> f64 {
    let o = p.vertex_mean();
    let mut six_v = 0.0;
    for f in p.faces() {
        let a = p.vertices()[f[0]] - o;
        for w in f[1..].windows(2) {
            let b = p.vertices()[w[0]] - o;
            let c = p.vertices()[w[1]] - o;
            six_v += a.dot(b.cross(c));
        }
    }
    six_v / 6.0
}

/// Volume centroid (no validation).
pub fn centroid(p: &Polyhedron) -> Vec3 {
    let o = p.vertex_mean();
    let mut six_v = 0.0;
    let mut acc = Vec3::ZERO;
    for f in p.faces() {
        let a = p.vertices()[f[0]] - o;
        for w in f[1..].windows(2) {
            let b = p.vertices()[w[0]] - o;
            let c = p.vertices()[w[1]] - o;
            let d = a.dot(b.cross(c));
            six_v += d;
            acc += (a + b + c) * (d / 4.0);
        }
    }
    if six_v == 0.0 {
        return o;
    }
    o + acc / six_v
}

/// Volume by the divergence theorem over fan-triangulated facets.
///
/// An inside-out (negative) result is a validation failure.
pub fn volume(p: &Polyhedron, tol: TolerancePolicy) -> Result<f64> {
    validate(p, tol).into_result()?;
    let v = signed_volume(p);
    if v <= 0.0 {
        return Err(Error::Validation(format!(
            "non-positive signed volume {v:.3e}: faces are oriented inward"
        )));
    }
    Ok(v)
}

pub fn surface_area(p: &Polyhedron, tol: TolerancePolicy) -> Result<f64> {
    validate(p, tol).into_result()?;
    Ok(raw_surface_area(p))
}

pub(crate) fn raw_surface_area(p: &Polyhedron) -> f64 {
    (0..p.faces().len()).map(|f| p.face_area(f)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub volume: f64,
    pub surface_area: f64,
    pub centroid: Vec3,
    pub edge_min: f64,
    pub edge_mean: f64,
    pub edge_max: f64,
    pub face_areas: Vec<f64>,
}

pub fn measure(p: &Polyhedron, tol: TolerancePolicy) -> Result<MeasureReport> {
    let volume = volume(p, tol)?;
    let edges = p.edge_lengths();
    Ok(MeasureReport {
        volume,
        surface_area: raw_surface_area(p),
        centroid: centroid(p),
        edge_min: edges.iter().copied().fold(f64::INFINITY, f64::min),
        edge_mean: edges.iter().sum::<f64>() / edges.len() as f64,
        edge_max: edges.iter().copied().fold(0.0, f64::max),
        face_areas: (0..p.faces().len()).map(|f| p.face_area(f)).collect(),
    })
}

impl MeasureReport {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "volume        {:.15}", self.volume);
        let _ = writeln!(s, "surface area  {:.15}", self.surface_area);
        let _ = writeln!(
            s,
            "centroid      ({:.3e}, {:.3e}, {:.3e})",
            self.centroid.x, self.centroid.y, self.centroid.z
        );
        let _ = writeln!(
            s,
            "edge lengths  min {:.12}  mean {:.12}  max {:.12}",
            self.edge_min, self.edge_mean, self.edge_max
        );
        let _ = writeln!(s, "faces         {}", self.face_areas.len());
        s
    }
}

/// The solid cut off at one vertex by the plane of its incident edge midpoints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexCap {
    pub vertex: usize,
    pub cap: Polyhedron,
    pub volume: f64,
    /// Whether the midpoints are coplanar, i.e. the cap is exactly what rectification removes.
    pub coplanar_figure: bool,
    pub figure_deviation: f64,
}

/// conv({v} ∪ midpoints of the edges at v).
pub fn vertex_cap(p: &Polyhedron, vertex: usize, tol: TolerancePolicy) -> Result<VertexCap> {
    if vertex >= p.vertices().len() {
        return Err(Error::InvalidParameter(format!(
            "vertex {vertex} out of range (polyhedron has {})",
            p.vertices().len()
        )));
    }
    let apex = p.vertices()[vertex];
    let ring = p.faces_around_vertex(vertex).ok_or_else(|| {
        Error::Validation(format!("faces around vertex {vertex} do not form a disc"))
    })?;
    // The vertex following `vertex` in each face, in ring order.
    let figure: Vec<Vec3> = ring
        .iter()
        .map(|&f| {
            let face = &p.faces()[f];
            let pos = face.iter().position(|&x| x == vertex).expect("in ring");
            apex.midpoint(p.vertices()[face[(pos + 1) % face.len()]])
        })
        .collect();
    let normal = newell_normal(figure.iter().copied())
        .normalized()
        .ok_or_else(|| Error::Validation(format!("vertex figure at {vertex} is degenerate")))?;
    let d = figure.iter().map(|&m| normal.dot(m)).sum::<f64>() / figure.len() as f64;
    let figure_deviation = figure
        .iter()
        .map(|&m| (normal.dot(m) - d).abs())
        .fold(0.0, f64::max);
    let scale = figure.iter().map(|&m| m.distance(apex)).fold(0.0, f64::max);
    let mut pts = figure;
    pts.push(apex);
    let cap = hull3(&pts, tol)?;
    let volume = signed_volume(&cap);
    Ok(VertexCap {
        vertex,
        cap,
        volume,
        coplanar_figure: figure_deviation <= tol.length(scale),
        figure_deviation,
    })
}

/// vol(P) − Σ vertex caps, which equals the rectified volume when every vertex
/// figure is planar. Refuses (rather than approximates) otherwise.
pub fn volume_by_cap_decomposition(p: &Polyhedron, tol: TolerancePolicy) -> Result<f64> {
    let total = volume(p, tol)?;
    let mut caps = 0.0;
    for v in 0..p.vertices().len() {
        let cap = vertex_cap(p, v, tol)?;
        if !cap.coplanar_figure {
            return Err(Error::DecompositionNotExact {
                vertex: v,
                deviation: cap.figure_deviation,
            });
        }
        caps += cap.volume;
    }
    Ok(total - caps)
}

/// Candidate readings of the rectified-prism volume next to the measured value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrismRectReport {
    pub n: usize,
    pub side_length: f64,
    pub interior_angle: f64,
    /// 1 − s² sin(θₙ)/48: one cap subtracted.
    pub literal_formula: f64,
    /// s² sin(θₙ)/48.
    pub per_cap: f64,
    /// Cap volume measured on an actual corner of the prism.
    pub per_cap_measured: f64,
    /// 1 − 2n · s² sin(θₙ)/48: all 2n corner caps subtracted.
    pub decomposition: f64,
    /// Divergence-theorem volume of the hull of the prism's edge midpoints.
    pub direct: f64,
    pub literal_matches_direct: bool,
    pub decomposition_matches_direct: bool,
    pub note: String,
}

/// Compares the single-cap and all-caps readings of the rectified prism volume
/// against a direct hull computation.
pub fn prism_rect_volume_report(n: usize, tol: TolerancePolicy) -> Result<PrismRectReport> {
    check_n(n)?;
    let spec = RegularPolygonSpec::unit_area(n)?;
    let s2 = spec.side_length_squared();
    let theta = spec.interior_angle();
    let per_cap = s2 * theta.sin() / 48.0;
    let literal_formula = 1.0 - per_cap;
    let decomposition = 1.0 - 2.0 * n as f64 * per_cap;

    let prism = seed_shape(Shape::Prism(n))?;
    let direct = volume(&rectify_polyhedron(&prism, tol)?, tol)?;
    let per_cap_measured = vertex_cap(&prism, 0, tol)?.volume;

    let literal_matches_direct = tol.approx_eq(literal_formula, direct);
    let decomposition_matches_direct = tol.approx_eq(decomposition, direct);
    let note = format!(
        "direct volume {direct:.12} {} the all-caps reading 1 - 2n*s^2*sin(theta)/48 = {decomposition:.12} \
         and {} the single-cap reading 1 - s^2*sin(theta)/48 = {literal_formula:.12} \
         (correction terms differ by the factor 2n = {})",
        if decomposition_matches_direct { "matches" } else { "does not match" },
        if literal_matches_direct { "matches" } else { "does not match" },
        2 * n
    );
    Ok(PrismRectReport {
        n,
        side_length: s2.sqrt(),
        interior_angle: theta,
        literal_formula,
        per_cap,
        per_cap_measured,
        decomposition,
        direct,
        literal_matches_direct,
        decomposition_matches_direct,
        note,
    })
}

impl PrismRectReport {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "rectified {}-prism (base area 1, height 1)", self.n);
        let rows = [
            ("side length s", self.side_length),
            ("interior angle", self.interior_angle),
            ("per-cap s^2 sin/48", self.per_cap),
            ("per-cap measured", self.per_cap_measured),
            ("single-cap reading", self.literal_formula),
            ("all-caps reading", self.decomposition),
            ("direct hull volume", self.direct),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k:<20} {v:.15}");
        }
        let _ = writeln!(
            s,
            "single-cap matches direct: {}",
            self.literal_matches_direct
        );
        let _ = writeln!(
            s,
            "all-caps matches direct:   {}",
            self.decomposition_matches_direct
        );
        let _ = writeln!(s, "{}", self.note);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::hull3;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn axis_cube(h: f64) -> Polyhedron {
        let mut v = Vec::new();
        for &x in &[-h, h] {
            for &y in &[-h, h] {
                for &z in &[-h, h] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        hull3(&v, tol()).unwrap()
    }

    fn corner_cube() -> Polyhedron {
        axis_cube(0.5).translated(Vec3::new(0.5, 0.5, 0.5))
    }

    #[test]
    fn closed_forms() {
        assert!((polygon_area_closed(4, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!((polygon_area_closed(3, 2).unwrap() - 0.0625).abs() < 1e-15);
        for n in 3..20 {
            assert_eq!(polygon_area_closed(n, 0).unwrap(), 1.0);
        }
        assert!((polygon_area_total(4).unwrap() - 2.0).abs() < 1e-15);
        assert!((polygon_area_total(3).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(polygon_area_closed(2, 1).is_err());
        assert!(polygon_area_total(1).is_err());
        assert!(polygon_perimeter_total(0).is_err());
    }

    #[test]
    fn side_closed_form_at_zero_is_seed_side() {
        for n in 3..30 {
            let s0 = polygon_side_closed(n, 0).unwrap();
            let spec = RegularPolygonSpec::unit_area(n).unwrap();
            assert!((s0 - spec.side_length()).abs() < 1e-14);
        }
    }

    #[test]
    fn area_total_is_partial_sum_limit() {
        let sum: f64 = (0..=200).map(|k| polygon_area_closed(4, k).unwrap()).sum();
        assert!((sum - polygon_area_total(4).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn perimeter_totals() {
        // square: seed perimeter 4, ratio √2/2
        let p4 = polygon_perimeter_total(4).unwrap();
        assert!((p4 - 4.0 / (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-12);
        assert!((p4 - 13.656_854_249_492_38).abs() < 1e-10);
        let p3 = polygon_perimeter_total(3).unwrap();
        assert!((p3 - 4.0 * (3.0 * 3f64.sqrt()).sqrt()).abs() < 1e-12);
        assert!((p3 - 9.118_028_227_528_4).abs() < 1e-9);
        for n in 3..50 {
            let seed = (4.0 * n as f64 * (PI / n as f64).tan()).sqrt();
            assert!(polygon_perimeter_total(n).unwrap() >= seed);
        }
    }

    #[test]
    fn perimeter_total_matches_measured_series() {
        // Oracle: sum of measured perimeters of actual rectified polygons; the
        // truncation tail is bounded by r^(K+1)/(1-r) with r = cos(π/n).
        for n in [3, 4, 5] {
            let series = polygon_series(n, 200, tol()).unwrap();
            let total = polygon_perimeter_total(n).unwrap();
            assert!(
                ((series.perimeter_partial_sum - total) / total).abs() < 1e-9,
                "n={n}: {} vs {total}",
                series.perimeter_partial_sum
            );
        }
    }

    #[test]
    fn series_steps_agree() {
        for n in 3..=12 {
            let s = polygon_series(n, 6, tol()).unwrap();
            assert!(s.max_deviation < 1e-9, "n={n}: {}", s.max_deviation);
            assert!((s.union_area - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn series_tail_bound() {
        // Σ_{k<=K} a_k = total·(1 − r^(K+1)) exactly, with r = cos²(π/n).
        for n in 3..=12 {
            let s = polygon_series(n, 200, tol()).unwrap();
            let r = (PI / n as f64).cos().powi(2);
            let predicted = s.area_inf * (1.0 - r.powi(201));
            assert!(
                ((s.area_partial_sum - predicted) / predicted).abs() < 1e-9,
                "n={n}"
            );
            // Beyond that, agreement with the infinite sum is limited by the tail.
            let gap = s.area_inf - s.area_partial_sum;
            assert!(
                gap >= -1e-12 && gap <= s.area_inf * r.powi(201) * (1.0 + 1e-6) + 1e-12,
                "n={n}: gap {gap}"
            );
        }
    }

    #[test]
    fn cube_volume_and_area() {
        let c = axis_cube(1.0);
        assert!((volume(&c, tol()).unwrap() - 8.0).abs() < 1e-12);
        assert!((surface_area(&c, tol()).unwrap() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn tetra_volume() {
        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let v = volume(&t, tol()).unwrap();
        assert!((v - 1.0 / (6.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((v - 0.117_851).abs() < 1e-6);
    }

    #[test]
    fn octahedron_surface() {
        let o = seed_shape(Shape::Octahedron).unwrap();
        assert!((surface_area(&o, tol()).unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rectified_tetra_surface() {
        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let r = rectify_polyhedron(&t, tol()).unwrap();
        assert!((surface_area(&r, tol()).unwrap() - 2.0 * 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn rectified_unit_cube_volume() {
        let r = rectify_polyhedron(&corner_cube(), tol()).unwrap();
        // 1 − 8 corner tetrahedra of volume 1/48
        assert!((volume(&r, tol()).unwrap() - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn inside_out_volume_is_rejected() {
        let c = axis_cube(1.0);
        let faces = c
            .faces()
            .iter()
            .map(|f| f.iter().rev().copied().collect())
            .collect();
        let flipped = Polyhedron::new(c.vertices().to_vec(), faces);
        assert!(matches!(volume(&flipped, tol()), Err(Error::Validation(_))));
    }

    #[test]
    fn centroid_of_translated_cube() {
        let c = corner_cube();
        assert!((centroid(&c) - Vec3::new(0.5, 0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn cube_corner_cap() {
        let c = corner_cube();
        for v in 0..8 {
            let cap = vertex_cap(&c, v, tol()).unwrap();
            assert!(cap.coplanar_figure);
            assert!((cap.volume - 1.0 / 48.0).abs() < 1e-15);
        }
        assert!(matches!(
            vertex_cap(&c, 8, tol()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn tetra_cap_is_an_eighth() {
        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let vol = volume(&t, tol()).unwrap();
        for v in 0..4 {
            let cap = vertex_cap(&t, v, tol()).unwrap();
            assert!(cap.coplanar_figure);
            assert!((cap.volume - vol / 8.0).abs() < 1e-15);
        }
    }

    #[test]
    fn prism_corner_cap_formula() {
        for n in 3..=12 {
            let prism = seed_shape(Shape::Prism(n)).unwrap();
            let spec = RegularPolygonSpec::unit_area(n).unwrap();
            let expect = spec.side_length_squared() * spec.interior_angle().sin() / 48.0;
            for v in 0..2 * n {
                let cap = vertex_cap(&prism, v, tol()).unwrap();
                assert!(((cap.volume - expect) / expect).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn cap_decomposition_examples() {
        let cube = corner_cube();
        assert!((volume_by_cap_decomposition(&cube, tol()).unwrap() - 5.0 / 6.0).abs() < 1e-12);

        let t = seed_shape(Shape::Tetrahedron).unwrap();
        let vol = volume(&t, tol()).unwrap();
        assert!((volume_by_cap_decomposition(&t, tol()).unwrap() - vol / 2.0).abs() < 1e-12);

        let p3 = seed_shape(Shape::Prism(3)).unwrap();
        let s2 = 4.0 * (PI / 3.0).tan() / 3.0;
        let expect = 1.0 - 6.0 * (s2 * (PI / 3.0).sin() / 48.0);
        let direct = volume(&rectify_polyhedron(&p3, tol()).unwrap(), tol()).unwrap();
        let dec = volume_by_cap_decomposition(&p3, tol()).unwrap();
        assert!((dec - expect).abs() < 1e-12);
        assert!((dec - direct).abs() < 1e-12);
    }

    #[test]
    fn skewed_vertex_figure_is_refused() {
        // Octahedron with one equatorial vertex lifted: the two poles now have
        // non-coplanar neighbours.
        let mut pts = seed_shape(Shape::Octahedron).unwrap().vertices().to_vec();
        let idx = pts.iter().position(|p| p.y > 0.5).unwrap();
        pts[idx] += Vec3::new(0.0, 0.0, 0.15);
        let skew = hull3(&pts, tol()).unwrap();
        assert!(matches!(
            volume_by_cap_decomposition(&skew, tol()),
            Err(Error::DecompositionNotExact { .. })
        ));
    }

    #[test]
    fn prism_report_square() {
        let r = prism_rect_volume_report(4, tol()).unwrap();
        assert!((r.literal_formula - 47.0 / 48.0).abs() < 1e-12);
        assert!((r.direct - 5.0 / 6.0).abs() < 1e-12);
        assert!((r.decomposition - 5.0 / 6.0).abs() < 1e-12);
        assert!(r.decomposition_matches_direct);
        assert!(!r.literal_matches_direct);
        assert!(r.to_table().contains("does not match"));
    }

    #[test]
    fn prism_report_triangle_and_hexagon() {
        for n in [3, 6] {
            let r = prism_rect_volume_report(n, tol()).unwrap();
            assert!((r.direct - r.decomposition).abs() < 1e-9);
            assert!(
                ((1.0 - r.decomposition) / (1.0 - r.literal_formula) - 2.0 * n as f64).abs() < 1e-9
            );
            assert!(((r.per_cap_measured - r.per_cap) / r.per_cap).abs() < 1e-9);
        }
        assert!(prism_rect_volume_report(2, tol()).is_err());
    }

    #[test]
    fn translation_and_scale_laws() {
        let shift = Vec3::new(0.3, -1.7, 2.2);
        let mut seeds: Vec<Shape> = Shape::PLATONIC.to_vec();
        seeds.extend((3..=8).map(Shape::Prism));
        for s in seeds {
            let p = seed_shape(s).unwrap();
            let v = volume(&p, tol()).unwrap();
            let a = surface_area(&p, tol()).unwrap();
            let moved = p.translated(shift);
            assert!((volume(&moved, tol()).unwrap() - v).abs() < 1e-12 * v.max(1.0));
            assert!((surface_area(&moved, tol()).unwrap() - a).abs() < 1e-12 * a);
            let big = p.scaled(2.0);
            assert!((volume(&big, tol()).unwrap() - 8.0 * v).abs() < 1e-12 * v);
            assert!((surface_area(&big, tol()).unwrap() - 4.0 * a).abs() < 1e-12 * a);
        }
    }
}
