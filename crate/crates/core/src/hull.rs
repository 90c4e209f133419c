//! Convex hulls in 2D and 3D, facet planes, and halfspace intersection.
//!
//! The 3D hull is a quickhull over triangles followed by a merge pass: adjacent
//! triangles whose vertices all lie within the length tolerance of a common plane
//! are grouped into one facet, and each facet cycle is rebuilt by walking the
//! group's boundary edges. Vertices left with fewer than three incident facets
//! (points on an edge or inside a facet) are then dropped, so the reported
//! f-vector counts true vertices, edges and polygonal faces.
//!
//! Halfspace intersection goes through point duality about an interior point:
//! each constraint `n·x <= b` becomes the dual point `n / (b - n·c)`, the dual
//! points are hulled, and every dual facet yields one primal vertex.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{orient2, Point2, Vec3};
use crate::measure;
use crate::polygon::{diameter2, Polygon};
use crate::polyhedron::{bbox_diagonal, validate, Polyhedron};
use crate::tolerance::TolerancePolicy;

/// Constraint `normal·x <= offset` with a unit outward normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfSpace {
    pub normal: Vec3,
    pub offset: f64,
}

impl HalfSpace {
    /// Normalizes `normal` and rescales `offset` to match.
    pub fn new(normal: Vec3, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if !(len.is_finite() && len > 0.0 && offset.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "halfspace needs a finite non-zero normal and finite offset, got {normal:?}, {offset}"
            )));
        }
        Ok(Self {
            normal: normal / len,
            offset: offset / len,
        })
    }

    /// Signed distance of `x` past the boundary plane (positive = violated).
    #[inline]
    pub fn excess(&self, x: Vec3) -> f64 {
        self.normal.dot(x) - self.offset
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            normal: self.normal,
            offset: self.offset * c,
        }
    }
}

/// Facet-plane description of a bounded convex body with a known interior point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HRep {
    halfspaces: Vec<HalfSpace>,
    interior_point: Vec3,
}

impl HRep {
    /// Fails unless `interior_point` satisfies every constraint with margin above `abs_eps`.
    pub fn new(
        halfspaces: Vec<HalfSpace>,
        interior_point: Vec3,
        tol: TolerancePolicy,
    ) -> Result<Self> {
        if !interior_point.is_finite() {
            return Err(Error::InvalidParameter(
                "interior point is not finite".into(),
            ));
        }
        if let Some((i, h)) = halfspaces
            .iter()
            .enumerate()
            .find(|(_, h)| -h.excess(interior_point) <= tol.abs_eps)
        {
            return Err(Error::Infeasible(format!(
                "interior point violates or touches constraint {i} (margin {:.3e})",
                -h.excess(interior_point)
            )));
        }
        Ok(Self {
            halfspaces,
            interior_point,
        })
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn interior_point(&self) -> Vec3 {
        self.interior_point
    }

    /// Constraints of `self` and `other`, keeping `self`'s interior point.
    pub fn intersect(&self, other: &HRep, tol: TolerancePolicy) -> Result<HRep> {
        let mut hs = self.halfspaces.clone();
        hs.extend_from_slice(&other.halfspaces);
        HRep::new(hs, self.interior_point, tol)
    }

    /// The body scaled by `c > 0` about the origin.
    pub fn scaled(&self, c: f64) -> HRep {
        HRep {
            halfspaces: self.halfspaces.iter().map(|h| h.scaled(c)).collect(),
            interior_point: self.interior_point * c,
        }
    }

    pub fn contains(&self, x: Vec3, eps: f64) -> bool {
        self.halfspaces.iter().all(|h| h.excess(x) <= eps)
    }
}

/// Convex hull of planar points as a counter-clockwise polygon of extreme points.
///
/// Uses a scale-free tolerance (`rel_eps * diameter`) so that arbitrarily small
/// but well-shaped inputs are handled the same as unit-sized ones.
pub fn hull2(points: &[Point2], tol: TolerancePolicy) -> Result<Polygon> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidParameter(format!("point {i} is not finite")));
    }
    let eps = tol.relative(diameter2(points));
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|b, a| a.distance(*b) <= eps);
    if pts.len() < 3 {
        return Err(Error::Degenerate {
            rank: usize::from(pts.len() > 1),
            required: 2,
            detail: format!("{} distinct points", pts.len()),
        });
    }

    // Andrew's monotone chain; a middle point is dropped when it is within eps of
    // the chord, so collinear boundary points never become vertices.
    let keeps_turn = |o: Point2, a: Point2, b: Point2| {
        let chord = o.distance(b);
        chord > 0.0 && orient2(o, a, b) > eps * chord
    };
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && !keeps_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !keeps_turn(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::Degenerate {
            rank: 1,
            required: 2,
            detail: "all points are collinear".into(),
        });
    }
    Polygon::new(hull, tol)
}

/// Convex hull of a 3D point set as a polyhedron with maximal planar facets.
///
/// Output vertices keep the relative order of their first occurrence in `points`.
pub fn hull3(points: &[Vec3], tol: TolerancePolicy) -> Result<Polyhedron> {
    hull3_with_sources(points, tol).map(|(p, _)| p)
}

/// Like [`hull3`], also returning the input index of every output vertex.
pub(crate) fn hull3_with_sources(
    points: &[Vec3],
    tol: TolerancePolicy,
) -> Result<(Polyhedron, Vec<usize>)> {
    if points.len() < 4 {
        return Err(Error::Degenerate {
            rank: points.len().saturating_sub(1).min(2),
            required: 3,
            detail: format!("only {} points", points.len()),
        });
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidParameter(format!("point {i} is not finite")));
    }
    let eps = tol.length(bbox_diagonal(points));
    let (pts, sources) = coalesce(points, eps);

    let mut qh = Quickhull::new(&pts, eps)?;
    qh.run();
    let (faces, used) = qh.merged_facets()?;

    // Reindex by first appearance in the input.
    let mut kept: Vec<usize> = used.into_iter().collect();
    kept.sort_by_key(|&i| sources[i]);
    let mut remap = vec![usize::MAX; pts.len()];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let vertices = kept.iter().map(|&i| pts[i]).collect();
    let faces = faces
        .into_iter()
        .map(|f| f.into_iter().map(|i| remap[i]).collect())
        .collect();
    let poly = Polyhedron::new(vertices, faces);
    let report = validate(&poly, tol);
    if !report.valid {
        return Err(Error::Internal(format!(
            "hull output failed validation: {}",
            report.into_result().unwrap_err()
        )));
    }
    Ok((poly, kept.iter().map(|&i| sources[i]).collect()))
}

/// Merges points closer than `eps`; returns survivors and their input indices.
fn coalesce(points: &[Vec3], eps: f64) -> (Vec<Vec3>, Vec<usize>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let mut rep = vec![usize::MAX; points.len()];
    // Sweep in x; only points within eps in x can coincide.
    let mut window_start = 0;
    for k in 0..order.len() {
        let i = order[k];
        while points[order[window_start]].x < points[i].x - eps {
            window_start += 1;
        }
        let twin = order[window_start..k]
            .iter()
            .copied()
            .find(|&j| rep[j] == j && points[j].distance(points[i]) <= eps);
        rep[i] = match twin {
            Some(j) => j,
            None => i,
        };
    }
    // Keep the earliest input index of each cluster as its label.
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (i, &r) in rep.iter().enumerate() {
        first.entry(r).or_insert(i);
    }
    let mut reps: Vec<usize> = first.keys().copied().collect();
    reps.sort_by_key(|r| first[r]);
    let pts = reps.iter().map(|&r| points[r]).collect();
    let src = reps.iter().map(|r| first[r]).collect();
    (pts, src)
}

#[derive(Clone, Debug)]
struct Tri {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

struct Quickhull<'a> {
    pts: &'a [Vec3],
    eps: f64,
    tris: Vec<Tri>,
    /// directed edge -> owning live triangle
    edges: HashMap<(usize, usize), usize>,
}

impl<'a> Quickhull<'a> {
    fn new(pts: &'a [Vec3], eps: f64) -> Result<Self> {
        let [a, b, c, d] = initial_simplex(pts, eps)?;
        let mut qh = Self {
            pts,
            eps,
            tris: Vec::new(),
            edges: HashMap::new(),
        };
        for (p, q, r, opp) in [(a, b, c, d), (a, b, d, c), (a, c, d, b), (b, c, d, a)] {
            let n = (pts[q] - pts[p]).cross(pts[r] - pts[p]);
            let tri = if n.dot(pts[opp] - pts[p]) > 0.0 {
                [p, r, q]
            } else {
                [p, q, r]
            };
            qh.add_tri(tri);
        }
        let seeds = [a, b, c, d];
        let live: Vec<usize> = (0..qh.tris.len()).collect();
        let rest: Vec<usize> = (0..pts.len()).filter(|i| !seeds.contains(i)).collect();
        qh.assign(&rest, &live);
        Ok(qh)
    }

    fn add_tri(&mut self, v: [usize; 3]) -> usize {
        let [p, q, r] = v.map(|i| self.pts[i]);
        let normal = (q - p).cross(r - p).normalized().unwrap_or(Vec3::ZERO);
        let offset = normal.dot((p + q + r) / 3.0);
        let id = self.tris.len();
        self.tris.push(Tri {
            v,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
        });
        for k in 0..3 {
            self.edges.insert((v[k], v[(k + 1) % 3]), id);
        }
        id
    }

    #[inline]
    fn height(&self, t: usize, i: usize) -> f64 {
        let tri = &self.tris[t];
        tri.normal.dot(self.pts[i]) - tri.offset
    }

    fn assign(&mut self, points: &[usize], candidates: &[usize]) {
        for &i in points {
            let best = candidates
                .iter()
                .map(|&t| (t, self.height(t, i)))
                .filter(|&(_, h)| h > self.eps)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((t, _)) = best {
                self.tris[t].outside.push(i);
            }
        }
    }

    fn run(&mut self) {
        let mut cursor = 0;
        // Round-robin over triangles so no region is starved.
        while let Some(t) = (0..self.tris.len())
            .map(|k| (cursor + k) % self.tris.len())
            .find(|&t| self.tris[t].alive && !self.tris[t].outside.is_empty())
        {
            cursor = t + 1;
            let apex = *self.tris[t]
                .outside
                .iter()
                .max_by(|&&a, &&b| self.height(t, a).total_cmp(&self.height(t, b)))
                .expect("non-empty");
            self.add_point(t, apex);
        }
    }

    fn add_point(&mut self, start: usize, apex: usize) {
        // Connected visible region around `start`.
        let mut visible = vec![start];
        let mut seen: HashSet<usize> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            let v = self.tris[t].v;
            for k in 0..3 {
                if let Some(&nb) = self.edges.get(&(v[(k + 1) % 3], v[k])) {
                    if seen.insert(nb) && self.height(nb, apex) > self.eps {
                        visible.push(nb);
                        queue.push_back(nb);
                    }
                }
            }
        }
        let visible_set: HashSet<usize> = visible.iter().copied().collect();
        let mut horizon = Vec::new();
        let mut orphans = Vec::new();
        for &t in &visible {
            let v = self.tris[t].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                let across = self.edges.get(&(b, a)).copied();
                if across.is_none_or(|nb| !visible_set.contains(&nb)) {
                    horizon.push((a, b));
                }
            }
            orphans.append(&mut self.tris[t].outside);
        }
        for &t in &visible {
            self.tris[t].alive = false;
            let v = self.tris[t].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if self.edges.get(&key) == Some(&t) {
                    self.edges.remove(&key);
                }
            }
        }
        let new: Vec<usize> = horizon
            .into_iter()
            .map(|(a, b)| self.add_tri([a, b, apex]))
            .collect();
        orphans.retain(|&i| i != apex);
        self.assign(&orphans, &new);
    }

    /// Groups live triangles into planar facets and returns their vertex cycles.
    fn merged_facets(&self) -> Result<(Vec<Vec<usize>>, HashSet<usize>)> {
        let live: Vec<usize> = (0..self.tris.len())
            .filter(|&t| self.tris[t].alive)
            .collect();
        let area = |t: usize| {
            let [p, q, r] = self.tris[t].v.map(|i| self.pts[i]);
            (q - p).cross(r - p).norm()
        };
        let mut by_area = live.clone();
        by_area.sort_by(|&a, &b| area(b).total_cmp(&area(a)));

        let mut cluster: HashMap<usize, usize> = HashMap::new();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &seed in &by_area {
            if cluster.contains_key(&seed) {
                continue;
            }
            let id = clusters.len();
            let (n, d) = (self.tris[seed].normal, self.tris[seed].offset);
            let on_plane = |t: usize| {
                self.tris[t]
                    .v
                    .iter()
                    .all(|&i| (n.dot(self.pts[i]) - d).abs() <= self.eps)
                    && self.tris[t].normal.dot(n) > 0.0
            };
            let mut members = vec![seed];
            cluster.insert(seed, id);
            let mut queue = VecDeque::from([seed]);
            while let Some(t) = queue.pop_front() {
                let v = self.tris[t].v;
                for k in 0..3 {
                    if let Some(&nb) = self.edges.get(&(v[(k + 1) % 3], v[k])) {
                        if !cluster.contains_key(&nb) && on_plane(nb) {
                            cluster.insert(nb, id);
                            members.push(nb);
                            queue.push_back(nb);
                        }
                    }
                }
            }
            clusters.push(members);
        }

        // Boundary walk per cluster.
        let mut cycles: Vec<Vec<usize>> = Vec::with_capacity(clusters.len());
        for (id, members) in clusters.iter().enumerate() {
            let mut next: HashMap<usize, usize> = HashMap::new();
            for &t in members {
                let v = self.tris[t].v;
                for k in 0..3 {
                    let (a, b) = (v[k], v[(k + 1) % 3]);
                    let twin = self.edges.get(&(b, a)).copied();
                    if twin.is_none_or(|nb| cluster[&nb] != id) && next.insert(a, b).is_some() {
                        return Err(Error::Internal(format!(
                            "facet {id} boundary is pinched at point {a}"
                        )));
                    }
                }
            }
            let Some(&start) = next.keys().min() else {
                return Err(Error::Internal(format!("facet {id} has no boundary")));
            };
            let mut cycle = vec![start];
            let mut cur = next[&start];
            while cur != start {
                if cycle.len() > next.len() {
                    return Err(Error::Internal(format!(
                        "facet {id} boundary does not close"
                    )));
                }
                cycle.push(cur);
                cur = *next
                    .get(&cur)
                    .ok_or_else(|| Error::Internal(format!("facet {id} boundary is open")))?;
            }
            if cycle.len() != next.len() {
                return Err(Error::Internal(format!(
                    "facet {id} boundary has several loops"
                )));
            }
            cycles.push(cycle);
        }

        // Points touching fewer than three facets sit on an edge or inside a facet.
        let mut incidence: HashMap<usize, usize> = HashMap::new();
        for c in &cycles {
            for &i in c {
                *incidence.entry(i).or_default() += 1;
            }
        }
        let mut used = HashSet::new();
        for c in cycles.iter_mut() {
            c.retain(|i| incidence[i] >= 3);
            if c.len() < 3 {
                return Err(Error::Internal(
                    "a merged facet collapsed below 3 vertices".into(),
                ));
            }
            used.extend(c.iter().copied());
        }
        Ok((cycles, used))
    }
}

/// Four affinely independent points spanning a tetrahedron thicker than `eps`.
fn initial_simplex(pts: &[Vec3], eps: f64) -> Result<[usize; 4]> {
    let a = (0..pts.len())
        .min_by(|&i, &j| pts[i].x.total_cmp(&pts[j].x))
        .expect("non-empty");
    let farthest = |score: &dyn Fn(Vec3) -> f64| {
        (0..pts.len())
            .map(|i| (i, score(pts[i])))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty")
    };
    let (b, dab) = farthest(&|p| p.distance(pts[a]));
    if dab <= eps {
        return Err(Error::Degenerate {
            rank: 0,
            required: 3,
            detail: "all points coincide".into(),
        });
    }
    let dir = (pts[b] - pts[a]) / dab;
    let (c, dc) = farthest(&|p| {
        let w = p - pts[a];
        (w - dir * w.dot(dir)).norm()
    });
    if dc <= eps {
        return Err(Error::Degenerate {
            rank: 1,
            required: 3,
            detail: "all points are collinear".into(),
        });
    }
    let normal = (pts[b] - pts[a])
        .cross(pts[c] - pts[a])
        .normalized()
        .expect("non-collinear");
    let (d, dd) = farthest(&|p| normal.dot(p - pts[a]).abs());
    if dd <= eps {
        return Err(Error::Degenerate {
            rank: 2,
            required: 3,
            detail: "all points are coplanar".into(),
        });
    }
    Ok([a, b, c, d])
}

/// One outward unit-normal halfspace per facet; the interior point is the centroid.
pub fn to_hrep(p: &Polyhedron, tol: TolerancePolicy) -> Result<HRep> {
    validate(p, tol).into_result()?;
    let halfspaces = (0..p.faces().len())
        .map(|f| {
            let (n, d) = p
                .face_plane(f)
                .ok_or_else(|| Error::Validation(format!("face {f} is degenerate")))?;
            HalfSpace::new(n, d)
        })
        .collect::<Result<Vec<_>>>()?;
    HRep::new(halfspaces, measure::centroid(p), tol)
}

/// Vertex enumeration of a bounded halfspace system by point duality.
pub fn intersect_hrep(h: &HRep, tol: TolerancePolicy) -> Result<Polyhedron> {
    let c = h.interior_point;
    if h.halfspaces.len() < 4 {
        return Err(Error::Infeasible(format!(
            "{} halfspaces cannot bound a solid",
            h.halfspaces.len()
        )));
    }
    let dual: Vec<Vec3> = h
        .halfspaces
        .iter()
        .enumerate()
        .map(|(i, hs)| {
            let margin = -hs.excess(c);
            if margin <= tol.abs_eps {
                return Err(Error::Infeasible(format!(
                    "interior point is not strictly inside constraint {i}"
                )));
            }
            Ok(hs.normal / margin)
        })
        .collect::<Result<_>>()?;

    let ((dual_hull, sources), dual_tol) =
        relaxed(tol, |t| hull3_with_sources(&dual, t)).map_err(|e| match e {
            Error::Degenerate { rank, .. } => Error::Infeasible(format!(
                "unbounded: constraint normals span rank {rank} < 3"
            )),
            other => other,
        })?;
    let dual_eps = dual_tol.length(dual_hull.diameter());
    let near_eps = 1e3 * tol.length(primal_scale(h));

    let mut primal = Vec::with_capacity(dual_hull.faces().len());
    for f in 0..dual_hull.faces().len() {
        let (m, off) = dual_hull
            .face_plane(f)
            .ok_or_else(|| Error::Internal("degenerate dual facet".into()))?;
        if off <= dual_eps {
            return Err(Error::Infeasible(
                "unbounded: interior point is on the boundary of the dual hull".into(),
            ));
        }
        let tight: Vec<&HalfSpace> = dual_hull.faces()[f]
            .iter()
            .map(|&v| &h.halfspaces[sources[v]])
            .collect();
        let x0 = solve_tight(&tight).unwrap_or(c + m / off);
        // Near-duplicate constraints collapse onto one dual point, and the
        // survivor need not be the tighter one. Re-solve over everything
        // nearly active at the first estimate.
        let mut near: Vec<&HalfSpace> = h
            .halfspaces
            .iter()
            .filter(|hs| hs.excess(x0) > -near_eps)
            .collect();
        let x = if near.iter().any(|hs| hs.excess(x0) > 0.0) {
            near.sort_by(|a, b| b.excess(x0).total_cmp(&a.excess(x0)));
            solve_tight(&near).unwrap_or(x0)
        } else {
            x0
        };
        primal.push(pull_inside(x, &near));
    }
    let (body, used) = relaxed(tol, |t| hull3(&primal, t))?;
    let eps = used.length(body.diameter());
    for (i, &x) in body.vertices().iter().enumerate() {
        if let Some(k) = h.halfspaces.iter().position(|hs| hs.excess(x) > eps) {
            return Err(Error::Internal(format!(
                "intersection vertex {i} violates constraint {k} by {:.3e}",
                h.halfspaces[k].excess(x)
            )));
        }
    }
    Ok(body)
}

/// Nearly degenerate systems (several planes almost meeting in a point, or
/// near-duplicate planes) produce clusters of points a few ulps of the body
/// apart. If a hull of such a cluster fails its own validation, retry with a
/// coarser tolerance.
fn relaxed<T>(
    tol: TolerancePolicy,
    mut f: impl FnMut(TolerancePolicy) -> Result<T>,
) -> Result<(T, TolerancePolicy)> {
    const RETRIES: usize = 4;
    let mut t = tol;
    for _ in 0..RETRIES {
        match f(t) {
            Err(Error::Internal(_)) => t = TolerancePolicy::new(10.0 * t.rel_eps, t.abs_eps)?,
            other => return other.map(|x| (x, t)),
        }
    }
    f(t).map(|x| (x, t))
}

/// Removes residual violations left by ill-conditioned plane triples by
/// projecting onto each violated plane in turn. Moves are rounding-sized.
fn pull_inside(mut x: Vec3, planes: &[&HalfSpace]) -> Vec3 {
    for _ in 0..8 {
        let mut moved = false;
        for hs in planes {
            let e = hs.excess(x);
            if e > 0.0 {
                x = x - hs.normal * e;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    x
}

/// Rough size of the body: twice the largest interior-point margin.
fn primal_scale(h: &HRep) -> f64 {
    let c = h.interior_point;
    2.0 * h
        .halfspaces
        .iter()
        .map(|hs| -hs.excess(c))
        .fold(0.0, f64::max)
}

/// Vertex from the triple of tight planes whose solution violates the others
/// least. Near-degenerate vertices merge four or more planes that do not quite
/// meet in a point; an arbitrary triple can then land outside the rest.
fn solve_tight(planes: &[&HalfSpace]) -> Option<Vec3> {
    const MAX_PLANES: usize = 16;
    let planes = &planes[..planes.len().min(MAX_PLANES)];
    let mut best: Option<(f64, Vec3)> = None;
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            for k in (j + 1)..planes.len() {
                let Some(x) = solve3(planes[i], planes[j], planes[k]) else {
                    continue;
                };
                let worst = planes
                    .iter()
                    .map(|p| p.excess(x))
                    .fold(f64::NEG_INFINITY, f64::max);
                if best.is_none_or(|(w, _)| worst < w) {
                    best = Some((worst, x));
                }
            }
        }
    }
    best.map(|(_, x)| x)
}

fn solve3(a: &HalfSpace, b: &HalfSpace, c: &HalfSpace) -> Option<Vec3> {
    let (n1, n2, n3) = (a.normal, b.normal, c.normal);
    let det = n1.dot(n2.cross(n3));
    // unit normals, so |det| is the sine-volume of the triple
    if det.abs() < 1e-6 {
        return None;
    }
    // Cramer's rule in cross-product form.
    let x = (n2.cross(n3) * a.offset + n3.cross(n1) * b.offset + n1.cross(n2) * c.offset) / det;
    x.is_finite().then_some(x)
}
