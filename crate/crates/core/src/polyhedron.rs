//! Boundary representation of convex polyhedra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{newell_normal, Vec3};
use crate::tolerance::TolerancePolicy;

/// Vertex, edge and face counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FVector {
    pub v: usize,
    pub e: usize,
    pub f: usize,
}

impl FVector {
    pub const fn new(v: usize, e: usize, f: usize) -> Self {
        Self { v, e, f }
    }

    /// v − e + f, computed without unsigned underflow.
    pub fn euler_characteristic(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64
    }

    pub fn satisfies_euler(&self) -> bool {
        self.euler_characteristic() == 2
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.e, self.f)
    }
}

/// Vertices plus counter-clockwise (seen from outside) face cycles.
///
/// The edge set is derived from the faces at construction. No geometric checks
/// happen here; see [`validate`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Polyhedron {
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Self {
        let edges: BTreeSet<(usize, usize)> = faces
            .iter()
            .flat_map(|f| {
                (0..f.len()).map(move |i| {
                    let (a, b) = (f[i], f[(i + 1) % f.len()]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        Self {
            vertices,
            faces,
            edges: edges.into_iter().collect(),
        }
    }

    /// Builds and validates in one step.
    pub fn try_new(
        vertices: Vec<Vec3>,
        faces: Vec<Vec<usize>>,
        tol: TolerancePolicy,
    ) -> Result<Self> {
        let p = Self::new(vertices, faces);
        validate(&p, tol).into_result()?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Sorted unordered edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn fvector(&self) -> FVector {
        FVector::new(self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn face_points(&self, face: usize) -> impl Iterator<Item = Vec3> + Clone + '_ {
        self.faces[face].iter().map(move |&i| self.vertices[i])
    }

    /// Unit outward normal of a face (Newell), or `None` for a degenerate face.
    pub fn face_normal(&self, face: usize) -> Option<Vec3> {
        newell_normal(self.face_points(face)).normalized()
    }

    /// Unit normal and offset `d` with `n·x = d` on the face.
    pub fn face_plane(&self, face: usize) -> Option<(Vec3, f64)> {
        let n = self.face_normal(face)?;
        let k = self.faces[face].len() as f64;
        let d = self.face_points(face).map(|p| n.dot(p)).sum::<f64>() / k;
        Some((n, d))
    }

    pub fn face_area(&self, face: usize) -> f64 {
        0.5 * newell_normal(self.face_points(face)).norm()
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|&(a, b)| self.vertices[a].distance(self.vertices[b]))
            .collect()
    }

    pub fn vertex_mean(&self) -> Vec3 {
        Vec3::mean(&self.vertices)
    }

    /// Bounding-box diagonal.
    pub fn diameter(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    /// Number of edges at each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Neighbours of every vertex (unordered).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Faces around vertex `v` in cyclic order, following the face orientation.
    ///
    /// Returns `None` when the faces at `v` do not form a single disc (invalid input).
    pub fn faces_around_vertex(&self, v: usize) -> Option<Vec<usize>> {
        // directed edge (a, b) -> face containing it
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        let mut incident = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for i in 0..f.len() {
                owner.insert((f[i], f[(i + 1) % f.len()]), fi);
            }
            if f.contains(&v) {
                incident.push(fi);
            }
        }
        let start = *incident.first()?;
        let mut ring = vec![start];
        let mut cur = start;
        loop {
            let f = &self.faces[cur];
            let pos = f.iter().position(|&x| x == v)?;
            let prev = f[(pos + f.len() - 1) % f.len()];
            // The face across edge (prev, v) holds the directed edge (v, prev).
            let next = *owner.get(&(v, prev))?;
            if next == start {
                break;
            }
            if ring.len() > incident.len() {
                return None;
            }
            ring.push(next);
            cur = next;
        }
        (ring.len() == incident.len()).then_some(ring)
    }

    pub fn translated(&self, t: Vec3) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + t).collect(),
            faces: self.faces.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Uniform scaling about the origin; `c` must be positive to keep orientation.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p * c).collect(),
            faces: self.faces.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Same solid with vertices sorted lexicographically, each face rotated to
    /// start at its smallest index and faces sorted. Two polyhedra that differ
    /// only in labelling canonicalize to the same value.
    pub fn canonicalized(&self) -> Self {
        let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
        let verts: Vec<Vec3> = self
            .vertices
            .iter()
            .map(|p| Vec3::new(clean(p.x), clean(p.y), clean(p.z)))
            .collect();
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.sort_by(|&a, &b| {
            let (p, q) = (verts[a], verts[b]);
            p.x.total_cmp(&q.x)
                .then(p.y.total_cmp(&q.y))
                .then(p.z.total_cmp(&q.z))
        });
        let mut remap = vec![0; verts.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let vertices = order.iter().map(|&i| verts[i]).collect();
        let mut faces: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&i| remap[i]).collect();
                if let Some(pos) = g.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i) {
                    g.rotate_left(pos);
                }
                g
            })
            .collect();
        faces.sort();
        Self::new(vertices, faces)
    }
}

pub(crate) fn bbox_diagonal(points: &[Vec3]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    Vec3::new(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]).norm()
}

/// Names of the individual validation checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    FiniteCoordinates,
    FaceIndices,
    VerticesUsed,
    EdgeManifold,
    Orientation,
    Euler,
    Planarity,
    Convexity,
    CoplanarAdjacency,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::FiniteCoordinates => "finite-coordinates",
            Check::FaceIndices => "face-indices",
            Check::VerticesUsed => "vertices-used",
            Check::EdgeManifold => "edge-manifold",
            Check::Orientation => "orientation",
            Check::Euler => "euler",
            Check::Planarity => "planarity",
            Check::Convexity => "convexity",
            Check::CoplanarAdjacency => "coplanar-adjacency",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of every invariant check on a polyhedron.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub fvector: FVector,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, check: Check) -> bool {
        self.checks.iter().any(|c| c.check == check && !c.passed)
    }

    pub fn into_result(self) -> Result<()> {
        if self.valid {
            return Ok(());
        }
        let msg = self
            .failures()
            .map(|c| format!("{}: {}", c.check, c.detail))
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::Validation(msg))
    }
}

/// Checks every structural and geometric invariant of a convex polyhedron.
///
/// Geometric checks use the length tolerance `tol.length(diameter)`.
pub fn validate(p: &Polyhedron, tol: TolerancePolicy) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |check, failure: Option<String>| {
        checks.push(CheckResult {
            check,
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| "ok".to_string()),
        })
    };
    let nv = p.vertices.len();
    let fv = p.fvector();

    push(
        Check::FiniteCoordinates,
        p.vertices
            .iter()
            .position(|v| !v.is_finite())
            .map(|i| format!("vertex {i} has a non-finite coordinate")),
    );

    let index_failure = p.faces.iter().enumerate().find_map(|(fi, f)| {
        if f.len() < 3 {
            return Some(format!("face {fi} has only {} vertices", f.len()));
        }
        if let Some(&bad) = f.iter().find(|&&i| i >= nv) {
            return Some(format!("face {fi} references missing vertex {bad}"));
        }
        let distinct: BTreeSet<_> = f.iter().collect();
        (distinct.len() != f.len()).then(|| format!("face {fi} repeats a vertex"))
    });
    let indices_ok = index_failure.is_none();
    push(Check::FaceIndices, index_failure);
    if !indices_ok {
        return ValidationReport {
            valid: false,
            fvector: fv,
            checks,
        };
    }

    let mut used = vec![false; nv];
    for f in &p.faces {
        for &i in f {
            used[i] = true;
        }
    }
    push(
        Check::VerticesUsed,
        used.iter()
            .position(|u| !u)
            .map(|i| format!("vertex {i} lies on no face")),
    );

    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in &p.faces {
        for i in 0..f.len() {
            *directed.entry((f[i], f[(i + 1) % f.len()])).or_default() += 1;
        }
    }
    let manifold_failure = p.edges.iter().find_map(|&(a, b)| {
        let uses = directed.get(&(a, b)).copied().unwrap_or(0)
            + directed.get(&(b, a)).copied().unwrap_or(0);
        (uses != 2).then(|| format!("edge ({a},{b}) is shared by {uses} faces"))
    });
    let manifold_ok = manifold_failure.is_none();
    push(Check::EdgeManifold, manifold_failure);

    let eps = tol.length(p.diameter());
    let planes: Vec<Option<(Vec3, f64)>> = (0..p.faces.len()).map(|f| p.face_plane(f)).collect();

    let mut orientation_failure = directed
        .iter()
        .find(|(_, &count)| count > 1)
        .map(|((a, b), _)| format!("directed edge ({a},{b}) appears in two faces"));
    if orientation_failure.is_none() && manifold_ok {
        orientation_failure = p
            .edges
            .iter()
            .find(|&&(a, b)| !(directed.contains_key(&(a, b)) && directed.contains_key(&(b, a))))
            .map(|(a, b)| format!("edge ({a},{b}) is traversed in one direction only"));
    }
    if orientation_failure.is_none() {
        // Consistently oriented but possibly inside-out: the normals must point away
        // from the vertex mean.
        let c = p.vertex_mean();
        orientation_failure = planes.iter().enumerate().find_map(|(fi, pl)| match pl {
            Some((n, d)) if d - n.dot(c) <= 0.0 => Some(format!("face {fi} normal points inward")),
            _ => None,
        });
    }
    push(Check::Orientation, orientation_failure);

    push(
        Check::Euler,
        (!fv.satisfies_euler()).then(|| {
            format!(
                "{} - {} + {} = {} != 2",
                fv.v,
                fv.e,
                fv.f,
                fv.euler_characteristic()
            )
        }),
    );

    let planarity_failure = planes.iter().enumerate().find_map(|(fi, pl)| match pl {
        None => Some(format!("face {fi} has zero area")),
        Some((n, d)) => {
            let dev = p
                .face_points(fi)
                .map(|q| (n.dot(q) - d).abs())
                .fold(0.0, f64::max);
            (dev > eps).then(|| format!("face {fi} deviates {dev:.3e} from its plane"))
        }
    });
    push(Check::Planarity, planarity_failure);

    let convexity_failure = planes.iter().enumerate().find_map(|(fi, pl)| {
        let (n, d) = (*pl)?;
        p.vertices.iter().enumerate().find_map(|(vi, &q)| {
            let h = n.dot(q) - d;
            (h > eps).then(|| format!("vertex {vi} lies {h:.3e} outside face {fi}"))
        })
    });
    push(Check::Convexity, convexity_failure);

    let mut coplanar_failure = None;
    if manifold_ok {
        let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in p.faces.iter().enumerate() {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                edge_faces.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        coplanar_failure = edge_faces.iter().find_map(|(&(a, b), fs)| {
            let (f0, f1) = (fs[0], fs[1]);
            let (n0, d0) = planes[f0]?;
            let (n1, d1) = planes[f1]?;
            let off0 = p
                .face_points(f1)
                .map(|q| (n0.dot(q) - d0).abs())
                .fold(0.0, f64::max);
            let off1 = p
                .face_points(f0)
                .map(|q| (n1.dot(q) - d1).abs())
                .fold(0.0, f64::max);
            (off0 <= eps && off1 <= eps)
                .then(|| format!("faces {f0} and {f1} across edge ({a},{b}) are coplanar"))
        });
    }
    push(Check::CoplanarAdjacency, coplanar_failure);

    let valid = checks.iter().all(|c| c.passed);
    ValidationReport {
        valid,
        fvector: fv,
        checks,
    }
}
