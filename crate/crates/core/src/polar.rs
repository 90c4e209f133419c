//! Polar duality, Mahler volume and numerical probes of the similarity and
//! intersection statements about rectified solids.
//!
//! Polarity needs a centre. Every body is translated to its volume centroid
//! before dualizing and the translation is reported alongside each result.
//! Probes measure mismatch as the volume of a symmetric difference, computed
//! exactly (up to rounding) through halfspace intersection, normalized by the
//! volume of the reference body.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::hull::{hull3, intersect_hrep, to_hrep, HRep};
use crate::measure::{centroid, signed_volume, volume};
use crate::polyhedron::{FVector, Polyhedron};
use crate::rectify::rectify_polyhedron;
use crate::tolerance::TolerancePolicy;

/// Normalized residual below which a probe counts as holding numerically.
pub const HOLDS_BELOW: f64 = 1e-7;
/// Normalized residual above which a probe counts as failing.
pub const FAILS_ABOVE: f64 = 1e-3;
/// Iteration cap for the golden-section search.
pub const MAX_ITERATIONS: usize = 200;
/// Relative bracket width at which the search is considered converged.
pub const LAMBDA_REL_TOL: f64 = 1e-12;
/// Mahler volume of the cube, the conjectured minimum for symmetric 3-bodies.
pub const MAHLER_SYMMETRIC_MIN: f64 = 32.0 / 3.0;
/// Mahler volume of the simplex, the conjectured minimum for general 3-bodies.
pub const MAHLER_GENERAL_MIN: f64 = 64.0 / 9.0;

pub const CENTER_CONVENTION: &str =
    "bodies are translated to their volume centroid before polarity and scaling";

const HAUSDORFF_DIRECTIONS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsNumerically,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_residual(residual: f64) -> Self {
        if residual < HOLDS_BELOW {
            Verdict::HoldsNumerically
        } else if residual > FAILS_ABOVE {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsNumerically => "holds-numerically",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub holds_below: f64,
    pub fails_above: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            holds_below: HOLDS_BELOW,
            fails_above: FAILS_ABOVE,
        }
    }
}

/// Outcome of one numerical probe. Every field is always present in JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub lambda: Option<f64>,
    /// Symmetric-difference volume normalized by the reference volume.
    pub residual: Option<f64>,
    pub verdict: Verdict,
    pub volumes: BTreeMap<String, f64>,
    /// Named boolean sub-verdicts (inequalities, convergence).
    pub checks: BTreeMap<String, bool>,
    pub thresholds: Thresholds,
    pub center_convention: &'static str,
    pub translations: BTreeMap<String, Vec3>,
    /// Support-function Hausdorff estimate over sampled directions (diagnostic only).
    pub hausdorff: Option<f64>,
    pub fvector: Option<FVector>,
    pub iterations: Option<usize>,
    pub notes: Vec<String>,
}

impl ProbeResult {
    fn new(probe: &str, verdict: Verdict) -> Self {
        Self {
            probe: probe.to_string(),
            lambda: None,
            residual: None,
            verdict,
            volumes: BTreeMap::new(),
            checks: BTreeMap::new(),
            thresholds: Thresholds::default(),
            center_convention: CENTER_CONVENTION,
            translations: BTreeMap::new(),
            hausdorff: None,
            fvector: None,
            iterations: None,
            notes: Vec::new(),
        }
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "probe      {}", self.probe);
        let _ = writeln!(s, "verdict    {}", self.verdict);
        if let Some(l) = self.lambda {
            let _ = writeln!(s, "lambda     {l:.15}");
        }
        if let Some(r) = self.residual {
            let _ = writeln!(s, "residual   {r:.3e}");
        }
        if let Some(h) = self.hausdorff {
            let _ = writeln!(s, "hausdorff  {h:.3e}");
        }
        if let Some(fv) = self.fvector {
            let _ = writeln!(s, "f-vector   {fv}");
        }
        if let Some(it) = self.iterations {
            let _ = writeln!(s, "iterations {it}");
        }
        for (k, v) in &self.volumes {
            let _ = writeln!(s, "{k:<28} {v:.15}");
        }
        for (k, v) in &self.checks {
            let _ = writeln!(s, "{k:<28} {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

/// Polar body of a centroid-centred copy of `p`, with the translation used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolarDual {
    pub dual: Polyhedron,
    /// Vector added to `p` to centre it before dualizing.
    pub translation: Vec3,
}

/// Translates `p` so its volume centroid is the origin.
pub fn centered(p: &Polyhedron) -> (Polyhedron, Vec3) {
    let t = -centroid(p);
    (p.translated(t), t)
}

/// Centred copy of `p` scaled so its inradius about the centroid is 1, with the
/// scale factor applied. The cube becomes [−1,1]³.
pub fn inradius_normalized(p: &Polyhedron, tol: TolerancePolicy) -> Result<(Polyhedron, f64)> {
    let (q, _) = centered(p);
    let r = to_hrep(&q, tol)?
        .halfspaces()
        .iter()
        .map(|hs| hs.offset)
        .fold(f64::INFINITY, f64::min);
    if r.is_nan() || r <= tol.abs_eps {
        return Err(Error::Internal(format!("inradius {r:.3e} is not positive")));
    }
    Ok((q.scaled(1.0 / r), 1.0 / r))
}

/// {y : y·x <= 1 for all x in p}, after centring `p` at its centroid.
pub fn polar_dual(p: &Polyhedron, tol: TolerancePolicy) -> Result<PolarDual> {
    let (q, translation) = centered(p);
    Ok(PolarDual {
        dual: polar_about_origin(&q, tol)?,
        translation,
    })
}

/// {y : y·x <= 1 for all x in p} for `p` with the origin in its interior.
///
/// Each facet `n·x <= b` becomes the dual vertex `n / b`.
pub fn polar_about_origin(p: &Polyhedron, tol: TolerancePolicy) -> Result<Polyhedron> {
    let h = to_hrep(p, tol)?;
    let points = h
        .halfspaces()
        .iter()
        .map(|hs| {
            if hs.offset <= tol.abs_eps {
                return Err(Error::InvalidParameter(format!(
                    "origin is not interior (facet offset {:.3e})",
                    hs.offset
                )));
            }
            Ok(hs.normal / hs.offset)
        })
        .collect::<Result<Vec<_>>>()?;
    hull3(&points, tol)
}

/// vol(p) · vol(p°), with p° taken about the centroid.
pub fn mahler_volume(p: &Polyhedron, tol: TolerancePolicy) -> Result<f64> {
    let v = volume(p, tol)?;
    let d = polar_dual(p, tol)?;
    Ok(v * volume(&d.dual, tol)?)
}

/// Whether the vertex set is symmetric under x ↦ 2c − x about the centroid.
pub fn is_centrally_symmetric(p: &Polyhedron, tol: TolerancePolicy) -> bool {
    let c = centroid(p);
    let eps = tol.length(p.diameter());
    p.vertices().iter().all(|&v| {
        let mirror = c * 2.0 - v;
        p.vertices().iter().any(|&w| w.distance(mirror) <= eps)
    })
}

/// Result of a golden-section minimization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GoldenSection {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than `x_tol`.
pub fn golden_section<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<GoldenSection>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0;
    while b - a > x_tol && iterations < max_iter {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let (x, fx) = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok(GoldenSection {
        x,
        fx,
        iterations,
        converged: b - a <= x_tol,
    })
}

/// Halfspaces of a centred body, anchored at the origin so that scaling about
/// the origin keeps the interior point valid.
fn origin_hrep(p: &Polyhedron, tol: TolerancePolicy) -> Result<HRep> {
    let h = to_hrep(p, tol)?;
    HRep::new(h.halfspaces().to_vec(), Vec3::ZERO, tol)
}

fn intersection_volume(a: &HRep, b: &HRep, tol: TolerancePolicy) -> Result<f64> {
    let body = intersect_hrep(&a.intersect(b, tol)?, tol)?;
    Ok(signed_volume(&body))
}

/// vol(A Δ B) = vol(A) + vol(B) − 2 vol(A ∩ B), clamped at zero.
fn symmetric_difference(a: &HRep, va: f64, b: &HRep, vb: f64, tol: TolerancePolicy) -> Result<f64> {
    Ok((va + vb - 2.0 * intersection_volume(a, b, tol)?).max(0.0))
}

/// Fibonacci-sphere estimate of the Hausdorff distance via support functions.
pub fn hausdorff_estimate(a: &[Vec3], b: &[Vec3]) -> f64 {
    let support = |pts: &[Vec3], u: Vec3| {
        pts.iter()
            .map(|p| p.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..HAUSDORFF_DIRECTIONS)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / HAUSDORFF_DIRECTIONS as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden_angle * i as f64;
            let u = Vec3::new(r * t.cos(), r * t.sin(), z);
            (support(a, u) - support(b, u)).abs()
        })
        .fold(0.0, f64::max)
}

fn search_verdict(residual: f64, converged: bool) -> Verdict {
    if converged {
        Verdict::from_residual(residual)
    } else {
        Verdict::Inconclusive
    }
}

/// Best λ with `a ≈ λ·b`, minimizing vol(a Δ λb)/vol(a) over λ by golden section
/// on [λ₀/4, 4λ₀], λ₀ = (vol a / vol b)^(1/3). Both bodies are centred first.
pub fn fit_lambda_similarity(
    a: &Polyhedron,
    b: &Polyhedron,
    tol: TolerancePolicy,
) -> Result<ProbeResult> {
    let (ac, ta) = centered(a);
    let (bc, tb) = centered(b);
    let va = volume(&ac, tol)?;
    let vb = volume(&bc, tol)?;
    let ha = origin_hrep(&ac, tol)?;
    let hb = origin_hrep(&bc, tol)?;
    let lambda0 = (va / vb).cbrt();
    let objective = |l: f64| -> Result<f64> {
        Ok(symmetric_difference(&ha, va, &hb.scaled(l), l.powi(3) * vb, tol)? / va)
    };
    let gs = golden_section(
        objective,
        lambda0 / 4.0,
        4.0 * lambda0,
        LAMBDA_REL_TOL * lambda0,
        MAX_ITERATIONS,
    )?;

    let mut r = ProbeResult::new("similarity-fit", search_verdict(gs.fx, gs.converged));
    r.lambda = Some(gs.x);
    r.residual = Some(gs.fx);
    r.iterations = Some(gs.iterations);
    r.checks.insert("converged".into(), gs.converged);
    r.volumes.insert("volume_a".into(), va);
    r.volumes.insert("volume_b".into(), vb);
    r.volumes.insert("lambda_initial".into(), lambda0);
    r.translations.insert("a".into(), ta);
    r.translations.insert("b".into(), tb);
    let scaled_b: Vec<Vec3> = bc.vertices().iter().map(|&v| v * gs.x).collect();
    r.hausdorff = Some(hausdorff_estimate(ac.vertices(), &scaled_b));
    if !gs.converged {
        r.notes.push(format!(
            "golden-section search hit the {MAX_ITERATIONS}-iteration cap before converging"
        ));
    }
    Ok(r)
}

/// Probes R₁[P] against its dual counterpart: fits R₁[P] ≈ λ·R₁[P°].
pub fn probe_conjecture1(p: &Polyhedron, tol: TolerancePolicy) -> Result<ProbeResult> {
    let (pc, t) = centered(p);
    let dual = polar_dual(&pc, tol)?.dual;
    let rect = rectify_polyhedron(&pc, tol)?;
    let rect_dual = rectify_polyhedron(&dual, tol)?;
    let mut r = fit_lambda_similarity(&rect, &rect_dual, tol)?;
    r.probe = "conj1".into();
    r.translations.insert("p".into(), t);
    r.fvector = Some(rect.fvector());
    Ok(r)
}

/// Minimizes vol((λP° ∩ P) Δ R₁[P]) / vol(R₁[P]) over λ.
pub fn probe_conjecture3(p: &Polyhedron, tol: TolerancePolicy) -> Result<ProbeResult> {
    let (pc, t) = centered(p);
    let dual = polar_dual(&pc, tol)?.dual;
    let rect = rectify_polyhedron(&pc, tol)?;
    let hp = origin_hrep(&pc, tol)?;
    let hd = origin_hrep(&dual, tol)?;
    let hr = origin_hrep(&rect, tol)?;
    let vr = volume(&rect, tol)?;
    let vd = volume(&dual, tol)?;

    let objective = |l: f64| -> Result<f64> {
        let scaled = hd.scaled(l);
        let va = intersection_volume(&scaled, &hp, tol)?;
        // R₁[P] ⊆ P, so (λP° ∩ P) ∩ R₁[P] = λP° ∩ R₁[P].
        let vi = intersection_volume(&scaled, &hr, tol)?;
        Ok((va + vr - 2.0 * vi).max(0.0) / vr)
    };
    let lambda0 = (vr / vd).cbrt();
    let gs = golden_section(
        objective,
        lambda0 / 4.0,
        4.0 * lambda0,
        LAMBDA_REL_TOL * lambda0,
        MAX_ITERATIONS,
    )?;
    let body = intersect_hrep(&hd.scaled(gs.x).intersect(&hp, tol)?, tol)?;

    let mut r = ProbeResult::new("conj3", search_verdict(gs.fx, gs.converged));
    r.lambda = Some(gs.x);
    r.residual = Some(gs.fx);
    r.iterations = Some(gs.iterations);
    r.fvector = Some(body.fvector());
    r.checks.insert("converged".into(), gs.converged);
    r.checks.insert(
        "fvector_matches_rectification".into(),
        body.fvector() == rect.fvector(),
    );
    r.volumes.insert("volume_p".into(), volume(&pc, tol)?);
    r.volumes.insert("volume_polar".into(), vd);
    r.volumes.insert("volume_rectified".into(), vr);
    r.volumes
        .insert("volume_intersection".into(), signed_volume(&body));
    r.volumes.insert("lambda_initial".into(), lambda0);
    r.translations.insert("p".into(), t);
    r.hausdorff = Some(hausdorff_estimate(body.vertices(), rect.vertices()));
    Ok(r)
}

/// Evaluates both inequalities attached to the similarity hypothesis R₁[P] = λR₁[P°]:
/// vol(R₁[P]) >= √(32λ/3), and Mahler(R₁[P]) >= 32/3. Neither is inferred from
/// the other. When the hypothesis does not hold numerically the verdict is
/// inconclusive.
///
/// The verdict is `fails` only if the first inequality holds while the second
/// does not (a counterexample to the implication), `holds-numerically` otherwise.
pub fn check_lemma1(p: &Polyhedron, tol: TolerancePolicy) -> Result<ProbeResult> {
    let fit = probe_conjecture1(p, tol)?;
    let mut r = ProbeResult::new("lemma1", Verdict::Inconclusive);
    r.lambda = fit.lambda;
    r.residual = fit.residual;
    r.iterations = fit.iterations;
    r.hausdorff = fit.hausdorff;
    r.translations = fit.translations.clone();
    let hypothesis = fit.verdict == Verdict::HoldsNumerically;
    r.checks.insert("hypothesis_similarity".into(), hypothesis);
    if !hypothesis {
        r.notes.push(format!(
            "hypothesis R1[P] = lambda R1[P polar] not met (similarity fit {}, residual {:.3e})",
            fit.verdict,
            fit.residual.unwrap_or(f64::NAN)
        ));
        return Ok(r);
    }
    let lambda = fit.lambda.expect("fit sets lambda");
    let (pc, _) = centered(p);
    let rect = rectify_polyhedron(&pc, tol)?;
    let vr = volume(&rect, tol)?;
    let bound = (32.0 * lambda / 3.0).sqrt();
    let mahler = mahler_volume(&rect, tol)?;
    let lemma_ineq = vr >= bound;
    let mahler_ineq = mahler >= MAHLER_SYMMETRIC_MIN * (1.0 - tol.rel_eps);
    r.volumes.insert("volume_rectified".into(), vr);
    r.volumes
        .insert("volume_bound_sqrt_32_lambda_over_3".into(), bound);
    r.volumes.insert("mahler_rectified".into(), mahler);
    r.volumes
        .insert("mahler_symmetric_min".into(), MAHLER_SYMMETRIC_MIN);
    r.checks.insert("volume_inequality".into(), lemma_ineq);
    r.checks.insert("mahler_inequality".into(), mahler_ineq);
    r.verdict = if lemma_ineq && !mahler_ineq {
        Verdict::Fails
    } else {
        Verdict::HoldsNumerically
    };
    if !lemma_ineq {
        r.notes.push(
            "volume inequality is false, so the implication holds vacuously; the volume inequality is not scale-invariant".into(),
        );
    }
    Ok(r)
}

/// Mahler volume with a comparison against the conjectured lower bound
/// (32/3 for centrally symmetric bodies, 64/9 otherwise).
pub fn probe_mahler(p: &Polyhedron, tol: TolerancePolicy) -> Result<ProbeResult> {
    let (pc, t) = centered(p);
    let v = volume(&pc, tol)?;
    let dual = polar_dual(&pc, tol)?.dual;
    let vd = volume(&dual, tol)?;
    let mahler = v * vd;
    let symmetric = is_centrally_symmetric(&pc, tol);
    let bound = if symmetric {
        MAHLER_SYMMETRIC_MIN
    } else {
        MAHLER_GENERAL_MIN
    };
    let ok = mahler >= bound * (1.0 - tol.rel_eps);
    let mut r = ProbeResult::new(
        "mahler",
        if ok {
            Verdict::HoldsNumerically
        } else {
            Verdict::Fails
        },
    );
    r.volumes.insert("volume".into(), v);
    r.volumes.insert("volume_polar".into(), vd);
    r.volumes.insert("mahler".into(), mahler);
    r.volumes.insert("lower_bound".into(), bound);
    r.checks.insert("centrally_symmetric".into(), symmetric);
    r.checks.insert("above_lower_bound".into(), ok);
    r.translations.insert("p".into(), t);
    r.fvector = Some(dual.fvector());
    Ok(r)
}
