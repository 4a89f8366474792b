//! Closed polygonal curves, their crossings, arcs and subcurve surgery.
//!
//! A [`ClosedPolyCurve`] always stores its base point at index 0. Curve
//! parameters are `(edge, fraction)` pairs ordered lexicographically, where
//! edge `i` runs from `points[i]` to `points[i + 1]` (cyclically).

use crate::error::{Error, Result, Violation};
use crate::geom::{self, Point2, SegmentContact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Crossings whose tangents are closer to parallel than this sine are
/// rejected as tangential.
const MIN_CROSSING_SINE: f64 = 1e-9;

/// Maximum number of perturbation rounds before giving up.
pub const MAX_PERTURB_ROUNDS: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedPolyCurve {
    points: Vec<Point2>,
}

impl ClosedPolyCurve {
    /// Build a curve from a cyclic vertex list; `base_index` selects p₀ and is
    /// rotated to the front.
    pub fn new(points: Vec<Point2>, base_index: usize) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "a closed curve needs at least 3 points, got {}",
                points.len()
            )));
        }
        if base_index >= points.len() {
            return Err(Error::DegenerateInput(format!(
                "base_index {base_index} out of range for {} points",
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput(format!("non-finite coordinate {p:?}")));
        }
        let n = points.len();
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(Error::DegenerateInput(format!(
                    "repeated consecutive point at index {i}"
                )));
            }
        }
        let mut points = points;
        points.rotate_left(base_index);
        Ok(ClosedPolyCurve { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn base_point(&self) -> Point2 {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.points.len();
        (self.points[i % n], self.points[(i + 1) % n])
    }

    pub fn point_at(&self, t: Param) -> Point2 {
        let (a, b) = self.edge(t.edge);
        a.lerp(b, t.frac)
    }

    pub fn tangent(&self, edge: usize) -> Point2 {
        let (a, b) = self.edge(edge);
        b - a
    }

    /// Length of the longer side of the bounding box; the natural unit for
    /// tolerances that scale with the curve.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = geom::bounding_box(&self.points);
        (hi.x - lo.x).max(hi.y - lo.y)
    }

    pub fn signed_area(&self) -> f64 {
        geom::signed_area(&self.points)
    }

    /// Same curve with a different base vertex.
    pub fn rebased(&self, base_index: usize) -> ClosedPolyCurve {
        let mut points = self.points.clone();
        let k = base_index % points.len();
        points.rotate_left(k);
        ClosedPolyCurve { points }
    }

    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> Result<ClosedPolyCurve> {
        ClosedPolyCurve::new(self.points.iter().map(|&p| f(p)).collect(), 0)
    }
}

/// Same image, opposite orientation, same base point.
pub fn reverse_curve(curve: &ClosedPolyCurve) -> ClosedPolyCurve {
    let mut points = curve.points.clone();
    points[1..].reverse();
    ClosedPolyCurve { points }
}

/// A curve parameter: an edge index and a fraction in `[0, 1)` along it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub edge: usize,
    pub frac: f64,
}

impl Param {
    pub fn new(edge: usize, frac: f64) -> Self {
        Param { edge, frac }
    }
}

impl Eq for Param {}

impl PartialOrd for Param {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Param {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edge
            .cmp(&other.edge)
            .then_with(|| self.frac.total_cmp(&other.frac))
    }
}

/// A simple transverse crossing. Ids run from 1 in order of first visit
/// from the base point; id 0 is reserved for p₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub location: Point2,
    pub t1: Param,
    pub t2: Param,
    /// Sign of `tangent(t1) × tangent(t2)`.
    pub sign: i8,
}

/// Find every self-intersection of a curve, failing on anything that is not a
/// simple transverse crossing of two edge interiors.
pub fn detect_crossings(curve: &ClosedPolyCurve, tol: f64) -> Result<Vec<Crossing>> {
    let pts = &curve.points;
    let n = pts.len();
    let mut raw: Vec<(Param, Param, Point2, f64)> = Vec::new();
    for i in 0..n {
        let (a0, a1) = curve.edge(i);
        for j in (i + 1)..n {
            let (b0, b1) = curve.edge(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Consecutive edges share a vertex; they may only meet there.
                let (far_a, far_b) = if j == i + 1 { (a0, b1) } else { (a1, b0) };
                let back_a = geom::point_segment_distance(far_b, a0, a1) <= tol;
                let back_b = geom::point_segment_distance(far_a, b0, b1) <= tol;
                if back_a || back_b {
                    return Err(Error::NormalityViolation {
                        kind: Violation::CollinearOverlap,
                        edges: (i, j),
                    });
                }
                continue;
            }
            match geom::segment_contact(a0, a1, b0, b1, tol) {
                SegmentContact::Disjoint => {}
                SegmentContact::Degenerate => {
                    let kind = classify_degeneracy(a0, a1, b0, b1, tol);
                    return Err(Error::NormalityViolation { kind, edges: (i, j) });
                }
                SegmentContact::Proper { s, t, at } => {
                    let da = a1 - a0;
                    let db = b1 - b0;
                    let sine = da.cross(db) / (da.norm() * db.norm());
                    if sine.abs() <= MIN_CROSSING_SINE {
                        return Err(Error::NormalityViolation {
                            kind: Violation::Tangential,
                            edges: (i, j),
                        });
                    }
                    raw.push((Param::new(i, s), Param::new(j, t), at, sine));
                }
            }
        }
    }
    raw.sort_by_key(|a| a.0);
    for (k, a) in raw.iter().enumerate() {
        for b in &raw[k + 1..] {
            if a.2.dist(b.2) <= tol {
                return Err(Error::NormalityViolation {
                    kind: Violation::TriplePoint,
                    edges: (a.0.edge, b.0.edge),
                });
            }
        }
    }
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(k, (t1, t2, location, sine))| Crossing {
            id: k + 1,
            location,
            t1,
            t2,
            sign: if sine > 0.0 { 1 } else { -1 },
        })
        .collect())
}

fn classify_degeneracy(a0: Point2, a1: Point2, b0: Point2, b1: Point2, tol: f64) -> Violation {
    let on = |p: Point2, q0: Point2, q1: Point2| geom::point_segment_distance(p, q0, q1) <= tol;
    let da = a1 - a0;
    let db = b1 - b0;
    let parallel = (da.cross(db) / (da.norm() * db.norm())).abs() <= 1e-9;
    if parallel {
        Violation::CollinearOverlap
    } else if on(a0, b0, b1) || on(a1, b0, b1) || on(b0, a0, a1) || on(b1, a0, a1) {
        Violation::VertexOnEdge
    } else {
        Violation::Tangential
    }
}

/// Count proper crossings without validating normality. Degenerate contacts
/// are ignored. Used for intermediate frames of a homotopy, which are not
/// required to be normal.
pub fn count_proper_crossings(points: &[Point2], tol: f64) -> usize {
    let n = points.len();
    if n < 4 {
        return 0;
    }
    let mut count = 0;
    for i in 0..n {
        let (a0, a1) = (points[i], points[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (b0, b1) = (points[j], points[(j + 1) % n]);
            if let SegmentContact::Proper { .. } = geom::segment_contact(a0, a1, b0, b1, tol) {
                count += 1;
            }
        }
    }
    count
}

/// True when the curve passes [`detect_crossings`].
pub fn is_normal(curve: &ClosedPolyCurve, tol: f64) -> bool {
    detect_crossings(curve, tol).is_ok()
}

/// Jitter offending vertices until the curve is normal.
///
/// Each vertex is displaced at most `epsilon` from its original position, so
/// the result is within Hausdorff distance `epsilon` of the input. The same
/// `seed` always yields the same output.
pub fn perturb_to_normal(
    curve: &ClosedPolyCurve,
    epsilon: f64,
    seed: u64,
    tol: f64,
) -> Result<ClosedPolyCurve> {
    let mut err = match detect_crossings(curve, tol) {
        Ok(_) => return Ok(curve.clone()),
        Err(e @ Error::NormalityViolation { .. }) => e,
        Err(e) => return Err(e),
    };
    if epsilon <= 0.0 {
        return Err(Error::PerturbationFailed { rounds: 0 });
    }
    let original = curve.points.clone();
    let n = original.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = original.clone();
    for _ in 0..MAX_PERTURB_ROUNDS {
        let Error::NormalityViolation { edges: (i, j), .. } = err else {
            unreachable!()
        };
        for v in [i, (i + 1) % n, j, (j + 1) % n] {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = epsilon * rng.gen_range(0.5..1.0);
            current[v] = original[v] + Point2::new(angle.cos(), angle.sin()) * r;
        }
        let candidate = match ClosedPolyCurve::new(current.clone(), 0) {
            Ok(c) => c,
            Err(_) => continue,
        };
        match detect_crossings(&candidate, tol) {
            Ok(_) => return Ok(candidate),
            Err(e @ Error::NormalityViolation { .. }) => err = e,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PerturbationFailed { rounds: MAX_PERTURB_ROUNDS })
}

/// Repeatedly delete spikes `a → v → a` and exact back-tracks, which a
/// homotopy can retract without sweeping any area. Returns the reduced point
/// cycle and the position of the original base vertex (or of its nearest
/// surviving successor).
pub fn cancel_spurs(points: &[Point2], tol: f64) -> (Vec<Point2>, usize) {
    let mut pts: Vec<(Point2, bool)> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i == 0))
        .collect();
    // Merge coincident neighbours first.
    let mut changed = true;
    while changed && pts.len() >= 2 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if pts[i].0.dist(pts[j].0) <= tol {
                let base = pts[i].1 || pts[j].1;
                pts[i].1 = base;
                pts.remove(j);
                changed = true;
                break;
            }
        }
        if changed {
            continue;
        }
        let n = pts.len();
        if n == 2 {
            // A doubled segment retracts onto its base end.
            let keep = if pts[1].1 { 1 } else { 0 };
            let p = pts[keep];
            pts = vec![(p.0, true)];
            break;
        }
        if n < 3 {
            break;
        }
        for i in 0..n {
            let prev = pts[(i + n - 1) % n].0;
            let cur = pts[i].0;
            let next = pts[(i + 1) % n].0;
            let d_in = cur - prev;
            let d_out = next - cur;
            // Full reversal at `cur`: the path doubles back on itself.
            let folds = d_in.cross(d_out).abs() <= tol * d_in.norm().max(d_out.norm())
                && d_in.dot(d_out) < 0.0;
            if folds {
                let base = pts[i].1;
                pts.remove(i);
                if base && !pts.is_empty() {
                    let k = i % pts.len();
                    pts[k].1 = true;
                }
                changed = true;
                break;
            }
        }
    }
    let base = pts.iter().position(|p| p.1).unwrap_or(0);
    (pts.into_iter().map(|p| p.0).collect(), base)
}

/// Pull apart vertices that occur more than once in a cycle: each occurrence
/// moves `delta` into its own corner, along the bisector of its two edges.
/// The rule does not depend on traversal direction, so reversing the input
/// reverses the output.
pub fn separate_repeated_vertices(points: &[Point2], delta: f64, tol: f64) -> Vec<Point2> {
    let n = points.len();
    if n < 3 {
        return points.to_vec();
    }
    (0..n)
        .map(|i| {
            let p = points[i];
            let repeated = (0..n).any(|j| j != i && points[j].dist(p) <= tol);
            if !repeated {
                return p;
            }
            let a = (points[(i + n - 1) % n] - p).normalized();
            let b = (points[(i + 1) % n] - p).normalized();
            let mut dir = a + b;
            if dir.norm() <= 1e-12 {
                // A straight pass: step off to a fixed side of the line.
                dir = a.perp();
                if dir.x < 0.0 || (dir.x == 0.0 && dir.y < 0.0) {
                    dir = dir * -1.0;
                }
            }
            p + dir.normalized() * delta
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Arcs and subcurves

/// A maximal piece of the curve between consecutive crossing visits (or the
/// base point).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub id: usize,
    pub from_crossing: usize,
    pub to_crossing: usize,
    pub polyline: Vec<Point2>,
    pub start: Param,
    pub end: Param,
}

/// A curve cut into arcs at every crossing visit.
#[derive(Debug, Clone)]
pub struct ArcSet {
    arcs: Vec<Arc>,
    crossing_count: usize,
}

impl ArcSet {
    pub fn build(curve: &ClosedPolyCurve, crossings: &[Crossing]) -> ArcSet {
        // Every visit of every crossing, in curve order.
        let mut cuts: Vec<(Param, usize, Point2)> = crossings
            .iter()
            .flat_map(|c| [(c.t1, c.id, c.location), (c.t2, c.id, c.location)])
            .collect();
        cuts.sort_by_key(|a| a.0);
        let n = curve.len();
        let mut arcs = Vec::with_capacity(cuts.len() + 1);
        let mut from = (Param::new(0, 0.0), 0usize, curve.base_point());
        let push_arc = |arcs: &mut Vec<Arc>, from: (Param, usize, Point2), to: (Param, usize, Point2)| {
            let mut polyline = vec![from.2];
            for e in (from.0.edge + 1)..=to.0.edge.min(n - 1) {
                if Param::new(e, 0.0) < to.0 {
                    polyline.push(curve.points[e]);
                }
            }
            polyline.push(to.2);
            arcs.push(Arc {
                id: arcs.len(),
                from_crossing: from.1,
                to_crossing: to.1,
                polyline,
                start: from.0,
                end: to.0,
            });
        };
        for &cut in &cuts {
            push_arc(&mut arcs, from, cut);
            from = cut;
        }
        push_arc(&mut arcs, from, (Param::new(n, 0.0), 0, curve.base_point()));
        ArcSet {
            arcs,
            crossing_count: crossings.len(),
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_count
    }

    /// The whole curve as a subcurve rooted at p₀.
    pub fn whole(&self) -> SubcurveRef {
        SubcurveRef {
            arcs: (0..self.arcs.len()).collect(),
            root: 0,
        }
    }

    /// Whether traversing arc `a` then arc `b` follows the original curve
    /// straight through their common junction.
    pub fn is_pass_through(&self, a: usize, b: usize) -> bool {
        b == (a + 1) % self.arcs.len()
    }
}

/// A closed subcurve given as a cyclic sequence of arc ids, together with the
/// crossing (or 0 for p₀) it is rooted at.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubcurveRef {
    pub arcs: Vec<usize>,
    pub root: usize,
}

impl SubcurveRef {
    /// Rotation starting at the smallest arc id; unique per subcurve.
    pub fn canonical_key(&self) -> Vec<usize> {
        let pos = self
            .arcs
            .iter()
            .enumerate()
            .min_by_key(|(_, &a)| a)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut k = self.arcs.clone();
        k.rotate_left(pos);
        k
    }

    /// Crossing id at the junction after each arc.
    pub fn junctions(&self, set: &ArcSet) -> Vec<usize> {
        self.arcs.iter().map(|&a| set.arcs[a].to_crossing).collect()
    }

    /// Crossings where both strands belong to this subcurve, ascending.
    pub fn self_crossings(&self, set: &ArcSet) -> Vec<usize> {
        let mut seen = vec![0u8; set.crossing_count + 1];
        for c in self.junctions(set) {
            seen[c] += 1;
        }
        (1..seen.len()).filter(|&c| seen[c] == 2).collect()
    }

    /// Every crossing id touched by this subcurve (either strand), ascending.
    pub fn touched_crossings(&self, set: &ArcSet) -> Vec<usize> {
        let mut v: Vec<usize> = self.junctions(set).into_iter().filter(|&c| c != 0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_base(&self, set: &ArcSet) -> bool {
        self.arcs.iter().any(|&a| set.arcs[a].from_crossing == 0)
    }

    /// Position of the junction at the root (the junction after `arcs[pos]`).
    fn root_position(&self, set: &ArcSet) -> usize {
        let js = self.junctions(set);
        js.iter()
            .position(|&c| c == self.root)
            .unwrap_or(js.len() - 1)
    }

    /// Split at a self-crossing into `(inner, outer)`: `outer` keeps this
    /// subcurve's root, `inner` is rooted at `crossing`.
    pub fn split_at_crossing(&self, set: &ArcSet, crossing: usize) -> Result<(SubcurveRef, SubcurveRef)> {
        let js = self.junctions(set);
        let pos: Vec<usize> = js
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == crossing)
            .map(|(i, _)| i)
            .collect();
        if crossing == 0 || pos.len() != 2 {
            return Err(Error::NotASelfCrossing(crossing));
        }
        let (j1, j2) = (pos[0], pos[1]);
        let len = self.arcs.len();
        let piece_a: Vec<usize> = (j1 + 1..=j2).map(|k| self.arcs[k]).collect();
        let piece_b: Vec<usize> = (j2 + 1..j1 + 1 + len).map(|k| self.arcs[k % len]).collect();
        let r = self.root_position(set);
        let root_in_a = j1 < r && r < j2;
        let (outer, inner) = if root_in_a { (piece_a, piece_b) } else { (piece_b, piece_a) };
        Ok((
            SubcurveRef { arcs: inner, root: crossing },
            SubcurveRef { arcs: outer, root: self.root },
        ))
    }

    /// Rotate so that the arc leaving the root comes first.
    pub fn rooted_arcs(&self, set: &ArcSet) -> Vec<usize> {
        let r = self.root_position(set);
        let mut v = self.arcs.clone();
        let k = (r + 1) % v.len();
        v.rotate_left(k);
        v
    }

    /// The polygon traced by this subcurve, starting at its root. Crossing
    /// points the subcurve passes straight through are omitted, so every
    /// vertex is either an original curve vertex or a turning junction.
    pub fn polygon(&self, set: &ArcSet) -> Vec<Point2> {
        let arcs = self.rooted_arcs(set);
        let m = arcs.len();
        let mut out = Vec::new();
        for (k, &a) in arcs.iter().enumerate() {
            let prev = arcs[(k + m - 1) % m];
            let arc = &set.arcs[a];
            let keep_start = k == 0 || !set.is_pass_through(prev, a) || arc.from_crossing == 0;
            if keep_start {
                out.push(arc.polyline[0]);
            }
            let inner = &arc.polyline[1..arc.polyline.len() - 1];
            out.extend_from_slice(inner);
        }
        // Guard against duplicate consecutive points from zero-length arcs.
        out.dedup();
        if out.len() > 1 && out[0] == out[out.len() - 1] {
            out.pop();
        }
        out
    }

    pub fn to_curve(&self, set: &ArcSet) -> Result<ClosedPolyCurve> {
        ClosedPolyCurve::new(self.polygon(set), 0)
    }
}

// ---------------------------------------------------------------------------
// Documents

/// JSON curve document: `{"points": [[x,y],...], "base_index": 0}` or an open
/// polyline `{"points": [...], "closed": false}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDocument {
    pub points: Vec<Point2>,
    #[serde(default)]
    pub base_index: usize,
    #[serde(default = "default_closed")]
    pub closed: bool,
}

fn default_closed() -> bool {
    true
}

/// A parsed curve plus notes about adjustments made while loading.
#[derive(Debug, Clone)]
pub struct LoadedCurve {
    pub curve: ClosedPolyCurve,
    pub warnings: Vec<String>,
}

pub fn parse_document(source: &str) -> Result<CurveDocument> {
    Ok(serde_json::from_str(source)?)
}

/// Parse and validate a closed curve document.
pub fn load_curve(source: &str) -> Result<ClosedPolyCurve> {
    load_curve_with_report(source, geom::DEFAULT_TOLERANCE).map(|l| l.curve)
}

/// Like [`load_curve`], but relocates a base vertex that touches another edge
/// and reports it.
pub fn load_curve_with_report(source: &str, tol: f64) -> Result<LoadedCurve> {
    let doc = parse_document(source)?;
    if !doc.closed {
        return Err(Error::Parse("expected a closed curve document".into()));
    }
    let curve = ClosedPolyCurve::new(doc.points, doc.base_index)?;
    let mut warnings = Vec::new();
    let n = curve.len();
    let touches = |v: usize| {
        let p = curve.points[v];
        (0..n).any(|e| e != v && (e + 1) % n != v && {
            let (a, b) = curve.edge(e);
            geom::point_segment_distance(p, a, b) <= tol
        })
    };
    if touches(0) {
        if let Some(v) = (1..n).find(|&v| !touches(v)) {
            warnings.push(format!(
                "base point relocated from index {} to index {}",
                doc.base_index,
                (doc.base_index + v) % n
            ));
            return Ok(LoadedCurve {
                curve: curve.rebased(v),
                warnings,
            });
        }
    }
    Ok(LoadedCurve { curve, warnings })
}

/// Parse an open polyline document (the `closed` flag may be omitted).
pub fn load_open_polyline(source: &str) -> Result<Vec<Point2>> {
    let doc = parse_document(source)?;
    if doc.points.len() < 2 {
        return Err(Error::DegenerateInput("open polyline needs at least 2 points".into()));
    }
    Ok(doc.points)
}

pub fn curve_to_document(curve: &ClosedPolyCurve) -> CurveDocument {
    CurveDocument {
        points: curve.points.clone(),
        base_index: 0,
        closed: true,
    }
}

// ---------------------------------------------------------------------------
// Concatenation of open curves

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinPolicy {
    /// The polylines must start and end at common points.
    SharedEndpoints,
    /// Differing endpoints are joined by straight segments.
    StraightLineJoin,
}

/// Close `alpha` followed by reversed `beta` into a curve based at
/// `alpha[0]`, without normalising. Coincident joints are merged.
pub fn concatenate_raw(alpha: &[Point2], beta: &[Point2], join: JoinPolicy, tol: f64) -> Result<Vec<Point2>> {
    if alpha.len() < 2 || beta.len() < 2 {
        return Err(Error::DegenerateInput(
            "each open polyline needs at least 2 points".into(),
        ));
    }
    let start_shared = alpha[0].dist(beta[0]) <= tol;
    let end_shared = alpha[alpha.len() - 1].dist(beta[beta.len() - 1]) <= tol;
    if join == JoinPolicy::SharedEndpoints && !(start_shared && end_shared) {
        return Err(Error::DegenerateInput(
            "shared-endpoints join requires common start and end points".into(),
        ));
    }
    let mut pts: Vec<Point2> = alpha.to_vec();
    let mut back: Vec<Point2> = beta.iter().rev().copied().collect();
    if end_shared {
        back.remove(0);
    }
    if start_shared {
        back.pop();
    }
    pts.extend(back);
    pts.dedup_by(|a, b| a.dist(*b) <= tol);
    while pts.len() > 1 && pts[0].dist(pts[pts.len() - 1]) <= tol {
        pts.pop();
    }
    Ok(pts)
}

/// Close two open polylines into a normal curve: `alpha` forward, then
/// `beta` backward. Non-normal results are perturbed within `epsilon`.
pub fn concatenate_open(
    alpha: &[Point2],
    beta: &[Point2],
    join: JoinPolicy,
    epsilon: f64,
    seed: u64,
    tol: f64,
) -> Result<ClosedPolyCurve> {
    let pts = concatenate_raw(alpha, beta, join, tol)?;
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(
            "concatenation collapses to fewer than 3 points".into(),
        ));
    }
    let curve = ClosedPolyCurve::new(pts, 0)?;
    perturb_to_normal(&curve, epsilon, seed, tol)
}
