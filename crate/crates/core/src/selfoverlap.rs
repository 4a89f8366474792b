//! Deciding whether a polygon bounds an immersed disk.
//!
//! A polygon is self-overlapping exactly when its vertex cycle admits a
//! triangulation (triangles spanned by polygon vertices only) in which every
//! triangle is positively oriented and, at every vertex, the triangle angles
//! add up to the polygon's interior angle there rather than wrapping past a
//! full turn. Gluing such triangles along shared diagonals gives a flat disk
//! whose developing map is the immersion.
//!
//! The search is a dynamic program over sub-chains `i..=j` closed by the
//! chord `j → i`. A sub-chain is feasible when it can be triangulated with
//! positive triangles whose angles at the chord ends add up to the sub-chain's
//! own interior angles, and whose fans at the inner vertices close exactly.
//! Because fan angles only grow, the interior angle of any feasible sub-chain
//! at `i` is a partial fan sum and therefore lies in `[0, 2π)`; this makes the
//! angle condition local to one split. The table is cubic in the number of
//! vertices.

use crate::arrangement::{analyze, whitney_index_polygon, CurveAnalysis};
use crate::curve::ClosedPolyCurve;
use crate::error::{Error, Result};
use crate::geom::{self, ccw_angle, Point2};
use serde::Serialize;

/// Angle sums that differ by less than this are treated as equal; a wrapped
/// fan differs by a full turn.
const ANGLE_SLACK: f64 = 1e-6;

/// A triangulated immersed disk bounded by a polygon.
#[derive(Debug, Clone, Serialize)]
pub struct ImmersionWitness {
    /// The polygon in the orientation that was triangulated (reversed for
    /// negative curves); vertex 0 is the base point.
    pub polygon: Vec<Point2>,
    /// Vertex-index triples, each counter-clockwise in `polygon`'s frame,
    /// listed in contraction order.
    pub triangles: Vec<[usize; 3]>,
    /// +1 for a positive (counter-clockwise) curve, −1 for a negative one.
    pub sign: i8,
    /// Triangles covering each face of the analysis the witness was checked
    /// against, indexed by face id. Empty until checked.
    pub coverage: Vec<u32>,
    /// |winding| of the tested curve at each face, matching `coverage`.
    #[serde(skip)]
    pub expected: Vec<u32>,
}

impl ImmersionWitness {
    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        let [a, b, c] = self.triangles[t];
        [self.polygon[a], self.polygon[b], self.polygon[c]]
    }

    /// Number of triangles strictly containing `p`.
    pub fn multiplicity_at(&self, p: Point2) -> u32 {
        (0..self.triangles.len())
            .filter(|&t| {
                let [a, b, c] = self.triangle_points(t);
                geom::orient(a, b, p) > 0.0 && geom::orient(b, c, p) > 0.0 && geom::orient(c, a, p) > 0.0
            })
            .count() as u32
    }

    /// Fill `coverage` from the face samples of `analysis` and record the
    /// expected multiplicities `|wn(f, polygon)|`.
    pub fn attach_coverage(&mut self, analysis: &CurveAnalysis) {
        self.coverage = analysis.faces.iter().map(|f| self.multiplicity_at(f.sample)).collect();
        self.expected = analysis
            .face_windings_of(&self.polygon)
            .into_iter()
            .map(|w| w.unsigned_abs() as u32)
            .collect();
    }

    /// Check orientation of every triangle and, when coverage is attached,
    /// that each face is covered `|wn|` times.
    pub fn check(&self) -> Result<()> {
        for t in 0..self.triangles.len() {
            let [a, b, c] = self.triangle_points(t);
            if geom::orient(a, b, c) <= 0.0 {
                return Err(Error::InconsistentWitness(format!("triangle {t} is not positively oriented")));
            }
        }
        if self.coverage != self.expected {
            return Err(Error::InconsistentWitness(format!(
                "coverage {:?} does not match |winding| {:?}",
                self.coverage, self.expected
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfOverlapReport {
    pub is_self_overlapping: bool,
    pub witness: Option<ImmersionWitness>,
    pub whitney: i64,
}

/// Decide whether a closed curve is self-overlapping, returning a witness
/// whose coverage has been checked against the curve's own faces.
pub fn is_self_overlapping(curve: &ClosedPolyCurve, tol: f64) -> Result<SelfOverlapReport> {
    let analysis = analyze(curve, tol)?;
    Ok(self_overlap_in(curve.points(), &analysis, tol))
}

/// Decide for a polygon whose image lies on the curve of `analysis` (the
/// curve itself or one of its subcurves).
pub fn self_overlap_in(polygon: &[Point2], analysis: &CurveAnalysis, tol: f64) -> SelfOverlapReport {
    let whitney = whitney_index_polygon(polygon).unwrap_or(0);
    let windings = analysis.face_windings_of(polygon);
    let mut witness = decide(polygon, whitney, &windings, tol);
    if let Some(w) = witness.as_mut() {
        w.attach_coverage(analysis);
    }
    SelfOverlapReport {
        is_self_overlapping: witness.is_some(),
        witness,
        whitney,
    }
}

/// Core decision given the polygon's Whitney index and its windings over a
/// set of faces; those give a cheap necessary condition before the table
/// is filled.
pub fn decide(polygon: &[Point2], whitney: i64, windings: &[i64], tol: f64) -> Option<ImmersionWitness> {
    let sign: i8 = match whitney {
        1 => 1,
        -1 => -1,
        _ => return None,
    };
    if windings.iter().any(|&w| w * (sign as i64) < 0) {
        return None;
    }
    let oriented = if sign > 0 { polygon.to_vec() } else { reversed(polygon) };
    let triangles = triangulate_immersed(&oriented, tol)?;
    Some(ImmersionWitness {
        polygon: oriented,
        triangles,
        sign,
        coverage: Vec::new(),
        expected: Vec::new(),
    })
}

/// Reverse a vertex cycle keeping vertex 0 in place.
pub fn reversed(polygon: &[Point2]) -> Vec<Point2> {
    let mut v = polygon.to_vec();
    v[1..].reverse();
    v
}

/// Interior angle of a polygon at vertex `k` (counter-clockwise from the
/// outgoing edge to the incoming one).
pub fn interior_angle(p: &[Point2], k: usize) -> f64 {
    let m = p.len();
    ccw_angle(p[(k + 1) % m] - p[k], p[(k + m - 1) % m] - p[k])
}

/// Find a positive immersed triangulation of a counter-clockwise-intended
/// polygon, returned in contraction order (children before parents, so each
/// triangle is an ear when it is removed). `None` when none exists.
pub fn triangulate_immersed(p: &[Point2], tol: f64) -> Option<Vec<[usize; 3]>> {
    let m = p.len();
    if m < 3 {
        return None;
    }
    let at_first = |i: usize, j: usize| -> f64 {
        if j == i + 1 {
            0.0
        } else {
            ccw_angle(p[i + 1] - p[i], p[j] - p[i])
        }
    };
    let at_last = |i: usize, j: usize| -> f64 {
        if j == i + 1 {
            0.0
        } else {
            ccw_angle(p[i] - p[j], p[j - 1] - p[j])
        }
    };
    let alpha: Vec<f64> = (0..m).map(|k| interior_angle(p, k)).collect();

    // choice[i][j] = apex k of the triangle on chord (i, j), if feasible.
    let mut choice = vec![vec![usize::MAX; m]; m];
    let feasible = |choice: &Vec<Vec<usize>>, i: usize, j: usize| j == i + 1 || choice[i][j] != usize::MAX;
    for len in 2..m {
        for i in 0..m - len {
            let j = i + len;
            let chord = p[j] - p[i];
            let chord_len = chord.norm();
            let target_i = at_first(i, j);
            let target_j = at_last(i, j);
            for k in i + 1..j {
                if !feasible(&choice, i, k) || !feasible(&choice, k, j) {
                    continue;
                }
                // Strictly positive triangle, apex clear of the chord.
                if (p[k] - p[i]).cross(chord) <= tol * chord_len {
                    continue;
                }
                let tri_i = ccw_angle(p[k] - p[i], p[j] - p[i]);
                let tri_j = ccw_angle(p[i] - p[j], p[k] - p[j]);
                let tri_k = ccw_angle(p[j] - p[k], p[i] - p[k]);
                if (at_first(i, k) + tri_i - target_i).abs() > ANGLE_SLACK {
                    continue;
                }
                if (at_last(k, j) + tri_j - target_j).abs() > ANGLE_SLACK {
                    continue;
                }
                if (at_last(i, k) + tri_k + at_first(k, j) - alpha[k]).abs() > ANGLE_SLACK {
                    continue;
                }
                choice[i][j] = k;
                break;
            }
        }
    }
    if !feasible(&choice, 0, m - 1) {
        return None;
    }
    let mut out = Vec::with_capacity(m - 2);
    collect_post_order(&choice, 0, m - 1, &mut out);
    Some(out)
}

fn collect_post_order(choice: &[Vec<usize>], i: usize, j: usize, out: &mut Vec<[usize; 3]>) {
    if j <= i + 1 {
        return;
    }
    let k = choice[i][j];
    collect_post_order(choice, i, k, out);
    collect_post_order(choice, k, j, out);
    out.push([i, k, j]);
}

/// Multiplicity-weighted area of the immersed disk, after checking the
/// witness is consistent.
pub fn interior_area(witness: &ImmersionWitness) -> Result<f64> {
    witness.check()?;
    Ok((0..witness.triangles.len())
        .map(|t| {
            let [a, b, c] = witness.triangle_points(t);
            geom::triangle_area(a, b, c).abs()
        })
        .sum())
}

/// Triangles in an order that peels ears toward the base vertex: each
/// removal replaces two boundary edges by a chord, keeping the remaining
/// boundary a closed curve through vertex 0.
pub fn contraction_order(witness: &ImmersionWitness) -> Vec<[usize; 3]> {
    witness.triangles.clone()
}
