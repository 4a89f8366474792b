//! The planar subdivision induced by a normal curve: a half-edge structure
//! whose faces carry areas and winding numbers.

use crate::curve::{detect_crossings, ArcSet, ClosedPolyCurve, Crossing};
use crate::error::{Error, Result};
use crate::geom::{self, Point2};
use serde::Serialize;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    pub face: usize,
    /// True when the half-edge runs in the curve's direction.
    pub forward: bool,
}

/// Doubly connected edge list over curve corners and crossings. Half-edges
/// `2k` and `2k + 1` are the two directions of segment `k`, and `2k` follows
/// the curve.
#[derive(Debug, Clone)]
pub struct HalfEdgeStructure {
    pub vertices: Vec<Point2>,
    pub half_edges: Vec<HalfEdge>,
    /// One half-edge cycle per face.
    pub cycles: Vec<Vec<usize>>,
}

impl HalfEdgeStructure {
    pub fn segment_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn endpoints(&self, h: usize) -> (Point2, Point2) {
        let he = &self.half_edges[h];
        (self.vertices[he.origin], self.vertices[self.half_edges[he.twin].origin])
    }

    pub fn cycle_polygon(&self, cycle: &[usize]) -> Vec<Point2> {
        cycle.iter().map(|&h| self.vertices[self.half_edges[h].origin]).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Face {
    pub id: usize,
    #[serde(skip)]
    pub boundary: Vec<usize>,
    /// Zero for the outer face.
    pub area: f64,
    pub winding: i64,
    pub is_outer: bool,
    /// A point strictly inside the face.
    pub sample: Point2,
}

/// A curve with its crossings, arcs, subdivision, faces and invariants.
#[derive(Debug, Clone)]
pub struct CurveAnalysis {
    pub curve: ClosedPolyCurve,
    pub crossings: Vec<Crossing>,
    pub arcs: ArcSet,
    pub arrangement: HalfEdgeStructure,
    pub faces: Vec<Face>,
    pub whitney: i64,
    pub winding_area: f64,
    /// Tolerance the analysis was built with.
    pub tol: f64,
}

impl CurveAnalysis {
    pub fn outer_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_outer)
    }

    /// Winding number of an arbitrary polygon (e.g. a subcurve) about each
    /// face's sample point.
    pub fn face_windings_of(&self, polygon: &[Point2]) -> Vec<i64> {
        self.faces
            .iter()
            .map(|f| winding_number_polygon(f.sample, polygon))
            .collect()
    }

    /// `Σ |w(f)| · area(f)` over faces, summed in face order.
    pub fn weighted_area(&self, weights: &[i64]) -> f64 {
        self.faces
            .iter()
            .zip(weights)
            .map(|(f, &w)| w.unsigned_abs() as f64 * f.area)
            .sum()
    }
}

/// Validate, find crossings and build the full analysis of a curve.
pub fn analyze(curve: &ClosedPolyCurve, tol: f64) -> Result<CurveAnalysis> {
    let crossings = detect_crossings(curve, tol)?;
    let mut arrangement = build_arrangement(curve, &crossings)?;
    let mut faces = extract_faces(&mut arrangement)?;
    face_windings(&mut faces, curve);
    let whitney = whitney_index(curve)?;
    let arcs = ArcSet::build(curve, &crossings);
    let mut analysis = CurveAnalysis {
        curve: curve.clone(),
        crossings,
        arcs,
        arrangement,
        faces,
        whitney,
        winding_area: 0.0,
        tol,
    };
    analysis.winding_area = winding_area(&analysis);
    Ok(analysis)
}

/// Build the half-edge structure of a normal curve and check Euler's
/// relation.
pub fn build_arrangement(curve: &ClosedPolyCurve, crossings: &[Crossing]) -> Result<HalfEdgeStructure> {
    let n = curve.len();
    let mut vertices: Vec<Point2> = curve.points().to_vec();
    vertices.extend(crossings.iter().map(|c| c.location));
    let crossing_vertex = |id: usize| n + id - 1;

    // Crossing visits per edge, ordered along the edge.
    let mut on_edge: Vec<Vec<(f64, usize)>> = vec![Vec::new(); n];
    for c in crossings {
        on_edge[c.t1.edge].push((c.t1.frac, crossing_vertex(c.id)));
        on_edge[c.t2.edge].push((c.t2.frac, crossing_vertex(c.id)));
    }
    let mut half_edges = Vec::new();
    for (e, visits) in on_edge.iter_mut().enumerate() {
        visits.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut chain = vec![e];
        chain.extend(visits.iter().map(|v| v.1));
        chain.push((e + 1) % n);
        for w in chain.windows(2) {
            let k = half_edges.len();
            half_edges.push(HalfEdge { origin: w[0], twin: k + 1, next: usize::MAX, face: usize::MAX, forward: true });
            half_edges.push(HalfEdge { origin: w[1], twin: k, next: usize::MAX, face: usize::MAX, forward: false });
        }
    }

    // Rotation system: outgoing half-edges sorted counter-clockwise.
    let mut outgoing: Vec<Vec<(f64, usize)>> = vec![Vec::new(); vertices.len()];
    for (h, he) in half_edges.iter().enumerate() {
        let a = vertices[he.origin];
        let b = vertices[half_edges[he.twin].origin];
        let d = b - a;
        outgoing[he.origin].push((d.y.atan2(d.x), h));
    }
    for out in &mut outgoing {
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    // Keeping the face on the left, leave each vertex along the first
    // outgoing half-edge clockwise from the one we arrived by.
    for h in 0..half_edges.len() {
        let twin = half_edges[h].twin;
        let v = half_edges[twin].origin;
        let out = &outgoing[v];
        let t = out.iter().position(|&(_, g)| g == twin).expect("twin is outgoing at v");
        half_edges[h].next = out[(t + out.len() - 1) % out.len()].1;
    }

    let mut cycles = Vec::new();
    for start in 0..half_edges.len() {
        if half_edges[start].face != usize::MAX {
            continue;
        }
        let f = cycles.len();
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            if half_edges[h].face != usize::MAX {
                return Err(Error::Topology("half-edge visited by two faces".into()));
            }
            half_edges[h].face = f;
            cycle.push(h);
            h = half_edges[h].next;
            if h == start {
                break;
            }
        }
        cycles.push(cycle);
    }

    let v = vertices.len() as i64;
    let e = (half_edges.len() / 2) as i64;
    let f = cycles.len() as i64;
    if v - e + f != 2 {
        return Err(Error::Topology(format!("Euler check failed: V={v} E={e} F={f}")));
    }
    if cycles.len() != crossings.len() + 2 {
        return Err(Error::Topology(format!(
            "expected {} faces for {} crossings, found {}",
            crossings.len() + 2,
            crossings.len(),
            cycles.len()
        )));
    }
    Ok(HalfEdgeStructure { vertices, half_edges, cycles })
}

/// Turn half-edge cycles into faces with areas and interior samples; the
/// outer face (the only clockwise cycle) becomes face 0. Cycles and
/// half-edge face labels are renumbered to match face ids.
fn extract_faces(dcel: &mut HalfEdgeStructure) -> Result<Vec<Face>> {
    let areas: Vec<f64> = dcel
        .cycles
        .iter()
        .map(|c| geom::signed_area(&dcel.cycle_polygon(c)))
        .collect();
    let outer: Vec<usize> = (0..areas.len()).filter(|&i| areas[i] < 0.0).collect();
    if outer.len() != 1 {
        return Err(Error::Topology(format!(
            "expected exactly one clockwise boundary cycle, found {}",
            outer.len()
        )));
    }
    let outer = outer[0];
    let order: Vec<usize> = std::iter::once(outer).chain((0..areas.len()).filter(|&i| i != outer)).collect();
    dcel.cycles = order.iter().map(|&c| dcel.cycles[c].clone()).collect();
    for (id, cycle) in dcel.cycles.iter().enumerate() {
        for &h in cycle {
            dcel.half_edges[h].face = id;
        }
    }
    let mut faces = Vec::with_capacity(areas.len());
    for (id, &c) in order.iter().enumerate() {
        let boundary = dcel.cycles[id].clone();
        let sample = face_sample_points(dcel, &boundary, 1)[0];
        faces.push(Face {
            id,
            area: if c == outer { 0.0 } else { areas[c] },
            winding: 0,
            is_outer: c == outer,
            boundary,
            sample,
        });
    }
    Ok(faces)
}

/// Points strictly inside the face to the left of a boundary cycle, taken
/// beside the midpoints of its `k` longest half-edges. Each point is offset
/// by less than the distance from the midpoint to any other segment, so it
/// lies in the face adjacent to that half-edge.
pub fn face_sample_points(dcel: &HalfEdgeStructure, boundary: &[usize], k: usize) -> Vec<Point2> {
    let mut by_len: Vec<(f64, usize)> = boundary
        .iter()
        .map(|&h| {
            let (a, b) = dcel.endpoints(h);
            (a.dist(b), h)
        })
        .collect();
    by_len.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    by_len
        .iter()
        .cycle()
        .take(k.max(1))
        .enumerate()
        .map(|(round, &(len, h))| {
            let (a, b) = dcel.endpoints(h);
            // Later rounds on the same edge use other positions along it.
            let t = match round / by_len.len() {
                0 => 0.5,
                1 => 0.3,
                _ => 0.7,
            };
            let m = a.lerp(b, t);
            let seg = h / 2;
            let mut clearance = 0.25 * len;
            for s in 0..dcel.segment_count() {
                if s == seg {
                    continue;
                }
                let (p, q) = dcel.endpoints(2 * s);
                clearance = clearance.min(geom::point_segment_distance(m, p, q));
            }
            m + (b - a).normalized().perp() * (0.5 * clearance)
        })
        .collect()
}

/// Winding number of a closed polygon about `p` (assumed off the polygon).
pub fn winding_number_polygon(p: Point2, polygon: &[Point2]) -> i64 {
    let n = polygon.len();
    let mut wn = 0;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && geom::orient(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && geom::orient(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Winding number of the curve about `point`; fails if the point is within
/// `tol` of the curve.
pub fn winding_number_at(point: Point2, curve: &ClosedPolyCurve, tol: f64) -> Result<i64> {
    let n = curve.len();
    for i in 0..n {
        let (a, b) = curve.edge(i);
        if geom::point_segment_distance(point, a, b) <= tol {
            return Err(Error::OnCurve);
        }
    }
    Ok(winding_number_polygon(point, curve.points()))
}

/// Assign each face the curve's winding number at its sample point.
pub fn face_windings(faces: &mut [Face], curve: &ClosedPolyCurve) {
    for f in faces.iter_mut() {
        f.winding = if f.is_outer { 0 } else { winding_number_polygon(f.sample, curve.points()) };
    }
}

/// `W(C) = Σ |wn(f)| · area(f)` over bounded faces.
pub fn winding_area(analysis: &CurveAnalysis) -> f64 {
    analysis
        .faces
        .iter()
        .map(|f| f.winding.unsigned_abs() as f64 * f.area)
        .sum()
}

/// Turning number of a closed polygon, from its exterior angles.
pub fn whitney_index_polygon(points: &[Point2]) -> Result<i64> {
    let n = points.len();
    let mut total = 0.0;
    for i in 0..n {
        let prev = points[(i + n - 1) % n];
        let cur = points[i];
        let next = points[(i + 1) % n];
        total += geom::turn_angle(cur - prev, next - cur);
    }
    let turns = total / TAU;
    let rounded = turns.round();
    let residual = (turns - rounded).abs();
    if residual >= 0.25 {
        return Err(Error::NumericalInstability { residual });
    }
    Ok(rounded as i64)
}

pub fn whitney_index(curve: &ClosedPolyCurve) -> Result<i64> {
    whitney_index_polygon(curve.points())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::reverse_curve;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn curve(pts: &[(f64, f64)]) -> ClosedPolyCurve {
        ClosedPolyCurve::new(pts.iter().map(|&(x, y)| p(x, y)).collect(), 0).unwrap()
    }

    /// Two CCW circuits around the origin joined into one curve: an outer
    /// square and an inner square, linked by crossing strands.
    fn doubled_loop() -> ClosedPolyCurve {
        curve(&[
            (0.0, -3.0),
            (3.0, -3.0),
            (3.0, 3.0),
            (-3.0, 3.0),
            (-3.0, -3.0),
            (-1.0, -3.5),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
            (-1.0, -1.0),
        ])
    }

    #[test]
    fn square_faces() {
        let a = analyze(&curve(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]), 1e-9).unwrap();
        assert_eq!(a.faces.len(), 2);
        assert_eq!(a.faces[0].winding, 0);
        assert!(a.faces[0].is_outer);
        assert_eq!(a.faces[1].winding, 1);
        assert_eq!(a.faces[1].area, 1.0);
        assert_eq!(a.winding_area, 1.0);
        assert_eq!(a.whitney, 1);
    }

    #[test]
    fn bowtie_faces() {
        let a = analyze(&curve(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]), 1e-9).unwrap();
        assert_eq!(a.faces.len(), 3);
        let mut w: Vec<i64> = a.bounded_faces().map(|f| f.winding).collect();
        w.sort();
        assert_eq!(w, vec![-1, 1]);
        assert!((a.winding_area - 2.0).abs() < 1e-12);
        assert_eq!(a.whitney, 0);
    }

    #[test]
    fn doubled_loop_faces() {
        let c = doubled_loop();
        let a = analyze(&c, 1e-9).unwrap();
        assert_eq!(a.crossings.len(), 1);
        let inner = a.bounded_faces().max_by_key(|f| f.winding).unwrap();
        assert_eq!(inner.winding, 2);
        // Inner square area 4; everything else inside the outer square has
        // winding 1.
        let total: f64 = a.bounded_faces().map(|f| f.area).sum();
        let expected = 2.0 * inner.area + (total - inner.area);
        assert!((a.winding_area - expected).abs() < 1e-9);
        assert_eq!(a.whitney, 2);
    }

    #[test]
    fn winding_number_queries() {
        let sq = curve(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        assert_eq!(winding_number_at(p(100., 100.), &sq, 1e-9).unwrap(), 0);
        assert_eq!(winding_number_at(p(0.5, 0.5), &sq, 1e-9).unwrap(), 1);
        assert!(matches!(winding_number_at(p(0.5, 0.0), &sq, 1e-9), Err(Error::OnCurve)));
        let bow = curve(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]);
        let left = winding_number_at(p(0.3, 1.0), &bow, 1e-9).unwrap();
        let right = winding_number_at(p(1.7, 1.0), &bow, 1e-9).unwrap();
        assert_eq!(left * right, -1);
    }

    #[test]
    fn whitney_signs() {
        let sq = curve(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        assert_eq!(whitney_index(&sq).unwrap(), 1);
        assert_eq!(whitney_index(&reverse_curve(&sq)).unwrap(), -1);
    }

    #[test]
    fn adjacent_faces_differ_by_one() {
        let a = analyze(&doubled_loop(), 1e-9).unwrap();
        let d = &a.arrangement;
        for h in (0..d.half_edges.len()).step_by(2) {
            let left = d.half_edges[h].face;
            let right = d.half_edges[h + 1].face;
            // Crossing a forward strand from right to left raises the winding.
            assert_eq!(a.faces[left].winding - a.faces[right].winding, 1);
        }
    }
}
