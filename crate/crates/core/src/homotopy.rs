//! Minimum homotopy area by decomposition into self-overlapping subcurves.
//!
//! Splitting a subcurve at one of its self-crossings yields two closed
//! subcurves. The minimum area of a curve is its winding area when it is
//! self-overlapping, and otherwise the least total over all splits. Areas
//! are carried as per-face multiplicity vectors of the full curve's
//! arrangement, so every route to the same decomposition produces the same
//! number bit for bit.

use crate::arrangement::{analyze, whitney_index_polygon, CurveAnalysis};
use crate::curve::{
    cancel_spurs, count_proper_crossings, perturb_to_normal, separate_repeated_vertices, ArcSet, ClosedPolyCurve,
    SubcurveRef,
};
use crate::error::{Error, Result};
use crate::geom::{self, Point2};
use crate::moves::MoveKind;
use crate::selfoverlap::{decide, ImmersionWitness};
use crate::Config;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Face multiplicities, indexed by face id of the full curve.
pub type Profile = Vec<u32>;

fn add_profiles(a: &[u32], b: &[u32]) -> Profile {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `Σ profile(f) · area(f)`, always summed in face order.
pub fn profile_area(analysis: &CurveAnalysis, profile: &[u32]) -> f64 {
    analysis
        .faces
        .iter()
        .zip(profile)
        .map(|(f, &m)| m as f64 * f.area)
        .sum()
}

/// One self-overlapping piece of a decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub subcurve: SubcurveRef,
    /// Crossing id the piece contracts to (0 for the base point).
    pub root: usize,
    pub sign: i8,
    /// `|wn(f, piece)|` over the full curve's faces.
    pub profile: Profile,
    pub winding_area: f64,
    #[serde(skip)]
    pub witness: ImmersionWitness,
}

/// Self-overlapping pieces ordered so that each piece's root lies only on
/// pieces before it. Contraction runs from the last piece to the first.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// Roots of all pieces, ascending; always contains 0.
    pub fn anchor_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pieces.iter().map(|p| p.root).collect();
        v.sort_unstable();
        v
    }

    pub fn profile(&self, faces: usize) -> Profile {
        self.pieces
            .iter()
            .fold(vec![0; faces], |acc, p| add_profiles(&acc, &p.profile))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaResult {
    pub sigma: f64,
    pub decomposition: Decomposition,
    pub anchor_set: Vec<usize>,
    pub winding_area: f64,
    /// `sigma − winding_area`; never negative beyond rounding.
    pub gap: f64,
    pub profile: Profile,
}

/// Multiplicity with which the minimum homotopy sweeps each face.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceSweepProfile {
    pub multiplicity: Profile,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseClass {
    Left,
    Right,
    Mixed,
}

/// One entry of the valid anchor set table.
#[derive(Debug, Clone, Serialize)]
pub struct AnchorSetEntry {
    pub anchors: Vec<usize>,
    pub area: f64,
    pub decomposition: Decomposition,
}

// ---------------------------------------------------------------------------
// Solver

#[derive(Debug, Clone)]
struct Leaf {
    sign: i8,
    profile: Profile,
}

#[derive(Debug)]
struct Best {
    /// Crossing to split at, or `None` when the subcurve is a leaf.
    split: Option<usize>,
    profile: Profile,
    area: f64,
}

#[derive(Debug, Clone)]
struct Enumerated {
    splits: Vec<usize>,
    profile: Profile,
    positive: usize,
    negative: usize,
}

/// Memoised search over the subcurves of one analysed curve.
pub struct Solver<'a> {
    analysis: &'a CurveAnalysis,
    tol: f64,
    leaves: HashMap<Vec<usize>, Option<Leaf>>,
    best: HashMap<Vec<usize>, Rc<Best>>,
    all: HashMap<Vec<usize>, Rc<Vec<Enumerated>>>,
}

impl<'a> Solver<'a> {
    pub fn new(analysis: &'a CurveAnalysis, tol: f64) -> Self {
        Solver {
            analysis,
            tol,
            leaves: HashMap::new(),
            best: HashMap::new(),
            all: HashMap::new(),
        }
    }

    fn arcs(&self) -> &'a ArcSet {
        &self.analysis.arcs
    }

    fn leaf(&mut self, sub: &SubcurveRef) -> Option<Leaf> {
        let key = sub.canonical_key();
        if let Some(l) = self.leaves.get(&key) {
            return l.clone();
        }
        let l = self.witness(sub).map(|w| Leaf {
            sign: w.sign,
            profile: self.abs_windings(&sub.polygon(self.arcs())),
        });
        self.leaves.insert(key, l.clone());
        l
    }

    fn abs_windings(&self, polygon: &[Point2]) -> Profile {
        self.analysis
            .face_windings_of(polygon)
            .into_iter()
            .map(|w| w.unsigned_abs() as u32)
            .collect()
    }

    /// Witness for a subcurve, rooted at its own root.
    pub fn witness(&self, sub: &SubcurveRef) -> Option<ImmersionWitness> {
        let polygon = sub.polygon(self.arcs());
        if polygon.len() < 3 {
            return None;
        }
        let whitney = whitney_index_polygon(&polygon).ok()?;
        let windings = self.analysis.face_windings_of(&polygon);
        let mut w = decide(&polygon, whitney, &windings, self.tol)?;
        w.attach_coverage(self.analysis);
        Some(w)
    }

    fn best(&mut self, sub: &SubcurveRef) -> Result<Rc<Best>> {
        let key = sub.canonical_key();
        if let Some(b) = self.best.get(&key) {
            return Ok(b.clone());
        }
        let b = if let Some(l) = self.leaf(sub) {
            Best {
                split: None,
                area: profile_area(self.analysis, &l.profile),
                profile: l.profile,
            }
        } else {
            let mut found: Option<Best> = None;
            for c in sub.self_crossings(self.arcs()) {
                let (inner, outer) = sub.split_at_crossing(self.arcs(), c)?;
                let a = self.best(&inner)?;
                let b = self.best(&outer)?;
                let profile = add_profiles(&a.profile, &b.profile);
                let area = profile_area(self.analysis, &profile);
                if found.as_ref().is_none_or(|f| area < f.area) {
                    found = Some(Best {
                        split: Some(c),
                        profile,
                        area,
                    });
                }
            }
            found.ok_or_else(|| {
                Error::Topology(format!("subcurve {:?} has no self-crossing and no witness", sub.arcs))
            })?
        };
        let b = Rc::new(b);
        self.best.insert(key, b.clone());
        Ok(b)
    }

    /// All decompositions of `sub`, keyed by their split sets.
    fn enumerate(&mut self, sub: &SubcurveRef) -> Result<Rc<Vec<Enumerated>>> {
        let key = sub.canonical_key();
        if let Some(e) = self.all.get(&key) {
            return Ok(e.clone());
        }
        let mut found: BTreeMap<Vec<usize>, Enumerated> = BTreeMap::new();
        if let Some(l) = self.leaf(sub) {
            found.insert(
                Vec::new(),
                Enumerated {
                    splits: Vec::new(),
                    profile: l.profile,
                    positive: (l.sign > 0) as usize,
                    negative: (l.sign < 0) as usize,
                },
            );
        }
        for c in sub.self_crossings(self.arcs()) {
            let (inner, outer) = sub.split_at_crossing(self.arcs(), c)?;
            let a = self.enumerate(&inner)?;
            let b = self.enumerate(&outer)?;
            for x in a.iter() {
                for y in b.iter() {
                    let mut splits: Vec<usize> = x.splits.iter().chain(&y.splits).copied().collect();
                    splits.push(c);
                    splits.sort_unstable();
                    found.entry(splits.clone()).or_insert_with(|| Enumerated {
                        splits,
                        profile: add_profiles(&x.profile, &y.profile),
                        positive: x.positive + y.positive,
                        negative: x.negative + y.negative,
                    });
                }
            }
        }
        let e = Rc::new(found.into_values().collect::<Vec<_>>());
        self.all.insert(key, e.clone());
        Ok(e)
    }

    fn piece(&self, sub: SubcurveRef) -> Result<Piece> {
        let witness = self.witness(&sub).ok_or_else(|| {
            Error::InvalidDecomposition(format!("piece {:?} is not self-overlapping", sub.arcs))
        })?;
        let profile = self.abs_windings(&sub.polygon(self.arcs()));
        Ok(Piece {
            root: sub.root,
            sign: witness.sign,
            winding_area: profile_area(self.analysis, &profile),
            profile,
            witness,
            subcurve: sub,
        })
    }

    fn collect_best(&mut self, sub: SubcurveRef, out: &mut Vec<Piece>) -> Result<()> {
        match self.best(&sub)?.split {
            None => out.push(self.piece(sub)?),
            Some(c) => {
                let (inner, outer) = sub.split_at_crossing(self.arcs(), c)?;
                self.collect_best(outer, out)?;
                self.collect_best(inner, out)?;
            }
        }
        Ok(())
    }

    /// Decomposition obtained by splitting at exactly the crossings in
    /// `splits`.
    pub fn decomposition_for(&self, splits: &[usize]) -> Result<Decomposition> {
        let mut pieces = Vec::new();
        self.collect_splits(self.arcs().whole(), splits, &mut pieces)?;
        Ok(Decomposition { pieces })
    }

    fn collect_splits(&self, sub: SubcurveRef, splits: &[usize], out: &mut Vec<Piece>) -> Result<()> {
        let own = sub.self_crossings(self.arcs());
        match splits.iter().find(|c| own.contains(c)) {
            None => out.push(self.piece(sub)?),
            Some(&c) => {
                let (inner, outer) = sub.split_at_crossing(self.arcs(), c)?;
                self.collect_splits(outer, splits, out)?;
                self.collect_splits(inner, splits, out)?;
            }
        }
        Ok(())
    }
}

fn check_cap(analysis: &CurveAnalysis, what: &'static str, cap: usize) -> Result<()> {
    let count = analysis.crossings.len();
    if count > cap {
        return Err(Error::CapExceeded { what, count, cap });
    }
    Ok(())
}

/// σ(C) for an already analysed curve.
pub fn min_homotopy_area_of(analysis: &CurveAnalysis, cfg: &Config) -> Result<SigmaResult> {
    check_cap(analysis, "crossings", cfg.cap_crossings)?;
    let mut solver = Solver::new(analysis, cfg.tol);
    let whole = analysis.arcs.whole();
    let best = solver.best(&whole)?;
    let mut pieces = Vec::new();
    solver.collect_best(whole, &mut pieces)?;
    let decomposition = Decomposition { pieces };
    let sigma = best.area;
    Ok(SigmaResult {
        sigma,
        anchor_set: decomposition.anchor_set(),
        decomposition,
        winding_area: analysis.winding_area,
        gap: sigma - analysis.winding_area,
        profile: best.profile.clone(),
    })
}

pub fn min_homotopy_area(curve: &ClosedPolyCurve, cfg: &Config) -> Result<SigmaResult> {
    let analysis = analyze(curve, cfg.tol)?;
    min_homotopy_area_of(&analysis, cfg)
}

/// Every decomposition into self-overlapping pieces, sorted by area and then
/// by anchor set.
pub fn enumerate_valid_anchor_sets_of(analysis: &CurveAnalysis, cfg: &Config) -> Result<Vec<AnchorSetEntry>> {
    check_cap(analysis, "crossings for enumeration", cfg.cap_enumerate)?;
    let mut solver = Solver::new(analysis, cfg.tol);
    let all = solver.enumerate(&analysis.arcs.whole())?;
    let mut out = Vec::with_capacity(all.len());
    for e in all.iter() {
        let mut anchors = vec![0];
        anchors.extend(&e.splits);
        out.push(AnchorSetEntry {
            area: profile_area(analysis, &e.profile),
            decomposition: solver.decomposition_for(&e.splits)?,
            anchors,
        });
    }
    out.sort_by(|a, b| a.area.total_cmp(&b.area).then_with(|| a.anchors.cmp(&b.anchors)));
    Ok(out)
}

pub fn enumerate_valid_anchor_sets(curve: &ClosedPolyCurve, cfg: &Config) -> Result<Vec<AnchorSetEntry>> {
    let analysis = analyze(curve, cfg.tol)?;
    enumerate_valid_anchor_sets_of(&analysis, cfg)
}

/// Rebuild a decomposition from its pieces' arc cycles and roots, e.g. when
/// reading one back from disk. Signs and witnesses are recomputed; use
/// [`decomposition_area`] to validate the result.
pub fn decomposition_from_subcurves(analysis: &CurveAnalysis, subcurves: Vec<SubcurveRef>) -> Result<Decomposition> {
    let solver = Solver::new(analysis, analysis.tol);
    let arcs = analysis.arcs.len();
    let pieces = subcurves
        .into_iter()
        .map(|s| {
            if s.arcs.is_empty() || s.arcs.iter().any(|&a| a >= arcs) {
                return Err(Error::InvalidDecomposition(format!("bad arc list {:?}", s.arcs)));
            }
            solver.piece(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition { pieces })
}

/// Check the decomposition invariants and return `Σ W(γ_i)`.
pub fn decomposition_area(d: &Decomposition, analysis: &CurveAnalysis) -> Result<f64> {
    let arcs = &analysis.arcs;
    let mut used = vec![0usize; arcs.len()];
    for p in &d.pieces {
        for &a in &p.subcurve.arcs {
            if a >= used.len() {
                return Err(Error::InvalidDecomposition(format!("unknown arc {a}")));
            }
            used[a] += 1;
        }
    }
    if used.iter().any(|&u| u != 1) {
        return Err(Error::InvalidDecomposition("pieces do not partition the arcs".into()));
    }
    if d.pieces.first().map(|p| p.root) != Some(0) {
        return Err(Error::InvalidDecomposition("first piece must be rooted at the base point".into()));
    }
    let solver = Solver::new(analysis, analysis.tol);
    for (i, p) in d.pieces.iter().enumerate() {
        let w = solver.witness(&p.subcurve).ok_or_else(|| {
            Error::InvalidDecomposition(format!("piece {i} is not self-overlapping"))
        })?;
        if w.sign != p.sign {
            return Err(Error::InvalidDecomposition(format!("piece {i} has the wrong sign")));
        }
        if i > 0 {
            let parent_has_root = d.pieces[..i]
                .iter()
                .any(|q| q.subcurve.junctions(arcs).contains(&p.root));
            let later_has_root = d.pieces[i + 1..]
                .iter()
                .any(|q| q.subcurve.junctions(arcs).contains(&p.root));
            if !parent_has_root || later_has_root {
                return Err(Error::InvalidDecomposition(format!("piece {i} is out of order")));
            }
        }
    }
    Ok(profile_area(analysis, &d.profile(analysis.faces.len())))
}

/// Least number of pieces in a decomposition whose pieces are all positive.
pub fn is_k_boundary_of(analysis: &CurveAnalysis, cfg: &Config) -> Result<Option<usize>> {
    check_cap(analysis, "crossings for enumeration", cfg.cap_enumerate)?;
    let mut solver = Solver::new(analysis, cfg.tol);
    let all = solver.enumerate(&analysis.arcs.whole())?;
    Ok(all.iter().filter(|e| e.negative == 0).map(|e| e.positive).min())
}

pub fn is_k_boundary(curve: &ClosedPolyCurve, cfg: &Config) -> Result<Option<usize>> {
    let analysis = analyze(curve, cfg.tol)?;
    is_k_boundary_of(&analysis, cfg)
}

pub fn sense_class(d: &Decomposition) -> SenseClass {
    if d.pieces.iter().all(|p| p.sign > 0) {
        SenseClass::Left
    } else if d.pieces.iter().all(|p| p.sign < 0) {
        SenseClass::Right
    } else {
        SenseClass::Mixed
    }
}

pub fn face_sweep_profile(d: &Decomposition, analysis: &CurveAnalysis) -> FaceSweepProfile {
    let multiplicity = d.profile(analysis.faces.len());
    FaceSweepProfile {
        total: profile_area(analysis, &multiplicity),
        multiplicity,
    }
}

// ---------------------------------------------------------------------------
// Induced homotopy

#[derive(Debug, Clone, Serialize)]
pub struct MoveEvent {
    pub kind: MoveKind,
    /// Index of the frame the move leads to.
    pub frame: usize,
    /// Anchor crossing for Ia events at a root.
    pub crossing: Option<usize>,
}

/// Snapshots of the contraction. Frames are point cycles; they need not be
/// normal and the last one is the single base point.
#[derive(Debug, Clone, Serialize)]
pub struct HomotopyFrames {
    pub frames: Vec<Vec<Point2>>,
    pub move_log: Vec<MoveEvent>,
}

impl HomotopyFrames {
    /// Area swept between consecutive frames with matching vertex lists,
    /// measured by the quadrilaterals each edge traces.
    pub fn swept_area(&self) -> f64 {
        self.frames
            .windows(2)
            .filter(|w| w[0].len() == w[1].len())
            .map(|w| {
                let (a, b) = (&w[0], &w[1]);
                let n = a.len();
                (0..n)
                    .map(|i| {
                        let j = (i + 1) % n;
                        geom::signed_area(&[a[i], a[j], b[j], b[i]]).abs()
                    })
                    .sum::<f64>()
            })
            .sum()
    }
}

struct PieceState {
    /// Current vertex positions, in the piece's own traversal order.
    pts: Vec<Point2>,
    alive: Vec<bool>,
    done: bool,
    /// Children attached at each vertex, contracted before this piece.
    children: Vec<Vec<usize>>,
}

fn render(states: &[PieceState], piece: usize, out: &mut Vec<Point2>) {
    let s = &states[piece];
    for v in 0..s.pts.len() {
        if !s.alive[v] {
            continue;
        }
        out.push(s.pts[v]);
        for &c in &s.children[v] {
            if !states[c].done {
                render_child(states, c, out);
                out.push(s.pts[v]);
            }
        }
    }
}

fn render_child(states: &[PieceState], piece: usize, out: &mut Vec<Point2>) {
    let start = out.len();
    render(states, piece, out);
    // The child's root duplicates the parent's vertex already emitted.
    out.remove(start);
}

fn frame_of(states: &[PieceState]) -> Vec<Point2> {
    let mut out = Vec::new();
    render(states, 0, &mut out);
    out
}

/// Apex index, its position, the foot it moves to on the chord and the
/// number of frames, proportional to the ear's share of the total area.
fn ear_motion(pts: &[Point2], [a, k, b]: [usize; 3], total: f64, samples: usize) -> (usize, Point2, Point2, usize) {
    let (pa, pk, pb) = (pts[a], pts[k], pts[b]);
    let chord = pb - pa;
    let t = ((pk - pa).dot(chord) / chord.dot(chord)).clamp(0.1, 0.9);
    let area = geom::triangle_area(pa, pk, pb).abs();
    let steps = if total > 0.0 {
        ((samples as f64 * area / total).round() as usize).max(1)
    } else {
        1
    };
    (k, pk, pa.lerp(pb, t), steps)
}

/// Contract the pieces of `d` one after another, last piece first, each
/// along its witness triangulation, emitting about `samples` frames. Ears
/// whose collapse adds no crossings go first when there is a choice.
pub fn induced_homotopy_frames(d: &Decomposition, analysis: &CurveAnalysis, samples: usize, tol: f64) -> HomotopyFrames {
    let mut states: Vec<PieceState> = d
        .pieces
        .iter()
        .map(|p| {
            let pts = p.subcurve.polygon(&analysis.arcs);
            let m = pts.len();
            PieceState {
                pts,
                alive: vec![true; m],
                done: false,
                children: vec![Vec::new(); m],
            }
        })
        .collect();
    for (i, p) in d.pieces.iter().enumerate().skip(1) {
        let at = analysis.crossings[p.root - 1].location;
        if let Some((parent, v)) = (0..i).rev().find_map(|q| {
            states[q].pts.iter().position(|&x| x == at).map(|v| (q, v))
        }) {
            states[parent].children[v].push(i);
        }
    }
    let total: f64 = d.pieces.iter().map(|p| p.winding_area).sum();
    let mut frames = vec![frame_of(&states)];
    let mut log = Vec::new();
    let mut crossings = count_proper_crossings(&frames[0], tol) as i64;

    let push = |states: &[PieceState], frames: &mut Vec<Vec<Point2>>, log: &mut Vec<MoveEvent>, crossings: &mut i64| {
        let f = frame_of(states);
        let now = count_proper_crossings(&f, tol) as i64;
        let delta = now - *crossings;
        *crossings = now;
        frames.push(f);
        let idx = frames.len() - 1;
        let kinds: Vec<MoveKind> = if delta > 0 {
            std::iter::repeat_n(MoveKind::IIb, (delta / 2) as usize)
                .chain((delta % 2 == 1).then_some(MoveKind::Ib))
                .collect()
        } else {
            std::iter::repeat_n(MoveKind::IIa, (-delta / 2) as usize)
                .chain((delta % 2 == -1).then_some(MoveKind::Ia))
                .collect()
        };
        for kind in kinds {
            log.push(MoveEvent { kind, frame: idx, crossing: None });
        }
    };

    for (i, piece) in d.pieces.iter().enumerate().rev() {
        let m = states[i].pts.len();
        let w = &piece.witness;
        // Witness polygons of negative pieces are reversed around vertex 0.
        let to_piece = |v: usize| if w.sign > 0 { v } else { (m - v) % m };
        let mut pending = crate::selfoverlap::contraction_order(w);
        let mut gone = vec![false; m];
        while !pending.is_empty() {
            // Ears whose side vertices are the only survivors between their ends.
            let ready: Vec<usize> = (0..pending.len())
                .filter(|&e| {
                    let [a, k, b] = pending[e];
                    (a + 1..b).all(|v| v == k || gone[v])
                })
                .collect();
            let ear_frames = |e: usize, states: &mut Vec<PieceState>| -> Vec<Vec<Point2>> {
                let (k, pk, foot, steps) = ear_motion(&states[i].pts, pending[e].map(to_piece), total, samples);
                let out = (1..=steps)
                    .map(|step| {
                        states[i].pts[k] = pk.lerp(foot, step as f64 / steps as f64);
                        frame_of(states)
                    })
                    .collect();
                states[i].pts[k] = pk;
                out
            };
            // Prefer an ear whose collapse never adds crossings.
            let chosen = ready
                .iter()
                .copied()
                .find(|&e| {
                    let mut c = crossings;
                    ear_frames(e, &mut states).iter().all(|f| {
                        let now = count_proper_crossings(f, tol) as i64;
                        let ok = now <= c;
                        c = now;
                        ok
                    })
                })
                .or_else(|| ready.first().copied())
                .unwrap_or(0);
            let ear = pending.remove(chosen);
            let (k, pk, foot, steps) = ear_motion(&states[i].pts, ear.map(to_piece), total, samples);
            for step in 1..=steps {
                states[i].pts[k] = pk.lerp(foot, step as f64 / steps as f64);
                push(&states, &mut frames, &mut log, &mut crossings);
            }
            // The apex now lies on the chord, so dropping it keeps the image.
            states[i].alive[k] = false;
            gone[ear[1]] = true;
            frames.push(frame_of(&states));
        }
        // What remains is a doubled segment from the root; retract it.
        if let Some(last) = (1..m).find(|&v| states[i].alive[v]) {
            let root = states[i].pts[0];
            let from = states[i].pts[last];
            states[i].pts[last] = from.lerp(root, 0.5);
            push(&states, &mut frames, &mut log, &mut crossings);
            states[i].alive[last] = false;
        }
        states[i].done = true;
        let f = if i == 0 { vec![states[0].pts[0]] } else { frame_of(&states) };
        crossings = count_proper_crossings(&f, tol) as i64;
        frames.push(f);
        log.push(MoveEvent {
            kind: MoveKind::Ia,
            frame: frames.len() - 1,
            crossing: Some(piece.root),
        });
    }
    HomotopyFrames { frames, move_log: log }
}

// ---------------------------------------------------------------------------
// Distances between curves

/// σ(c1, c2): the minimum area of `c1` followed by `c2` reversed, with `c2`
/// translated so both start at `c1`'s base point.
pub fn metric_check(c1: &ClosedPolyCurve, c2: &ClosedPolyCurve, cfg: &Config) -> Result<f64> {
    let shift = c1.base_point() - c2.base_point();
    let mut pts: Vec<Point2> = c1.points().to_vec();
    pts.push(c1.base_point());
    let q = c2.points();
    pts.extend(q[1..].iter().rev().map(|&p| p + shift));
    sigma_of_closed_points(&pts, cfg)
}

/// σ of an arbitrary point cycle based at its first point: zero-area spurs
/// are retracted, repeated vertices pulled apart, and anything still
/// degenerate is perturbed to a normal curve.
pub fn sigma_of_closed_points(points: &[Point2], cfg: &Config) -> Result<f64> {
    let (reduced, base) = cancel_spurs(points, cfg.tol);
    if reduced.len() < 3 {
        return Ok(0.0);
    }
    let separated = separate_repeated_vertices(&reduced, cfg.perturb_epsilon, cfg.tol);
    let curve = ClosedPolyCurve::new(separated, base)?;
    let curve = perturb_to_normal(&curve, cfg.perturb_epsilon, cfg.seed, cfg.tol)?;
    Ok(min_homotopy_area(&curve, cfg)?.sigma)
}
