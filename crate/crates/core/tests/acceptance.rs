//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria that are known to be unreachable are still evaluated and printed
//! as FAIL with the reason; only unexpected failures make the process exit
//! nonzero.

use minhom::arrangement::{analyze, CurveAnalysis};
use minhom::curve::{reverse_curve, ClosedPolyCurve};
use minhom::geom::{bounding_box, triangle_area, Point2};
use minhom::graphdist::{graph_distance, PlaneGraph};
use minhom::homotopy::{
    decomposition_area, enumerate_valid_anchor_sets_of, face_sweep_profile, induced_homotopy_frames, metric_check,
    min_homotopy_area_of, SigmaResult,
};
use minhom::moves::{apply_IIa, apply_Ia, find_bigons, find_monogons, GaussCode, MoveKind};
use minhom::selfoverlap::self_overlap_in;
use minhom::{Config, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const SEED: u64 = 20_240_601;

fn fixture(name: &str) -> ClosedPolyCurve {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    minhom::curve::load_curve(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Curve fixtures small enough for the solver.
const FIXTURES: [&str; 6] = ["unit_square", "bowtie", "overlap_c", "crossed_band", "twin_holes", "spiral_trefoil"];

fn scale(c: &ClosedPolyCurve) -> f64 {
    let (lo, hi) = bounding_box(c.points());
    (hi.x - lo.x).max(hi.y - lo.y)
}

/// Random normal polygons with at most `max_crossings` crossings.
fn random_curves(rng: &mut ChaCha8Rng, count: usize, max_crossings: usize, max_vertices: usize) -> Vec<CurveAnalysis> {
    let cfg = Config::default();
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=max_vertices);
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)))
            .collect();
        let Ok(c) = ClosedPolyCurve::new(pts, 0) else { continue };
        let Ok(a) = analyze(&c, cfg.tol) else { continue };
        if a.crossings.len() <= max_crossings {
            out.push(a);
        }
    }
    out
}

struct Line {
    ok: bool,
    /// Set when a failure is expected and explained.
    known: Option<&'static str>,
    detail: String,
}

impl Line {
    fn check(ok: bool, detail: String) -> Line {
        Line { ok, known: None, detail }
    }
}

fn sigma(a: &CurveAnalysis) -> SigmaResult {
    min_homotopy_area_of(a, &Config::default()).unwrap()
}

fn lower_bound(rng: &mut ChaCha8Rng) -> Line {
    let start = Instant::now();
    let curves = random_curves(rng, 500, 6, 9);
    let mut worst = f64::INFINITY;
    let mut bad = 0;
    let mut crossings = [0usize; 7];
    for a in &curves {
        crossings[a.crossings.len()] += 1;
        let r = sigma(a);
        let s2 = scale(&a.curve).powi(2);
        worst = worst.min((r.sigma - a.winding_area) / s2);
        if r.sigma < a.winding_area - 1e-7 * s2 {
            bad += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Line::check(
        bad == 0 && secs < 60.0,
        format!("500 curves, crossings histogram {crossings:?}, min (σ−W)/scale² = {worst:.3e}, {bad} violations, {secs:.1}s"),
    )
}

fn self_overlapping_equality(rng: &mut ChaCha8Rng) -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut candidates: Vec<(String, CurveAnalysis)> = FIXTURES
        .iter()
        .map(|n| (n.to_string(), analyze(&fixture(n), 1e-9).unwrap()))
        .collect();
    for (i, a) in random_curves(rng, 100, 4, 7).into_iter().enumerate() {
        candidates.push((format!("random#{i}"), a));
    }
    for (name, a) in &candidates {
        if !self_overlap_in(a.curve.points(), a, a.tol).is_self_overlapping {
            continue;
        }
        checked += 1;
        let r = sigma(a);
        let s2 = scale(&a.curve).powi(2);
        if (r.sigma - a.winding_area).abs() > 1e-7 * s2 || r.anchor_set != [0] {
            bad.push(name.clone());
        }
    }
    let milnor = candidates.iter().any(|(n, a)| n == "crossed_band" && self_overlap_in(a.curve.points(), a, a.tol).is_self_overlapping);
    Line::check(
        bad.is_empty() && milnor,
        format!("{checked} accepted curves (crossed band accepted: {milnor}), failures {bad:?}"),
    )
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Line {
    let cfg = Config::default();
    let curves = random_curves(rng, 200, 5, 8);
    let mut mismatches = 0;
    for a in &curves {
        let r = sigma(a);
        let sets = enumerate_valid_anchor_sets_of(a, &cfg).unwrap();
        let best = sets.iter().map(|s| s.area).fold(f64::INFINITY, f64::min);
        if best != r.sigma {
            mismatches += 1;
        }
    }
    Line::check(mismatches == 0, format!("200 curves, {mismatches} mismatches"))
}

/// Valid anchor sets listed for the ten-crossing chain.
const CHAIN_SETS: [&[usize]; 22] = [
    &[0, 3, 9],
    &[0, 3, 10],
    &[0, 1, 2, 3, 9],
    &[0, 1, 2, 3, 10],
    &[0, 3, 4, 5, 7],
    &[0, 3, 4, 5, 8],
    &[0, 3, 5, 7, 9],
    &[0, 3, 5, 7, 10],
    &[0, 3, 5, 8, 9],
    &[0, 3, 5, 8, 10],
    &[0, 1, 2, 3, 4, 5, 7],
    &[0, 1, 2, 3, 4, 5, 8],
    &[0, 1, 2, 3, 5, 7, 9],
    &[0, 1, 2, 3, 5, 7, 10],
    &[0, 1, 2, 3, 5, 8, 9],
    &[0, 1, 2, 3, 5, 8, 10],
    &[0, 3, 4, 5, 6, 7, 8],
    &[0, 3, 5, 6, 7, 8, 9],
    &[0, 3, 5, 6, 7, 8, 10],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8],
    &[0, 1, 2, 3, 5, 6, 7, 8, 9],
    &[0, 1, 2, 3, 5, 6, 7, 8, 10],
];

fn worked_examples() -> Line {
    let cfg = Config::default();
    let a = analyze(&fixture("twin_holes"), cfg.tol).unwrap();
    let sets = enumerate_valid_anchor_sets_of(&a, &cfg).unwrap();
    let found: Vec<Vec<usize>> = sets.iter().map(|s| s.anchors.clone()).collect();
    let r = sigma(&a);

    // Face roles from windings alone: f1 is the doubly wound face, f4 the
    // singly wound one, f2 and f3 the unwound holes with f3 the smaller.
    let bounded: Vec<_> = a.bounded_faces().collect();
    let by = |w: i64| bounded.iter().filter(|f| f.winding.abs() == w).map(|f| f.area).collect::<Vec<_>>();
    let (f1, f4, mut holes) = (by(2), by(1), by(0));
    holes.sort_by(f64::total_cmp);
    let shape_ok = f1.len() == 1 && f4.len() == 1 && holes.len() == 2;
    let (f1, f4, f3, f2) = (f1[0], f4[0], holes[0], holes[1]);
    let expected = 2.0 * (f3 + f1) + f4;
    let exact_pair = found == [vec![0, 3], vec![0, 2]];
    let relational = shape_ok
        && f3 < f2
        && found.contains(&vec![0, 2])
        && found.contains(&vec![0, 3])
        && r.anchor_set == [0, 3]
        && (r.sigma - expected).abs() <= 1e-9
        && r.sigma > a.winding_area;

    let c = analyze(&fixture("spiral_trefoil"), cfg.tol).unwrap();
    let chain = enumerate_valid_anchor_sets_of(&c, &cfg).unwrap();
    let chain_found: Vec<&[usize]> = chain.iter().map(|s| s.anchors.as_slice()).collect();
    let listed_found = CHAIN_SETS.iter().all(|s| chain_found.contains(s));
    let extra: Vec<&[usize]> = chain_found.iter().copied().filter(|s| !CHAIN_SETS.contains(s)).collect();
    let chain_argmin = sigma(&c).anchor_set;
    let chain_exact = chain.len() == 22 && chain_argmin == [0, 3, 4, 5, 7];

    let detail = format!(
        "twin holes: sets {found:?}, argmin {:?}, σ {:.6} vs 2(f3+f1)+f4 {:.6}, W {:.6}; \
         ten-crossing chain: {} crossings, {} sets, all 22 listed found {listed_found}, extra {extra:?}, argmin {chain_argmin:?}",
        r.anchor_set,
        r.sigma,
        expected,
        a.winding_area,
        c.crossings.len(),
        chain.len()
    );
    let relational = relational && listed_found && c.crossings.len() == 10;
    Line {
        ok: relational && exact_pair && chain_exact,
        known: relational.then_some(
            "splitting the twin-holes curve at all three crossings leaves simple loops, so a third set is forced; \
             on the chain, a gadget inside one face makes splitting at 4 alone valid whenever splitting at 9 alone is, \
             and {0,3,4} is refined by {0,3,4,5,7}, so the latter cannot be the strict minimum",
        ),
        detail,
    }
}

fn witness_soundness(rng: &mut ChaCha8Rng) -> Line {
    let mut accepted = 0;
    let mut bad = 0;
    let mut all: Vec<CurveAnalysis> = FIXTURES.iter().map(|n| analyze(&fixture(n), 1e-9).unwrap()).collect();
    all.extend(random_curves(rng, 300, 4, 7));
    for a in &all {
        let rep = self_overlap_in(a.curve.points(), a, a.tol);
        let Some(w) = rep.witness else { continue };
        accepted += 1;
        let coverage_ok = a.faces.iter().all(|f| {
            f.is_outer || w.multiplicity_at(f.sample) == f.winding.unsigned_abs() as u32
        });
        let area: f64 = (0..w.triangles.len())
            .map(|t| {
                let [p, q, r] = w.triangle_points(t);
                triangle_area(p, q, r).abs()
            })
            .sum();
        if !coverage_ok || (area - a.winding_area).abs() > 1e-7 * a.winding_area {
            bad += 1;
        }
    }
    Line::check(bad == 0 && accepted > 0, format!("{accepted} accepted curves, {bad} unsound witnesses"))
}

fn poly(pts: &[(f64, f64)]) -> ClosedPolyCurve {
    ClosedPolyCurve::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect(), 0).unwrap()
}

/// Curve pairs related by one destroying move: the first has the extra
/// monogon or bigon.
fn move_pairs() -> Vec<(MoveKind, ClosedPolyCurve, ClosedPolyCurve)> {
    let square = poly(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.)]);
    // A small curl on the bottom edge, turning with or against the square.
    let curl_out = poly(&[(0., 0.), (2., 0.), (2.5, -1.), (1.5, -1.), (2.5, 0.2), (4., 0.), (4., 4.), (0., 4.)]);
    let curl_in = poly(&[(0., 0.), (2., 0.), (2.5, 1.), (1.5, 1.), (2.5, -0.2), (4., 0.), (4., 4.), (0., 4.)]);
    // A finger from the top edge pushed down through the bottom edge, and
    // the same finger stopping short of it.
    let through = poly(&[(0., 0.), (4., 0.), (4., 4.), (2.5, 4.), (2.5, -1.), (1.5, -1.), (1.5, 4.), (0., 4.)]);
    let short = poly(&[(0., 0.), (4., 0.), (4., 4.), (2.5, 4.), (2.5, 1.), (1.5, 1.), (1.5, 4.), (0., 4.)]);
    // A lobe pushed across a figure-eight's waist.
    let eight = poly(&[(0., 0.), (4., 4.), (4., 0.), (0., 4.)]);
    let eight_through = poly(&[(0., 0.), (4., 4.), (4., 0.), (2.0, 2.6), (1.0, 0.5), (1.6, 3.6), (0., 4.)]);
    vec![
        (MoveKind::Ia, curl_out.clone(), square.clone()),
        (MoveKind::Ia, curl_in.clone(), square.clone()),
        (MoveKind::Ia, reverse_curve(&curl_out), reverse_curve(&square)),
        (MoveKind::Ia, eight.clone(), poly(&[(0., 0.), (4., 4.), (4., 0.)])),
        (MoveKind::IIa, through.clone(), short.clone()),
        (MoveKind::IIa, reverse_curve(&through), reverse_curve(&short)),
        (MoveKind::IIa, eight_through, eight),
    ]
}

fn whitney_laws() -> Line {
    let tol = 1e-9;
    let mut problems = Vec::new();
    let pairs = move_pairs();
    for (i, (kind, before, after)) in pairs.iter().enumerate() {
        let (a, b) = (analyze(before, tol).unwrap(), analyze(after, tol).unwrap());
        let code = GaussCode::from_curve(&a.curve, &a.crossings);
        // The move must be available combinatorially and account for the
        // change in crossings.
        let applicable = match kind {
            MoveKind::Ia => find_monogons(&code).iter().any(|&l| apply_Ia(&code, l).is_ok_and(|c| c.len() == b.crossings.len() * 2)),
            _ => find_bigons(&code).iter().any(|&p| apply_IIa(&code, p).is_ok_and(|c| c.len() == b.crossings.len() * 2)),
        };
        let dw = a.whitney - b.whitney;
        let law = match kind {
            MoveKind::Ia => dw.abs() == 1,
            _ => dw == 0,
        };
        if !applicable || !law {
            problems.push(format!("pair {i} {kind:?}: Δwhitney {dw}, applicable {applicable}"));
        }
    }
    let mut so = 0;
    for n in FIXTURES {
        let a = analyze(&fixture(n), tol).unwrap();
        if self_overlap_in(a.curve.points(), &a, tol).is_self_overlapping {
            so += 1;
            if !a.crossings.len().is_multiple_of(2) || a.whitney.abs() != 1 {
                problems.push(format!("{n}: {} crossings, whitney {}", a.crossings.len(), a.whitney));
            }
        }
    }
    Line::check(
        problems.is_empty(),
        format!("{} move pairs, {so} self-overlapping fixtures, problems {problems:?}", pairs.len()),
    )
}

/// Small random curves with their base point at the origin.
fn small_curve(rng: &mut ChaCha8Rng) -> ClosedPolyCurve {
    loop {
        let n = rng.gen_range(3..=5);
        let mut pts: Vec<Point2> = vec![Point2::new(0.0, 0.0)];
        pts.extend((1..n).map(|_| Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))));
        let Ok(c) = ClosedPolyCurve::new(pts, 0) else { continue };
        if matches!(analyze(&c, 1e-9), Ok(a) if a.crossings.len() <= 3) {
            return c;
        }
    }
}

fn metric_properties(rng: &mut ChaCha8Rng) -> Line {
    let cfg = Config::default();
    let mut triples = 0;
    let mut skipped = 0;
    let mut bad = Vec::new();
    while triples < 50 {
        let t = [small_curve(rng), small_curve(rng), small_curve(rng)];
        let d = |i: usize, j: usize| metric_check(&t[i], &t[j], &cfg);
        let values: Result<Vec<f64>, Error> = [(0, 0), (0, 1), (1, 0), (1, 2), (0, 2)].iter().map(|&(i, j)| d(i, j)).collect();
        let v = match values {
            Ok(v) => v,
            Err(Error::CapExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => panic!("metric evaluation failed: {e}"),
        };
        let s2 = t.iter().map(scale).fold(0.0, f64::max).powi(2);
        let (aa, ab, ba, bc, ac) = (v[0], v[1], v[2], v[3], v[4]);
        if aa > 1e-7 || (ab - ba).abs() > 1e-7 * s2 || ac > ab + bc + 1e-6 * s2 {
            bad.push(triples);
        }
        triples += 1;
    }
    Line::check(
        bad.is_empty(),
        format!("50 triples ({skipped} redrawn over the crossing cap), violations at {bad:?}"),
    )
}

fn face_sweep(rng: &mut ChaCha8Rng) -> Line {
    let mut all: Vec<CurveAnalysis> = FIXTURES.iter().map(|n| analyze(&fixture(n), 1e-9).unwrap()).collect();
    all.extend(random_curves(rng, 200, 6, 8));
    let mut bad = 0;
    for a in &all {
        let r = sigma(a);
        let p = face_sweep_profile(&r.decomposition, a);
        let total: f64 = a.faces.iter().zip(&p.multiplicity).map(|(f, &m)| m as f64 * f.area).sum();
        let pointwise = a
            .faces
            .iter()
            .zip(&p.multiplicity)
            .all(|(f, &m)| if f.is_outer { m == 0 } else { m as u64 >= f.winding.unsigned_abs() });
        if (total - r.sigma).abs() > 1e-7 * r.sigma.max(f64::MIN_POSITIVE) || !pointwise {
            bad += 1;
        }
    }
    Line::check(bad == 0, format!("{} argmin decompositions, {bad} inconsistent", all.len()))
}

fn frames_consistency() -> Line {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in FIXTURES {
        let a = analyze(&fixture(n), 1e-9).unwrap();
        let r = sigma(&a);
        let area = decomposition_area(&r.decomposition, &a).unwrap();
        let fr = induced_homotopy_frames(&r.decomposition, &a, 200, a.tol);
        let rel = (fr.swept_area() - area).abs() / area;
        let last_ia = fr.move_log.last().map(|m| m.kind) == Some(MoveKind::Ia);
        let creating = fr.move_log.iter().filter(|m| matches!(m.kind, MoveKind::Ib | MoveKind::IIb)).count();
        ok &= rel <= 0.02 && last_ia && creating == 0;
        rows.push(format!("{n} rel {rel:.1e}"));
    }
    Line::check(ok, format!("samples 200: {}; last move Ia, no Ib/IIb: {ok}", rows.join(", ")))
}

fn graph_distance_checks() -> Line {
    let cfg = Config::default();
    let load = |n: &str| {
        let path = format!("{}/fixtures/{n}.json", env!("CARGO_MANIFEST_DIR"));
        PlaneGraph::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
    };
    let (lower, upper) = (load("parallel_lower"), load("parallel_upper"));
    let same = graph_distance(&lower, &lower, &cfg).unwrap().value;
    let d = graph_distance(&lower, &upper, &cfg).unwrap();
    // Gap 1 between the segments; pairs at horizontal distance 5, 10, 5 in
    // each direction enclose rectangles of those areas.
    let analytic = (5.0 + 10.0 + 5.0) * 2.0 / 6.0;
    let rel = (d.value - analytic).abs() / analytic;
    let csv = d.to_csv();
    let values: Vec<f64> = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    Line::check(
        same == 0.0 && rel <= 0.01 && (mean - d.value).abs() <= 1e-12,
        format!("identical {same}, parallel {:.6} vs {analytic:.6} (rel {rel:.1e}), CSV mean diff {:.1e}", d.value, (mean - d.value).abs()),
    )
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: Vec<(&str, Line)> = vec![
        ("1 lower bound σ ≥ W", lower_bound(&mut rng)),
        ("2 self-overlapping equality", self_overlapping_equality(&mut rng)),
        ("3 oracle equivalence", oracle_equivalence(&mut rng)),
        ("4 worked examples", worked_examples()),
        ("5 witness soundness", witness_soundness(&mut rng)),
        ("6 Whitney laws", whitney_laws()),
        ("7 metric properties", metric_properties(&mut rng)),
        ("8 face sweep", face_sweep(&mut rng)),
        ("9 frames consistency", frames_consistency()),
        ("10 graph distance", graph_distance_checks()),
    ];
    let mut unexpected = 0;
    for (name, line) in &criteria {
        let status = if line.ok { "PASS" } else { "FAIL" };
        println!("{status} {name}: {}", line.detail);
        if !line.ok {
            match line.known {
                Some(why) => println!("     known: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
