use minhom::arrangement::{analyze, CurveAnalysis};
use minhom::geom::{signed_area, Point2};
use minhom::homotopy::{enumerate_valid_anchor_sets_of, metric_check, min_homotopy_area_of};
use minhom::moves::{apply_IIa, apply_Ia, reduce, GaussCode, MoveKind};
use minhom::{reverse_curve, ClosedPolyCurve, Config};
use proptest::prelude::*;

fn points() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 3..=7)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn curve_analysis(pts: Vec<Point2>, max_crossings: usize) -> Option<CurveAnalysis> {
    let c = ClosedPolyCurve::new(pts, 0).ok()?;
    let a = analyze(&c, 1e-9).ok()?;
    (a.crossings.len() <= max_crossings).then_some(a)
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale.max(1.0)
}

/// Even-odd free winding count by horizontal ray crossings.
fn ray_winding(p: Point2, poly: &[Point2]) -> i64 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a.y <= p.y) != (b.y <= p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                w += if b.y > a.y { 1 } else { -1 };
            }
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn sigma_bounds_and_oracle(pts in points()) {
        let Some(a) = curve_analysis(pts, 4) else { return Ok(()) };
        let cfg = Config::default();
        let s = min_homotopy_area_of(&a, &cfg).unwrap();
        prop_assert!(s.sigma >= a.winding_area - 1e-9 * a.winding_area.max(1.0));
        let sets = enumerate_valid_anchor_sets_of(&a, &cfg).unwrap();
        let best = sets.iter().map(|e| e.area).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(best, s.sigma);
    }

    #[test]
    fn faces_agree_with_ray_casting(pts in points()) {
        let Some(a) = curve_analysis(pts, 8) else { return Ok(()) };
        let poly = a.curve.points();
        for f in &a.faces {
            prop_assert_eq!(f.winding, ray_winding(f.sample, poly));
        }
        let weighted: f64 = a.faces.iter().map(|f| f.winding as f64 * f.area).sum();
        prop_assert!(close(weighted, signed_area(poly), a.winding_area));
        prop_assert_eq!(a.faces.len(), a.crossings.len() + 2);
    }

    #[test]
    fn reversal(pts in points()) {
        let Some(a) = curve_analysis(pts, 4) else { return Ok(()) };
        let r = analyze(&reverse_curve(&a.curve), 1e-9).unwrap();
        prop_assert_eq!(r.whitney, -a.whitney);
        prop_assert!(close(r.winding_area, a.winding_area, a.winding_area));
        let cfg = Config::default();
        let s = min_homotopy_area_of(&a, &cfg).unwrap().sigma;
        let t = min_homotopy_area_of(&r, &cfg).unwrap().sigma;
        prop_assert!(close(s, t, s));
    }

    #[test]
    fn rebasing(pts in points(), k in 0usize..7) {
        let Some(a) = curve_analysis(pts, 4) else { return Ok(()) };
        let b = analyze(&a.curve.rebased(k % a.curve.len()), 1e-9).unwrap();
        let cfg = Config::default();
        let s = min_homotopy_area_of(&a, &cfg).unwrap().sigma;
        let t = min_homotopy_area_of(&b, &cfg).unwrap().sigma;
        prop_assert!(close(s, t, s));
    }

    #[test]
    fn similarity(pts in points(), scale in 0.25..4.0f64, angle in 0.0..std::f64::consts::TAU, dx in -5.0..5.0f64) {
        let Some(a) = curve_analysis(pts, 4) else { return Ok(()) };
        let (sin, cos) = angle.sin_cos();
        let moved = a.curve.map_points(|p| Point2::new(scale * (cos * p.x - sin * p.y) + dx, scale * (sin * p.x + cos * p.y))).unwrap();
        let Ok(b) = analyze(&moved, 1e-9) else { return Ok(()) };
        prop_assume!(b.crossings.len() == a.crossings.len());
        let cfg = Config::default();
        let s = min_homotopy_area_of(&a, &cfg).unwrap().sigma;
        let t = min_homotopy_area_of(&b, &cfg).unwrap().sigma;
        prop_assert!((t - scale * scale * s).abs() <= 1e-7 * t.max(1.0));
    }

    #[test]
    fn distance_to_itself_is_zero(pts in points()) {
        let Some(a) = curve_analysis(pts, 3) else { return Ok(()) };
        let d = metric_check(&a.curve, &a.curve, &Config::default()).unwrap();
        prop_assert!(d.abs() <= 1e-9 * a.winding_area.max(1.0));
    }

    #[test]
    fn reduction_replays(pts in points()) {
        let Some(a) = curve_analysis(pts, 8) else { return Ok(()) };
        let code = GaussCode::from_curve(&a.curve, &a.crossings);
        let (log, rest) = reduce(&code);
        let mut replay = code.clone();
        for (kind, labels) in &log {
            replay = match kind {
                MoveKind::Ia => apply_Ia(&replay, labels[0]).unwrap(),
                MoveKind::IIa => apply_IIa(&replay, (labels[0], labels[1])).unwrap(),
                other => panic!("unexpected move {other:?}"),
            };
        }
        prop_assert_eq!(replay.labels(), rest.labels());
        let removed: usize = log.iter().map(|(_, l)| l.len()).sum();
        prop_assert_eq!(removed + rest.crossing_count(), code.crossing_count());
    }
}
