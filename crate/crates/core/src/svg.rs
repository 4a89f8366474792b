//! Deterministic SVG drawings of analyses, decompositions and homotopy
//! frames. Coordinates are written with fixed precision so equal inputs give
//! byte-identical documents.

use crate::arrangement::CurveAnalysis;
use crate::geom::{bounding_box, Point2};
use crate::homotopy::{Decomposition, HomotopyFrames};
use std::fmt::Write;

const WIDTH: f64 = 480.0;
const MARGIN: f64 = 24.0;
const LEGEND: f64 = 120.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

/// Maps curve coordinates to the page, flipping y.
struct Frame {
    min: Point2,
    max: Point2,
    k: f64,
    height: f64,
}

impl Frame {
    fn around(pts: &[Point2]) -> Frame {
        let (min, max) = bounding_box(pts);
        let span = (max.x - min.x).max(max.y - min.y).max(1e-12);
        let k = (WIDTH - 2.0 * MARGIN) / span;
        let height = (max.y - min.y) * k + 2.0 * MARGIN;
        Frame { min, max, k, height: height.max(LEGEND) }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        let x = MARGIN + (p.x - self.min.x) * self.k;
        let y = MARGIN + (self.max.y - p.y) * self.k;
        (x, y)
    }

    fn path(&self, pts: &[Point2], closed: bool) -> String {
        let mut s = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(s, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, x, y);
        }
        if closed {
            s.push_str(" Z");
        }
        s
    }

    fn open(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            w = WIDTH + LEGEND,
            h = self.height
        )
    }
}

fn shade(level: u64, max: u64) -> String {
    let v = 240 - (190 * level / max.max(1)) as u8;
    format!("#{v:02x}{v:02x}{v:02x}")
}

fn faces_and_legend(analysis: &CurveAnalysis, frame: &Frame, out: &mut String) {
    let max = analysis.faces.iter().map(|f| f.winding.unsigned_abs()).max().unwrap_or(0);
    for f in analysis.bounded_faces() {
        let level = f.winding.unsigned_abs();
        if level == 0 {
            continue;
        }
        let poly = analysis.arrangement.cycle_polygon(&f.boundary);
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"{}\" stroke=\"none\" data-face=\"{}\" data-winding=\"{}\"/>",
            frame.path(&poly, true),
            shade(level, max),
            f.id,
            f.winding
        );
    }
    let x = WIDTH + 8.0;
    let _ = writeln!(out, "<text x=\"{x:.0}\" y=\"20\" font-size=\"12\" font-family=\"sans-serif\">|winding|</text>");
    for level in 0..=max {
        let y = 30.0 + 18.0 * level as f64;
        let _ = writeln!(
            out,
            "<rect x=\"{x:.0}\" y=\"{y:.0}\" width=\"14\" height=\"14\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.5\"/><text x=\"{:.0}\" y=\"{:.0}\" font-size=\"12\" font-family=\"sans-serif\">{level}</text>",
            if level == 0 { "#ffffff".to_string() } else { shade(level, max) },
            x + 20.0,
            y + 11.0
        );
    }
}

fn marker(frame: &Frame, p: Point2, color: &str, label: &str, out: &mut String) {
    let (x, y) = frame.map(p);
    let _ = writeln!(
        out,
        "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"{color}\"/><text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" font-family=\"sans-serif\">{label}</text>",
        x + 5.0,
        y - 5.0
    );
}

/// Faces shaded by `|winding|` with a legend, the curve on top and the base
/// point marked `p0`.
pub fn render_analysis(analysis: &CurveAnalysis) -> String {
    let pts = analysis.curve.points();
    let frame = Frame::around(pts);
    let mut out = frame.open();
    faces_and_legend(analysis, &frame, &mut out);
    let _ = writeln!(
        out,
        "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
        frame.path(pts, true)
    );
    for c in &analysis.crossings {
        let (x, y) = frame.map(c.location);
        let _ = writeln!(
            out,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"10\" font-family=\"sans-serif\" fill=\"#555555\">{}</text>",
            x + 4.0,
            y + 12.0,
            c.id
        );
    }
    marker(&frame, analysis.curve.base_point(), "black", "p0", &mut out);
    out.push_str("</svg>\n");
    out
}

/// Shaded faces with each piece stroked in its own colour and its root
/// marked and labelled.
pub fn render_decomposition(analysis: &CurveAnalysis, d: &Decomposition) -> String {
    let frame = Frame::around(analysis.curve.points());
    let mut out = frame.open();
    faces_and_legend(analysis, &frame, &mut out);
    for (i, piece) in d.pieces.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let poly = piece.subcurve.polygon(&analysis.arcs);
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" data-piece=\"{i}\" data-root=\"{}\" data-sign=\"{}\"/>",
            frame.path(&poly, true),
            piece.root,
            piece.sign
        );
    }
    for (i, piece) in d.pieces.iter().enumerate() {
        let at = if piece.root == 0 {
            analysis.curve.base_point()
        } else {
            analysis.crossings[piece.root - 1].location
        };
        let label = if piece.root == 0 { "p0".to_string() } else { format!("x{}", piece.root) };
        marker(&frame, at, PALETTE[i % PALETTE.len()], &label, &mut out);
    }
    out.push_str("</svg>\n");
    out
}

/// Up to `count` evenly spaced frames drawn over each other, later frames
/// darker.
pub fn render_frames(frames: &HomotopyFrames, count: usize) -> String {
    let all: Vec<Point2> = frames.frames.iter().flatten().copied().collect();
    if all.is_empty() {
        return Frame::around(&[Point2::new(0.0, 0.0)]).open() + "</svg>\n";
    }
    let frame = Frame::around(&all);
    let mut out = frame.open();
    let n = frames.frames.len();
    let count = count.clamp(1, n);
    for j in 0..count {
        let i = if count == 1 { 0 } else { j * (n - 1) / (count - 1) };
        let pts = &frames.frames[i];
        if pts.len() < 2 {
            continue;
        }
        let opacity = 0.25 + 0.75 * (j as f64 + 1.0) / count as f64;
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-opacity=\"{opacity:.3}\" stroke-width=\"1\" data-frame=\"{i}\"/>",
            frame.path(pts, true)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::analyze;
    use crate::curve::ClosedPolyCurve;

    fn analysis(pts: &[(f64, f64)]) -> CurveAnalysis {
        let c = ClosedPolyCurve::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect(), 0).unwrap();
        analyze(&c, 1e-9).unwrap()
    }

    #[test]
    fn square_has_one_shaded_face() {
        let svg = render_analysis(&analysis(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]));
        assert_eq!(svg.matches("data-face=").count(), 1);
        assert!(svg.contains("|winding|"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn bowtie_lobes_share_a_level() {
        let svg = render_analysis(&analysis(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]));
        assert_eq!(svg.matches("data-face=").count(), 2);
        assert_eq!(svg.matches("data-winding=\"1\"").count() + svg.matches("data-winding=\"-1\"").count(), 2);
    }

    #[test]
    fn output_is_deterministic() {
        let a = analysis(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]);
        assert_eq!(render_analysis(&a), render_analysis(&a));
    }
}
