mod report;

use clap::{Args, Parser, Subcommand};
use minhom::arrangement::{analyze, CurveAnalysis};
use minhom::curve::{load_curve_with_report, perturb_to_normal, ClosedPolyCurve, SubcurveRef};
use minhom::graphdist::{graph_distance, PlaneGraph};
use minhom::homotopy::{
    decomposition_area, decomposition_from_subcurves, enumerate_valid_anchor_sets_of, induced_homotopy_frames,
    min_homotopy_area_of, Decomposition,
};
use minhom::moves::{find_bigons, find_monogons, reduce, whitney_combinatorial, GaussCode};
use minhom::selfoverlap::{interior_area, self_overlap_in};
use minhom::{svg, Config, Error};
use report::Recorder;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "minhom", version, about = "Minimum homotopy area of closed plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Print a machine-readable run report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Write an SVG drawing of the result.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Absolute tolerance for geometric predicates.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for perturbing non-normal inputs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Leave stage timings out of the report.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Largest crossing count the area solver accepts.
    #[arg(long, global = true, env = "MINHOM_CAP_CROSSINGS")]
    cap_crossings: Option<usize>,
    /// Shortest paths kept per vertex pair in graph distances.
    #[arg(long, global = true)]
    cap_paths: Option<usize>,
    /// Reject non-normal curves instead of perturbing them.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Crossings, faces, winding numbers, Whitney index and winding area.
    Analyze { curve: PathBuf },
    /// Decide whether the curve bounds an immersed disk.
    Selfoverlap {
        curve: PathBuf,
        /// Write the triangulation witness as JSON.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
    },
    /// Minimum homotopy area and an optimal decomposition.
    MinArea {
        curve: PathBuf,
        #[arg(long, value_name = "PATH")]
        decomposition: Option<PathBuf>,
        /// Write contraction frames as JSON lines.
        #[arg(long, value_name = "PATH")]
        frames: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Valid anchor sets and their areas.
    Decompose {
        curve: PathBuf,
        /// List every valid anchor set instead of only the best.
        #[arg(long)]
        all: bool,
    },
    /// Signed Gauss code, monogons, bigons and a greedy reduction.
    Gauss { curve: PathBuf },
    /// Homotopy-area distance between two plane graphs.
    GraphDist {
        first: PathBuf,
        second: PathBuf,
        /// Write per-pair values as CSV.
        #[arg(long, value_name = "PATH")]
        pairs: Option<PathBuf>,
    },
    /// Draw the curve, a stored decomposition, or the optimal contraction.
    Render {
        curve: PathBuf,
        #[arg(long, value_name = "PATH", conflicts_with = "frames")]
        decomposition: Option<PathBuf>,
        /// Overlay this many frames of the optimal contraction.
        #[arg(long, value_name = "COUNT")]
        frames: Option<usize>,
    },
    /// Re-check a stored decomposition against its curve.
    Verify { curve: PathBuf, decomposition: PathBuf },
}

/// On-disk decomposition: pieces as arc-id cycles with roots and signs.
#[derive(Serialize, Deserialize)]
struct DecompositionDocument {
    sigma: f64,
    anchor_set: Vec<usize>,
    pieces: Vec<PieceDocument>,
}

#[derive(Serialize, Deserialize)]
struct PieceDocument {
    arcs: Vec<usize>,
    root: usize,
    sign: i8,
}

impl DecompositionDocument {
    fn of(d: &Decomposition, sigma: f64) -> Self {
        DecompositionDocument {
            sigma,
            anchor_set: d.anchor_set(),
            pieces: d
                .pieces
                .iter()
                .map(|p| PieceDocument {
                    arcs: p.subcurve.arcs.clone(),
                    root: p.root,
                    sign: p.sign,
                })
                .collect(),
        }
    }
}

struct Run<'a> {
    g: &'a Global,
    cfg: Config,
    rec: Recorder,
    /// Human-readable lines printed without `--json`.
    text: Vec<String>,
}

impl Run<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Error> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        self.rec.input(&bytes);
        String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))
    }

    fn write(&mut self, path: &Path, contents: &str) -> Result<(), Error> {
        std::fs::write(path, contents)?;
        self.rec.outputs.push(path.display().to_string());
        Ok(())
    }

    fn curve(&mut self, path: &Path) -> Result<ClosedPolyCurve, Error> {
        let src = self.read(path)?;
        let tol = self.cfg.tol;
        let loaded = self.rec.time("load", || load_curve_with_report(&src, tol))?;
        self.rec.warnings.extend(loaded.warnings);
        let curve = loaded.curve;
        if self.g.strict {
            return Ok(curve);
        }
        let cfg = self.cfg;
        let fixed = self.rec.time("load", || perturb_to_normal(&curve, cfg.perturb_epsilon, cfg.seed, cfg.tol))?;
        if fixed != curve {
            self.rec.warnings.push(format!(
                "curve was not normal; vertices perturbed by at most {:e} (seed {})",
                cfg.perturb_epsilon, cfg.seed
            ));
        }
        Ok(fixed)
    }

    fn analysis(&mut self, path: &Path) -> Result<CurveAnalysis, Error> {
        let curve = self.curve(path)?;
        let tol = self.cfg.tol;
        self.rec.time("analyze", || analyze(&curve, tol))
    }

    fn svg(&mut self, document: impl FnOnce() -> String) -> Result<(), Error> {
        if let Some(path) = self.g.svg.clone() {
            let doc = self.rec.time("render", document);
            self.write(&path, &doc)?;
        }
        Ok(())
    }

    /// Record a cap error as a warning before it aborts the run.
    fn capped<T>(&mut self, r: Result<T, Error>) -> Result<T, Error> {
        if let Err(e @ Error::CapExceeded { .. }) = &r {
            self.rec.warnings.push(e.to_string());
        }
        r
    }
}

fn analyze_cmd(run: &mut Run, curve: &Path) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    run.svg(|| svg::render_analysis(&a))?;
    run.text.push(format!("crossings     {}", a.crossings.len()));
    run.text.push(format!("faces         {}", a.faces.len()));
    for f in a.bounded_faces() {
        run.text.push(format!("  face {:>3}  winding {:>3}  area {}", f.id, f.winding, f.area));
    }
    run.text.push(format!("whitney       {}", a.whitney));
    run.text.push(format!("winding area  {}", a.winding_area));
    Ok(json!({
        "crossings": a.crossings,
        "faces": a.faces,
        "whitney": a.whitney,
        "winding_area": a.winding_area,
    }))
}

fn selfoverlap_cmd(run: &mut Run, curve: &Path, witness_path: Option<&Path>) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let tol = run.cfg.tol;
    let r = run.rec.time("selfoverlap", || self_overlap_in(a.curve.points(), &a, tol));
    let area = r.witness.as_ref().map(interior_area).transpose()?;
    if let (Some(path), Some(w)) = (witness_path, &r.witness) {
        run.write(path, &serde_json::to_string_pretty(w)?)?;
    }
    run.text.push(format!("self-overlapping  {}", r.is_self_overlapping));
    run.text.push(format!("whitney           {}", r.whitney));
    if let (Some(w), Some(area)) = (&r.witness, area) {
        run.text.push(format!("sign              {}", w.sign));
        run.text.push(format!("triangles         {}", w.triangles.len()));
        run.text.push(format!("witness area      {area}"));
    }
    Ok(json!({
        "is_self_overlapping": r.is_self_overlapping,
        "whitney": r.whitney,
        "sign": r.witness.as_ref().map(|w| w.sign),
        "triangles": r.witness.as_ref().map(|w| w.triangles.len()),
        "witness_area": area,
        "winding_area": a.winding_area,
    }))
}

fn pieces_text(run: &mut Run, d: &Decomposition) {
    for (i, p) in d.pieces.iter().enumerate() {
        run.text.push(format!(
            "  piece {i}  root {:>2}  sign {:>2}  area {}  arcs {:?}",
            p.root, p.sign, p.winding_area, p.subcurve.arcs
        ));
    }
}

fn min_area_cmd(
    run: &mut Run,
    curve: &Path,
    decomposition: Option<&Path>,
    frames: Option<&Path>,
    samples: usize,
) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let cfg = run.cfg;
    let r = run.rec.time("solve", || min_homotopy_area_of(&a, &cfg));
    let r = run.capped(r)?;
    if let Some(path) = decomposition {
        let doc = DecompositionDocument::of(&r.decomposition, r.sigma);
        run.write(path, &serde_json::to_string_pretty(&doc)?)?;
    }
    let mut swept = None;
    if let Some(path) = frames {
        let fr = run.rec.time("frames", || induced_homotopy_frames(&r.decomposition, &a, samples, cfg.tol));
        let mut lines = String::new();
        for (i, f) in fr.frames.iter().enumerate() {
            let moves: Vec<_> = fr.move_log.iter().filter(|m| m.frame == i).collect();
            lines.push_str(&serde_json::to_string(&json!({"frame": i, "points": f, "moves": moves}))?);
            lines.push('\n');
        }
        run.write(path, &lines)?;
        swept = Some(fr.swept_area());
    }
    run.svg(|| svg::render_decomposition(&a, &r.decomposition))?;
    run.text.push(format!("sigma         {}", r.sigma));
    run.text.push(format!("winding area  {}", r.winding_area));
    run.text.push(format!("anchor set    {:?}", r.anchor_set));
    pieces_text(run, &r.decomposition);
    if let Some(s) = swept {
        run.text.push(format!("swept area    {s}"));
    }
    Ok(json!({
        "sigma": r.sigma,
        "winding_area": r.winding_area,
        "gap": r.gap,
        "anchor_set": r.anchor_set,
        "decomposition": DecompositionDocument::of(&r.decomposition, r.sigma),
        "swept_area": swept,
    }))
}

fn decompose_cmd(run: &mut Run, curve: &Path, all: bool) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let cfg = run.cfg;
    if !all {
        let r = run.rec.time("solve", || min_homotopy_area_of(&a, &cfg));
        let r = run.capped(r)?;
        run.svg(|| svg::render_decomposition(&a, &r.decomposition))?;
        run.text.push(format!("anchor set {:?}  area {}", r.anchor_set, r.sigma));
        pieces_text(run, &r.decomposition);
        return Ok(json!({ "argmin": r.anchor_set, "area": r.sigma, "decomposition": DecompositionDocument::of(&r.decomposition, r.sigma) }));
    }
    let sets = run.rec.time("enumerate", || enumerate_valid_anchor_sets_of(&a, &cfg));
    let sets = run.capped(sets)?;
    if let Some(best) = sets.first() {
        run.svg(|| svg::render_decomposition(&a, &best.decomposition))?;
    }
    run.text.push(format!("{:<24} {}", "anchor set", "area"));
    for s in &sets {
        run.text.push(format!("{:<24} {}", format!("{:?}", s.anchors), s.area));
    }
    run.text.push(format!("{} valid anchor sets", sets.len()));
    Ok(json!({
        "count": sets.len(),
        "argmin": sets.first().map(|s| s.anchors.clone()),
        "sets": sets.iter().map(|s| json!({"anchors": s.anchors, "area": s.area})).collect::<Vec<_>>(),
    }))
}

fn gauss_cmd(run: &mut Run, curve: &Path) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let code = GaussCode::from_curve(&a.curve, &a.crossings);
    let (steps, rest) = reduce(&code);
    let combinatorial = whitney_combinatorial(&a.curve, &a.crossings);
    run.text.push(format!("code       {code}"));
    run.text.push(format!("monogons   {:?}", find_monogons(&code)));
    run.text.push(format!("bigons     {:?}", find_bigons(&code)));
    for (kind, labels) in &steps {
        run.text.push(format!("  {kind:?} {labels:?}"));
    }
    run.text.push(format!("reduced to {rest}"));
    run.text.push(format!("whitney    {}", a.whitney));
    Ok(json!({
        "code": code.to_string(),
        "entries": code.entries,
        "monogons": find_monogons(&code),
        "bigons": find_bigons(&code),
        "reduction": steps.iter().map(|(k, l)| json!({"kind": k, "crossings": l})).collect::<Vec<_>>(),
        "remainder": rest.to_string(),
        "whitney": a.whitney,
        "whitney_combinatorial": combinatorial,
    }))
}

fn graph_dist_cmd(run: &mut Run, first: &Path, second: &Path, pairs: Option<&Path>) -> Result<Value, Error> {
    let g1 = PlaneGraph::parse(&run.read(first)?)?;
    let g2 = PlaneGraph::parse(&run.read(second)?)?;
    let cfg = run.cfg;
    let d = run.rec.time("distance", || graph_distance(&g1, &g2, &cfg));
    let d = run.capped(d)?;
    let truncated = d.pairs.iter().filter(|p| p.truncated).count();
    if truncated > 0 {
        run.rec.warnings.push(format!(
            "shortest-path cap {} hit for {truncated} vertex pairs",
            cfg.cap_paths
        ));
    }
    if let Some(path) = pairs {
        run.write(path, &d.to_csv())?;
    }
    run.text.push(format!("distance  {}", d.value));
    run.text.push(format!("pairs     {}", d.pairs.len()));
    Ok(json!({ "distance": d.value, "pairs": d.pairs.len(), "truncated_pairs": truncated }))
}

fn load_decomposition(run: &mut Run, a: &CurveAnalysis, path: &Path) -> Result<(DecompositionDocument, Decomposition), Error> {
    let doc: DecompositionDocument = serde_json::from_str(&run.read(path)?)?;
    let subs = doc
        .pieces
        .iter()
        .map(|p| SubcurveRef {
            arcs: p.arcs.clone(),
            root: p.root,
        })
        .collect();
    let d = decomposition_from_subcurves(a, subs)?;
    if let Some(i) = d.pieces.iter().zip(&doc.pieces).position(|(p, q)| p.sign != q.sign) {
        return Err(Error::InvalidDecomposition(format!("piece {i} has the wrong sign")));
    }
    Ok((doc, d))
}

fn render_cmd(run: &mut Run, curve: &Path, decomposition: Option<&Path>, frames: Option<usize>) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let cfg = run.cfg;
    let doc = if let Some(path) = decomposition {
        let (_, d) = load_decomposition(run, &a, path)?;
        svg::render_decomposition(&a, &d)
    } else if let Some(count) = frames {
        let r = run.rec.time("solve", || min_homotopy_area_of(&a, &cfg));
        let r = run.capped(r)?;
        let fr = induced_homotopy_frames(&r.decomposition, &a, 200, cfg.tol);
        svg::render_frames(&fr, count)
    } else {
        svg::render_analysis(&a)
    };
    match run.g.svg.clone() {
        Some(path) => run.write(&path, &doc)?,
        None if !run.g.json => {
            let _ = std::io::stdout().lock().write_all(doc.as_bytes());
        }
        None => {}
    }
    Ok(json!({ "bytes": doc.len() }))
}

fn verify_cmd(run: &mut Run, curve: &Path, decomposition: &Path) -> Result<Value, Error> {
    let a = run.analysis(curve)?;
    let (doc, d) = load_decomposition(run, &a, decomposition)?;
    let area = run.rec.time("verify", || decomposition_area(&d, &a))?;
    let matches = area == doc.sigma;
    run.text.push(format!("decomposition area  {area}"));
    run.text.push(format!("recorded sigma      {}", doc.sigma));
    run.text.push(format!("match               {matches}"));
    Ok(json!({
        "decomposition_area": area,
        "recorded_sigma": doc.sigma,
        "anchor_set": d.anchor_set(),
        "matches": matches,
    }))
}

fn error_code(e: &Error) -> (&'static str, u8) {
    match e {
        Error::CapExceeded { .. } => ("cap_exceeded", 3),
        Error::Parse(_) => ("parse", 2),
        Error::DegenerateInput(_) => ("degenerate_input", 2),
        Error::NormalityViolation { .. } => ("normality_violation", 2),
        Error::PerturbationFailed { .. } => ("perturbation_failed", 2),
        Error::NotASelfCrossing(_) => ("not_a_self_crossing", 2),
        Error::OnCurve => ("on_curve", 2),
        Error::InvalidDecomposition(_) => ("invalid_decomposition", 2),
        Error::MoveNotApplicable(_) => ("move_not_applicable", 2),
        Error::Disconnected { .. } => ("disconnected", 2),
        Error::Io(_) => ("io", 2),
        Error::Topology(_) => ("topology", 1),
        Error::NumericalInstability { .. } => ("numerical_instability", 1),
        Error::InconsistentWitness(_) => ("inconsistent_witness", 1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let mut cfg = Config::default();
    if let Some(t) = g.tol {
        cfg.tol = t;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(c) = g.cap_crossings {
        cfg.cap_crossings = c;
    }
    if let Some(c) = g.cap_paths {
        cfg.cap_paths = c;
    }
    let name = match &cli.command {
        Command::Analyze { .. } => "analyze",
        Command::Selfoverlap { .. } => "selfoverlap",
        Command::MinArea { .. } => "min-area",
        Command::Decompose { .. } => "decompose",
        Command::Gauss { .. } => "gauss",
        Command::GraphDist { .. } => "graph-dist",
        Command::Render { .. } => "render",
        Command::Verify { .. } => "verify",
    };
    let mut run = Run {
        g,
        cfg,
        rec: Recorder::new(name),
        text: Vec::new(),
    };
    let result = match &cli.command {
        Command::Analyze { curve } => analyze_cmd(&mut run, curve),
        Command::Selfoverlap { curve, witness } => selfoverlap_cmd(&mut run, curve, witness.as_deref()),
        Command::MinArea {
            curve,
            decomposition,
            frames,
            samples,
        } => min_area_cmd(&mut run, curve, decomposition.as_deref(), frames.as_deref(), *samples),
        Command::Decompose { curve, all } => decompose_cmd(&mut run, curve, *all),
        Command::Gauss { curve } => gauss_cmd(&mut run, curve),
        Command::GraphDist { first, second, pairs } => graph_dist_cmd(&mut run, first, second, pairs.as_deref()),
        Command::Render {
            curve,
            decomposition,
            frames,
        } => render_cmd(&mut run, curve, decomposition.as_deref(), *frames),
        Command::Verify { curve, decomposition } => verify_cmd(&mut run, curve, decomposition),
    };
    let Run { rec, text, .. } = run;
    let (value, status) = match result {
        Ok(v) => (v, 0u8),
        Err(e) => {
            let (code, status) = error_code(&e);
            eprintln!("error: {e}");
            (json!({ "error": { "code": code, "message": e.to_string() } }), status)
        }
    };
    // A closed stdout (e.g. piped into `head`) is not an error worth reporting.
    let mut out = std::io::stdout().lock();
    if g.json {
        let report = rec.finish(value, !g.no_timings);
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let report = rec.finish(value, false);
        for line in &text {
            let _ = writeln!(out, "{line}");
        }
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    ExitCode::from(status)
}
