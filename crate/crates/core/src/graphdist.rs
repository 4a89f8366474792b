//! Homotopy-area distance between two weighted plane graphs.
//!
//! For every ordered pair `(u, v)` of distinct vertices of the first graph,
//! shortest `u → v` paths are compared against shortest paths between the
//! nearest vertices of the second graph. Each pair of paths is closed into a
//! curve (first path forward, second backward, ends joined by segments) and
//! the least minimum homotopy area over all choices is the pair's value.
//! The graph distance is the mean over all pairs.

use crate::curve::{concatenate_raw, JoinPolicy};
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::homotopy::sigma_of_closed_points;
use crate::Config;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

/// Graph document: `{"vertices": {"id": [x, y]}, "edges": [["u", "v", w]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: BTreeMap<String, Point2>,
    pub edges: Vec<(String, String, f64)>,
}

/// An undirected, connected graph with positive edge weights. Vertices are
/// indexed in ascending id order.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    ids: Vec<String>,
    points: Vec<Point2>,
    /// Neighbours sorted by vertex index, with edge weights.
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl PlaneGraph {
    pub fn from_document(doc: GraphDocument) -> Result<PlaneGraph> {
        let ids: Vec<String> = doc.vertices.keys().cloned().collect();
        let points: Vec<Point2> = doc.vertices.values().copied().collect();
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput("vertex coordinates must be finite".into()));
        }
        let index = |id: &str| {
            ids.binary_search_by(|x| x.as_str().cmp(id))
                .map_err(|_| Error::DegenerateInput(format!("edge refers to unknown vertex {id:?}")))
        };
        let mut adjacency = vec![Vec::new(); ids.len()];
        for (u, v, w) in &doc.edges {
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::DegenerateInput(format!("edge {u}-{v} needs a positive weight")));
            }
            let (a, b) = (index(u)?, index(v)?);
            if a == b {
                return Err(Error::DegenerateInput(format!("self-loop at {u}")));
            }
            adjacency[a].push((b, *w));
            adjacency[b].push((a, *w));
        }
        for list in &mut adjacency {
            list.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        }
        let g = PlaneGraph { ids, points, adjacency };
        if let Some(v) = g.unreachable_from(0) {
            return Err(Error::Disconnected {
                from: g.ids[0].clone(),
                to: g.ids[v].clone(),
            });
        }
        Ok(g)
    }

    pub fn parse(source: &str) -> Result<PlaneGraph> {
        PlaneGraph::from_document(serde_json::from_str(source)?)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn point(&self, v: usize) -> Point2 {
        self.points[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    fn unreachable_from(&self, s: usize) -> Option<usize> {
        if self.ids.is_empty() {
            return None;
        }
        let d = self.distances(s);
        d.iter().position(|x| x.is_infinite())
    }

    fn distances(&self, s: usize) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Item {
            fn cmp(&self, o: &Self) -> Ordering {
                o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
            }
        }
        let mut dist = vec![f64::INFINITY; self.len()];
        dist[s] = 0.0;
        let mut heap = BinaryHeap::from([Item(0.0, s)]);
        while let Some(Item(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, len) in &self.adjacency[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Item(nd, w));
                }
            }
        }
        dist
    }
}

/// Vertices of `g` nearest to `p`, ties included, in ascending id order.
pub fn associates(p: Point2, g: &PlaneGraph) -> Vec<usize> {
    let d: Vec<f64> = (0..g.len()).map(|v| g.point(v).dist(p)).collect();
    let best = d.iter().copied().fold(f64::INFINITY, f64::min);
    (0..g.len()).filter(|&v| d[v] == best).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    /// Vertex sequences, in lexicographic order of vertex index.
    pub paths: Vec<Vec<usize>>,
    pub length: f64,
    /// More shortest paths exist than the cap allowed.
    pub truncated: bool,
}

/// All minimum-weight `u → v` paths, at most `cap` of them.
pub fn shortest_paths(g: &PlaneGraph, u: usize, v: usize, cap: usize) -> Result<PathSet> {
    let from_u = g.distances(u);
    let to_v = g.distances(v);
    let total = from_u[v];
    if total.is_infinite() {
        return Err(Error::Disconnected {
            from: g.ids[u].clone(),
            to: g.ids[v].clone(),
        });
    }
    let slack = 1e-12 * total.max(1.0);
    let mut out = PathSet {
        paths: Vec::new(),
        length: total,
        truncated: false,
    };
    let mut path = vec![u];
    fn walk(g: &PlaneGraph, from_u: &[f64], to_v: &[f64], total: f64, slack: f64, v: usize, cap: usize, path: &mut Vec<usize>, out: &mut PathSet) {
        let a = *path.last().unwrap();
        if a == v {
            if out.paths.len() == cap {
                out.truncated = true;
            } else {
                out.paths.push(path.clone());
            }
            return;
        }
        for &(b, w) in &g.adjacency[a] {
            if out.truncated {
                return;
            }
            let tight = (from_u[a] + w - from_u[b]).abs() <= slack && (from_u[b] + to_v[b] - total).abs() <= slack;
            if tight {
                path.push(b);
                walk(g, from_u, to_v, total, slack, v, cap, path, out);
                path.pop();
            }
        }
    }
    walk(g, &from_u, &to_v, total, slack, v, cap, &mut path, &mut out);
    Ok(out)
}

/// The value of one ordered vertex pair and the paths achieving it.
#[derive(Debug, Clone, Serialize)]
pub struct PairDistance {
    pub u: String,
    pub v: String,
    pub sigma: f64,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub truncated: bool,
}

fn polyline(g: &PlaneGraph, path: &[usize]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = path.iter().map(|&v| g.point(v)).collect();
    if pts.len() == 1 {
        pts.push(pts[0]);
    }
    pts
}

pub fn sigma_uv(g1: &PlaneGraph, g2: &PlaneGraph, u: usize, v: usize, cfg: &Config) -> Result<PairDistance> {
    let alphas = shortest_paths(g1, u, v, cfg.cap_paths)?;
    let mut truncated = alphas.truncated;
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    for &u2 in &associates(g1.point(u), g2) {
        for &v2 in &associates(g1.point(v), g2) {
            let betas = if u2 == v2 {
                PathSet {
                    paths: vec![vec![u2]],
                    length: 0.0,
                    truncated: false,
                }
            } else {
                shortest_paths(g2, u2, v2, cfg.cap_paths)?
            };
            truncated |= betas.truncated;
            for a in &alphas.paths {
                for b in &betas.paths {
                    let pts = concatenate_raw(&polyline(g1, a), &polyline(g2, b), JoinPolicy::StraightLineJoin, cfg.tol)?;
                    let s = sigma_of_closed_points(&pts, cfg)?;
                    if best.as_ref().is_none_or(|x| s < x.0) {
                        best = Some((s, a.clone(), b.clone()));
                    }
                }
            }
        }
    }
    let (sigma, a, b) = best.expect("shortest path sets are never empty");
    Ok(PairDistance {
        u: g1.ids[u].clone(),
        v: g1.ids[v].clone(),
        sigma,
        alpha: a.iter().map(|&x| g1.ids[x].clone()).collect(),
        beta: b.iter().map(|&x| g2.ids[x].clone()).collect(),
        truncated,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDistance {
    pub value: f64,
    pub pairs: Vec<PairDistance>,
}

impl GraphDistance {
    /// `u,v,sigma` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v,sigma\n");
        for p in &self.pairs {
            s.push_str(&format!("{},{},{}\n", p.u, p.v, p.sigma));
        }
        s
    }
}

/// Mean of `sigma_uv` over ordered pairs of distinct vertices of `g1`.
pub fn graph_distance(g1: &PlaneGraph, g2: &PlaneGraph, cfg: &Config) -> Result<GraphDistance> {
    let n = g1.len();
    if n < 2 {
        return Err(Error::DegenerateInput("the first graph needs at least two vertices".into()));
    }
    if g2.is_empty() {
        return Err(Error::DegenerateInput("the second graph has no vertices".into()));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                pairs.push(sigma_uv(g1, g2, u, v, cfg)?);
            }
        }
    }
    let value = pairs.iter().map(|p| p.sigma).sum::<f64>() / pairs.len() as f64;
    Ok(GraphDistance { value, pairs })
}
